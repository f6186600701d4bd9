#pragma once

#include <stdexcept>
#include <string>

namespace cylpack {

enum class errc {
  rank_deficient,
  full_dimensional,
  dimension_mismatch,
  degenerate_body,
  no_convergence,
  unsupported_dimension,
  domain_error,
  degenerate_projection,
  empty_intersection,
  sampling_failure,
  not_a_covering,
  not_a_packing,
  slice_estimate_unstable,
  on_unit_sphere,
  chord_misses_ball,
  plane_misses_sphere,
  line_misses_body,
  pointwise_violated,
  not_ns,
  parse_error,
};

inline const char* to_string(errc code) {
  switch (code) {
    case errc::rank_deficient: return "RankDeficient";
    case errc::full_dimensional: return "FullDimensional";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::degenerate_body: return "DegenerateBody";
    case errc::no_convergence: return "NoConvergence";
    case errc::unsupported_dimension: return "UnsupportedDimension";
    case errc::domain_error: return "DomainError";
    case errc::degenerate_projection: return "DegenerateProjection";
    case errc::empty_intersection: return "EmptyIntersection";
    case errc::sampling_failure: return "SamplingFailure";
    case errc::not_a_covering: return "NotACovering";
    case errc::not_a_packing: return "NotAPacking";
    case errc::slice_estimate_unstable: return "SliceEstimateUnstable";
    case errc::on_unit_sphere: return "OnUnitSphere";
    case errc::chord_misses_ball: return "ChordMissesBall";
    case errc::plane_misses_sphere: return "PlaneMissesSphere";
    case errc::line_misses_body: return "LineMissesBody";
    case errc::pointwise_violated: return "PointwiseViolated";
    case errc::not_ns: return "NotNS";
    case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what) {}

  errc code() const noexcept { return code_; }
  /// The text without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  errc code_;
  std::string message_;
};

inline void require(bool condition, errc code, const std::string& what) {
  if (!condition) throw error(code, what);
}

}  // namespace cylpack

#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace cylpack {

// FNV-1a; stable across platforms, which std::hash is not.
inline std::string digest_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cylpack

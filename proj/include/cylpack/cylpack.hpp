#pragma once

// Everything in one include.

#include "cylpack/bounds.hpp"
#include "cylpack/cap_packing.hpp"
#include "cylpack/convex_body.hpp"
#include "cylpack/cylinder.hpp"
#include "cylpack/density.hpp"
#include "cylpack/falconer.hpp"
#include "cylpack/frame.hpp"
#include "cylpack/instances.hpp"
#include "cylpack/multiplicity.hpp"
#include "cylpack/plank2d.hpp"
#include "cylpack/projection.hpp"
#include "cylpack/slice.hpp"
#include "cylpack/special_functions.hpp"

#pragma once

/// \file hcube.hpp
/// \brief Everything.

#include "hcube/clifford.hpp"
#include "hcube/cube.hpp"
#include "hcube/cube_json.hpp"
#include "hcube/extremal.hpp"
#include "hcube/fit.hpp"
#include "hcube/harness.hpp"
#include "hcube/heat.hpp"
#include "hcube/interp.hpp"
#include "hcube/numeric.hpp"
#include "hcube/planar.hpp"
#include "hcube/random.hpp"

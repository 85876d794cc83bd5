#pragma once

/// \file experiments.hpp
/// \brief The default experiment registry.

#include "hcube/harness/experiments/clifford.hpp"
#include "hcube/harness/experiments/cube.hpp"
#include "hcube/harness/experiments/extremal.hpp"
#include "hcube/harness/experiments/heat.hpp"
#include "hcube/harness/experiments/interp.hpp"
#include "hcube/harness/experiments/planar.hpp"
#include "hcube/harness/registry.hpp"

namespace hcube::harness {

/// Every experiment, grouped by module in dependency order.
inline Registry default_registry() {
  Registry reg;
  experiments::add_cube(reg);
  experiments::add_heat(reg);
  experiments::add_extremal(reg);
  experiments::add_interp(reg);
  experiments::add_planar(reg);
  experiments::add_clifford(reg);
  return reg;
}

}  // namespace hcube::harness

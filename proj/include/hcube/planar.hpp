#pragma once

/// \file planar.hpp
/// \brief Lens and two-gone domains, their conformal maps, Green's functions and the paraproduct.

#include "hcube/planar/spiral.hpp"
#include "hcube/planar/conformal.hpp"
#include "hcube/planar/domains.hpp"
#include "hcube/planar/green.hpp"
#include "hcube/planar/paraproduct.hpp"
#include "hcube/planar/series.hpp"

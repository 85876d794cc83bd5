#pragma once

/// \file harness.hpp
/// \brief Experiment configs, result rows, the registry and reports.

#include "hcube/harness/config.hpp"
#include "hcube/harness/experiments.hpp"
#include "hcube/harness/registry.hpp"
#include "hcube/harness/report.hpp"
#include "hcube/harness/result.hpp"

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mbcast/netgen.hpp"

namespace mbc {

// Closed-form round bound shape for a protocol, in the instance parameters.
// Logarithms are base 2 and floored at 1 so degenerate instances keep a
// positive budget.
double budget_formula(const std::string& protocol, uint32_t n, uint32_t k, const Metrics& m,
                      uint32_t N);

// Frozen multiplier: measured rounds must stay within constant * formula.
// Fitted once over the calibration suite and recorded here; regressions run
// with zero tolerance against these values.
double budget_constant(const std::string& protocol);

// The frozen calibration suite shared by constant fitting and the regression
// checks: 50 seeded connected instances per protocol, n in [5, 200],
// k in [1, 20].
struct CalibrationCase {
  uint32_t n = 0;
  uint32_t k = 0;
  double side = 0.0;
  uint64_t seed = 0;
};

std::vector<CalibrationCase> calibration_suite();

}  // namespace mbc

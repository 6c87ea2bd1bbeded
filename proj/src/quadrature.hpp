#pragma once

#include <functional>

namespace fpedss {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double l1_norm = 0.0;
};

/// Adaptive Gauss–Kronrod (15/31) on [lo, hi]. The target error is
/// max(relative_tolerance * L1 norm of the integrand, absolute_tolerance);
/// callers check the returned error estimate against their own budget.
QuadratureResult integrate_adaptive(const std::function<double(double)> &f, double lo, double hi,
                                    double relative_tolerance = 1e-14,
                                    double absolute_tolerance = 0.0,
                                    unsigned max_depth = 25);

} // namespace fpedss

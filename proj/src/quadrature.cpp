#include "quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <limits>

namespace fpedss {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

void refine(const std::function<double(double)> &f, double lo, double hi, double abs_tol,
            unsigned depth, QuadratureResult &acc) {
  double err = 0.0, l1 = 0.0;
  const double v = Rule::integrate(f, lo, hi, 0, 0.0, &err, &l1);
  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * l1;
  if (depth == 0 || err <= std::max(abs_tol, roundoff)) {
    acc.value += v;
    acc.error_estimate += err;
    acc.l1_norm += l1;
    return;
  }
  const double mid = 0.5 * (lo + hi);
  refine(f, lo, mid, 0.5 * abs_tol, depth - 1, acc);
  refine(f, mid, hi, 0.5 * abs_tol, depth - 1, acc);
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)> &f, double lo, double hi,
                                    double relative_tolerance, double absolute_tolerance,
                                    unsigned max_depth) {
  double err = 0.0, l1 = 0.0;
  Rule::integrate(f, lo, hi, 0, 0.0, &err, &l1);
  QuadratureResult r;
  refine(f, lo, hi, std::max(relative_tolerance * l1, absolute_tolerance), max_depth, r);
  return r;
}

} // namespace fpedss

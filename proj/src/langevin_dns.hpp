#pragma once

#include "fpe_operator.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fpedss {

struct DnsConfig {
  double step = 1e-3;
  long num_steps = 10'000'000;
  long burn_in = 100'000;
  std::uint64_t seed = 0;
  double x0 = 0.0;
  /// Excursion used by the step-size guard dt <= 0.1 / max(|a|, b x_max^2).
  double x_max = 3.0;

  void validate() const;
};

/// Euler–Maruyama path x_{k+1} = x_k + u(x_k) dt + sqrt(2 Gamma dt) xi_k with
/// xi_k from std::normal_distribution over mt19937_64. Returns the
/// num_steps - burn_in positions after the burn-in. Throws NumericalError
/// when |x| exceeds 100.
std::vector<double> simulate(const ModelParams &params, const DnsConfig &config);

struct PdfEstimate {
  std::vector<double> bin_edges;
  std::vector<double> densities;
  long counted = 0; // samples inside the range
};

/// Histogram over [lo, hi) (the last bin is closed) normalized to unit
/// integral over the counted samples.
PdfEstimate histogram_pdf(std::span<const double> samples, int bin_count, double lo, double hi);

/// Mean of x^k over the samples.
double sample_moment(std::span<const double> samples, int k);

} // namespace fpedss

#include "langevin_dns.hpp"

#include "errors.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace fpedss {

void DnsConfig::validate() const {
  if (!(step > 0.0))
    throw std::invalid_argument("dns: step must be positive");
  if (num_steps < 1)
    throw std::invalid_argument("dns: num_steps must be >= 1");
  if (burn_in < 0 || burn_in >= num_steps)
    throw std::invalid_argument("dns: burn_in must lie in [0, num_steps)");
  if (!(x_max > 0.0))
    throw std::invalid_argument("dns: x_max must be positive");
}

std::vector<double> simulate(const ModelParams &params, const DnsConfig &config) {
  params.validate();
  config.validate();
  const double stiffness = std::max(std::abs(params.drift_linear),
                                    params.drift_cubic * config.x_max * config.x_max);
  if (stiffness > 0.0 && config.step > 0.1 / stiffness)
    throw std::invalid_argument("dns: step " + std::to_string(config.step) +
                                " exceeds the stability guard " + std::to_string(0.1 / stiffness));

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double kick = std::sqrt(2.0 * params.diffusivity * config.step);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(config.num_steps - config.burn_in));
  double x = config.x0;
  for (long k = 0; k < config.num_steps; ++k) {
    x += params.velocity(x) * config.step + kick * normal(rng);
    if (!(std::abs(x) <= 100.0))
      throw NumericalError("dns: path diverged at step " + std::to_string(k) +
                           " (|x| > 100); reduce the time step");
    if (k >= config.burn_in)
      out.push_back(x);
  }
  return out;
}

PdfEstimate histogram_pdf(std::span<const double> samples, int bin_count, double lo, double hi) {
  if (bin_count < 2)
    throw std::invalid_argument("histogram_pdf: bin_count must be >= 2");
  if (!(lo < hi))
    throw std::invalid_argument("histogram_pdf: empty range");
  if (samples.empty())
    throw std::invalid_argument("histogram_pdf: no samples");
  const double width = (hi - lo) / bin_count;
  PdfEstimate est;
  est.bin_edges.resize(static_cast<std::size_t>(bin_count) + 1);
  for (int i = 0; i <= bin_count; ++i)
    est.bin_edges[i] = lo + width * i;
  est.bin_edges.back() = hi;
  std::vector<long> counts(static_cast<std::size_t>(bin_count), 0);
  for (double x : samples) {
    if (!(x >= lo && x <= hi))
      continue;
    auto bin = static_cast<long>((x - lo) / width);
    bin = std::min<long>(bin, bin_count - 1);
    ++counts[static_cast<std::size_t>(bin)];
    ++est.counted;
  }
  if (est.counted == 0)
    throw std::invalid_argument("histogram_pdf: no samples inside the range");
  est.densities.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    est.densities[i] = static_cast<double>(counts[i]) / (static_cast<double>(est.counted) * width);
  return est;
}

double sample_moment(std::span<const double> samples, int k) {
  if (samples.empty())
    throw std::invalid_argument("sample_moment: no samples");
  double s = 0.0;
  for (double x : samples)
    s += std::pow(x, k);
  return s / static_cast<double>(samples.size());
}

} // namespace fpedss

#include "errors.hpp"
#include "exact_solution.hpp"
#include "langevin_dns.hpp"
#include "reference_values.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace fpedss;

namespace {

double variance(std::span<const double> x) {
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  return sample_moment(x, 2) - m * m;
}

} // namespace

TEST(LangevinDns, OrnsteinUhlenbeckVariance) {
  DnsConfig c;
  c.seed = 1;
  const std::vector<double> x = simulate(ModelParams{1, 0, 1}, c);
  EXPECT_EQ(x.size(), static_cast<std::size_t>(c.num_steps - c.burn_in));
  EXPECT_NEAR(variance(x), 1.0, 0.02);
}

TEST(LangevinDns, VanishingNoiseDecaysDeterministically) {
  DnsConfig c;
  c.num_steps = 20000;
  c.burn_in = 0;
  c.x0 = 1.0;
  const std::vector<double> x = simulate(ModelParams{1, 0, 1e-12}, c);
  const std::size_t tail = x.size() / 10;
  const double mean = std::accumulate(x.end() - static_cast<long>(tail), x.end(), 0.0) / tail;
  EXPECT_LE(std::abs(mean), 0.01);
  EXPECT_NEAR(x[999], std::pow(1 - 1e-3, 1000), 1e-5);
}

TEST(LangevinDns, BistableSecondMoment) {
  DnsConfig c;
  c.seed = 2;
  const std::vector<double> x = simulate(ModelParams{-1, 2, 1}, c);
  EXPECT_NEAR(sample_moment(x, 2), ref::kExactX2, 0.01 * ref::kExactX2);
}

TEST(LangevinDns, BistableHistogramMatchesExactPdf) {
  const std::vector<double> x = simulate(ModelParams{-1, 2, 1}, DnsConfig{});
  const PdfEstimate h = histogram_pdf(x, 100, -2.0, 2.0);
  const ExactPdf p = make_exact_pdf(ModelParams{-1, 2, 1});
  double l1 = 0.0;
  for (std::size_t i = 0; i < h.densities.size(); ++i) {
    const double w = h.bin_edges[i + 1] - h.bin_edges[i];
    l1 += std::abs(h.densities[i] - p(0.5 * (h.bin_edges[i] + h.bin_edges[i + 1]))) * w;
  }
  EXPECT_LE(l1, 0.02);
}

TEST(LangevinDns, HistogramUniformSamples) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const long n = 100000;
  std::vector<double> x(n);
  for (double &v : x)
    v = u(rng);
  const PdfEstimate h = histogram_pdf(x, 10, 0.0, 1.0);
  ASSERT_EQ(h.densities.size(), 10u);
  ASSERT_EQ(h.bin_edges.size(), 11u);
  double integral = 0.0;
  for (std::size_t i = 0; i < 10; ++i) {
    const double sigma = std::sqrt(0.1 * 0.9 / n) / 0.1;
    EXPECT_NEAR(h.densities[i], 1.0, 3 * sigma);
    integral += h.densities[i] * 0.1;
  }
  EXPECT_NEAR(integral, 1.0, 1e-12);
}

TEST(LangevinDns, HistogramDegenerateAndErrors) {
  const std::vector<double> same(50, 0.25);
  const PdfEstimate h = histogram_pdf(same, 4, 0.0, 1.0);
  int nonzero = 0;
  for (double d : h.densities)
    nonzero += d > 0;
  EXPECT_EQ(nonzero, 1);
  EXPECT_DOUBLE_EQ(h.densities[1], 4.0);
  EXPECT_THROW(histogram_pdf(std::vector<double>{}, 4, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(histogram_pdf(same, 1, 0.0, 1.0), std::invalid_argument);
}

TEST(LangevinDns, SeededDeterminism) {
  DnsConfig c;
  c.num_steps = 100000;
  c.burn_in = 1000;
  c.seed = 42;
  EXPECT_EQ(simulate(ModelParams{-1, 2, 1}, c), simulate(ModelParams{-1, 2, 1}, c));
  DnsConfig d = c;
  d.seed = 43;
  EXPECT_NE(simulate(ModelParams{-1, 2, 1}, c), simulate(ModelParams{-1, 2, 1}, d));
}

TEST(LangevinDns, StepGuardAndValidation) {
  DnsConfig c;
  c.step = 0.01; // b x_max^2 = 18 needs dt <= 0.1 / 18
  EXPECT_THROW(simulate(ModelParams{-1, 2, 1}, c), std::invalid_argument);
  c = DnsConfig{};
  c.burn_in = c.num_steps;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = DnsConfig{};
  c.step = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(LangevinDns, DivergenceIsReported) {
  DnsConfig c;
  c.x0 = 150.0;
  c.num_steps = 10;
  c.burn_in = 0;
  EXPECT_THROW(simulate(ModelParams{1, 0, 1}, c), NumericalError);
}

TEST(LangevinDns, StepSizeBiasIsFirstOrder) {
  // Euler-Maruyama on the OU process has stationary variance 1 / (1 - dt / 2).
  std::vector<double> bias;
  for (double dt : {0.1, 0.05, 0.025}) {
    DnsConfig c;
    c.step = dt;
    c.num_steps = static_cast<long>(4e5 / dt);
    c.burn_in = static_cast<long>(20 / dt);
    c.seed = 11;
    const std::vector<double> x = simulate(ModelParams{1, 0, 1}, c);
    bias.push_back(variance(x) - 1.0);
    EXPECT_NEAR(bias.back(), dt / 2 / (1 - dt / 2), 0.01) << dt;
  }
  EXPECT_GT(bias[0], bias[1]);
  EXPECT_GT(bias[1], bias[2]);
  EXPECT_GT(bias[0] / bias[2], 2.0);
}

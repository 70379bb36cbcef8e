#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "latinsq/counting.hpp"
#include "latinsq/verify.hpp"

namespace latinsq {

/// Subsquare-expectation estimate. Exact mode carries the exact rational
/// alongside the real rendering; Monte Carlo mode carries the seed that
/// reproduces it.
struct Estimate {
  enum class Mode { exact, monte_carlo };

  int n = 0, m = 0;
  Mode mode = Mode::monte_carlo;
  std::uint64_t samples = 0;
  double mean = 0;
  double stderr_ = 0;  // sample standard deviation / sqrt(samples)
  std::uint64_t seed = 0;
  std::optional<Rational> exact;
};

/// Exact expected number of order-m subsquares in a uniformly random order-n
/// square. Dispatches to full enumeration (n <= 5) or the window-counting
/// formula (n = 6); both paths agree exactly where both apply.
Rational exact_Em(int n, int m, const CountOptions& opts = {});

/// Average of count_subsquares over every order-n square.
Rational exact_Em_enumeration(int n, int m, const CountOptions& opts = {});

/// C(n,m)^3 * (#order-m squares) * |L_P| / |LS(n)| with P a corner witness
/// block; valid for m <= 3 where every corner block has the same fibre size.
Rational exact_Em_formula(int n, int m, const CountOptions& opts = {});

Estimate exact_Em_estimate(int n, int m, const CountOptions& opts = {});

/// Monte Carlo mean of count_subsquares over sampled squares, using one
/// sampler stream per sample index (reproducible for any worker count).
Estimate estimate_Em(int n, int m, std::uint64_t samples, std::uint64_t seed,
                     int workers = 0);

/// Frequency table of intercalate counts over sampled squares; frequencies
/// total `samples`.
std::map<std::uint64_t, std::uint64_t> intercalate_histogram(int n,
                                                             std::uint64_t samples,
                                                             std::uint64_t seed,
                                                             int workers = 0);

/// Chi-square survival function Q(stat; dof) via the regularized incomplete
/// gamma function.
double chi_square_sf(double stat, double dof);

std::string estimate_csv_header();
std::string estimate_csv_row(const Estimate& est);

}  // namespace latinsq

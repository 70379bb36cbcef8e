#include "latinsq/stats.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>
#include <vector>

#include "latinsq/sampler.hpp"
#include "latinsq/subsquares.hpp"

namespace latinsq {

namespace {

// Known closed cases shared by all paths; nullopt means a real computation
// is needed.
std::optional<Rational> trivial_Em(int n, int m) {
  if (m < 1 || m > n) throw std::invalid_argument("subsquare order out of range");
  if (m == n) return Rational(1);
  if (m == 1) return Rational(n * n);
  if (2 * m > n) return Rational(0);  // no proper subsquare above n/2
  return std::nullopt;
}

}  // namespace

Rational exact_Em_enumeration(int n, int m, const CountOptions& opts) {
  if (auto v = trivial_Em(n, m)) return *v;
  BigCount sum = 0;
  const std::uint64_t total = enumerate_constrained(
      ConstraintSpec::unconstrained(n),
      [&](const LatinSquare& L) { sum += count_subsquares(L, m); }, opts);
  if (total == 0) throw std::logic_error("no squares enumerated");
  return Rational(sum, BigCount(total));
}

Rational exact_Em_formula(int n, int m, const CountOptions& opts) {
  if (auto v = trivial_Em(n, m)) return *v;
  if (m > 3)
    throw std::invalid_argument(
        "window formula relies on equal corner fibres, only valid for m <= 3");
  const LatinSquare M = build_M(m);
  PartialSquare corner(n, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) corner.set(r, c, M.at(r, c));

  CountOptions local = opts;
  local.allow_large = opts.allow_large || n <= opts.exhaustive_guard;
  const BigCount lp = count_constrained(ConstraintSpec::containing(corner), local);
  const BigCount total = count_constrained(ConstraintSpec::unconstrained(n), local);
  const BigCount squares_m =
      count_constrained(ConstraintSpec::unconstrained(m), local);

  BigCount choices = 1;
  {
    BigCount b = 1;
    for (int j = 1; j <= m; ++j) {
      b *= n - m + j;
      b /= j;
    }
    choices = b * b * b;
  }
  return Rational(choices * squares_m * lp, total);
}

Rational exact_Em(int n, int m, const CountOptions& opts) {
  if (auto v = trivial_Em(n, m)) return *v;
  if (n <= 5) return exact_Em_enumeration(n, m, opts);
  return exact_Em_formula(n, m, opts);
}

Estimate exact_Em_estimate(int n, int m, const CountOptions& opts) {
  Estimate est;
  est.n = n;
  est.m = m;
  est.mode = Estimate::Mode::exact;
  est.exact = exact_Em(n, m, opts);
  est.mean = double(boost::multiprecision::numerator(*est.exact)) /
             double(boost::multiprecision::denominator(*est.exact));
  est.stderr_ = 0;
  est.seed = 0;
  if (n <= 6) {
    const BigCount total =
        count_constrained(ConstraintSpec::unconstrained(n), opts);
    est.samples = total.convert_to<std::uint64_t>();
  }
  return est;
}

namespace {

// Integer moment accumulators; integer merging keeps results identical for
// every worker count.
struct MomentSums {
  std::uint64_t count = 0;
  std::uint64_t sum = 0;
  std::uint64_t sumsq = 0;
};

}  // namespace

Estimate estimate_Em(int n, int m, std::uint64_t samples, std::uint64_t seed,
                     int workers) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const int w = std::max(1, workers ? workers : default_workers());
  SamplerConfig config;
  config.order = n;
  config.seed = seed;

  std::vector<MomentSums> partial(w);
  std::atomic<std::uint64_t> cursor{0};
  auto run = [&](int slot) {
    MomentSums local;
    for (;;) {
      const std::uint64_t k = cursor.fetch_add(1);
      if (k >= samples) break;
      const LatinSquare L = sample_at(config, k);
      const std::uint64_t value = count_subsquares(L, m);
      local.count += 1;
      local.sum += value;
      local.sumsq += value * value;
    }
    partial[slot] = local;
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < w; ++t) pool.emplace_back(run, t);
  run(0);
  for (auto& t : pool) t.join();

  MomentSums total;
  for (const MomentSums& p : partial) {
    total.count += p.count;
    total.sum += p.sum;
    total.sumsq += p.sumsq;
  }

  Estimate est;
  est.n = n;
  est.m = m;
  est.mode = Estimate::Mode::monte_carlo;
  est.samples = samples;
  est.seed = seed;
  est.mean = double(total.sum) / double(samples);
  if (samples > 1) {
    const double variance =
        (double(total.sumsq) - double(total.sum) * est.mean) / double(samples - 1);
    est.stderr_ = std::sqrt(std::max(0.0, variance) / double(samples));
  }
  return est;
}

std::map<std::uint64_t, std::uint64_t> intercalate_histogram(int n,
                                                             std::uint64_t samples,
                                                             std::uint64_t seed,
                                                             int workers) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const int w = std::max(1, workers ? workers : default_workers());
  SamplerConfig config;
  config.order = n;
  config.seed = seed;

  std::vector<std::map<std::uint64_t, std::uint64_t>> partial(w);
  std::atomic<std::uint64_t> cursor{0};
  auto run = [&](int slot) {
    for (;;) {
      const std::uint64_t k = cursor.fetch_add(1);
      if (k >= samples) break;
      ++partial[slot][count_intercalates(sample_at(config, k))];
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < w; ++t) pool.emplace_back(run, t);
  run(0);
  for (auto& t : pool) t.join();

  std::map<std::uint64_t, std::uint64_t> out;
  for (const auto& p : partial)
    for (const auto& [count, freq] : p) out[count] += freq;
  return out;
}

double chi_square_sf(double stat, double dof) {
  if (stat < 0 || dof <= 0) throw std::invalid_argument("bad chi-square input");
  const double a = dof / 2, x = stat / 2;
  if (x == 0) return 1.0;
  // Regularized incomplete gamma: series for x < a+1, continued fraction
  // otherwise (Lentz's method).
  if (x < a + 1) {
    double term = 1.0 / a, sum = term, ap = a;
    for (int k = 0; k < 1000; ++k) {
      ap += 1;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - p;
  }
  double b = x + 1 - a, c = 1e300, d = 1 / b, h = d;
  for (int k = 1; k < 1000; ++k) {
    const double an = -k * (k - a);
    b += 2;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

std::string estimate_csv_header() {
  return "n,m,mode,samples,mean,stderr,seed,exact_num,exact_den";
}

std::string estimate_csv_row(const Estimate& est) {
  char mean_buf[40], err_buf[40];
  std::snprintf(mean_buf, sizeof mean_buf, "%.12g", est.mean);
  std::snprintf(err_buf, sizeof err_buf, "%.12g", est.stderr_);
  std::string out = std::to_string(est.n) + "," + std::to_string(est.m) + ",";
  out += est.mode == Estimate::Mode::exact ? "exact" : "monte-carlo";
  out += "," + std::to_string(est.samples) + "," + mean_buf + "," + err_buf + ",";
  out += std::to_string(est.seed) + ",";
  if (est.exact) {
    out += boost::multiprecision::numerator(*est.exact).str() + "," +
           boost::multiprecision::denominator(*est.exact).str();
  } else {
    out += ",";
  }
  return out;
}

}  // namespace latinsq

#include "latinsq/sampler.hpp"

#include <atomic>
#include <optional>
#include <stdexcept>
#include <thread>

namespace latinsq {

IncidenceCube::IncidenceCube(const LatinSquare& square)
    : n_(square.order()), v_(std::size_t(n_) * n_ * n_, 0) {
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) v_[idx(r, c, square.at(r, c))] = 1;
}

bool IncidenceCube::valid() const {
  int negatives = 0;
  for (std::size_t k = 0; k < v_.size(); ++k) {
    if (v_[k] < -1 || v_[k] > 1) return false;
    if (v_[k] == -1) {
      ++negatives;
      if (int(k) != neg_) return false;
    }
  }
  if (negatives > 1 || (negatives == 0) != proper()) return false;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      int sum_s = 0, sum_c = 0, sum_r = 0;
      for (int k = 0; k < n_; ++k) {
        sum_s += v_[idx(a, b, k)];
        sum_c += v_[idx(a, k, b)];
        sum_r += v_[idx(k, a, b)];
      }
      if (sum_s != 1 || sum_c != 1 || sum_r != 1) return false;
    }
  return true;
}

LatinSquare IncidenceCube::to_square() const {
  if (!proper()) throw std::logic_error("improper cube is not a Latin square");
  std::vector<std::uint8_t> g(std::size_t(n_) * n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c)
      for (int s = 0; s < n_; ++s)
        if (v_[idx(r, c, s)] == 1) g[std::size_t(r) * n_ + c] = std::uint8_t(s);
  return LatinSquare(n_, std::move(g));
}

void IncidenceCube::line_positives(int fixed_a, int fixed_b, int axis, int out[2]) const {
  int found = 0;
  for (int k = 0; k < n_ && found < 2; ++k) {
    std::int8_t val = 0;
    switch (axis) {
      case 0: val = v_[idx(k, fixed_a, fixed_b)]; break;
      case 1: val = v_[idx(fixed_a, k, fixed_b)]; break;
      default: val = v_[idx(fixed_a, fixed_b, k)]; break;
    }
    if (val == 1) out[found++] = k;
  }
}

void IncidenceCube::step(Rng& rng) {
  if (n_ == 1) return;          // the unique cube has no 0-cell to move on
  if (rng.below(2)) return;     // lazy coin; keeps the chain aperiodic
  int r, c, s;
  int rh, ch, sh;  // the opposite corner coordinates of the 2x2x2 flip
  if (proper()) {
    const std::uint32_t n3 = std::uint32_t(n_) * n_ * n_;
    std::uint32_t flat;
    do {
      flat = rng.below(n3);
    } while (v_[flat] != 0);
    s = int(flat % n_);
    c = int(flat / n_ % n_);
    r = int(flat / n_ / n_);
    int two[2];
    line_positives(c, s, 0, two);
    rh = two[0];
    line_positives(r, s, 1, two);
    ch = two[0];
    line_positives(r, c, 2, two);
    sh = two[0];
  } else {
    r = neg_r_;
    c = neg_c_;
    s = neg_s_;
    int two[2];
    line_positives(c, s, 0, two);
    rh = two[rng.below(2)];
    line_positives(r, s, 1, two);
    ch = two[rng.below(2)];
    line_positives(r, c, 2, two);
    sh = two[rng.below(2)];
  }
  // +1 on corners with an even number of hatted coordinates, -1 on the rest.
  v_[idx(r, c, s)] += 1;
  v_[idx(r, ch, sh)] += 1;
  v_[idx(rh, c, sh)] += 1;
  v_[idx(rh, ch, s)] += 1;
  v_[idx(r, c, sh)] -= 1;
  v_[idx(r, ch, s)] -= 1;
  v_[idx(rh, c, s)] -= 1;
  if (v_[idx(rh, ch, sh)] == 0) {
    v_[idx(rh, ch, sh)] = -1;
    neg_r_ = rh;
    neg_c_ = ch;
    neg_s_ = sh;
    neg_ = int(idx(rh, ch, sh));
  } else {
    v_[idx(rh, ch, sh)] -= 1;
    neg_r_ = neg_c_ = neg_s_ = -1;
    neg_ = -1;
  }
}

IncidenceCube chain_step(IncidenceCube state, Rng& rng) {
  state.step(rng);
  return state;
}

UniformSampler::UniformSampler(const SamplerConfig& config)
    : config_(config),
      cube_(LatinSquare::cyclic(config.order)),
      rng_(config.seed) {
  if (config.order < 1 || config.order > kMaxOrder)
    throw std::invalid_argument("sampler order out of range");
}

void UniformSampler::advance(long long proper_steps) {
  while (proper_steps > 0) {
    cube_.step(rng_);
    if (cube_.proper()) --proper_steps;
  }
}

LatinSquare UniformSampler::next() {
  if (!warmed_up_) {
    advance(config_.effective_burn_in());
    warmed_up_ = true;
  } else {
    advance(config_.effective_thin());
  }
  return cube_.to_square();
}

LatinSquare sample_uniform(const SamplerConfig& config) {
  return UniformSampler(config).next();
}

LatinSquare sample_at(const SamplerConfig& config, std::uint64_t index) {
  SamplerConfig stream = config;
  stream.seed = stream_seed(config.seed, index);
  return UniformSampler(stream).next();
}

void sample_many(const SamplerConfig& config, std::uint64_t count, int workers,
                 const std::function<void(std::uint64_t, const LatinSquare&)>& sink) {
  if (workers <= 1) {
    for (std::uint64_t k = 0; k < count; ++k) sink(k, sample_at(config, k));
    return;
  }
  constexpr std::uint64_t kChunk = 1024;
  std::vector<std::optional<LatinSquare>> block(std::size_t(std::min(count, kChunk)));
  for (std::uint64_t base = 0; base < count; base += kChunk) {
    const std::uint64_t len = std::min(kChunk, count - base);
    std::atomic<std::uint64_t> cursor{0};
    auto run = [&] {
      for (;;) {
        const std::uint64_t k = cursor.fetch_add(1);
        if (k >= len) return;
        block[std::size_t(k)] = sample_at(config, base + k);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    for (std::uint64_t k = 0; k < len; ++k) sink(base + k, *block[std::size_t(k)]);
  }
}

}  // namespace latinsq

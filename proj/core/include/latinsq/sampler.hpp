#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "latinsq/rng.hpp"
#include "latinsq/square.hpp"

namespace latinsq {

/// Markov-chain sampler settings. Negative burn_in/thin select the defaults
/// 10*n^3 and n^3.
struct SamplerConfig {
  int order = 0;
  long long burn_in = -1;
  long long thin = -1;
  std::uint64_t seed = kDefaultSeed;

  long long effective_burn_in() const {
    return burn_in >= 0 ? burn_in : 10LL * order * order * order;
  }
  long long effective_thin() const {
    return thin >= 1 ? thin : std::max(1LL, 1LL * order * order * order);
  }
};

/// 0/1 cube with unit line sums; a proper cube is exactly a Latin square
/// (value 1 at (r,c,s) iff cell (r,c) holds s). An improper cube has a single
/// -1 cell whose three lines each carry two +1 entries; improper cubes are
/// the intermediate states of the chain and are never emitted.
class IncidenceCube {
 public:
  explicit IncidenceCube(const LatinSquare& square);

  int order() const { return n_; }
  std::int8_t at(int r, int c, int s) const { return v_[idx(r, c, s)]; }
  bool proper() const { return neg_ < 0; }
  bool valid() const;
  LatinSquare to_square() const;  // requires proper()

  /// One step of the lazy +-1 chain: with probability 1/2 the state is held,
  /// otherwise a proper state picks a uniform 0-cell and an improper state
  /// resolves its -1 cell with uniform choices, flipping the spanned 2x2x2
  /// subcube. Line sums are preserved and at most one -1 cell ever exists.
  /// Order 1 has no legal move.
  void step(Rng& rng);

  friend bool operator==(const IncidenceCube&, const IncidenceCube&) = default;

 private:
  std::size_t idx(int r, int c, int s) const {
    return (std::size_t(r) * n_ + c) * n_ + s;
  }
  // The two coordinates with value +1 on a line, skipping the -1 cell.
  void line_positives(int fixed_a, int fixed_b, int axis, int out[2]) const;

  int n_ = 0;
  std::vector<std::int8_t> v_;
  int neg_r_ = -1, neg_c_ = -1, neg_s_ = -1;
  int neg_ = -1;  // flat index of the -1 cell, or -1 when proper
};

/// Pure step: returns the advanced copy.
IncidenceCube chain_step(IncidenceCube state, Rng& rng);

/// One chain. The first draw happens after burn-in; later draws are spaced
/// by the thinning interval, counting only steps taken while proper.
class UniformSampler {
 public:
  explicit UniformSampler(const SamplerConfig& config);
  LatinSquare next();
  const SamplerConfig& config() const { return config_; }

 private:
  void advance(long long proper_steps);

  SamplerConfig config_;
  IncidenceCube cube_;
  Rng rng_;
  bool warmed_up_ = false;
};

/// First draw of the stream seeded by config.seed.
LatinSquare sample_uniform(const SamplerConfig& config);

/// Draw `index` of a sampling run: an independent chain seeded by
/// stream_seed(config.seed, index). Identical for every worker layout.
LatinSquare sample_at(const SamplerConfig& config, std::uint64_t index);

/// Runs sample_at for indices [0, count) across workers; sink is called once
/// per index, in index order.
void sample_many(const SamplerConfig& config, std::uint64_t count, int workers,
                 const std::function<void(std::uint64_t, const LatinSquare&)>& sink);

}  // namespace latinsq

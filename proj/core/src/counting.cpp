#include "latinsq/counting.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace latinsq {

std::vector<Cell> PrefixCells::cells() const {
  std::vector<Cell> out;
  out.reserve(i);
  for (int k = 0; k < i; ++k) out.push_back(cell_at(m, k));
  return out;
}

Cell PrefixCells::last() const {
  if (i < 1) throw std::invalid_argument("empty prefix has no last cell");
  return cell_at(m, i - 1);
}

ConstraintSpec ConstraintSpec::block_prefix(int n, int m, int i) {
  ConstraintSpec spec{n, m};
  spec.restricted = PrefixCells{m, i}.cells();
  return spec;
}

ConstraintSpec ConstraintSpec::containing(const PartialSquare& p) {
  ConstraintSpec spec{p.order()};
  for (auto [r, c, s] : p.entries()) spec.fix(r, c, s);
  return spec;
}

bool ConstraintSpec::consistent() const {
  if (order < 1 || order > kMaxOrder) return false;
  if (bound() < 1 || bound() > order) return false;
  std::vector<std::uint64_t> row_used(order, 0), col_used(order, 0);
  std::vector<std::int16_t> cell(std::size_t(order) * order, -1);
  for (const auto& [pos, s] : fixed) {
    if (pos.r < 0 || pos.r >= order || pos.c < 0 || pos.c >= order || s >= order)
      return false;
    auto& prev = cell[std::size_t(pos.r) * order + pos.c];
    if (prev >= 0 && prev != s) return false;
    if (prev < 0) {
      const std::uint64_t bit = std::uint64_t(1) << s;
      if ((row_used[pos.r] & bit) || (col_used[pos.c] & bit)) return false;
      row_used[pos.r] |= bit;
      col_used[pos.c] |= bit;
      prev = s;
    }
  }
  for (const Cell& pos : restricted) {
    if (pos.r < 0 || pos.r >= order || pos.c < 0 || pos.c >= order) return false;
    const auto prev = cell[std::size_t(pos.r) * order + pos.c];
    if (prev >= bound()) return false;
  }
  return true;
}

std::string ConstraintSpec::key() const {
  auto fixed_sorted = fixed;
  std::sort(fixed_sorted.begin(), fixed_sorted.end());
  auto restricted_sorted = restricted;
  std::sort(restricted_sorted.begin(), restricted_sorted.end());
  restricted_sorted.erase(std::unique(restricted_sorted.begin(), restricted_sorted.end()),
                          restricted_sorted.end());
  std::ostringstream out;
  out << "n" << order << "b" << bound();
  for (const auto& [pos, s] : fixed_sorted)
    out << "F" << pos.r << "," << pos.c << "=" << int(s);
  for (const Cell& pos : restricted_sorted) out << "R" << pos.r << "," << pos.c;
  return out.str();
}

int default_workers() {
  if (const char* env = std::getenv("LATINSQ_WORKERS")) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), v);
    if (ec == std::errc() && v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

namespace {

// Per-cell candidate masks plus the running row/column availability. The
// search assigns cells in row-major order; the last row is forced, so it is
// checked without recursing.
struct SearchFrame {
  int n = 0;
  int n2 = 0;
  std::vector<std::uint64_t> allow;  // per cell
  std::vector<std::uint64_t> row_free, col_free;
  std::vector<int> r_of, c_of;  // cell index -> coordinates

  explicit SearchFrame(const ConstraintSpec& spec)
      : n(spec.order),
        n2(spec.order * spec.order),
        allow(n2, (spec.order == 64) ? ~std::uint64_t(0)
                                     : (std::uint64_t(1) << spec.order) - 1),
        row_free(n, allow[0]),
        col_free(n, allow[0]),
        r_of(n2),
        c_of(n2) {
    for (int k = 0; k < n2; ++k) {
      r_of[k] = k / n;
      c_of[k] = k % n;
    }
    const std::uint64_t low = (std::uint64_t(1) << spec.bound()) - 1;
    for (const Cell& pos : spec.restricted) allow[pos.r * n + pos.c] &= low;
    for (const auto& [pos, s] : spec.fixed)
      allow[pos.r * n + pos.c] &= std::uint64_t(1) << s;
  }

  std::uint64_t count_from(int k) {
    if (k == n2 - 2 * n) return count_last_two_rows(k);
    if (k == n2 - n) return last_row_ok(k) ? 1 : 0;  // only reached for n == 1
    const int r = r_of[k], c = c_of[k];
    std::uint64_t cand = row_free[r] & col_free[c] & allow[k];
    std::uint64_t total = 0;
    while (cand) {
      const std::uint64_t bit = cand & (0 - cand);
      cand ^= bit;
      row_free[r] ^= bit;
      col_free[c] ^= bit;
      total += count_from(k + 1);
      row_free[r] ^= bit;
      col_free[c] ^= bit;
    }
    return total;
  }

  // With n-1 rows placed each column has exactly one symbol left and those
  // symbols are pairwise distinct, so only the allow masks can reject.
  bool last_row_ok(int k) const {
    for (int c = 0; c < n; ++c)
      if (!(col_free[c] & allow[k + c])) return false;
    return true;
  }

  // With n-2 complete rows, every column has two free symbols and every
  // symbol is free in exactly two columns. Column pairs link into cycles,
  // and each cycle admits exactly two alternating assignments of the two
  // remaining rows, so the completion count is the product over cycles of
  // the number of orientations surviving the allow masks.
  std::uint64_t count_last_two_rows(int k) const {
    const std::uint64_t* allow_top = &allow[k];
    const std::uint64_t* allow_bot = &allow[k + n];
    int sym_cols[kMaxOrder][2];
    int sym_seen[kMaxOrder] = {};
    int pair_a[kMaxOrder], pair_b[kMaxOrder];
    for (int c = 0; c < n; ++c) {
      const std::uint64_t free = col_free[c];
      const int a = std::countr_zero(free);
      const int b = std::countr_zero(free & (free - 1));
      pair_a[c] = a;
      pair_b[c] = b;
      sym_cols[a][sym_seen[a]++] = c;
      sym_cols[b][sym_seen[b]++] = c;
    }
    std::uint64_t visited = 0, total = 1;
    for (int c0 = 0; c0 < n; ++c0) {
      if (visited >> c0 & 1) continue;
      int valid = 0;
      for (int o = 0; o < 2; ++o) {
        int c = c0;
        int top = o ? pair_b[c0] : pair_a[c0];
        bool ok = true;
        do {
          visited |= std::uint64_t(1) << c;
          const int bot = pair_a[c] ^ pair_b[c] ^ top;
          ok = ok && (allow_top[c] >> top & 1) && (allow_bot[c] >> bot & 1);
          const int next = sym_cols[top][sym_cols[top][0] == c];
          top = pair_a[next] ^ pair_b[next] ^ top;
          c = next;
        } while (c != c0);
        valid += ok;
      }
      if (valid == 0) return 0;
      total *= std::uint64_t(valid);
    }
    return total;
  }

  bool apply(int k, std::uint64_t bit) {
    const int r = r_of[k], c = c_of[k];
    if (!(row_free[r] & col_free[c] & allow[k] & bit)) return false;
    row_free[r] ^= bit;
    col_free[c] ^= bit;
    return true;
  }
};

// Lexicographic list of all valid assignments of cells [0, depth).
std::vector<std::vector<std::uint8_t>> expand_prefixes(const ConstraintSpec& spec,
                                                       int target, int max_depth,
                                                       int* depth_out) {
  std::vector<std::vector<std::uint8_t>> prefixes{{}};
  int depth = 0;
  SearchFrame frame(spec);
  while (depth < max_depth && int(prefixes.size()) < target && !prefixes.empty()) {
    std::vector<std::vector<std::uint8_t>> next;
    next.reserve(prefixes.size() * 2);
    for (const auto& p : prefixes) {
      SearchFrame f(spec);
      for (int k = 0; k < depth; ++k) f.apply(k, std::uint64_t(1) << p[k]);
      const int r = depth / frame.n, c = depth % frame.n;
      std::uint64_t cand = f.row_free[r] & f.col_free[c] & f.allow[depth];
      while (cand) {
        const int s = std::countr_zero(cand);
        cand &= cand - 1;
        auto q = p;
        q.push_back(std::uint8_t(s));
        next.push_back(std::move(q));
      }
    }
    prefixes = std::move(next);
    ++depth;
  }
  *depth_out = depth;
  return prefixes;
}

struct CountCache {
  std::mutex mu;
  std::map<std::string, BigCount> entries;
};

CountCache& cache() {
  static CountCache c;
  return c;
}

void check_guard(const ConstraintSpec& spec, const CountOptions& opts) {
  if (spec.order > opts.exhaustive_guard && !opts.allow_large)
    throw GuardExceeded("order " + std::to_string(spec.order) +
                        " above the exhaustive guard " +
                        std::to_string(opts.exhaustive_guard) +
                        " (pass allow_large to override)");
}

}  // namespace

BigCount count_constrained(const ConstraintSpec& spec, const CountOptions& opts) {
  check_guard(spec, opts);
  if (!spec.consistent()) return 0;

  std::string memo_key;
  if (opts.use_cache) {
    memo_key = spec.key();
    std::lock_guard lock(cache().mu);
    if (auto it = cache().entries.find(memo_key); it != cache().entries.end())
      return it->second;
  }

  const int workers = std::max(1, opts.workers ? opts.workers : default_workers());
  BigCount total = 0;
  if (workers == 1 || spec.order <= 3) {
    SearchFrame frame(spec);
    total = frame.count_from(0);
  } else {
    int depth = 0;
    const int target = std::min(4096, workers * 64);
    const int max_depth = std::min(2 * spec.order, spec.order * spec.order - spec.order);
    auto prefixes = expand_prefixes(spec, target, max_depth, &depth);
    std::vector<std::uint64_t> results(prefixes.size(), 0);
    std::atomic<std::size_t> next{0};
    auto run = [&] {
      for (;;) {
        const std::size_t idx = next.fetch_add(1);
        if (idx >= prefixes.size()) return;
        SearchFrame f(spec);
        bool ok = true;
        for (int k = 0; k < depth && ok; ++k)
          ok = f.apply(k, std::uint64_t(1) << prefixes[idx][k]);
        results[idx] = ok ? f.count_from(depth) : 0;
      }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    for (std::uint64_t r : results) total += r;
  }

  if (opts.use_cache) {
    std::lock_guard lock(cache().mu);
    cache().entries.emplace(std::move(memo_key), total);
  }
  return total;
}

std::uint64_t enumerate_constrained(const ConstraintSpec& spec,
                                    const std::function<void(const LatinSquare&)>& visit,
                                    const CountOptions& opts) {
  check_guard(spec, opts);
  if (!spec.consistent()) return 0;
  SearchFrame frame(spec);
  const int n = spec.order;
  std::vector<std::uint8_t> grid(frame.n2, 0);
  std::uint64_t visits = 0;

  auto dfs = [&](auto&& self, int k) -> void {
    if (k == frame.n2 - n) {
      if (!frame.last_row_ok(k)) return;
      for (int c = 0; c < n; ++c)
        grid[k + c] = std::uint8_t(std::countr_zero(frame.col_free[c]));
      ++visits;
      visit(LatinSquare(n, grid));
      return;
    }
    const int r = frame.r_of[k], c = frame.c_of[k];
    std::uint64_t cand = frame.row_free[r] & frame.col_free[c] & frame.allow[k];
    while (cand) {
      const std::uint64_t bit = cand & (0 - cand);
      cand ^= bit;
      grid[k] = std::uint8_t(std::countr_zero(bit));
      frame.row_free[r] ^= bit;
      frame.col_free[c] ^= bit;
      self(self, k + 1);
      frame.row_free[r] ^= bit;
      frame.col_free[c] ^= bit;
    }
  };
  dfs(dfs, 0);
  return visits;
}

BigCount count_delta(int n, int m, int i, const CountOptions& opts) {
  if (m < 2 || 2 * m > n)
    throw std::invalid_argument("block order must satisfy 2 <= m <= n/2");
  if (i < 0 || i > m * m)
    throw std::invalid_argument("prefix index out of [0, m^2]");
  return count_constrained(ConstraintSpec::block_prefix(n, m, i), opts);
}

std::optional<LatinSquare> complete(const PartialSquare& p) {
  const int n = p.order();
  const std::uint64_t full =
      (n == 64) ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
  std::vector<std::uint64_t> row_free(n, full), col_free(n, full);
  std::vector<std::int16_t> grid(std::size_t(n) * n, -1);
  std::vector<Cell> open;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (auto s = p.at(r, c)) {
        grid[std::size_t(r) * n + c] = *s;
        row_free[r] &= ~(std::uint64_t(1) << *s);
        col_free[c] &= ~(std::uint64_t(1) << *s);
      } else {
        open.push_back({r, c});
      }
    }

  // Most-constrained cell first, row-major tie break, smallest symbol first.
  auto solve = [&](auto&& self, std::size_t filled) -> bool {
    if (filled == open.size()) return true;
    std::size_t best = filled;
    int best_count = n + 1;
    for (std::size_t k = filled; k < open.size(); ++k) {
      const auto [r, c] = open[k];
      const int count = std::popcount(row_free[r] & col_free[c]);
      if (count < best_count ||
          (count == best_count && open[k] < open[best])) {
        best = k;
        best_count = count;
        if (count == 0) break;
      }
    }
    if (best_count == 0) return false;
    std::swap(open[filled], open[best]);
    const auto [r, c] = open[filled];
    std::uint64_t cand = row_free[r] & col_free[c];
    while (cand) {
      const std::uint64_t bit = cand & (0 - cand);
      cand ^= bit;
      row_free[r] ^= bit;
      col_free[c] ^= bit;
      grid[std::size_t(r) * n + c] = std::int16_t(std::countr_zero(bit));
      if (self(self, filled + 1)) return true;
      row_free[r] ^= bit;
      col_free[c] ^= bit;
      grid[std::size_t(r) * n + c] = -1;
    }
    std::swap(open[filled], open[best]);
    return false;
  };
  if (!solve(solve, 0)) return std::nullopt;
  std::vector<std::uint8_t> out(grid.begin(), grid.end());
  return LatinSquare(n, std::move(out));
}

LatinSquare build_M(int m) {
  if (m < 2) throw std::invalid_argument("bordered square needs order >= 2");
  PartialSquare p(m);
  auto put = [&](int r, int c, int sym1) {  // 1-based value
    if (auto cur = p.at(r, c)) {
      if (*cur != sym1 - 1)
        throw std::logic_error("inconsistent border prescription");
      return;
    }
    p.set(r, c, std::uint8_t(sym1 - 1));
  };
  for (int i = 1; i <= m; ++i) {
    put(0, i - 1, i);
    put(i - 1, 0, i);
  }
  if (m % 2 == 0) {
    for (int i = 1; i <= m; ++i) {
      const int v = (i % 2 == 1) ? i + 1 : i - 1;
      put(1, i - 1, v);
      put(i - 1, 1, v);
    }
  } else if (m >= 3) {
    for (int i = 1; i <= m - 3; ++i) {
      const int v = (i % 2 == 1) ? i + 1 : i - 1;
      put(1, i - 1, v);
      put(i - 1, 1, v);
    }
    const int tail[3] = {m - 1, m, m - 2};
    for (int k = 0; k < 3; ++k) {
      put(1, m - 3 + k, tail[k]);
      put(m - 3 + k, 1, tail[k]);
    }
  }
  auto square = complete(p);
  if (!square)
    throw std::runtime_error("bordered square of order " + std::to_string(m) +
                             " has no completion");
  return *square;
}

void clear_count_cache() {
  std::lock_guard lock(cache().mu);
  cache().entries.clear();
}

ConstraintSpec parse_constraints(std::string_view text) {
  // Peel off both header lines, then reuse the grid parser. Unlike a proper
  // partial square, the bound here only limits the restricted cells; fixed
  // cells may hold any symbol.
  std::istringstream in{std::string(text)};
  std::ostringstream rest;
  std::string line;
  int restrict_i = -1;
  int bound = 0;
  bool in_headers = true;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string word;
    if (in_headers && (ls >> word) && !word.empty() &&
        std::isalpha((unsigned char)word[0])) {
      if (word == "restrict") {
        if (!(ls >> restrict_i) || restrict_i < 0)
          throw ParseError("bad \"restrict\" header");
      } else if (word == "bound") {
        if (!(ls >> bound) || bound < 1) throw ParseError("bad \"bound\" header");
      } else {
        throw ParseError("unknown header \"" + word + "\"");
      }
      continue;
    }
    if (!line.empty()) in_headers = false;
    rest << line << '\n';
  }
  PartialSquare p = parse_partial(rest.str());
  ConstraintSpec spec = ConstraintSpec::containing(p);
  if (bound > p.order()) throw ParseError("bound must be in [1, order]");
  spec.symbol_bound = bound;
  if (restrict_i >= 0) {
    const int m = spec.bound();
    if (bound == 0 && restrict_i > 0)
      throw ParseError("\"restrict\" requires a \"bound\" header");
    if (restrict_i > m * m) throw ParseError("restrict index above bound^2");
    spec.restricted = PrefixCells{m, restrict_i}.cells();
  }
  return spec;
}

}  // namespace latinsq

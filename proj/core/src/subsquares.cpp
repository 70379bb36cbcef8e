#include "latinsq/subsquares.hpp"

#include <algorithm>
#include <bit>

#include "latinsq/cycles.hpp"

namespace latinsq {

std::uint64_t count_intercalates(const LatinSquare& square) {
  const int n = square.order();
  std::uint64_t total = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const RowPermutation tau = row_permutation(square, i, j);
      for (const auto& cyc : tau.cycles())
        if (cyc.size() == 2) ++total;
    }
  return total;
}

std::optional<std::vector<int>> is_subsquare(const LatinSquare& square,
                                             const std::vector<int>& rows,
                                             const std::vector<int>& cols) {
  if (rows.size() != cols.size())
    throw std::invalid_argument("row and column sets must have equal size");
  std::uint64_t syms = 0;
  for (int r : rows)
    for (int c : cols) syms |= std::uint64_t(1) << square.at(r, c);
  if (std::popcount(syms) != int(rows.size())) return std::nullopt;
  std::vector<int> out;
  for (int s = 0; s < square.order(); ++s)
    if (syms >> s & 1) out.push_back(s);
  return out;
}

namespace {

std::vector<int> mask_to_vec(std::uint64_t mask) {
  std::vector<int> out;
  for (int s = 0; mask; ++s, mask >>= 1)
    if (mask & 1) out.push_back(s);
  return out;
}

// Symbols of one row over a sorted column set.
std::uint64_t row_symbols(const LatinSquare& L, int r, const std::vector<int>& cols) {
  std::uint64_t m = 0;
  for (int c : cols) m |= std::uint64_t(1) << L.at(r, c);
  return m;
}

// Enumerate unions of distinct cycles (of the fixed row pair) whose hit sets
// total `budget` columns, then extend with further rows.
void extend_with_rows(const LatinSquare& L, int m, int r1, int r2,
                      const std::vector<int>& cols, std::uint64_t syms,
                      std::vector<SubsquareLocation>& out) {
  const int n = L.order();
  std::vector<int> candidates;
  for (int r = r2 + 1; r < n; ++r)
    if (row_symbols(L, r, cols) == syms) candidates.push_back(r);
  const int need = m - 2;
  if (int(candidates.size()) < need) return;

  std::vector<int> pick;
  auto choose = [&](auto&& self, std::size_t from, int left) -> void {
    if (left == 0) {
      SubsquareLocation loc;
      loc.rows = {r1, r2};
      loc.rows.insert(loc.rows.end(), pick.begin(), pick.end());
      loc.cols = cols;
      loc.syms = mask_to_vec(syms);
      out.push_back(std::move(loc));
      return;
    }
    for (std::size_t k = from; k + left <= candidates.size() + 0u; ++k) {
      pick.push_back(candidates[k]);
      self(self, k + 1, left - 1);
      pick.pop_back();
    }
  };
  choose(choose, 0, need);
}

}  // namespace

std::vector<SubsquareLocation> enumerate_subsquares(const LatinSquare& square, int m) {
  const int n = square.order();
  if (m < 1 || m > n) throw std::invalid_argument("subsquare order out of range");
  std::vector<SubsquareLocation> out;
  if (m == 1) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        out.push_back({{r}, {c}, {square.at(r, c)}});
    return out;
  }
  if (m == n) {
    std::vector<int> all(n);
    for (int k = 0; k < n; ++k) all[k] = k;
    return {{all, all, all}};
  }
  if (2 * m > n) return out;  // no proper subsquare above order n/2

  // Seed on the two smallest rows of the subsquare. The column support of a
  // subsquare restricted to two of its rows is a union of their row cycles,
  // so candidate supports are cycle subsets with total length m. Any further
  // row whose symbols on that support match the 2-row symbol set extends the
  // subsquare.
  for (int r1 = 0; r1 < n; ++r1) {
    for (int r2 = r1 + 1; r2 < n; ++r2) {
      const std::vector<Cycle> cycles = line_cycles(square, Axis::row, r1, r2);
      std::vector<int> cols;
      auto pick_cycles = [&](auto&& self, std::size_t from, int budget) -> void {
        if (budget == 0) {
          std::vector<int> sorted_cols = cols;
          std::sort(sorted_cols.begin(), sorted_cols.end());
          extend_with_rows(square, m, r1, r2, sorted_cols,
                           row_symbols(square, r1, sorted_cols), out);
          return;
        }
        for (std::size_t k = from; k < cycles.size(); ++k) {
          const int len = int(cycles[k].length());
          if (len > budget) continue;
          cols.insert(cols.end(), cycles[k].hits.begin(), cycles[k].hits.end());
          self(self, k + 1, budget - len);
          cols.resize(cols.size() - len);
        }
      };
      pick_cycles(pick_cycles, 0, m);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_subsquares(const LatinSquare& square, int m) {
  if (m == 2) return count_intercalates(square);
  return enumerate_subsquares(square, m).size();
}

}  // namespace latinsq

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "latinsq/counting.hpp"
#include "latinsq/square.hpp"

namespace latinsq::testing {

// Reference counter, deliberately independent of the bitmask kernel: builds
// each row as a whole permutation via std::next_permutation and validates by
// scanning. Slow but transparent; practical up to order 5.
inline std::uint64_t oracle_count(const ConstraintSpec& spec) {
  const int n = spec.order;
  if (!spec.consistent()) return 0;
  std::vector<std::vector<int>> fixed(n, std::vector<int>(n, -1));
  std::vector<std::vector<char>> restricted(n, std::vector<char>(n, 0));
  for (const auto& [cell, s] : spec.fixed) fixed[cell.r][cell.c] = s;
  for (const auto& cell : spec.restricted) restricted[cell.r][cell.c] = 1;
  const int bound = spec.bound();

  std::vector<std::vector<int>> rows(n);
  std::uint64_t count = 0;

  auto row_ok = [&](int r, const std::vector<int>& perm) {
    for (int c = 0; c < n; ++c) {
      if (fixed[r][c] >= 0 && perm[c] != fixed[r][c]) return false;
      if (restricted[r][c] && perm[c] >= bound) return false;
      for (int above = 0; above < r; ++above)
        if (rows[above][c] == perm[c]) return false;
    }
    return true;
  };

  auto recurse = [&](auto&& self, int r) -> void {
    if (r == n) {
      ++count;
      return;
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      if (row_ok(r, perm)) {
        rows[r] = perm;
        self(self, r + 1);
        rows[r].clear();
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  recurse(recurse, 0);
  return count;
}

// Brute-force intercalate count: every (row pair, column pair) combination.
inline std::uint64_t oracle_intercalates(const LatinSquare& L) {
  const int n = L.order();
  std::uint64_t count = 0;
  for (int r1 = 0; r1 < n; ++r1)
    for (int r2 = r1 + 1; r2 < n; ++r2)
      for (int c1 = 0; c1 < n; ++c1)
        for (int c2 = c1 + 1; c2 < n; ++c2)
          if (L.at(r1, c1) == L.at(r2, c2) && L.at(r1, c2) == L.at(r2, c1)) ++count;
  return count;
}

// Brute-force subsquare search over every (R, C) subset pair of size m.
inline std::vector<SubsquareLocation> oracle_subsquares(const LatinSquare& L, int m) {
  const int n = L.order();
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  auto gen = [&](auto&& self, int from) -> void {
    if (int(cur.size()) == m) {
      subsets.push_back(cur);
      return;
    }
    for (int v = from; v < n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  gen(gen, 0);

  std::vector<SubsquareLocation> out;
  for (const auto& rows : subsets)
    for (const auto& cols : subsets) {
      std::vector<char> seen(n, 0);
      int distinct = 0;
      for (int r : rows)
        for (int c : cols) {
          const int s = L.at(r, c);
          if (!seen[s]) {
            seen[s] = 1;
            ++distinct;
          }
        }
      if (distinct != m) continue;
      SubsquareLocation loc;
      loc.rows = rows;
      loc.cols = cols;
      for (int s = 0; s < n; ++s)
        if (seen[s]) loc.syms.push_back(s);
      out.push_back(std::move(loc));
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace latinsq::testing

#include "latinsq/cycles.hpp"

#include <algorithm>
#include <numeric>

namespace latinsq {

RoleMap axis_frame(Axis axis) {
  switch (axis) {
    case Axis::row: return RoleMap::identity();
    case Axis::col: return RoleMap::transpose();
    case Axis::sym: return RoleMap::row_sym();
  }
  throw std::invalid_argument("bad axis");
}

RowPermutation row_permutation(const LatinSquare& square, int i, int j) {
  const int n = square.order();
  if (i == j) throw std::invalid_argument("row permutation needs two distinct rows");
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw std::invalid_argument("row index out of range");
  RowPermutation tau{i, j, std::vector<std::uint8_t>(n)};
  for (int k = 0; k < n; ++k) tau.map[square.at(i, k)] = square.at(j, k);
  return tau;
}

std::vector<std::vector<std::uint8_t>> RowPermutation::cycles() const {
  const int n = int(map.size());
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<bool> seen(n, false);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::uint8_t> cyc;
    int x = s;
    do {
      seen[x] = true;
      cyc.push_back(std::uint8_t(x));
      x = map[x];
    } while (x != s);
    out.push_back(std::move(cyc));
  }
  return out;
}

bool Cycle::hits_index(int x) const {
  return std::binary_search(hits.begin(), hits.end(), x);
}

namespace {

// Row-axis extraction on an already-framed square.
Cycle extract_row_cycle(const LatinSquare& square, int i, int j, int seed_col) {
  const int n = square.order();
  if (i == j) throw std::invalid_argument("cycle needs two distinct lines");
  if (i < 0 || i >= n || j < 0 || j >= n || seed_col < 0 || seed_col >= n)
    throw std::invalid_argument("cycle index out of range");
  if (i > j) std::swap(i, j);

  std::vector<int> col_of(n);  // column of each symbol in line i
  for (int c = 0; c < n; ++c) col_of[square.at(i, c)] = c;

  Cycle cyc;
  cyc.line_i = i;
  cyc.line_j = j;
  int c = seed_col;
  do {
    cyc.hits.push_back(c);
    c = col_of[square.at(j, c)];  // follow tau_{i,j} through line i
  } while (c != seed_col);
  std::sort(cyc.hits.begin(), cyc.hits.end());
  cyc.sym_i.reserve(cyc.hits.size());
  cyc.sym_j.reserve(cyc.hits.size());
  for (int h : cyc.hits) {
    cyc.sym_i.push_back(square.at(i, h));
    cyc.sym_j.push_back(square.at(j, h));
  }
  return cyc;
}

LatinSquare switch_row_cycle(const LatinSquare& square, const Cycle& cycle) {
  const int n = square.order();
  if (cycle.line_i < 0 || cycle.line_j < 0 || cycle.line_i >= n || cycle.line_j >= n)
    throw std::invalid_argument("cycle lines out of range");
  std::vector<std::uint8_t> g = square.grid();
  for (std::size_t k = 0; k < cycle.hits.size(); ++k) {
    const int c = cycle.hits[k];
    if (c < 0 || c >= n ||
        square.at(cycle.line_i, c) != cycle.sym_i[k] ||
        square.at(cycle.line_j, c) != cycle.sym_j[k])
      throw std::invalid_argument("cycle entries not present in square");
    g[std::size_t(cycle.line_i) * n + c] = cycle.sym_j[k];
    g[std::size_t(cycle.line_j) * n + c] = cycle.sym_i[k];
  }
  return LatinSquare(n, std::move(g));
}

}  // namespace

Cycle extract_cycle(const LatinSquare& square, Axis axis, int i, int j, int seed) {
  if (axis == Axis::row) return extract_row_cycle(square, i, j, seed);
  Cycle cyc = extract_row_cycle(conjugate(square, axis_frame(axis)), i, j, seed);
  cyc.axis = axis;
  return cyc;
}

std::vector<Cycle> line_cycles(const LatinSquare& square, Axis axis, int i, int j) {
  const LatinSquare framed =
      axis == Axis::row ? square : conjugate(square, axis_frame(axis));
  const int n = framed.order();
  std::vector<Cycle> out;
  std::vector<bool> seen(n, false);
  for (int c = 0; c < n; ++c) {
    if (seen[c]) continue;
    Cycle cyc = extract_row_cycle(framed, i, j, c);
    cyc.axis = axis;
    for (int h : cyc.hits) seen[h] = true;
    out.push_back(std::move(cyc));
  }
  return out;
}

LatinSquare switch_cycle(const LatinSquare& square, const Cycle& cycle) {
  if (cycle.axis == Axis::row) return switch_row_cycle(square, cycle);
  const RoleMap frame = axis_frame(cycle.axis);
  LatinSquare framed = conjugate(square, frame);
  return conjugate(switch_row_cycle(framed, cycle), frame.inverse());
}

}  // namespace latinsq

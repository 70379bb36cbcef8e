#pragma once

#include <cstdint>
#include <vector>

#include "latinsq/square.hpp"

namespace latinsq {

enum class Axis { row, col, sym };

/// Role permutation that turns cycles on `axis` into row cycles of the
/// conjugated square. Row keeps the square as is, col transposes, sym swaps
/// the row and symbol roles (columns stay columns).
RoleMap axis_frame(Axis axis);

/// The permutation mapping line i of a square to line j: tau(L[i][k]) = L[j][k]
/// for every column k. Fixed-point free whenever i != j.
struct RowPermutation {
  int from = 0, to = 0;
  std::vector<std::uint8_t> map;  // map[s] = image of symbol s

  /// Cycle decomposition; each cycle starts at its smallest symbol, cycles
  /// sorted by that symbol. Cycles of a row permutation have length >= 2.
  std::vector<std::vector<std::uint8_t>> cycles() const;
};

RowPermutation row_permutation(const LatinSquare& square, int i, int j);

/// A minimal 2-line subrectangle on the given axis. Lines and hits are stored
/// in the axis frame (see axis_frame): for row cycles, line_i/line_j are rows
/// and hits are columns; for column cycles lines are columns and hits are
/// rows; for symbol cycles lines are symbols and hits are columns.
struct Cycle {
  Axis axis = Axis::row;
  int line_i = 0, line_j = 0;        // line_i < line_j
  std::vector<int> hits;             // sorted cross-line indices
  std::vector<std::uint8_t> sym_i;   // content of line_i on hits (axis frame)
  std::vector<std::uint8_t> sym_j;   // content of line_j on hits

  std::size_t length() const { return hits.size(); }
  bool hits_index(int x) const;
};

/// The cycle through cross-line `seed` of the line pair {i, j}. The result is
/// independent of which of its hits seeds the extraction.
Cycle extract_cycle(const LatinSquare& square, Axis axis, int i, int j, int seed);

/// All cycles of the line pair, ordered by smallest hit. Their hit sets
/// partition the cross-line index set.
std::vector<Cycle> line_cycles(const LatinSquare& square, Axis axis, int i, int j);

/// Exchanges the two lines of the cycle on its hit set. Throws
/// std::invalid_argument if the cycle's entries are not present in the
/// square. Switching twice (with the re-extracted cycle) is the identity.
LatinSquare switch_cycle(const LatinSquare& square, const Cycle& cycle);

}  // namespace latinsq

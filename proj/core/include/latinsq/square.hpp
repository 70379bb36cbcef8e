#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace latinsq {

/// Orders are capped so that a symbol set always fits in one 64-bit mask.
inline constexpr int kMaxOrder = 64;

struct Cell {
  int r = 0;
  int c = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Raised by the text parsers. When the failure is tied to a specific cell,
/// row()/col() are the 1-based coordinates of the first offending cell.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, int row = -1, int col = -1)
      : std::runtime_error(msg), row_(row), col_(col) {}
  int row() const { return row_; }
  int col() const { return col_; }

 private:
  int row_;
  int col_;
};

/// An order-n square over symbols 0..n-1 where every row and every column is
/// a permutation of the symbol set. Symbols are 0-based in memory and 1-based
/// in all text I/O. Immutable after construction; validation happens in the
/// constructor.
class LatinSquare {
 public:
  LatinSquare(int order, std::vector<std::uint8_t> grid);

  static LatinSquare cyclic(int order);
  /// Builds from 1-based row data, e.g. {{1,2},{2,1}}. Intended for fixtures.
  static LatinSquare from_rows(const std::vector<std::vector<int>>& rows);

  int order() const { return n_; }
  std::uint8_t at(int r, int c) const { return grid_[std::size_t(r) * n_ + c]; }
  const std::vector<std::uint8_t>& grid() const { return grid_; }

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

 private:
  int n_;
  std::vector<std::uint8_t> grid_;
};

/// An order-n square whose cells are optionally filled, with no symbol
/// repeated in a row or column. symbol_bound() is the largest allowed stored
/// symbol count (symbols are 0..symbol_bound()-1); defaults to the order.
class PartialSquare {
 public:
  explicit PartialSquare(int order, int symbol_bound = 0);

  /// 1-based row data with 0 meaning empty, e.g. {{1,0},{0,1}}.
  static PartialSquare from_rows(const std::vector<std::vector<int>>& rows,
                                 int symbol_bound = 0);
  static PartialSquare of(const LatinSquare& square);

  int order() const { return n_; }
  int symbol_bound() const { return bound_; }
  bool filled(int r, int c) const { return grid_[std::size_t(r) * n_ + c] >= 0; }
  std::optional<std::uint8_t> at(int r, int c) const;
  int size() const { return filled_; }

  /// Throws std::invalid_argument on a row/column repeat or a symbol at or
  /// above the bound.
  void set(int r, int c, std::uint8_t s);
  void unset(int r, int c);

  std::uint64_t row_used(int r) const { return row_used_[r]; }
  std::uint64_t col_used(int c) const { return col_used_[c]; }

  /// Filled entries in row-major order as 0-based (row, col, symbol).
  std::vector<std::tuple<int, int, std::uint8_t>> entries() const;
  bool contained_in(const LatinSquare& square) const;

  friend bool operator==(const PartialSquare&, const PartialSquare&) = default;

 private:
  int n_;
  int bound_;
  int filled_ = 0;
  std::vector<std::int16_t> grid_;  // -1 for empty
  std::vector<std::uint64_t> row_used_, col_used_;
};

/// A subsquare position: equal-size row, column and symbol subsets, sorted,
/// 0-based.
struct SubsquareLocation {
  std::vector<int> rows, cols, syms;
  friend bool operator==(const SubsquareLocation&, const SubsquareLocation&) = default;
  friend auto operator<=>(const SubsquareLocation&, const SubsquareLocation&) = default;
};

/// A permutation of the three entry roles (row, column, symbol). Position k
/// of the output triple takes coordinate src[k] of the input triple, so
/// {1,0,2} is the transpose and {2,1,0} swaps the row and symbol roles.
struct RoleMap {
  std::array<int, 3> src{0, 1, 2};

  static constexpr RoleMap identity() { return {{0, 1, 2}}; }
  static constexpr RoleMap transpose() { return {{1, 0, 2}}; }
  static constexpr RoleMap row_sym() { return {{2, 1, 0}}; }
  static constexpr RoleMap col_sym() { return {{0, 2, 1}}; }

  RoleMap inverse() const;
  bool valid() const;
  friend bool operator==(const RoleMap&, const RoleMap&) = default;
};

/// Applies a role permutation to the entry set: (x0,x1,x2) becomes
/// (x.src[0], x.src[1], x.src[2]). Latinness is preserved.
LatinSquare conjugate(const LatinSquare& square, const RoleMap& map);

/// Text format: first line is the order, then one line per row of 1-based
/// symbols. Partial squares use 0 for empty cells and may carry an optional
/// "bound m" header line before the order.
LatinSquare parse_square(std::string_view text);
PartialSquare parse_partial(std::string_view text);
std::string serialize(const LatinSquare& square);
std::string serialize(const PartialSquare& square);

}  // namespace latinsq

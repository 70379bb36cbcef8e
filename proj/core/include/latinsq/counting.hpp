#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "latinsq/square.hpp"

namespace latinsq {

/// Exact nonnegative integer for all counting results. No floating point is
/// involved anywhere on a counting path.
using BigCount = boost::multiprecision::cpp_int;

/// Thrown when an exhaustive operation is requested above the order guard.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The row-major cell prefix of the top-left m-by-m block: cells() is the
/// first i cells, last() the i-th one.
struct PrefixCells {
  int m = 0;
  int i = 0;

  static Cell cell_at(int m, int k) { return Cell{k / m, k % m}; }
  std::vector<Cell> cells() const;
  Cell last() const;
};

/// A set of order-n Latin squares cut out by two kinds of cell constraints:
/// fixed cells must hold a given symbol, restricted cells must hold a symbol
/// below symbol_bound.
struct ConstraintSpec {
  int order = 0;
  int symbol_bound = 0;  // bound for restricted cells; 0 means the order
  std::vector<std::pair<Cell, std::uint8_t>> fixed;
  std::vector<Cell> restricted;

  static ConstraintSpec unconstrained(int n) { return {n}; }
  /// Squares whose first i block cells (block order m) hold symbols below m.
  static ConstraintSpec block_prefix(int n, int m, int i);
  /// Squares containing the given partial square.
  static ConstraintSpec containing(const PartialSquare& p);

  void fix(int r, int c, std::uint8_t s) { fixed.push_back({{r, c}, s}); }
  void restrict_cell(int r, int c) { restricted.push_back({r, c}); }
  int bound() const { return symbol_bound == 0 ? order : symbol_bound; }

  /// False when the fixed cells repeat a symbol in a line or collide with a
  /// restriction; such specs are vacuous and count 0.
  bool consistent() const;
  /// Canonical text form, used as the memo key.
  std::string key() const;
};

struct CountOptions {
  int workers = 0;             // 0 means default_workers()
  bool use_cache = true;       // memoise counts process-wide
  int exhaustive_guard = 6;    // largest order allowed without allow_large
  bool allow_large = false;
};

/// Worker count from LATINSQ_WORKERS, else hardware concurrency.
int default_workers();

/// Exact number of order-n Latin squares satisfying the spec. Deterministic
/// and independent of the worker count. Inconsistent specs count 0. Throws
/// GuardExceeded above the order guard.
BigCount count_constrained(const ConstraintSpec& spec, const CountOptions& opts = {});

/// Visits every satisfying square exactly once (row-major generation order)
/// and returns the visit count.
std::uint64_t enumerate_constrained(const ConstraintSpec& spec,
                                    const std::function<void(const LatinSquare&)>& visit,
                                    const CountOptions& opts = {});

/// |Delta_i|: squares whose first i cells of the m-by-m corner block (in
/// row-major order) all hold symbols below m. Requires 2 <= m <= n/2 and
/// 0 <= i <= m*m.
BigCount count_delta(int n, int m, int i, const CountOptions& opts = {});

/// Deterministic completion of a partial square, or nullopt when none
/// exists. Searches most-constrained cell first, smallest symbol first.
std::optional<LatinSquare> complete(const PartialSquare& p);

/// The order-m square with both border rows and columns prescribed: line 1
/// is the identity, line 2 pairs adjacent symbols (with a 3-cycle tail when
/// m is odd), interior filled by complete(). Defined for m >= 2.
LatinSquare build_M(int m);

void clear_count_cache();

/// Constraint file: optional "bound m" and "restrict i" header lines, then a
/// partial square grid whose filled cells become fixed cells. "restrict i"
/// restricts the first i cells of the m-by-m corner, where m is the bound.
ConstraintSpec parse_constraints(std::string_view text);

}  // namespace latinsq

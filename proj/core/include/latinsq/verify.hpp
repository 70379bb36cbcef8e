#pragma once

#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "latinsq/counting.hpp"
#include "latinsq/cycles.hpp"
#include "latinsq/square.hpp"

namespace latinsq {

using Rational = boost::multiprecision::cpp_rational;

/// Exact probability: a rational in [0, 1], kept in lowest terms.
class ExactProb {
 public:
  ExactProb() = default;
  ExactProb(const BigCount& num, const BigCount& den);
  explicit ExactProb(Rational value);

  const Rational& value() const { return v_; }
  std::string str() const;  // "num/den"

  friend bool operator==(const ExactProb&, const ExactProb&) = default;

 private:
  Rational v_ = 0;
};

std::string rational_str(const Rational& value);

enum class Relation { equal, less_equal };

/// One exact comparison inside a verification. pass is derived from the
/// stored sides, never set independently.
struct Check {
  std::string name;
  Rational lhs, rhs;
  Relation relation = Relation::equal;
  bool pass = false;

  static Check eq(std::string name, Rational lhs, Rational rhs);
  static Check le(std::string name, Rational lhs, Rational rhs);
};

/// Verification outcome. The headline comparison is checks.front(); pass is
/// the conjunction over all checks. All arithmetic is exact rational.
struct Report {
  std::string statement;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::pair<std::string, BigCount>> counts;
  std::vector<Check> checks;
  double seconds = 0;

  bool pass() const;
  const Check& headline() const { return checks.front(); }
  void add_param(const std::string& key, const std::string& value);
  void add_count(const std::string& key, BigCount value);
  std::string to_json() const;
};

std::string reports_to_json(const std::vector<Report>& reports);

/// Whether the entries of the two columns (rows) pair up into complete
/// column (row) cycles: both lines are filled on the same index set and
/// carry the same symbol set there.
bool columns_form_cycle_union(const PartialSquare& p, int c1, int c2);
bool rows_form_cycle_union(const PartialSquare& p, int r1, int r2);

/// Exact equality Pr(Delta_i | Delta_{i-1}) = alpha / (n + alpha - m) for
/// the first-column family i = m^2+1-alpha*m (variant row) or the first-row
/// family i = m+1-alpha (variant col), plus the switching count identity
/// (n-m)|Delta_i| = alpha(|Delta_{i-1}| - |Delta_i|).
Report verify_setnrc(int n, int m, int alpha, Axis variant,
                     const CountOptions& opts = {});

/// Exact equality Pr(X | A) = 1/(k+1): A is the set of squares containing P,
/// X those whose row cycle through (r, c) against row r_prime avoids the
/// other occupied columns of row r. Checks |A| = (k+1)|X| and |Y| = k|X|.
/// Requires the occupied columns of row r to pairwise form unions of column
/// cycles with column c (checked).
Report verify_prelim(const PartialSquare& P, int r, int c, int r_prime,
                     const CountOptions& opts = {});

/// Boundary-cell inequality for the m-th row (axis row, i = m^2-m+j) or m-th
/// column (axis col, i = j*m): (n-m)|Delta_i| <= j |Delta_{i-1} \ Delta_i|,
/// the divisibility j | (n-m)|Delta_i|, and the stated probability bound
/// j/(n+j-m).
Report verify_boundary(int n, int m, int j, Axis axis,
                       const CountOptions& opts = {});

enum class StepMode { new_line, column_cycles, row_cycles, none };
std::string to_string(StepMode mode);

/// One-entry extension inequality: with X = |L_{P + entry}|, Y = |L_P|,
/// checks (n-m) X <= f (Y - X) where f is 1, |C'| or |R'| depending on the
/// mode, after validating the mode's precondition on P and the entry.
Report verify_step(const PartialSquare& P, int r, int c, std::uint8_t s,
                   StepMode mode, const CountOptions& opts = {});

/// Cell order and per-cell lemma factors used to bound the probability of a
/// fixed bordered block, cell by cell. Cells partition the m-by-m grid;
/// steps with mode none carry no usable bound (factor 1, excluded from the
/// bounded-position count).
struct ChainStep {
  Cell cell;
  StepMode mode = StepMode::none;
  int factor = 1;
};

struct ChainSchedule {
  int m = 0;
  std::vector<ChainStep> steps;

  BigCount factor_product() const;
  int bounded_positions() const;
};

/// The schedule for block order m >= 2: m = 3 uses the bespoke 9-cell order
/// with factors (1,1,1,1,1,2,1,2,3); other orders interleave the first two
/// rows, then the first two columns, then sweep the interior row-major with
/// factor-m boundary cells.
ChainSchedule chain_schedule(int m);

/// Structural checks on chain_schedule(m): cells partition the grid, the
/// factor multiset matches the closed form for its parity, and the factor
/// product equals 2^{m-1} m^{2m-5} (even m) or 2^{m-2} m^{2m-5} (odd m >= 5).
Report verify_chain_schedule(int m);

/// Closed-form bounds for the probability that a fixed m-by-m window is a
/// subsquare, and the derived E_m bounds. closed_form and product_form are
/// exactly equal.
struct TheoremBounds {
  Rational closed_form;   // n^2 (n+1-m)^2 / (m^2 C(n,m)^4)
  Rational product_form;  // (prod j/(n+j-m))^2 (prod_2^{m-1} j/(n+j-m))^2
  Rational chain_bound;   // schedule factors / (n-m)^{bounded positions}
  Rational em_closed;     // C(n,m)^3 * closed_form
  Rational em_chain;      // C(n,m)^3 * m^{m^2} * chain_bound
};

TheoremBounds theorem_bounds(int n, int m);

/// Closed form == product form (symbolically over 2 <= m <= n/2 <= limit)
/// and, when with_counts, the exact corner probability
/// count_delta(n,m,m^2)/count_delta(n,m,0) <= closed_form.
Report verify_subsqbound(int n, int m, bool with_counts,
                         const CountOptions& opts = {});

/// Exact E_3(n) = C(n,3)^3 * 12 * |L_P| / |LS(n)| with P the bordered block
/// in the corner, checked against the finite chain bound
/// C(n,3)^3 * 144/(n-3)^9 and the closed-form bound.
Report verify_e3(int n, const CountOptions& opts = {});

/// The schedule for block order m embedded at order n: verify_step for every
/// lemma-tagged step of chain_schedule(m) on the prefixes of the bordered
/// block. Returns one report per tagged step.
std::vector<Report> verify_chain_steps(int n, int m, const CountOptions& opts = {});

/// The full verification matrix: fast tier (n, m) in {(4,2), (5,2)}, slow
/// tier adds {(6,2), (6,3)}.
std::vector<Report> verify_all(bool slow, const CountOptions& opts = {});

}  // namespace latinsq

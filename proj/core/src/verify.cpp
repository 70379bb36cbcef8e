#include "latinsq/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace latinsq {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

BigCount binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigCount out = 1;
  for (int j = 1; j <= k; ++j) {
    out *= n - k + j;
    out /= j;
  }
  return out;
}

BigCount ipow(BigCount base, int exp) {
  BigCount out = 1;
  for (int k = 0; k < exp; ++k) out *= base;
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

ExactProb::ExactProb(const BigCount& num, const BigCount& den) {
  if (den <= 0) throw std::invalid_argument("probability needs a positive denominator");
  v_ = Rational(num, den);
  if (v_ < 0 || v_ > 1) throw std::invalid_argument("probability outside [0, 1]");
}

ExactProb::ExactProb(Rational value) : v_(std::move(value)) {
  if (v_ < 0 || v_ > 1) throw std::invalid_argument("probability outside [0, 1]");
}

std::string rational_str(const Rational& value) {
  const BigCount num = boost::multiprecision::numerator(value);
  const BigCount den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string ExactProb::str() const { return rational_str(v_); }

Check Check::eq(std::string name, Rational lhs, Rational rhs) {
  Check c{std::move(name), std::move(lhs), std::move(rhs), Relation::equal, false};
  c.pass = c.lhs == c.rhs;
  return c;
}

Check Check::le(std::string name, Rational lhs, Rational rhs) {
  Check c{std::move(name), std::move(lhs), std::move(rhs), Relation::less_equal, false};
  c.pass = c.lhs <= c.rhs;
  return c;
}

bool Report::pass() const {
  if (checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.pass; });
}

void Report::add_param(const std::string& key, const std::string& value) {
  params.emplace_back(key, value);
}

void Report::add_count(const std::string& key, BigCount value) {
  counts.emplace_back(key, std::move(value));
}

std::string Report::to_json() const {
  std::ostringstream out;
  out << "{\"statement\":\"" << json_escape(statement) << "\",\"params\":{";
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (k) out << ",";
    out << "\"" << json_escape(params[k].first) << "\":\""
        << json_escape(params[k].second) << "\"";
  }
  out << "},\"counts\":{";
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (k) out << ",";
    out << "\"" << json_escape(counts[k].first) << "\":\"" << counts[k].second.str()
        << "\"";
  }
  out << "},";
  const Check& head = headline();
  auto rel = [](Relation r) { return r == Relation::equal ? "=" : "<="; };
  out << "\"lhs\":\"" << rational_str(head.lhs) << "\",\"rhs\":\""
      << rational_str(head.rhs) << "\",\"relation\":\"" << rel(head.relation)
      << "\",\"pass\":" << (pass() ? "true" : "false");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", seconds);
  out << ",\"seconds\":" << buf << ",\"checks\":[";
  for (std::size_t k = 0; k < checks.size(); ++k) {
    if (k) out << ",";
    out << "{\"name\":\"" << json_escape(checks[k].name) << "\",\"lhs\":\""
        << rational_str(checks[k].lhs) << "\",\"rhs\":\""
        << rational_str(checks[k].rhs) << "\",\"relation\":\""
        << rel(checks[k].relation)
        << "\",\"pass\":" << (checks[k].pass ? "true" : "false") << "}";
  }
  out << "]}";
  return out.str();
}

std::string reports_to_json(const std::vector<Report>& reports) {
  std::ostringstream out;
  bool all = true;
  for (const Report& r : reports) all = all && r.pass();
  out << "{\"pass\":" << (all ? "true" : "false") << ",\"reports\":[";
  for (std::size_t k = 0; k < reports.size(); ++k) {
    if (k) out << ",";
    out << reports[k].to_json();
  }
  out << "]}";
  return out.str();
}

bool columns_form_cycle_union(const PartialSquare& p, int c1, int c2) {
  if (c1 == c2) return false;
  std::uint64_t syms1 = 0, syms2 = 0;
  for (int r = 0; r < p.order(); ++r) {
    const auto a = p.at(r, c1), b = p.at(r, c2);
    if (a.has_value() != b.has_value()) return false;
    if (a) {
      syms1 |= std::uint64_t(1) << *a;
      syms2 |= std::uint64_t(1) << *b;
    }
  }
  return syms1 == syms2;
}

bool rows_form_cycle_union(const PartialSquare& p, int r1, int r2) {
  if (r1 == r2) return false;
  std::uint64_t syms1 = 0, syms2 = 0;
  for (int c = 0; c < p.order(); ++c) {
    const auto a = p.at(r1, c), b = p.at(r2, c);
    if (a.has_value() != b.has_value()) return false;
    if (a) {
      syms1 |= std::uint64_t(1) << *a;
      syms2 |= std::uint64_t(1) << *b;
    }
  }
  return syms1 == syms2;
}

Report verify_setnrc(int n, int m, int alpha, Axis variant, const CountOptions& opts) {
  const auto start = Clock::now();
  if (m < 2 || 2 * m > n) throw std::invalid_argument("need 2 <= m <= n/2");
  if (alpha < 1 || alpha > m) throw std::invalid_argument("alpha must be in [1, m]");
  if (variant == Axis::sym) throw std::invalid_argument("variant is row or col");

  const int i = variant == Axis::row ? m * m + 1 - alpha * m : m + 1 - alpha;
  const BigCount di = count_delta(n, m, i, opts);
  const BigCount dprev = count_delta(n, m, i - 1, opts);

  Report rep;
  rep.statement = "setnrc";
  rep.add_param("n", std::to_string(n));
  rep.add_param("m", std::to_string(m));
  rep.add_param("alpha", std::to_string(alpha));
  rep.add_param("variant", variant == Axis::row ? "row" : "col");
  rep.add_param("i", std::to_string(i));
  rep.add_count("delta_i", di);
  rep.add_count("delta_prev", dprev);

  const Rational lhs = dprev > 0 ? Rational(di, dprev) : Rational(-1);
  rep.checks.push_back(
      Check::eq("probability", lhs, Rational(alpha, n + alpha - m)));
  rep.checks.push_back(Check::eq("switch_count_identity",
                                 Rational((n - m) * di),
                                 Rational(alpha * (dprev - di))));
  rep.seconds = elapsed(start);
  return rep;
}

Report verify_prelim(const PartialSquare& P, int r, int c, int r_prime,
                     const CountOptions& opts) {
  const auto start = Clock::now();
  const int n = P.order();
  const int m = P.symbol_bound();
  if (m >= n)
    throw std::invalid_argument("partial square must carry a bound below its order");
  for (auto [er, ec, es] : P.entries())
    if (er >= m || ec >= m || es >= m)
      throw std::invalid_argument("entries must lie in the bound-by-bound corner");
  if (!P.at(r, c)) throw std::invalid_argument("cell (r, c) must be filled");
  if (r_prime < m || r_prime >= n)
    throw std::invalid_argument("r_prime must lie outside the corner rows");

  std::vector<int> others;  // occupied columns of row r besides c
  for (int cc = 0; cc < m; ++cc)
    if (cc != c && P.filled(r, cc)) others.push_back(cc);
  for (int cc : others)
    if (!columns_form_cycle_union(P, c, cc))
      throw std::invalid_argument(
          "columns " + std::to_string(c + 1) + " and " + std::to_string(cc + 1) +
          " do not form a union of column cycles");
  const int k = int(others.size());

  std::uint64_t in_x = 0;
  const std::uint64_t total = enumerate_constrained(
      ConstraintSpec::containing(P),
      [&](const LatinSquare& L) {
        const Cycle cyc = extract_cycle(L, Axis::row, r, r_prime, c);
        for (int cc : others)
          if (cyc.hits_index(cc)) return;
        ++in_x;
      },
      opts);

  Report rep;
  rep.statement = "prelim";
  rep.add_param("n", std::to_string(n));
  rep.add_param("m", std::to_string(m));
  rep.add_param("r", std::to_string(r + 1));
  rep.add_param("c", std::to_string(c + 1));
  rep.add_param("r_prime", std::to_string(r_prime + 1));
  rep.add_param("k", std::to_string(k));
  rep.add_count("A", total);
  rep.add_count("X", in_x);
  rep.add_count("Y", total - in_x);

  const Rational lhs = total > 0 ? Rational(in_x, total) : Rational(-1);
  rep.checks.push_back(Check::eq("probability", lhs, Rational(1, k + 1)));
  rep.checks.push_back(Check::eq("a_equals_k1_x", Rational(BigCount(total)),
                                 Rational(BigCount(k + 1) * in_x)));
  rep.checks.push_back(Check::eq("y_equals_k_x", Rational(BigCount(total - in_x)),
                                 Rational(BigCount(k) * in_x)));
  rep.checks.push_back(
      Check::eq("divisibility", Rational(BigCount(total) % (k + 1)), Rational(0)));
  rep.seconds = elapsed(start);
  return rep;
}

Report verify_boundary(int n, int m, int j, Axis axis, const CountOptions& opts) {
  const auto start = Clock::now();
  if (m < 2 || 2 * m > n) throw std::invalid_argument("need 2 <= m <= n/2");
  if (j < 1 || j > m) throw std::invalid_argument("j must be in [1, m]");
  if (axis == Axis::sym) throw std::invalid_argument("axis is row or col");

  const int i = axis == Axis::row ? m * m - m + j : j * m;
  const BigCount di = count_delta(n, m, i, opts);
  const BigCount dprev = count_delta(n, m, i - 1, opts);
  const BigCount switches = (n - m) * di;
  const BigCount reverse_cap = j * (dprev - di);

  Report rep;
  rep.statement = axis == Axis::row ? "boundary-row" : "boundary-col";
  rep.add_param("n", std::to_string(n));
  rep.add_param("m", std::to_string(m));
  rep.add_param("j", std::to_string(j));
  rep.add_param("i", std::to_string(i));
  if (axis == Axis::col)
    rep.add_param("note", "mirrors the row-axis argument under transposition");
  rep.add_count("delta_i", di);
  rep.add_count("delta_prev", dprev);
  rep.add_count("slack", reverse_cap - switches);

  rep.checks.push_back(
      Check::le("switch_count_inequality", Rational(switches), Rational(reverse_cap)));
  rep.checks.push_back(
      Check::eq("divisibility", Rational(switches % j), Rational(0)));
  const Rational lhs = dprev > 0 ? Rational(di, dprev) : Rational(-1);
  rep.checks.push_back(
      Check::le("probability_bound", lhs, Rational(j, n + j - m)));
  rep.seconds = elapsed(start);
  return rep;
}

std::string to_string(StepMode mode) {
  switch (mode) {
    case StepMode::new_line: return "new-line";
    case StepMode::column_cycles: return "column-cycles";
    case StepMode::row_cycles: return "row-cycles";
    case StepMode::none: return "none";
  }
  return "?";
}

Report verify_step(const PartialSquare& P, int r, int c, std::uint8_t s,
                   StepMode mode, const CountOptions& opts) {
  const auto start = Clock::now();
  const int n = P.order();
  const int m = P.symbol_bound();
  if (m >= n)
    throw std::invalid_argument("partial square must carry a bound below its order");
  if (r >= m || c >= m || s >= m)
    throw std::invalid_argument("entry must lie in the bound-by-bound corner");
  for (auto [er, ec, es] : P.entries())
    if (er >= m || ec >= m)
      throw std::invalid_argument("entries must lie in the bound-by-bound corner");
  if (P.filled(r, c)) throw std::invalid_argument("entry cell already filled");

  PartialSquare extended = P;
  extended.set(r, c, s);  // throws if the entry conflicts

  int factor = 1;
  switch (mode) {
    case StepMode::new_line: {
      bool fresh_row = true, fresh_col = true, fresh_sym = true;
      for (auto [er, ec, es] : P.entries()) {
        fresh_row &= er != r;
        fresh_col &= ec != c;
        fresh_sym &= es != s;
      }
      if (!fresh_row && !fresh_col && !fresh_sym)
        throw std::invalid_argument(
            "new-line mode needs a fresh row, column or symbol");
      factor = 1;
      break;
    }
    case StepMode::column_cycles: {
      std::vector<int> cols;
      for (int cc = 0; cc < m; ++cc)
        if (extended.filled(r, cc)) cols.push_back(cc);
      for (int cc : cols)
        if (cc != c && !columns_form_cycle_union(extended, c, cc))
          throw std::invalid_argument(
              "column-cycles mode: columns " + std::to_string(c + 1) + " and " +
              std::to_string(cc + 1) + " do not form a union of column cycles");
      factor = int(cols.size());
      break;
    }
    case StepMode::row_cycles: {
      std::vector<int> rows;
      for (int rr = 0; rr < m; ++rr)
        if (extended.filled(rr, c)) rows.push_back(rr);
      for (int rr : rows)
        if (rr != r && !rows_form_cycle_union(extended, r, rr))
          throw std::invalid_argument(
              "row-cycles mode: rows " + std::to_string(r + 1) + " and " +
              std::to_string(rr + 1) + " do not form a union of row cycles");
      factor = int(rows.size());
      break;
    }
    case StepMode::none:
      throw std::invalid_argument("step mode none has no lemma to verify");
  }

  const BigCount y = count_constrained(ConstraintSpec::containing(P), opts);
  const BigCount x = count_constrained(ConstraintSpec::containing(extended), opts);

  Report rep;
  rep.statement = "step";
  rep.add_param("n", std::to_string(n));
  rep.add_param("m", std::to_string(m));
  rep.add_param("entry", "(" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                             "," + std::to_string(s + 1) + ")");
  rep.add_param("mode", to_string(mode));
  rep.add_param("factor", std::to_string(factor));
  rep.add_count("X", x);
  rep.add_count("Y", y);
  rep.add_count("slack", factor * (y - x) - (n - m) * x);

  rep.checks.push_back(Check::le("switch_count_inequality", Rational((n - m) * x),
                                 Rational(factor * (y - x))));
  const Rational pr = y > 0 ? Rational(x, y) : Rational(0);
  rep.checks.push_back(
      Check::le("probability_bound", pr, Rational(factor, n - m)));
  rep.seconds = elapsed(start);
  return rep;
}

BigCount ChainSchedule::factor_product() const {
  BigCount out = 1;
  for (const ChainStep& st : steps)
    if (st.mode != StepMode::none) out *= st.factor;
  return out;
}

int ChainSchedule::bounded_positions() const {
  int out = 0;
  for (const ChainStep& st : steps)
    if (st.mode != StepMode::none) ++out;
  return out;
}

ChainSchedule chain_schedule(int m) {
  if (m < 2) throw std::invalid_argument("chain schedule needs m >= 2");
  ChainSchedule sched{m, {}};
  auto add = [&](int r1, int c1, StepMode mode, int factor) {
    sched.steps.push_back({Cell{r1 - 1, c1 - 1}, mode, factor});
  };

  if (m == 3) {
    // Bespoke 9-cell order for the order-3 block; every cell carries a bound.
    add(1, 1, StepMode::new_line, 1);
    add(1, 2, StepMode::new_line, 1);
    add(2, 1, StepMode::new_line, 1);
    add(2, 2, StepMode::new_line, 1);
    add(1, 3, StepMode::new_line, 1);
    add(2, 3, StepMode::row_cycles, 2);
    add(3, 1, StepMode::new_line, 1);
    add(3, 2, StepMode::column_cycles, 2);
    add(3, 3, StepMode::row_cycles, 3);
    return sched;
  }

  const bool even = m % 2 == 0;
  // First two rows, interleaved.
  for (int i = 1; i <= 2 * m; ++i) {
    if (i % 2 == 1) {
      add(1, (i + 1) / 2, StepMode::new_line, 1);
      continue;
    }
    const int c = i / 2;
    if (even) {
      if (c % 2 == 1)
        add(2, c, StepMode::new_line, 1);  // fresh symbol c+1
      else
        add(2, c, StepMode::row_cycles, 2);
    } else {
      if (c == m)
        add(2, c, StepMode::row_cycles, 2);
      else if (c >= m - 2 || c % 2 == 1)
        add(2, c, StepMode::new_line, 1);  // fresh symbol
      else
        add(2, c, StepMode::row_cycles, 2);
    }
  }
  // First two columns, rows 3..m, interleaved.
  for (int i = 2 * m + 1; i <= 4 * m - 4; ++i) {
    if (i % 2 == 1) {
      add((i - 2 * m + 5) / 2, 1, StepMode::new_line, 1);  // fresh row
      continue;
    }
    const int r = (i - 2 * m + 4) / 2;
    const bool cycles_ok = even ? (r % 2 == 0) : (r % 2 == 0 && r <= m - 3) || r == m;
    if (cycles_ok)
      add(r, 2, StepMode::column_cycles, 2);
    else
      add(r, 2, StepMode::none, 1);
  }
  // Interior, row-major; only the boundary cells carry a bound.
  for (int i = 4 * m - 3; i <= m * m; ++i) {
    const int k = i - (4 * m - 3);
    const int r = 3 + k / (m - 2);
    const int c = 3 + k % (m - 2);
    if (c == m)
      add(r, c, StepMode::row_cycles, m);
    else if (r == m)
      add(r, c, StepMode::column_cycles, m);
    else
      add(r, c, StepMode::none, 1);
  }
  return sched;
}

Report verify_chain_schedule(int m) {
  const auto start = Clock::now();
  const ChainSchedule sched = chain_schedule(m);

  Report rep;
  rep.statement = "chain-schedule";
  rep.add_param("m", std::to_string(m));

  std::set<std::pair<int, int>> cells;
  for (const ChainStep& st : sched.steps) cells.insert({st.cell.r, st.cell.c});
  rep.checks.push_back(Check::eq("cells_partition_block",
                                 Rational(BigCount(cells.size())),
                                 Rational(BigCount(m) * m)));
  rep.checks.push_back(Check::eq("step_count", Rational(BigCount(sched.steps.size())),
                                 Rational(BigCount(m) * m)));

  std::map<int, int> tagged;  // factor -> multiplicity over lemma-tagged steps
  for (const ChainStep& st : sched.steps)
    if (st.mode != StepMode::none) ++tagged[st.factor];

  auto expect = [&](const char* name, int factor, int count) {
    rep.checks.push_back(Check::eq(name, Rational(tagged[factor]), Rational(count)));
  };
  if (m == 2) {
    expect("ones", 1, 3);
    expect("twos", 2, 1);
    rep.checks.push_back(
        Check::eq("factor_product", Rational(sched.factor_product()), Rational(2)));
  } else if (m == 3) {
    expect("ones", 1, 6);
    expect("twos", 2, 2);
    expect("threes", 3, 1);
    rep.checks.push_back(
        Check::eq("factor_product", Rational(sched.factor_product()), Rational(12)));
    const std::vector<int> want{1, 1, 1, 1, 1, 2, 1, 2, 3};
    bool order_ok = sched.steps.size() == want.size();
    for (std::size_t k = 0; order_ok && k < want.size(); ++k)
      order_ok = sched.steps[k].factor == want[k] &&
                 sched.steps[k].mode != StepMode::none;
    rep.checks.push_back(
        Check::eq("factor_tuple", Rational(order_ok ? 1 : 0), Rational(1)));
  } else if (m % 2 == 0) {
    expect("ones", 1, 5 * m / 2 - 2);
    expect("twos", 2, m - 1);
    expect("ms", m, 2 * m - 5);
    rep.checks.push_back(Check::eq("factor_product",
                                   Rational(sched.factor_product()),
                                   Rational(ipow(2, m - 1) * ipow(m, 2 * m - 5))));
  } else {
    expect("ones", 1, (5 * m - 3) / 2);
    expect("twos", 2, m - 2);
    expect("ms", m, 2 * m - 5);
    rep.checks.push_back(Check::eq("factor_product",
                                   Rational(sched.factor_product()),
                                   Rational(ipow(2, m - 2) * ipow(m, 2 * m - 5))));
  }
  rep.seconds = elapsed(start);
  return rep;
}

TheoremBounds theorem_bounds(int n, int m) {
  if (m < 2 || 2 * m > n) throw std::invalid_argument("need 2 <= m <= n/2");
  TheoremBounds out;
  const BigCount b = binom(n, m);
  out.closed_form = Rational(BigCount(n) * n * (n + 1 - m) * (n + 1 - m),
                             BigCount(m) * m * ipow(b, 4));
  Rational full = 1, inner = 1;
  for (int j = 1; j <= m; ++j) full *= Rational(j, n + j - m);
  for (int j = 2; j <= m - 1; ++j) inner *= Rational(j, n + j - m);
  out.product_form = full * full * inner * inner;

  const ChainSchedule sched = chain_schedule(m);
  out.chain_bound = Rational(sched.factor_product(),
                             ipow(n - m, sched.bounded_positions()));
  out.em_closed = Rational(ipow(b, 3)) * out.closed_form;
  out.em_chain = Rational(ipow(b, 3) * ipow(m, m * m)) * out.chain_bound;
  return out;
}

Report verify_subsqbound(int n, int m, bool with_counts, const CountOptions& opts) {
  const auto start = Clock::now();
  const TheoremBounds bounds = theorem_bounds(n, m);

  Report rep;
  rep.statement = "thm-subsqbound";
  rep.add_param("n", std::to_string(n));
  rep.add_param("m", std::to_string(m));
  rep.checks.push_back(
      Check::eq("closed_eq_product", bounds.closed_form, bounds.product_form));

  bool sweep = true;
  for (int nn = 4; nn <= 32 && sweep; ++nn)
    for (int mm = 2; 2 * mm <= nn && sweep; ++mm) {
      const TheoremBounds b = theorem_bounds(nn, mm);
      sweep = b.closed_form == b.product_form;
    }
  rep.checks.push_back(
      Check::eq("closed_eq_product_all_n_le_32", Rational(sweep ? 1 : 0), Rational(1)));

  if (with_counts) {
    const BigCount top = count_delta(n, m, m * m, opts);
    const BigCount all = count_delta(n, m, 0, opts);
    rep.add_count("delta_top", top);
    rep.add_count("delta_0", all);
    const Rational lhs = all > 0 ? Rational(top, all) : Rational(-1);
    rep.checks.push_back(Check::le("corner_probability", lhs, bounds.closed_form));
  }
  rep.seconds = elapsed(start);
  return rep;
}

Report verify_e3(int n, const CountOptions& opts) {
  const auto start = Clock::now();
  if (n < 6) throw std::invalid_argument("order-3 subsquares need n >= 6");

  const LatinSquare M = build_M(3);
  PartialSquare P(n, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) P.set(r, c, M.at(r, c));

  const BigCount lp = count_constrained(ConstraintSpec::containing(P), opts);
  const BigCount total = count_constrained(ConstraintSpec::unconstrained(n), opts);
  BigCount partition = 0;
  for (int s = 0; s < n; ++s) {
    ConstraintSpec one = ConstraintSpec::unconstrained(n);
    one.fix(0, 0, std::uint8_t(s));
    partition += count_constrained(one, opts);
  }

  const BigCount choices = ipow(binom(n, 3), 3);
  const Rational exact =
      total > 0 ? Rational(choices * 12 * lp, total) : Rational(-1);
  const Rational chain_bound = Rational(choices * 144, ipow(n - 3, 9));
  const TheoremBounds bounds = theorem_bounds(n, 3);

  Report rep;
  rep.statement = "e3";
  rep.add_param("n", std::to_string(n));
  rep.add_param("exact_e3", rational_str(exact));
  rep.add_param("chain_bound", rational_str(chain_bound));
  rep.add_param("closed_bound", rational_str(bounds.em_closed));
  rep.add_param("min_bound",
                rational_str(std::min(chain_bound, bounds.em_closed)));
  rep.add_count("L_P", lp);
  rep.add_count("total", total);

  rep.checks.push_back(Check::le("exact_le_chain_bound", exact, chain_bound));
  rep.checks.push_back(Check::le("exact_le_closed_bound", exact, bounds.em_closed));
  rep.checks.push_back(
      Check::eq("partition_consistency", Rational(partition), Rational(total)));
  rep.seconds = elapsed(start);
  return rep;
}

std::vector<Report> verify_chain_steps(int n, int m, const CountOptions& opts) {
  if (m < 2 || 2 * m > n) throw std::invalid_argument("need 2 <= m <= n/2");
  const LatinSquare M = build_M(m);
  const ChainSchedule sched = chain_schedule(m);
  PartialSquare prefix(n, m);
  std::vector<Report> out;
  for (std::size_t k = 0; k < sched.steps.size(); ++k) {
    const ChainStep& st = sched.steps[k];
    const std::uint8_t s = M.at(st.cell.r, st.cell.c);
    if (st.mode != StepMode::none) {
      Report rep = verify_step(prefix, st.cell.r, st.cell.c, s, st.mode, opts);
      rep.add_param("chain_index", std::to_string(k + 1));
      out.push_back(std::move(rep));
    }
    prefix.set(st.cell.r, st.cell.c, s);
  }
  return out;
}

std::vector<Report> verify_all(bool slow, const CountOptions& opts) {
  std::vector<Report> out;

  struct Instance {
    int n, m;
  };
  std::vector<Instance> fast{{4, 2}, {5, 2}};
  std::vector<Instance> tier = fast;
  if (slow) {
    tier.push_back({6, 2});
    tier.push_back({6, 3});
  }

  for (const auto [n, m] : tier)
    for (int alpha = 1; alpha <= m; ++alpha)
      for (Axis variant : {Axis::row, Axis::col})
        out.push_back(verify_setnrc(n, m, alpha, variant, opts));

  {
    // k = 0: a single-entry partial square, the cycle avoids nothing.
    PartialSquare single(5, 2);
    single.set(0, 0, 0);
    out.push_back(verify_prelim(single, 0, 0, 2, opts));

    const LatinSquare M2 = build_M(2);
    PartialSquare block(5, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) block.set(r, c, M2.at(r, c));
    for (int r_prime = 2; r_prime < 5; ++r_prime)
      out.push_back(verify_prelim(block, 0, 0, r_prime, opts));
    if (slow) {
      const LatinSquare M3 = build_M(3);
      PartialSquare block3(6, 3);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) block3.set(r, c, M3.at(r, c));
      out.push_back(verify_prelim(block3, 2, 2, 3, opts));
    }
  }

  for (const auto [n, m] : tier)
    for (int j = 1; j <= m; ++j)
      for (Axis axis : {Axis::row, Axis::col})
        out.push_back(verify_boundary(n, m, j, axis, opts));

  for (Report& rep : verify_chain_steps(5, 2, opts)) out.push_back(std::move(rep));
  if (slow)
    for (Report& rep : verify_chain_steps(6, 3, opts)) out.push_back(std::move(rep));

  for (const auto [n, m] : tier)
    out.push_back(verify_subsqbound(n, m, /*with_counts=*/true, opts));

  for (int m = 2; m <= 8; ++m) out.push_back(verify_chain_schedule(m));

  if (slow) out.push_back(verify_e3(6, opts));
  return out;
}

}  // namespace latinsq

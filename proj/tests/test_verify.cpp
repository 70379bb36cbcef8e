#include <doctest.h>

#include "latinsq/counting.hpp"
#include "latinsq/verify.hpp"

using namespace latinsq;

namespace {

PartialSquare corner_block(int n, int m) {
  const LatinSquare M = build_M(m);
  PartialSquare p(n, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) p.set(r, c, M.at(r, c));
  return p;
}

}  // namespace

TEST_CASE("exact probabilities stay in [0,1] and reduce") {
  CHECK(ExactProb(BigCount(2), BigCount(8)).str() == "1/4");
  CHECK(ExactProb(BigCount(0), BigCount(3)).str() == "0");
  CHECK_THROWS_AS(ExactProb(BigCount(3), BigCount(2)), std::invalid_argument);
  CHECK_THROWS_AS(ExactProb(BigCount(1), BigCount(0)), std::invalid_argument);
}

TEST_CASE("report json carries the schema fields") {
  Report rep;
  rep.statement = "setnrc";
  rep.add_param("n", "5");
  rep.add_count("delta_i", BigCount(42));
  rep.checks.push_back(Check::eq("probability", Rational(1, 4), Rational(1, 4)));
  rep.seconds = 0.25;
  const std::string js = rep.to_json();
  CHECK(js.find("\"statement\":\"setnrc\"") != std::string::npos);
  CHECK(js.find("\"lhs\":\"1/4\"") != std::string::npos);
  CHECK(js.find("\"relation\":\"=\"") != std::string::npos);
  CHECK(js.find("\"pass\":true") != std::string::npos);
  CHECK(js.find("\"delta_i\":\"42\"") != std::string::npos);
}

TEST_CASE("first-line conditional probabilities are exact") {
  SUBCASE("(5,2,1) column variant gives 1/4") {
    const Report rep = verify_setnrc(5, 2, 1, Axis::col);
    CHECK(rep.pass());
    CHECK(rep.headline().rhs == Rational(1, 4));
    CHECK(rep.headline().lhs == Rational(1, 4));
  }
  SUBCASE("(5,2,2) gives 2/5 in both variants") {
    for (Axis variant : {Axis::row, Axis::col}) {
      const Report rep = verify_setnrc(5, 2, 2, variant);
      CHECK(rep.pass());
      CHECK(rep.headline().lhs == Rational(2, 5));
    }
  }
  SUBCASE("(4,2,1) gives 1/3 out of the 576-square universe") {
    const Report rep = verify_setnrc(4, 2, 1, Axis::row);
    CHECK(rep.pass());
    CHECK(rep.headline().lhs == Rational(1, 3));
    bool found = false;
    for (const auto& [key, value] : rep.counts)
      found = found || (key == "delta_prev" && value == 96);
    CHECK(found);
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(verify_setnrc(5, 3, 1, Axis::row), std::invalid_argument);
    CHECK_THROWS_AS(verify_setnrc(5, 2, 3, Axis::row), std::invalid_argument);
  }
}

TEST_CASE("cycle-avoidance probability is exactly 1/(k+1)") {
  SUBCASE("k = 0 forces probability 1") {
    PartialSquare p(5, 2);
    p.set(0, 0, 0);
    const Report rep = verify_prelim(p, 0, 0, 2);
    CHECK(rep.pass());
    CHECK(rep.headline().rhs == Rational(1));
  }
  SUBCASE("corner block at (5,2) gives 1/2 for every outside row") {
    const PartialSquare block = corner_block(5, 2);
    for (int r_prime : {2, 3, 4}) {
      const Report rep = verify_prelim(block, 0, 0, r_prime);
      CHECK(rep.pass());
      CHECK(rep.headline().rhs == Rational(1, 2));
    }
  }
  SUBCASE("the column-cycle precondition is enforced") {
    PartialSquare p(5, 2);
    p.set(0, 0, 0);
    p.set(0, 1, 1);
    p.set(1, 0, 1);  // columns 1,2 filled on different row sets
    CHECK_THROWS_AS(verify_prelim(p, 0, 0, 2), std::invalid_argument);
  }
}

TEST_CASE("boundary-cell inequalities hold at (5,2)") {
  for (int j : {1, 2})
    for (Axis axis : {Axis::row, Axis::col}) {
      const Report rep = verify_boundary(5, 2, j, axis);
      CHECK(rep.pass());
    }
  // j = m coincides for both axes: same delta sets, same sides
  const Report row = verify_boundary(5, 2, 2, Axis::row);
  const Report col = verify_boundary(5, 2, 2, Axis::col);
  CHECK(row.headline().lhs == col.headline().lhs);
  CHECK(row.headline().rhs == col.headline().rhs);
}

TEST_CASE("boundary inequality is tight at (4,2), j=2") {
  const Report rep = verify_boundary(4, 2, 2, Axis::row);
  CHECK(rep.pass());
  CHECK(rep.headline().lhs == rep.headline().rhs);  // 32 = 32, slack zero
  bool found = false;
  for (const auto& [key, value] : rep.counts)
    found = found || (key == "slack" && value == 0);
  CHECK(found);
}

TEST_CASE("single-entry extension bounds at (5,2)") {
  SUBCASE("first entry into an empty block") {
    PartialSquare empty(5, 2);
    const Report rep = verify_step(empty, 0, 0, 0, StepMode::new_line);
    CHECK(rep.pass());
    // X/Y = 1/5 <= 1/(n-m) = 1/3; the sharper count inequality is exact
    CHECK(rep.headline().lhs == Rational(3 * 32256));
    CHECK(rep.headline().rhs == Rational(161280 - 32256));
  }
  SUBCASE("closing the 2x2 block with row cycles") {
    PartialSquare p(5, 2);
    p.set(0, 0, 0);
    p.set(0, 1, 1);
    p.set(1, 0, 1);
    const Report rep = verify_step(p, 1, 1, 0, StepMode::row_cycles);
    CHECK(rep.pass());
  }
  SUBCASE("mode preconditions reject") {
    PartialSquare p(5, 2);
    p.set(0, 0, 0);
    p.set(0, 1, 1);
    p.set(1, 0, 1);
    // (2,2) has its row, column and symbol all present
    CHECK_THROWS_AS(verify_step(p, 1, 1, 0, StepMode::new_line),
                    std::invalid_argument);
    // row-cycles against rows with mismatched symbol sets
    PartialSquare q(6, 3);
    q.set(0, 0, 0);
    q.set(0, 1, 1);
    q.set(1, 0, 1);
    CHECK_THROWS_AS(verify_step(q, 1, 1, 2, StepMode::row_cycles),
                    std::invalid_argument);
  }
}

TEST_CASE("chain schedules") {
  SUBCASE("m = 3 is the 9-cell tuple with product 12") {
    const ChainSchedule sched = chain_schedule(3);
    REQUIRE(sched.steps.size() == 9);
    const std::vector<Cell> cells{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 2},
                                  {1, 2}, {2, 0}, {2, 1}, {2, 2}};
    const std::vector<int> factors{1, 1, 1, 1, 1, 2, 1, 2, 3};
    for (std::size_t k = 0; k < 9; ++k) {
      CHECK(sched.steps[k].cell == cells[k]);
      CHECK(sched.steps[k].factor == factors[k]);
    }
    CHECK(sched.factor_product() == 12);
    CHECK(sched.bounded_positions() == 9);
  }
  SUBCASE("m = 4 multiset is {1x8, 2x3, 4x3} over 16 cells") {
    const ChainSchedule sched = chain_schedule(4);
    CHECK(sched.steps.size() == 16);
    int ones = 0, twos = 0, fours = 0, none = 0;
    for (const ChainStep& st : sched.steps) {
      if (st.mode == StepMode::none) { ++none; continue; }
      ones += st.factor == 1;
      twos += st.factor == 2;
      fours += st.factor == 4;
    }
    CHECK(ones == 8);
    CHECK(twos == 3);
    CHECK(fours == 3);
    CHECK(none == 2);
  }
  SUBCASE("structural report passes for m = 2..9") {
    for (int m = 2; m <= 9; ++m) CHECK(verify_chain_schedule(m).pass());
  }
  SUBCASE("m = 2 factors are (1,1,1,2)") {
    const ChainSchedule sched = chain_schedule(2);
    REQUIRE(sched.steps.size() == 4);
    CHECK(sched.factor_product() == 2);
  }
}

TEST_CASE("window probability bounds") {
  SUBCASE("(5,2) closed form is exactly 1/100 and matches the product") {
    const TheoremBounds bounds = theorem_bounds(5, 2);
    CHECK(bounds.closed_form == Rational(1, 100));
    CHECK(bounds.product_form == Rational(1, 100));
  }
  SUBCASE("(6,3) closed form is 36*16 / (9*20^4)") {
    const TheoremBounds bounds = theorem_bounds(6, 3);
    CHECK(bounds.closed_form == Rational(36 * 16, 9 * 160000));
  }
  SUBCASE("m = 2 inner product is empty") {
    const TheoremBounds bounds = theorem_bounds(4, 2);
    CHECK(bounds.closed_form == bounds.product_form);
    CHECK(bounds.closed_form == Rational(1, 36));
  }
  SUBCASE("identity sweep and exact corner probability at (5,2) and (4,2)") {
    CHECK(verify_subsqbound(5, 2, true).pass());
    const Report rep4 = verify_subsqbound(4, 2, true);
    CHECK(rep4.pass());
    // at (4,2) the corner probability meets the bound exactly: 16/576 = 1/36
    CHECK(rep4.checks.back().lhs == rep4.checks.back().rhs);
  }
}

TEST_CASE("embedded chain steps all pass at (5,2)") {
  const auto reports = verify_chain_steps(5, 2);
  REQUIRE(reports.size() == 4);  // every m=2 step carries a bound
  for (const Report& rep : reports) CHECK(rep.pass());
}

TEST_CASE("fast verification matrix passes") {
  const auto reports = verify_all(false);
  CHECK(reports.size() > 20);
  for (const Report& rep : reports) {
    CAPTURE(rep.statement);
    CHECK(rep.pass());
  }
}

#include <doctest.h>

#include "vdm/lp.hpp"
#include "vdm/rng.hpp"

using namespace vdm;
using vdm::lp::LinearConstraint;

TEST_CASE("interval interior") {
  // x >= 1 and -x >= -2: strictly feasible with the midpoint and margin 1/2.
  auto w = lp::strict_feasible(1, {}, {{{Rat(1)}, Rat(1)}, {{Rat(-1)}, Rat(-2)}});
  REQUIRE(w.has_value());
  CHECK(w->point[0] == Rat(3, 2));
  CHECK(w->margin == Rat(1, 2));
}

TEST_CASE("forced boundary point is not strictly feasible") {
  auto w = lp::strict_feasible(1, {}, {{{Rat(1)}, Rat(0)}, {{Rat(-1)}, Rat(0)}});
  CHECK(!w.has_value());
}

TEST_CASE("inconsistent equalities") {
  auto w = lp::strict_feasible(1, {{{Rat(1)}, Rat(0)}, {{Rat(1)}, Rat(1)}}, {});
  CHECK(!w.has_value());
}

TEST_CASE("equalities only") {
  auto w = lp::strict_feasible(2, {{{Rat(1), Rat(1)}, Rat(3)}}, {});
  REQUIRE(w.has_value());
  CHECK(w->point[0] + w->point[1] == Rat(3));
  CHECK(w->margin == Rat(1));  // capped margin, no inequalities to satisfy
}

TEST_CASE("margin is capped at one") {
  auto w = lp::strict_feasible(1, {}, {{{Rat(1)}, Rat(-1000)}});
  REQUIRE(w.has_value());
  CHECK(w->margin == Rat(1));
}

TEST_CASE("malformed constraint width throws") {
  CHECK_THROWS_AS(lp::strict_feasible(2, {}, {{{Rat(1)}, Rat(0)}}), std::invalid_argument);
}

TEST_CASE("random systems: any witness satisfies the system strictly") {
  Rng rng(2024);
  int feasible = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int nvars = 1 + static_cast<int>(rng.below(3));
    std::vector<LinearConstraint> eqs, ineqs;
    const int ne = static_cast<int>(rng.below(2));
    const int ni = 1 + static_cast<int>(rng.below(5));
    auto random_row = [&] {
      LinearConstraint c;
      for (int v = 0; v < nvars; ++v) c.coeffs.push_back(Rat(rng.int_in(-3, 3)));
      c.rhs = Rat(rng.int_in(-4, 4));
      return c;
    };
    for (int i = 0; i < ne; ++i) eqs.push_back(random_row());
    for (int i = 0; i < ni; ++i) ineqs.push_back(random_row());
    auto w = lp::strict_feasible(nvars, eqs, ineqs);
    if (!w) continue;
    ++feasible;
    CHECK(sgn(w->margin) > 0);
    for (const auto& c : eqs) {
      Rat dot(0);
      for (int v = 0; v < nvars; ++v) dot += c.coeffs[v] * w->point[v];
      CHECK(dot == c.rhs);
    }
    for (const auto& c : ineqs) {
      Rat dot(0);
      for (int v = 0; v < nvars; ++v) dot += c.coeffs[v] * w->point[v];
      CHECK(dot >= c.rhs + w->margin);
    }
  }
  CHECK(feasible > 20);  // the generator must actually exercise the solver
}

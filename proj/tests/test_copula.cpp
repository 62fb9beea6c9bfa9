#include <doctest.h>

#include "fixtures.hpp"
#include "ochoice/copula.hpp"
#include "ochoice/error.hpp"
#include "ochoice/identify.hpp"

using namespace ochoice;
using fixtures::R;

namespace {

Grid cube(const std::vector<const char*>& values, size_t n) {
  std::vector<Rational> list;
  for (const char* v : values) list.push_back(R(v));
  return Grid(n, list);
}

std::vector<Rational> pt(const std::vector<const char*>& values) {
  std::vector<Rational> u;
  for (const char* v : values) u.push_back(R(v));
  return u;
}

} // namespace

TEST_CASE("worked-example bound evaluations") {
  CHECK(eval(CopulaSpec::min_copula(), pt({"1/2", "2/5"})) == R("2/5"));
  CHECK(eval(CopulaSpec::fh_lower(), pt({"1/2", "2/5"})) == R("0"));
  CHECK(eval(CopulaSpec::fh_lower(), pt({"1/5", "1"})) == R("1/5"));
  CHECK(eval(CopulaSpec::independent(), pt({"1/2", "2/5"})) == R("1/5"));
  CHECK(eval(CopulaSpec::min_copula(), pt({"1/2", "1/5", "2/5"})) == R("1/5"));
}

TEST_CASE("Frechet family interpolates the bounds") {
  auto u = pt({"1/2", "2/5", "3/4"});
  CHECK(eval(CopulaSpec::frechet(R("1")), u) == eval(CopulaSpec::min_copula(), u));
  CHECK(eval(CopulaSpec::frechet(R("0")), u) == eval(CopulaSpec::fh_lower(), u));
  // alpha*M + (1-alpha)*W pointwise
  Rational m = eval(CopulaSpec::min_copula(), u);
  Rational w = eval(CopulaSpec::fh_lower(), u);
  CHECK(eval(CopulaSpec::frechet(R("1/3")), u) == R("1/3") * m + R("2/3") * w);
}

TEST_CASE("threshold family hits both ends") {
  auto u = pt({"1/2", "2/5", "3/4"});
  CHECK(eval(CopulaSpec::threshold(R("0")), u) == eval(CopulaSpec::fh_lower(), u));
  CHECK(eval(CopulaSpec::threshold(R("1")), u) == eval(CopulaSpec::min_copula(), u));
  // below the threshold it behaves like M
  CHECK(eval(CopulaSpec::threshold(R("1/2")), pt({"2/5", "3/4"})) == R("2/5"));
  // above the threshold it is the truncated sum
  CHECK(eval(CopulaSpec::threshold(R("1/2")), pt({"3/5", "3/4"})) == R("1/2"));
  CHECK(eval(CopulaSpec::threshold(R("1/10")), pt({"9/10", "3/4"})) == R("13/20"));
}

TEST_CASE("spec parsing round-trips") {
  for (const char* text : {"M", "W", "Pi", "Frechet(1/3)", "Threshold(1/2)",
                           "M(W(1,2),3)", "W(M(1,2,3),M(4,5),M(6))"}) {
    CopulaSpec spec = CopulaSpec::parse(text);
    CHECK(spec.str() == text);
  }
  CHECK(CopulaSpec::parse(" M ( W ( 1 , 2 ) , 3 ) ").str() == "M(W(1,2),3)");
  CHECK(CopulaSpec::parse("Frechet(0.25)").str() == "Frechet(1/4)");
}

TEST_CASE("spec parsing rejects malformed input") {
  CHECK_THROWS_AS(CopulaSpec::parse(""), Error);
  CHECK_THROWS_AS(CopulaSpec::parse("Q"), Error);
  CHECK_THROWS_AS(CopulaSpec::parse("M(W(1,3),2)"), Error); // out of order
  CHECK_THROWS_AS(CopulaSpec::parse("M(W(1,2),4)"), Error); // gap
  CHECK_THROWS_AS(CopulaSpec::parse("Frechet(3/2)"), Error);
  CHECK_THROWS_AS(CopulaSpec::parse("Frechet()"), Error);
  CHECK_THROWS_AS(CopulaSpec::parse("M(Pi,2)"), Error);
  CHECK_THROWS_AS(CopulaSpec::parse("M(1,2"), Error);
}

TEST_CASE("composite evaluation nests W inside M") {
  CopulaSpec spec = CopulaSpec::parse("M(W(1,2),3)");
  REQUIRE(spec.arity == 3);
  // M(W(u1,u2), u3)
  auto u = pt({"3/4", "1/2", "2/5"});
  CHECK(eval(spec, u) == min(max(R("3/4") + R("1/2") - R("1"), R("0")), R("2/5")));
  CHECK(eval(spec, u) == R("1/4"));
  CHECK_THROWS_AS(eval(spec, pt({"1/2", "1/2"})), Error);
}

TEST_CASE("evaluation validates the unit cube") {
  CHECK_THROWS_AS(eval(CopulaSpec::min_copula(), pt({"1/2", "3/2"})), Error);
  CHECK_THROWS_AS(eval(CopulaSpec::min_copula(), pt({"-1/2", "1/2"})), Error);
  CHECK_THROWS_AS(eval(CopulaSpec::min_copula(), std::vector<Rational>{}), Error);
}

TEST_CASE("M passes all axioms on grids in any dimension") {
  for (size_t n : {2u, 3u, 4u}) {
    GridAxiomReport report =
        check_axioms(CopulaSpec::min_copula(), cube({"0", "1/4", "1/2", "3/4", "1"}, n));
    CHECK(report.is_copula());
    CHECK(!report.witness);
  }
}

TEST_CASE("W is a copula exactly when n = 2") {
  CHECK(check_axioms(CopulaSpec::fh_lower(), cube({"0", "1/4", "1/2", "3/4", "1"}, 2))
            .is_copula());

  GridAxiomReport r3 = check_axioms(CopulaSpec::fh_lower(), cube({"0", "1/2", "1"}, 3));
  CHECK(r3.grounded);
  CHECK(r3.uniform_margins);
  CHECK(r3.lipschitz);
  CHECK_FALSE(r3.rectangle_nonneg);
  REQUIRE(r3.witness);
  CHECK(r3.witness->axiom == AxiomWitness::Axiom::Rectangle);
  // the failing box is [1/2,1]^3 with alternating sum -1/2:
  // W(1,1,1) - 3 W(1,1,1/2) + 3 W(1,1/2,1/2) - W(1/2,1/2,1/2) = 1 - 3/2
  CHECK(r3.witness->box_lo == pt({"1/2", "1/2", "1/2"}));
  CHECK(r3.witness->box_hi == pt({"1", "1", "1"}));
  CHECK(r3.witness->value == R("-1/2"));
}

TEST_CASE("rectangle witness replays as a strict violation") {
  GridAxiomReport r3 = check_axioms(CopulaSpec::fh_lower(), cube({"0", "1/2", "1"}, 3));
  REQUIRE(r3.witness);
  const auto& lo = r3.witness->box_lo;
  const auto& hi = r3.witness->box_hi;
  // independent alternating-sum replay over the 8 corners
  Rational sum;
  for (unsigned mask = 0; mask < 8; ++mask) {
    std::vector<Rational> corner(3);
    int low_bits = 0;
    for (size_t i = 0; i < 3; ++i) {
      bool low = (mask >> i) & 1;
      corner[i] = low ? lo[i] : hi[i];
      low_bits += low;
    }
    Rational v = eval(CopulaSpec::fh_lower(), corner);
    if (low_bits % 2 == 0)
      sum += v;
    else
      sum -= v;
  }
  CHECK(sum == r3.witness->value);
  CHECK(sum.sign() < 0);
}

TEST_CASE("FH sandwich and coordinatewise monotonicity on a grid") {
  std::vector<CopulaSpec> specs = {
      CopulaSpec::independent(), CopulaSpec::frechet(R("1/3")),
      CopulaSpec::threshold(R("1/2")), CopulaSpec::parse("M(W(1,2),3)")};
  Grid g = cube({"0", "1/4", "1/2", "3/4", "1"}, 3);
  std::vector<Rational>& axis = g[0];
  for (const auto& spec : specs) {
    for (const auto& a : axis)
      for (const auto& b : axis)
        for (const auto& c : axis) {
          std::vector<Rational> u = {a, b, c};
          Rational v = eval(spec, u);
          CHECK(v >= eval(CopulaSpec::fh_lower(), u));
          CHECK(v <= eval(CopulaSpec::min_copula(), u));
          // bumping one coordinate never decreases the value
          for (size_t i = 0; i < 3; ++i) {
            if (u[i] == R("1")) continue;
            std::vector<Rational> up = u;
            up[i] += R("1/4");
            CHECK(eval(spec, up) >= v);
          }
        }
  }
}

TEST_CASE("quasi-copula report for the Frechet family at n = 3") {
  // convex mixes of M and W stay grounded/uniform/Lipschitz but the
  // rectangle inequality can fail like W itself
  GridAxiomReport report =
      check_axioms(CopulaSpec::frechet(R("1/3")), cube({"0", "1/2", "1"}, 3));
  CHECK(report.is_quasi_copula());
  CHECK_FALSE(report.rectangle_nonneg);
}

TEST_CASE("axiom checker validates its grid") {
  CHECK_THROWS_AS(check_axioms(CopulaSpec::min_copula(), Grid{}), Error);
  CHECK_THROWS_AS(check_axioms(CopulaSpec::min_copula(), cube({"1/4", "1"}, 2)), Error);
  CHECK_THROWS_AS(check_axioms(CopulaSpec::min_copula(), cube({"0", "1/4"}, 2)), Error);
  CHECK_THROWS_AS(
      check_axioms(CopulaSpec::parse("M(1,2)"), cube({"0", "1"}, 3)), Error);
}

TEST_CASE("subcopula of the worked-example rows matches the bounds on the grid") {
  Instance inst = fixtures::t1();

  Subcopula sub_m = subcopula_from_representation(inst, fixtures::t1_m_row(inst));
  Subcopula sub_w = subcopula_from_representation(inst, fixtures::t1_w_row(inst));
  CHECK(sub_m.report.is_copula());
  CHECK(sub_w.report.is_copula());

  size_t attained = 0;
  for (const auto& p1 : std::vector<const char*>{"1/5", "1/2", "1"}) {
    for (const auto& p2 : std::vector<const char*>{"2/5", "3/4", "1"}) {
      std::vector<Rational> point = {R(p1), R(p2)};
      CHECK(sub_m.at(point) == eval(CopulaSpec::min_copula(), point));
      CHECK(sub_w.at(point) == eval(CopulaSpec::fh_lower(), point));
      ++attained;
    }
  }
  CHECK(attained == 9);
}

TEST_CASE("subcopula of a point mass is 0/1 valued") {
  Instance inst = Instance::build(
      {"x", "y", "x'", "y'"}, {{"x", "y"}, {"x'", "y'"}},
      {{{"x", R("1")}, {"y", R("0")}}, {{"x'", R("1")}, {"y'", R("0")}}});
  TypeDistribution point(inst);
  point.add(fixtures::ty(inst, {"x", "x'"}), R("1"));
  Subcopula sub = subcopula_from_representation(inst, point);
  for (const auto& [p, v] : sub.values) CHECK((v.is_zero() || v.is_one()));
  CHECK(sub.report.is_copula());
}

TEST_CASE("subcopula rejects non-representations") {
  Instance inst = fixtures::t1();
  TypeDistribution point(inst);
  point.add(inst.best_type(), R("1"));
  CHECK_THROWS_AS(subcopula_from_representation(inst, point), Error);
}

TEST_CASE("attained grid extends ranges with zero") {
  Instance inst = fixtures::t1();
  Grid g = attained_grid(inst);
  REQUIRE(g.size() == 2);
  CHECK(g[0] == std::vector<Rational>{R("0"), R("1/5"), R("1/2"), R("1")});
  CHECK(g[1] == std::vector<Rational>{R("0"), R("2/5"), R("3/4"), R("1")});
}

#include <doctest.h>

#include "fixtures.hpp"
#include "ochoice/error.hpp"
#include "ochoice/identify.hpp"
#include "ochoice/lp.hpp"
#include "ochoice/polytope.hpp"

using namespace ochoice;
using fixtures::R;
using fixtures::ty;

TEST_CASE("T1 polytope has 9 variables and 6 marginal rows") {
  Instance inst = fixtures::t1();
  PolytopeSpec poly = build_polytope(inst);
  CHECK(poly.types.size() == 9);
  CHECK(poly.A.size() == 6);
  CHECK(poly.b.size() == 6);
  // each menu's rows sum to the unit-mass constraint
  Rational total;
  for (size_t r = 0; r < 3; ++r) total += poly.b[r];
  CHECK(total.is_one());
}

TEST_CASE("point-mass instance has a single representation") {
  Instance inst = Instance::build(
      {"x", "y", "x'", "y'"}, {{"x", "y"}, {"x'", "y'"}},
      {{{"x", R("1")}, {"y", R("0")}}, {{"x'", R("1")}, {"y'", R("0")}}});
  auto vertices = enumerate_representations(inst);
  REQUIRE(vertices.size() == 1);
  CHECK(vertices[0].at(inst.best_type()).is_one());
}

TEST_CASE("independent coupling is always feasible") {
  Instance inst = fixtures::t1();
  IdentificationResult pi = identify(CopulaSpec::independent(), inst);
  REQUIRE(pi.identified());
  CHECK(represents(inst, *pi.distribution));
}

TEST_CASE("down-set maximum on T1 matches the min of cumulatives") {
  Instance inst = fixtures::t1();
  PolytopeSpec poly = build_polytope(inst);

  ExtremalResult res =
      extremal_mass(poly, ty(inst, {"z", "z'"}), TargetSet::DownSet, LpSense::Max);
  CHECK(res.optimum == R("1/5")); // min(P1(z), P2(z')) = min(1/5, 2/5)
  CHECK(represents(inst, res.argmax));

  // the M-row attains it
  CHECK(fixtures::t1_m_row(inst).cdf(ty(inst, {"z", "z'"})) == R("1/5"));
}

TEST_CASE("up-set maximum at the best type is the min of its margins") {
  Instance inst = fixtures::t1();
  PolytopeSpec poly = build_polytope(inst);
  ExtremalResult res =
      extremal_mass(poly, ty(inst, {"x", "x'"}), TargetSet::UpSet, LpSense::Max);
  CHECK(res.optimum == R("1/4")); // min(rho1(x), rho2(x')) = min(1/2, 1/4)
  CHECK(fixtures::t1_m_row(inst).at(ty(inst, {"x", "x'"})) == R("1/4"));
}

TEST_CASE("feasible masses never exceed the LP maximum") {
  Instance inst = fixtures::t1();
  PolytopeSpec poly = build_polytope(inst);
  TypeDistribution w_row = fixtures::t1_w_row(inst);
  inst.for_each_type([&](const ChoiceType& s) {
    ExtremalResult res = extremal_mass(poly, s, TargetSet::DownSet, LpSense::Max);
    CHECK(w_row.cdf(s) <= res.optimum);
  });
}

TEST_CASE("LP minimum of a down-set can be zero while the max is positive") {
  Instance inst = fixtures::t1();
  PolytopeSpec poly = build_polytope(inst);
  ExtremalResult lo =
      extremal_mass(poly, ty(inst, {"z", "z'"}), TargetSet::DownSet, LpSense::Min);
  CHECK(lo.optimum.is_zero()); // the W row avoids [z,z'] entirely
  CHECK(fixtures::t1_w_row(inst).cdf(ty(inst, {"z", "z'"})).is_zero());
}

TEST_CASE("solve_lp certifies strong duality by substitution") {
  // max x1 + x2 s.t. x1 + x2 + s = 1 with a redundant doubled row
  LpProblem lp;
  lp.A = {{R("1"), R("1"), R("1")}, {R("2"), R("2"), R("2")}};
  lp.b = {R("1"), R("2")};
  lp.c = {R("1"), R("1"), R("0")};
  LpSolution sol = solve_lp(lp, LpSense::Max);
  REQUIRE(sol.feasible);
  CHECK(sol.objective.is_one());
  Rational yb = sol.y[0] * lp.b[0] + sol.y[1] * lp.b[1];
  CHECK(yb == sol.objective);
}

TEST_CASE("solve_lp detects infeasibility") {
  LpProblem lp;
  lp.A = {{R("1"), R("1")}, {R("1"), R("1")}};
  lp.b = {R("1"), R("2")};
  lp.c = {R("1"), R("0")};
  CHECK_FALSE(solve_lp(lp, LpSense::Max).feasible);
}

TEST_CASE("extremal results carry an externally checkable certificate") {
  Instance inst = fixtures::t1();
  PolytopeSpec poly = build_polytope(inst);
  inst.for_each_type([&](const ChoiceType& s) {
    ExtremalResult res = extremal_mass(poly, s, TargetSet::DownSet, LpSense::Max);
    // rebuild the objective and replay strong duality from the result fields
    std::vector<Rational> c(poly.types.size());
    for (size_t j = 0; j < poly.types.size(); ++j)
      if (dominates(s, poly.types[j])) c[j] = Rational(1);

    Rational yb;
    for (size_t r = 0; r < poly.b.size(); ++r) yb += res.dual[r] * poly.b[r];
    CHECK(yb == res.optimum);
    for (size_t j = 0; j < poly.types.size(); ++j) {
      Rational ya;
      for (size_t r = 0; r < poly.A.size(); ++r) ya += res.dual[r] * poly.A[r][j];
      CHECK(ya >= c[j]);
    }
    CHECK(represents(inst, res.argmax));
    CHECK(res.argmax.cdf(s) == res.optimum);
  });
}

TEST_CASE("T1 vertex set contains both worked-example rows") {
  Instance inst = fixtures::t1();
  auto vertices = enumerate_representations(inst);
  CHECK(vertices.size() >= 2);

  TypeDistribution m_row = fixtures::t1_m_row(inst);
  TypeDistribution w_row = fixtures::t1_w_row(inst);
  bool has_m = false, has_w = false;
  for (const auto& v : vertices) {
    if (v == m_row) has_m = true;
    if (v == w_row) has_w = true;
    CHECK(represents(inst, v));
  }
  CHECK(has_m);
  CHECK(has_w);
}

TEST_CASE("2x2 transportation polytope with even margins has two vertices") {
  Instance inst = fixtures::binary_chain(2, R("1/2"));
  auto vertices = enumerate_representations(inst);
  REQUIRE(vertices.size() == 2);
  // the two perfectly correlated couplings
  for (const auto& v : vertices) {
    CHECK(v.support_size() == 2);
    for (const auto& [s, m] : v.mass()) CHECK(m == R("1/2"));
  }
}

TEST_CASE("vertex enumeration refuses oversized instances") {
  Instance inst = fixtures::binary_chain(4, R("1/2")); // 16 types
  CHECK_THROWS_AS(enumerate_representations(inst), Error);
}

TEST_CASE("LP optimum equals the vertex-enumeration optimum on small instances") {
  std::vector<Instance> corpus = {fixtures::binary_chain(2, R("1/4")),
                                  fixtures::binary_chain(3, R("1/2")),
                                  fixtures::overlapping3()};
  for (const Instance& inst : corpus) {
    PolytopeSpec poly = build_polytope(inst);
    auto vertices = enumerate_representations(inst);
    REQUIRE(!vertices.empty());
    inst.for_each_type([&](const ChoiceType& s) {
      ExtremalResult lp = extremal_mass(poly, s, TargetSet::DownSet, LpSense::Max);
      Rational best;
      for (const auto& v : vertices) best = max(best, v.cdf(s));
      CHECK(best == lp.optimum);
    });
  }
}

TEST_CASE("prop1 verification passes on T1 over all nine types") {
  Instance inst = fixtures::t1();
  std::vector<ChoiceType> all;
  inst.for_each_type([&](const ChoiceType& s) { all.push_back(s); });
  Prop1Report report = verify_prop1(inst, all);
  CHECK(report.all_ok);
  CHECK(report.entries.size() == 9);
}

TEST_CASE("prop1 at the global worst type reduces to the bottom margins") {
  Instance inst = fixtures::t1();
  ChoiceType bottom = inst.worst_type();
  Prop1Report report = verify_prop1(inst, {bottom});
  REQUIRE(report.all_ok);
  const auto& e = report.entries[0];
  CHECK(e.lp_down == min(inst.mass(0, bottom[0]), inst.mass(1, bottom[1])));
  CHECK(e.min_down == e.lp_down);
}

TEST_CASE("prop1 trivially passes on a point-mass instance") {
  Instance inst = Instance::build(
      {"x", "y", "x'", "y'"}, {{"x", "y"}, {"x'", "y'"}},
      {{{"x", R("1")}, {"y", R("0")}}, {{"x'", R("1")}, {"y'", R("0")}}});
  std::vector<ChoiceType> all;
  inst.for_each_type([&](const ChoiceType& s) { all.push_back(s); });
  CHECK(verify_prop1(inst, all).all_ok);
}

TEST_CASE("copula-level uniqueness: a vertex matching the M CDF is the M row") {
  Instance inst = fixtures::t1();
  TypeDistribution m_row = identify_min(inst);
  for (const auto& v : enumerate_representations(inst)) {
    bool same_cdf = true;
    inst.for_each_type([&](const ChoiceType& s) {
      std::vector<Rational> u = {inst.cumulative(0, s[0]), inst.cumulative(1, s[1])};
      if (v.cdf(s) != eval(CopulaSpec::min_copula(), u)) same_cdf = false;
    });
    if (same_cdf) CHECK(v == m_row);
  }
}

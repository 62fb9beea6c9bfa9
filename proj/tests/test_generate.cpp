#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "ochoice/error.hpp"
#include "ochoice/generate.hpp"
#include "ochoice/identify.hpp"
#include "ochoice/models.hpp"

using namespace ochoice;
using fixtures::R;

TEST_CASE("shape spec parses and round-trips") {
  ShapeSpec shape = ShapeSpec::parse("menus=4,alts=7,minsize=1,maxsize=3,denmax=12");
  CHECK(shape.menus == 4);
  CHECK(shape.alts == 7);
  CHECK(shape.min_size == 1);
  CHECK(shape.max_size == 3);
  CHECK(shape.den_max == 12);
  CHECK(ShapeSpec::parse(shape.str()).str() == shape.str());
  CHECK_THROWS_AS(ShapeSpec::parse("menus=0"), Error);
  CHECK_THROWS_AS(ShapeSpec::parse("minsize=5,maxsize=2"), Error);
  CHECK_THROWS_AS(ShapeSpec::parse("bogus=3"), Error);
}

TEST_CASE("fixed seeds reproduce instances exactly") {
  ShapeSpec shape = ShapeSpec::parse("menus=3,alts=6,minsize=2,maxsize=4");
  for (GenMode mode : {GenMode::Arbitrary, GenMode::OneMistake,
                       GenMode::ProgressiveSource, GenMode::LatticeSource}) {
    Generated a = gen_random(shape, 42, mode);
    Generated b = gen_random(shape, 42, mode);
    CHECK(a.instance == b.instance);
    Generated c = gen_random(shape, 43, mode);
    (void)c; // different seed must still produce a valid instance
  }
}

TEST_CASE("one-mistake mode always lands in the one-mistake model") {
  ShapeSpec shape = ShapeSpec::parse("menus=4,alts=8,minsize=2,maxsize=4");
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Generated g = gen_random(shape, seed, GenMode::OneMistake);
    CHECK(is_one_mistake(g.instance).member);
    REQUIRE(g.pi);
    CHECK(represents(g.instance, *g.pi));
  }
}

TEST_CASE("progressive-source mode attaches a chain that aggregates back") {
  ShapeSpec shape = ShapeSpec::parse("menus=3,alts=6,minsize=2,maxsize=4");
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Generated g = gen_random(shape, seed, GenMode::ProgressiveSource);
    REQUIRE(g.pi);
    CHECK(represents(g.instance, *g.pi));
    std::vector<ChoiceType> support;
    for (const auto& [s, m] : g.pi->mass()) support.push_back(s);
    CHECK(is_progressive(support));

    // the min-copula identification reproduces the same pcf
    TypeDistribution pi_min = identify_min(g.instance);
    CHECK(aggregate(g.instance, pi_min) == g.instance.pcf());
  }
}

TEST_CASE("lattice-source mode draws over a join/meet-closed set") {
  ShapeSpec shape = ShapeSpec::parse("menus=3,alts=6,minsize=2,maxsize=3");
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Generated g = gen_random(shape, seed, GenMode::LatticeSource);
    REQUIRE(g.type_set);
    REQUIRE(g.pi);
    CHECK(is_lattice(*g.type_set).is_lattice);
    CHECK(represents(g.instance, *g.pi));

    // self-progressivity: the min-copula support stays inside the lattice
    std::set<ChoiceType> members(g.type_set->begin(), g.type_set->end());
    TypeDistribution pi_min = identify_min(g.instance);
    for (const auto& [s, m] : pi_min.mass())
      CHECK(members.count(s) == 1);
  }
}

TEST_CASE("arbitrary mode produces valid instances across seeds") {
  ShapeSpec shape = ShapeSpec::parse("menus=4,alts=6,minsize=1,maxsize=3,denmax=8");
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Generated g = gen_random(shape, seed, GenMode::Arbitrary);
    CHECK(g.instance.menu_count() == 4);
    CHECK_FALSE(g.pi);
    // every menu's masses already validated by Instance::build; spot-check caps
    for (size_t i = 0; i < g.instance.menu_count(); ++i) {
      CHECK(g.instance.menu(i).elems.size() >= 1);
      CHECK(g.instance.menu(i).elems.size() <= 3);
    }
  }
}

#pragma once

#include <cstdint>
#include <vector>

#include "ochoice/instance.hpp"
#include "ochoice/lp.hpp"

namespace ochoice {

// The representation polytope of an instance: one variable per choice type,
// one equality per (menu, alternative) pinning the marginal, masses >= 0.
// Always nonempty (the independent coupling satisfies every marginal).
struct PolytopeSpec {
  const Instance* instance = nullptr;
  std::vector<ChoiceType> types; // canonical order; column j <-> types[j]
  struct Row {
    size_t menu;
    AltRank alt;
  };
  std::vector<Row> row_keys;
  std::vector<std::vector<Rational>> A; // 0/1 incidence, row-major
  std::vector<Rational> b;              // rho values
};

PolytopeSpec build_polytope(const Instance& inst, std::uint64_t max_types = 100'000);

enum class TargetSet { UpSet, DownSet };

struct ExtremalResult {
  Rational optimum;
  TypeDistribution argmax;      // an optimal representation (positive part)
  std::vector<Rational> dual;   // per polytope row
  std::vector<int> basis;
};

// Exact optimum of the indicator functional of {t : t >= s} or {t : s >= t}
// over the representation polytope.
ExtremalResult extremal_mass(const PolytopeSpec& poly, const ChoiceType& s,
                             TargetSet target, LpSense sense);

// Every vertex of the representation polytope (basic feasible solutions,
// deduplicated), keeping those with support size <= max_support. Requires
// |S| <= 12; basis enumeration is exponential beyond toy sizes.
std::vector<TypeDistribution> enumerate_representations(const Instance& inst,
                                                        size_t max_support = 12);

struct Prop1Report {
  struct Entry {
    ChoiceType s;
    Rational min_up, lp_up;     // up-set mass under identify_min vs LP max
    Rational min_down, lp_down; // down-set mass under identify_min vs LP max
    bool ok = false;
    // counter-witnesses, filled on mismatch only
    std::optional<TypeDistribution> up_argmax, down_argmax;
  };
  std::vector<Entry> entries;
  bool all_ok = true;
};

// Checks that the min-copula representation attains the LP maximum of both
// the up-set and down-set mass at each sampled type.
Prop1Report verify_prop1(const Instance& inst,
                         const std::vector<ChoiceType>& samples);

} // namespace ochoice

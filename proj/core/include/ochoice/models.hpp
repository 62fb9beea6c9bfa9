#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ochoice/instance.hpp"

namespace ochoice {

enum class MistakeDirection { Downward, Upward };

struct OneMistakeCheck {
  bool member = false;
  Rational deficit; // sum over menus of 1 - rho_i(menu best)
};

// Membership in the one-mistake model: the total probability of not picking
// the menu-best alternative is at most 1.
OneMistakeCheck is_one_mistake(const Instance& inst);

// All types differing from `core` in at most one menu, the deviation lying
// strictly on the given side of the core's selection. Returned in canonical
// order, core included.
std::vector<ChoiceType> near_optimal_types(const Instance& inst,
                                           const ChoiceType& core,
                                           MistakeDirection direction);

struct FHLowerVerdict {
  enum class Kind { CondI, CondII, No };
  Kind kind = Kind::No;
  // CondI: one-deviation representation exists around this core.
  ChoiceType core;
  MistakeDirection direction = MistakeDirection::Downward;
  // CondII: every menu outside {i,j} is degenerate (0-based indices).
  size_t i = 0, j = 0;
  // No: canonically first type whose induced FH-lower mass is negative.
  ChoiceType witness;
};

// The FH-lower-bound characterization: condition I tests the exact deficit
// inequality around the support-best and support-worst types; condition II
// looks for a pair of menus outside of which everything is degenerate.
FHLowerVerdict fh_lower_identifiable(const Instance& inst);

struct SupportDiagnostics {
  bool antichain_ok = true; // no support type strictly dominates another
  bool two_diff_ok = true;  // pairs differ in <= 2 menus, opposite directions
  std::optional<std::pair<ChoiceType, ChoiceType>> antichain_witness;
  std::optional<std::pair<ChoiceType, ChoiceType>> two_diff_witness;
};

SupportDiagnostics support_diagnostics(const Instance& inst,
                                       const TypeDistribution& pi);

// True when the revealed relation {s_i beats y : y in S_i \ {s_i}} is
// acyclic, i.e. some strict total order makes s_i the maximum of every menu.
bool is_rational_type(const Instance& inst, const ChoiceType& s);

struct ScrumReport {
  enum class Axiom { Ok, Violated, NotApplicable };
  bool member = false;
  Axiom regularity = Axiom::NotApplicable;
  Axiom centrality = Axiom::NotApplicable;
  std::optional<ChoiceType> irrational_support_type;
  // Regularity witness: menus (i, j) with menu j nested in menu i and some
  // x chosen more often from the superset.
  std::optional<std::pair<size_t, size_t>> regularity_witness;
  // Centrality witness: (triple menu, pair menu) with mismatched masses.
  std::optional<std::pair<size_t, size_t>> centrality_witness;
};

// Member iff every type in the min-copula support is rational; the axioms
// are checked independently on whatever nested/triple menu patterns exist.
ScrumReport scrum_membership(const Instance& inst);

// True when the set can be ordered into a dominance chain.
bool is_progressive(const std::vector<ChoiceType>& types);

struct LatticeCheck {
  bool is_lattice = true;
  // First failing pair with the missing join or meet.
  std::optional<std::pair<ChoiceType, ChoiceType>> witness_pair;
  std::optional<ChoiceType> missing;
  bool missing_is_meet = false;
};

LatticeCheck is_lattice(const std::vector<ChoiceType>& types);

} // namespace ochoice

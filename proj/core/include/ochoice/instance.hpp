#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ochoice/rational.hpp"

namespace ochoice {

// Alternatives are interned as their position in the reference order:
// rank 0 is the best alternative, larger ranks are worse.
using AltRank = std::uint32_t;

// One deterministic selection per menu, stored as ranks. The std::map
// ordering this induces (menu-index lexicographic, better alternatives
// first) is the canonical type order used for witnesses and map keys.
using ChoiceType = std::vector<AltRank>;

// s dominates t: s picks a weakly better alternative in every menu.
inline bool dominates(const ChoiceType& s, const ChoiceType& t) {
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i] > t[i]) return false;
  return true;
}

// Strict dominance in every menu.
inline bool strictly_dominates(const ChoiceType& s, const ChoiceType& t) {
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i] >= t[i]) return false;
  return true;
}

inline bool comparable(const ChoiceType& s, const ChoiceType& t) {
  return dominates(s, t) || dominates(t, s);
}

inline ChoiceType join_of(const ChoiceType& s, const ChoiceType& t) {
  ChoiceType r(s.size());
  for (size_t i = 0; i < s.size(); ++i) r[i] = std::min(s[i], t[i]);
  return r;
}

inline ChoiceType meet_of(const ChoiceType& s, const ChoiceType& t) {
  ChoiceType r(s.size());
  for (size_t i = 0; i < s.size(); ++i) r[i] = std::max(s[i], t[i]);
  return r;
}

struct Menu {
  std::vector<AltRank> elems; // sorted, best first
};

// Per-menu masses aligned with Menu::elems.
using Pcf = std::vector<std::vector<Rational>>;

// A validated ordered-choice dataset: a global strict reference order, a
// family of menus and a probabilistic choice function over them. Immutable
// after construction; all queries are const.
class Instance {
public:
  // order: distinct labels, best first. menus: element labels per menu.
  // rho: per menu, label -> mass; omitted labels mean mass zero.
  static Instance build(std::vector<std::string> order,
                        const std::vector<std::vector<std::string>>& menus,
                        const std::vector<std::map<std::string, Rational>>& rho);

  size_t menu_count() const { return menus_.size(); }
  const Menu& menu(size_t i) const { return menus_[i]; }
  const std::vector<std::string>& order() const { return labels_; }
  const std::string& label(AltRank r) const { return labels_[r]; }
  std::optional<AltRank> rank_of(const std::string& label) const;

  // rho_i(x); x must be a member of menu i.
  const Rational& mass(size_t i, AltRank x) const;
  // P_i(x) = sum of rho_i over menu elements weakly worse than x.
  const Rational& cumulative(size_t i, AltRank x) const;
  // P_i of the next-worse element of menu i, or nullopt when x is the
  // menu-worst (the CDF is 0 below the bottom of the menu).
  std::optional<Rational> cumulative_below(size_t i, AltRank x) const;

  const Pcf& pcf() const { return rho_; }
  // Cumulative values aligned with menu(i).elems.
  const std::vector<Rational>& ccf(size_t i) const { return cum_[i]; }

  AltRank best(size_t i) const { return menus_[i].elems.front(); }
  AltRank worst(size_t i) const { return menus_[i].elems.back(); }
  // Best/worst of the support-restricted menu S_i+ = {x : rho_i(x) > 0}.
  AltRank support_best(size_t i) const;
  AltRank support_worst(size_t i) const;

  ChoiceType best_type() const;          // menu-best everywhere
  ChoiceType worst_type() const;         // menu-worst everywhere
  ChoiceType support_best_type() const;  // best positive-mass selection
  ChoiceType support_worst_type() const;

  // Position of x within menu i's element list.
  size_t menu_position(size_t i, AltRank x) const;
  bool menu_contains(size_t i, AltRank x) const;

  // |S| = product of menu sizes, saturating at `cap + 1` to stay overflow-safe.
  std::uint64_t type_space_size(std::uint64_t cap) const;

  void validate_type(const ChoiceType& s) const;

  // Enumerate the full type space in canonical order, invoking f on each.
  template <typename F>
  void for_each_type(F&& f) const {
    ChoiceType s(menus_.size());
    enumerate(0, s, f);
  }

  // Same data under the reversed reference order (menus and masses kept).
  Instance reversed() const;

  bool operator==(const Instance& o) const {
    return labels_ == o.labels_ && menu_elems_equal(o) && rho_values_equal(o);
  }

private:
  Instance() = default;

  template <typename F>
  void enumerate(size_t i, ChoiceType& s, F& f) const {
    if (i == menus_.size()) {
      f(const_cast<const ChoiceType&>(s));
      return;
    }
    for (AltRank x : menus_[i].elems) {
      s[i] = x;
      enumerate(i + 1, s, f);
    }
  }

  bool menu_elems_equal(const Instance& o) const;
  bool rho_values_equal(const Instance& o) const;

  std::vector<std::string> labels_;
  std::map<std::string, AltRank> rank_;
  std::vector<Menu> menus_;
  std::vector<std::vector<Rational>> rho_; // aligned with menu elems
  std::vector<std::vector<Rational>> cum_; // P_i, aligned with menu elems
};

// Sparse distribution over choice types; only positive masses are stored
// and they sum to exactly one.
class TypeDistribution {
public:
  TypeDistribution() = default;
  explicit TypeDistribution(const Instance& inst) : instance_(&inst) {}

  const Instance& instance() const { return *instance_; }
  const std::map<ChoiceType, Rational>& mass() const { return mass_; }

  // Inserts a strictly positive mass; rejects duplicates and nonpositive values.
  void add(ChoiceType s, Rational m);

  Rational at(const ChoiceType& s) const;
  Rational total() const;
  size_t support_size() const { return mass_.size(); }

  // F(s): total mass of types weakly dominated by s.
  Rational cdf(const ChoiceType& s) const;
  // Total mass of types weakly dominating s.
  Rational up_mass(const ChoiceType& s) const;
  Rational down_mass(const ChoiceType& s) const { return cdf(s); }

  bool operator==(const TypeDistribution& o) const { return mass_ == o.mass_; }

private:
  const Instance* instance_ = nullptr;
  std::map<ChoiceType, Rational> mass_;
};

// Marginals of pi per menu (Definition-1 forward direction).
Pcf aggregate(const Instance& inst, const TypeDistribution& pi);

// Exact equality between the marginals of pi and the instance's rho.
bool represents(const Instance& inst, const TypeDistribution& pi);

} // namespace ochoice

#include "ochoice/instance.hpp"

#include <algorithm>

#include "ochoice/error.hpp"

namespace ochoice {

Instance Instance::build(std::vector<std::string> order,
                         const std::vector<std::vector<std::string>>& menus,
                         const std::vector<std::map<std::string, Rational>>& rho) {
  Instance inst;
  if (order.empty()) fail(Errc::InvalidOrder, "reference order is empty");
  for (size_t r = 0; r < order.size(); ++r) {
    if (order[r].empty())
      fail(Errc::InvalidOrder, "empty alternative label in reference order");
    auto [it, fresh] = inst.rank_.emplace(order[r], static_cast<AltRank>(r));
    if (!fresh)
      fail(Errc::InvalidOrder,
           "alternative '" + order[r] + "' appears twice in the reference order (ties are rejected)");
  }
  inst.labels_ = std::move(order);

  if (menus.empty()) fail(Errc::InvalidMass, "instance has no menus");
  if (rho.size() != menus.size())
    fail(Errc::InvalidMass, "rho must list one mass map per menu");

  for (size_t i = 0; i < menus.size(); ++i) {
    if (menus[i].empty())
      fail(Errc::InvalidMass, "menu " + std::to_string(i + 1) + " is empty");
    Menu m;
    for (const auto& lab : menus[i]) {
      auto it = inst.rank_.find(lab);
      if (it == inst.rank_.end())
        fail(Errc::UnknownAlternative,
             "menu " + std::to_string(i + 1) + " contains unranked alternative '" + lab + "'");
      m.elems.push_back(it->second);
    }
    std::sort(m.elems.begin(), m.elems.end());
    if (std::adjacent_find(m.elems.begin(), m.elems.end()) != m.elems.end())
      fail(Errc::InvalidOrder,
           "menu " + std::to_string(i + 1) + " lists an alternative twice");

    std::vector<Rational> masses(m.elems.size());
    Rational total;
    for (const auto& [lab, value] : rho[i]) {
      auto it = inst.rank_.find(lab);
      if (it == inst.rank_.end())
        fail(Errc::UnknownAlternative,
             "rho for menu " + std::to_string(i + 1) + " names unranked alternative '" + lab + "'");
      auto pos = std::find(m.elems.begin(), m.elems.end(), it->second);
      if (pos == m.elems.end())
        fail(Errc::UnknownAlternative,
             "rho for menu " + std::to_string(i + 1) + " names '" + lab + "' which is not in the menu");
      if (value.sign() < 0)
        fail(Errc::InvalidMass,
             "negative mass for '" + lab + "' in menu " + std::to_string(i + 1));
      masses[static_cast<size_t>(pos - m.elems.begin())] = value;
      total += value;
    }
    if (!total.is_one())
      fail(Errc::InvalidMass, "masses in menu " + std::to_string(i + 1) +
                                  " sum to " + total.str() + ", expected 1");

    // suffix sums along the order: P_i(x) adds up everything weakly worse
    std::vector<Rational> cum(masses.size());
    Rational acc;
    for (size_t k = masses.size(); k-- > 0;) {
      acc += masses[k];
      cum[k] = acc;
    }

    inst.menus_.push_back(std::move(m));
    inst.rho_.push_back(std::move(masses));
    inst.cum_.push_back(std::move(cum));
  }
  return inst;
}

std::optional<AltRank> Instance::rank_of(const std::string& label) const {
  auto it = rank_.find(label);
  if (it == rank_.end()) return std::nullopt;
  return it->second;
}

size_t Instance::menu_position(size_t i, AltRank x) const {
  const auto& e = menus_[i].elems;
  auto it = std::lower_bound(e.begin(), e.end(), x);
  if (it == e.end() || *it != x)
    fail(Errc::UnknownAlternative, "alternative '" + labels_[x] + "' is not in menu " +
                                       std::to_string(i + 1));
  return static_cast<size_t>(it - e.begin());
}

bool Instance::menu_contains(size_t i, AltRank x) const {
  const auto& e = menus_[i].elems;
  return std::binary_search(e.begin(), e.end(), x);
}

const Rational& Instance::mass(size_t i, AltRank x) const {
  return rho_[i][menu_position(i, x)];
}

const Rational& Instance::cumulative(size_t i, AltRank x) const {
  return cum_[i][menu_position(i, x)];
}

std::optional<Rational> Instance::cumulative_below(size_t i, AltRank x) const {
  size_t pos = menu_position(i, x);
  if (pos + 1 == menus_[i].elems.size()) return std::nullopt;
  return cum_[i][pos + 1];
}

AltRank Instance::support_best(size_t i) const {
  const auto& e = menus_[i].elems;
  for (size_t k = 0; k < e.size(); ++k)
    if (!rho_[i][k].is_zero()) return e[k];
  fail(Errc::Internal, "menu without positive mass");
}

AltRank Instance::support_worst(size_t i) const {
  const auto& e = menus_[i].elems;
  for (size_t k = e.size(); k-- > 0;)
    if (!rho_[i][k].is_zero()) return e[k];
  fail(Errc::Internal, "menu without positive mass");
}

ChoiceType Instance::best_type() const {
  ChoiceType s(menus_.size());
  for (size_t i = 0; i < menus_.size(); ++i) s[i] = best(i);
  return s;
}

ChoiceType Instance::worst_type() const {
  ChoiceType s(menus_.size());
  for (size_t i = 0; i < menus_.size(); ++i) s[i] = worst(i);
  return s;
}

ChoiceType Instance::support_best_type() const {
  ChoiceType s(menus_.size());
  for (size_t i = 0; i < menus_.size(); ++i) s[i] = support_best(i);
  return s;
}

ChoiceType Instance::support_worst_type() const {
  ChoiceType s(menus_.size());
  for (size_t i = 0; i < menus_.size(); ++i) s[i] = support_worst(i);
  return s;
}

std::uint64_t Instance::type_space_size(std::uint64_t cap) const {
  std::uint64_t n = 1;
  for (const auto& m : menus_) {
    n *= m.elems.size();
    if (n > cap) return cap + 1;
  }
  return n;
}

void Instance::validate_type(const ChoiceType& s) const {
  if (s.size() != menus_.size())
    fail(Errc::ArityMismatch, "choice type has " + std::to_string(s.size()) +
                                  " selections, expected " + std::to_string(menus_.size()));
  for (size_t i = 0; i < s.size(); ++i)
    if (!menu_contains(i, s[i]))
      fail(Errc::UnknownAlternative,
           "selection for menu " + std::to_string(i + 1) + " is not a menu element");
}

Instance Instance::reversed() const {
  std::vector<std::string> order(labels_.rbegin(), labels_.rend());
  std::vector<std::vector<std::string>> menus;
  std::vector<std::map<std::string, Rational>> rho;
  for (size_t i = 0; i < menus_.size(); ++i) {
    std::vector<std::string> m;
    std::map<std::string, Rational> r;
    for (size_t k = 0; k < menus_[i].elems.size(); ++k) {
      m.push_back(labels_[menus_[i].elems[k]]);
      r[m.back()] = rho_[i][k];
    }
    menus.push_back(std::move(m));
    rho.push_back(std::move(r));
  }
  return build(std::move(order), menus, rho);
}

bool Instance::menu_elems_equal(const Instance& o) const {
  if (menus_.size() != o.menus_.size()) return false;
  for (size_t i = 0; i < menus_.size(); ++i)
    if (menus_[i].elems != o.menus_[i].elems) return false;
  return true;
}

bool Instance::rho_values_equal(const Instance& o) const {
  return rho_ == o.rho_;
}

void TypeDistribution::add(ChoiceType s, Rational m) {
  if (m.sign() <= 0)
    fail(Errc::InvalidMass, "type distributions store strictly positive masses only");
  auto [it, fresh] = mass_.emplace(std::move(s), std::move(m));
  if (!fresh) fail(Errc::InvalidMass, "duplicate type in distribution");
}

Rational TypeDistribution::at(const ChoiceType& s) const {
  auto it = mass_.find(s);
  return it == mass_.end() ? Rational() : it->second;
}

Rational TypeDistribution::total() const {
  Rational t;
  for (const auto& [s, m] : mass_) t += m;
  return t;
}

Rational TypeDistribution::cdf(const ChoiceType& s) const {
  Rational t;
  for (const auto& [u, m] : mass_)
    if (dominates(s, u)) t += m;
  return t;
}

Rational TypeDistribution::up_mass(const ChoiceType& s) const {
  Rational t;
  for (const auto& [u, m] : mass_)
    if (dominates(u, s)) t += m;
  return t;
}

Pcf aggregate(const Instance& inst, const TypeDistribution& pi) {
  Pcf out(inst.menu_count());
  for (size_t i = 0; i < inst.menu_count(); ++i)
    out[i].assign(inst.menu(i).elems.size(), Rational());
  for (const auto& [s, m] : pi.mass()) {
    inst.validate_type(s);
    for (size_t i = 0; i < s.size(); ++i)
      out[i][inst.menu_position(i, s[i])] += m;
  }
  return out;
}

bool represents(const Instance& inst, const TypeDistribution& pi) {
  if (!pi.total().is_one()) return false;
  return aggregate(inst, pi) == inst.pcf();
}

} // namespace ochoice

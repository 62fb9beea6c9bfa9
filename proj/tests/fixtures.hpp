#pragma once

#include <map>
#include <string>
#include <vector>

#include "ochoice/instance.hpp"

namespace fixtures {

inline ochoice::Rational R(const char* s) { return ochoice::Rational::parse(s); }

// Two disjoint triples with the worked-example margins:
// rho1(z)=1/5, rho1(y)=3/10, rho2(z')=2/5, rho2(y')=7/20.
inline ochoice::Instance t1() {
  return ochoice::Instance::build(
      {"x", "y", "z", "x'", "y'", "z'"},
      {{"x", "y", "z"}, {"x'", "y'", "z'"}},
      {{{"x", R("1/2")}, {"y", R("3/10")}, {"z", R("1/5")}},
       {{"x'", R("1/4")}, {"y'", R("7/20")}, {"z'", R("2/5")}}});
}

// Menus {x,y,z}, {x,y}, {x,z} over x > y > z; masses are incidental.
inline ochoice::Instance overlapping3() {
  return ochoice::Instance::build(
      {"x", "y", "z"},
      {{"x", "y", "z"}, {"x", "y"}, {"x", "z"}},
      {{{"x", R("1/2")}, {"y", R("3/10")}, {"z", R("1/5")}},
       {{"x", R("3/5")}, {"y", R("2/5")}},
       {{"x", R("7/10")}, {"z", R("3/10")}}});
}

// n binary menus {a_i, b_i} with rho_i(b_i) = bottom_mass.
inline ochoice::Instance binary_chain(size_t n, const ochoice::Rational& bottom_mass) {
  std::vector<std::string> order;
  std::vector<std::vector<std::string>> menus;
  std::vector<std::map<std::string, ochoice::Rational>> rho;
  for (size_t i = 0; i < n; ++i) {
    std::string a = "a" + std::to_string(i + 1);
    std::string b = "b" + std::to_string(i + 1);
    order.push_back(a);
  }
  for (size_t i = 0; i < n; ++i) order.push_back("b" + std::to_string(i + 1));
  for (size_t i = 0; i < n; ++i) {
    std::string a = "a" + std::to_string(i + 1);
    std::string b = "b" + std::to_string(i + 1);
    menus.push_back({a, b});
    rho.push_back({{a, ochoice::Rational(1) - bottom_mass}, {b, bottom_mass}});
  }
  return ochoice::Instance::build(order, menus, rho);
}

// Type from labels.
inline ochoice::ChoiceType ty(const ochoice::Instance& inst,
                              const std::vector<std::string>& labels) {
  ochoice::ChoiceType s;
  for (const auto& lab : labels) s.push_back(*inst.rank_of(lab));
  return s;
}

inline ochoice::TypeDistribution dist(
    const ochoice::Instance& inst,
    const std::vector<std::pair<std::vector<std::string>, const char*>>& entries) {
  ochoice::TypeDistribution pi(inst);
  for (const auto& [labels, mass] : entries) pi.add(ty(inst, labels), R(mass));
  return pi;
}

// Worked-example weights for the FH-upper bound.
inline ochoice::TypeDistribution t1_m_row(const ochoice::Instance& inst) {
  return dist(inst, {{{"z", "z'"}, "1/5"},
                     {{"y", "z'"}, "1/5"},
                     {{"y", "y'"}, "1/10"},
                     {{"x", "y'"}, "1/4"},
                     {{"x", "x'"}, "1/4"}});
}

// Worked-example weights for the FH-lower bound.
inline ochoice::TypeDistribution t1_w_row(const ochoice::Instance& inst) {
  return dist(inst, {{{"z", "x'"}, "1/5"},
                     {{"y", "x'"}, "1/20"},
                     {{"y", "y'"}, "1/4"},
                     {{"x", "y'"}, "1/10"},
                     {{"x", "z'"}, "2/5"}});
}

} // namespace fixtures

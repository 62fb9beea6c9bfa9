#include "ochoice/models.hpp"

#include <algorithm>
#include <set>

#include "ochoice/error.hpp"
#include "ochoice/identify.hpp"

namespace ochoice {

OneMistakeCheck is_one_mistake(const Instance& inst) {
  OneMistakeCheck out;
  for (size_t i = 0; i < inst.menu_count(); ++i)
    out.deficit += Rational(1) - inst.mass(i, inst.best(i));
  out.member = out.deficit <= Rational(1);
  return out;
}

std::vector<ChoiceType> near_optimal_types(const Instance& inst,
                                           const ChoiceType& core,
                                           MistakeDirection direction) {
  inst.validate_type(core);
  std::vector<ChoiceType> out;
  out.push_back(core);
  for (size_t i = 0; i < inst.menu_count(); ++i) {
    for (AltRank x : inst.menu(i).elems) {
      bool allowed = direction == MistakeDirection::Downward ? x > core[i] : x < core[i];
      if (!allowed) continue;
      ChoiceType s = core;
      s[i] = x;
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FHLowerVerdict fh_lower_identifiable(const Instance& inst) {
  FHLowerVerdict verdict;
  size_t n = inst.menu_count();

  // Condition I: a one-deviation support around a core c is feasible exactly
  // when the deviation masses sum to at most 1, i.e. sum_i (1 - rho_i(c_i)) <= 1.
  {
    ChoiceType core = inst.support_best_type();
    Rational deficit;
    for (size_t i = 0; i < n; ++i) deficit += Rational(1) - inst.mass(i, core[i]);
    if (deficit <= Rational(1)) {
      verdict.kind = FHLowerVerdict::Kind::CondI;
      verdict.core = std::move(core);
      verdict.direction = MistakeDirection::Downward;
      return verdict;
    }
  }
  {
    ChoiceType core = inst.support_worst_type();
    Rational deficit;
    for (size_t i = 0; i < n; ++i) deficit += Rational(1) - inst.mass(i, core[i]);
    if (deficit <= Rational(1)) {
      verdict.kind = FHLowerVerdict::Kind::CondI;
      verdict.core = std::move(core);
      verdict.direction = MistakeDirection::Upward;
      return verdict;
    }
  }

  // Condition II: outside some pair of menus everything is degenerate.
  {
    std::vector<size_t> free_menus;
    for (size_t i = 0; i < n; ++i) {
      bool degenerate = false;
      for (const auto& m : inst.pcf()[i])
        if (m.is_one()) { degenerate = true; break; }
      if (!degenerate) free_menus.push_back(i);
    }
    if (free_menus.size() <= 2) {
      verdict.kind = FHLowerVerdict::Kind::CondII;
      if (free_menus.size() == 2) {
        verdict.i = free_menus[0];
        verdict.j = free_menus[1];
      } else if (free_menus.size() == 1) {
        verdict.i = free_menus[0];
        verdict.j = verdict.i == 0 ? std::min<size_t>(1, n - 1) : 0;
      } else {
        verdict.i = 0;
        verdict.j = n > 1 ? 1 : 0;
      }
      return verdict;
    }
  }

  verdict.kind = FHLowerVerdict::Kind::No;
  auto res = identify(CopulaSpec::fh_lower(), inst);
  if (res.witness) verdict.witness = *res.witness;
  return verdict;
}

SupportDiagnostics support_diagnostics(const Instance& inst,
                                       const TypeDistribution& pi) {
  SupportDiagnostics diag;
  std::vector<const ChoiceType*> support;
  for (const auto& [s, m] : pi.mass()) {
    inst.validate_type(s);
    support.push_back(&s);
  }

  for (size_t a = 0; a < support.size(); ++a) {
    for (size_t b = a + 1; b < support.size(); ++b) {
      const ChoiceType& s = *support[a];
      const ChoiceType& t = *support[b];

      if (diag.antichain_ok &&
          (strictly_dominates(s, t) || strictly_dominates(t, s))) {
        diag.antichain_ok = false;
        diag.antichain_witness = {s, t};
      }

      if (diag.two_diff_ok) {
        size_t diffs = 0;
        bool s_better = false, t_better = false;
        for (size_t i = 0; i < s.size(); ++i) {
          if (s[i] == t[i]) continue;
          ++diffs;
          (s[i] < t[i] ? s_better : t_better) = true;
        }
        if (diffs > 2 || (diffs == 2 && !(s_better && t_better))) {
          diag.two_diff_ok = false;
          diag.two_diff_witness = {s, t};
        }
      }
    }
  }
  return diag;
}

bool is_rational_type(const Instance& inst, const ChoiceType& s) {
  inst.validate_type(s);
  // revealed strict relation: chosen element beats every other menu element
  std::set<std::pair<AltRank, AltRank>> edges;
  std::set<AltRank> nodes;
  for (size_t i = 0; i < s.size(); ++i) {
    nodes.insert(s[i]);
    for (AltRank y : inst.menu(i).elems) {
      if (y == s[i]) continue;
      edges.emplace(s[i], y);
      nodes.insert(y);
    }
  }

  // DFS cycle detection over the revealed digraph
  std::map<AltRank, int> state; // 0 fresh, 1 on stack, 2 done
  auto neighbors = [&](AltRank a) {
    std::vector<AltRank> out;
    for (auto it = edges.lower_bound({a, 0});
         it != edges.end() && it->first == a; ++it)
      out.push_back(it->second);
    return out;
  };
  std::vector<std::pair<AltRank, size_t>> stack;
  for (AltRank root : nodes) {
    if (state[root]) continue;
    stack.push_back({root, 0});
    state[root] = 1;
    while (!stack.empty()) {
      auto& [node, child] = stack.back();
      auto next = neighbors(node);
      if (child < next.size()) {
        AltRank target = next[child++];
        if (state[target] == 1) return false;
        if (state[target] == 0) {
          state[target] = 1;
          stack.push_back({target, 0});
        }
      } else {
        state[node] = 2;
        stack.pop_back();
      }
    }
  }
  return true;
}

ScrumReport scrum_membership(const Instance& inst) {
  ScrumReport report;

  report.member = true;
  TypeDistribution pi_min = identify_min(inst);
  for (const auto& [s, m] : pi_min.mass()) {
    if (!is_rational_type(inst, s)) {
      report.member = false;
      report.irrational_support_type = s;
      break;
    }
  }

  // regularity on strictly nested menu pairs present in the family
  bool regularity_applicable = false;
  for (size_t a = 0; a < inst.menu_count() && report.regularity != ScrumReport::Axiom::Violated; ++a) {
    for (size_t b = 0; b < inst.menu_count(); ++b) {
      if (a == b) continue;
      const auto& big = inst.menu(a).elems;
      const auto& small = inst.menu(b).elems;
      if (small.size() >= big.size()) continue;
      if (!std::includes(big.begin(), big.end(), small.begin(), small.end())) continue;
      regularity_applicable = true;
      for (AltRank x : small) {
        if (inst.mass(a, x) > inst.mass(b, x)) {
          report.regularity = ScrumReport::Axiom::Violated;
          report.regularity_witness = {a, b};
          break;
        }
      }
      if (report.regularity == ScrumReport::Axiom::Violated) break;
    }
  }
  if (regularity_applicable && report.regularity != ScrumReport::Axiom::Violated)
    report.regularity = ScrumReport::Axiom::Ok;

  // centrality on {x,y,z} menus paired with an exact {x,y} or {y,z} menu
  bool centrality_applicable = false;
  for (size_t a = 0; a < inst.menu_count() && report.centrality != ScrumReport::Axiom::Violated; ++a) {
    const auto& triple = inst.menu(a).elems;
    if (triple.size() != 3) continue;
    AltRank x = triple[0], y = triple[1], z = triple[2];
    if (inst.mass(a, y).is_zero()) {
      // the premise rho(y, {x,y,z}) > 0 fails; the pattern still counts
      // as applicable only when a matching pair menu exists
      for (size_t b = 0; b < inst.menu_count(); ++b) {
        if (b == a) continue;
        const auto& pair = inst.menu(b).elems;
        if (pair == std::vector<AltRank>{x, y} || pair == std::vector<AltRank>{y, z})
          centrality_applicable = true;
      }
      continue;
    }
    for (size_t b = 0; b < inst.menu_count(); ++b) {
      if (b == a) continue;
      const auto& pair = inst.menu(b).elems;
      if (pair == std::vector<AltRank>{x, y}) {
        centrality_applicable = true;
        if (inst.mass(b, x) != inst.mass(a, x)) {
          report.centrality = ScrumReport::Axiom::Violated;
          report.centrality_witness = {a, b};
          break;
        }
      } else if (pair == std::vector<AltRank>{y, z}) {
        centrality_applicable = true;
        if (inst.mass(b, z) != inst.mass(a, z)) {
          report.centrality = ScrumReport::Axiom::Violated;
          report.centrality_witness = {a, b};
          break;
        }
      }
    }
  }
  if (centrality_applicable && report.centrality != ScrumReport::Axiom::Violated)
    report.centrality = ScrumReport::Axiom::Ok;

  return report;
}

bool is_progressive(const std::vector<ChoiceType>& types) {
  for (size_t a = 0; a < types.size(); ++a)
    for (size_t b = a + 1; b < types.size(); ++b)
      if (!comparable(types[a], types[b])) return false;
  return true;
}

LatticeCheck is_lattice(const std::vector<ChoiceType>& types) {
  LatticeCheck out;
  std::set<ChoiceType> members(types.begin(), types.end());
  for (size_t a = 0; a < types.size(); ++a) {
    for (size_t b = a + 1; b < types.size(); ++b) {
      ChoiceType j = join_of(types[a], types[b]);
      if (!members.count(j)) {
        out.is_lattice = false;
        out.witness_pair = {types[a], types[b]};
        out.missing = std::move(j);
        out.missing_is_meet = false;
        return out;
      }
      ChoiceType m = meet_of(types[a], types[b]);
      if (!members.count(m)) {
        out.is_lattice = false;
        out.witness_pair = {types[a], types[b]};
        out.missing = std::move(m);
        out.missing_is_meet = true;
        return out;
      }
    }
  }
  return out;
}

} // namespace ochoice

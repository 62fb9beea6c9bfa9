#include "ochoice/polytope.hpp"

#include <algorithm>
#include <set>

#include "ochoice/error.hpp"
#include "ochoice/identify.hpp"

namespace ochoice {

PolytopeSpec build_polytope(const Instance& inst, std::uint64_t max_types) {
  if (inst.type_space_size(max_types) > max_types)
    fail(Errc::TooLarge, "type space exceeds the cap of " + std::to_string(max_types));

  PolytopeSpec poly;
  poly.instance = &inst;
  inst.for_each_type([&](const ChoiceType& s) { poly.types.push_back(s); });

  for (size_t i = 0; i < inst.menu_count(); ++i) {
    const auto& elems = inst.menu(i).elems;
    for (size_t k = 0; k < elems.size(); ++k) {
      poly.row_keys.push_back({i, elems[k]});
      poly.b.push_back(inst.pcf()[i][k]);
      std::vector<Rational> row(poly.types.size());
      for (size_t j = 0; j < poly.types.size(); ++j)
        if (poly.types[j][i] == elems[k]) row[j] = Rational(1);
      poly.A.push_back(std::move(row));
    }
  }
  return poly;
}

ExtremalResult extremal_mass(const PolytopeSpec& poly, const ChoiceType& s,
                             TargetSet target, LpSense sense) {
  poly.instance->validate_type(s);

  LpProblem lp;
  lp.A = poly.A;
  lp.b = poly.b;
  lp.c.resize(poly.types.size());
  for (size_t j = 0; j < poly.types.size(); ++j) {
    bool in = target == TargetSet::UpSet ? dominates(poly.types[j], s)
                                         : dominates(s, poly.types[j]);
    if (in) lp.c[j] = Rational(1);
  }

  LpSolution sol = solve_lp(lp, sense);
  if (!sol.feasible)
    fail(Errc::Internal, "representation polytope reported infeasible");

  ExtremalResult out;
  out.optimum = sol.objective;
  out.dual = std::move(sol.y);
  out.basis = std::move(sol.basis);
  TypeDistribution argmax(*poly.instance);
  for (size_t j = 0; j < poly.types.size(); ++j)
    if (sol.x[j].sign() > 0) argmax.add(poly.types[j], sol.x[j]);
  out.argmax = std::move(argmax);
  return out;
}

namespace {

// Rank and a row echelon basis of independent rows.
size_t matrix_rank(std::vector<std::vector<Rational>> m) {
  size_t rank = 0;
  size_t rows = m.size();
  size_t cols = rows == 0 ? 0 : m[0].size();
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t sel = rank;
    while (sel < rows && m[sel][col].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[rank]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || m[i][col].is_zero()) continue;
      Rational f = m[i][col] / m[rank][col];
      for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Solve A_B x = b for the chosen columns; nullopt when the columns are
// dependent or the system is inconsistent.
std::optional<std::vector<Rational>> solve_square(
    const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
    const std::vector<size_t>& cols) {
  size_t m = A.size();
  size_t r = cols.size();
  std::vector<std::vector<Rational>> aug(m, std::vector<Rational>(r + 1));
  for (size_t i = 0; i < m; ++i) {
    for (size_t k = 0; k < r; ++k) aug[i][k] = A[i][cols[k]];
    aug[i][r] = b[i];
  }
  std::vector<size_t> pivot_row(r, m);
  size_t row = 0;
  for (size_t col = 0; col < r && row < m; ++col) {
    size_t sel = row;
    while (sel < m && aug[sel][col].is_zero()) ++sel;
    if (sel == m) return std::nullopt; // dependent columns
    std::swap(aug[sel], aug[row]);
    for (size_t i = 0; i < m; ++i) {
      if (i == row || aug[i][col].is_zero()) continue;
      Rational f = aug[i][col] / aug[row][col];
      for (size_t j = col; j <= r; ++j) aug[i][j] -= f * aug[row][j];
    }
    pivot_row[col] = row;
    ++row;
  }
  // remaining rows must be consistent (0 = 0)
  for (size_t i = row; i < m; ++i)
    if (!aug[i][r].is_zero()) return std::nullopt;
  std::vector<Rational> x(r);
  for (size_t col = 0; col < r; ++col)
    x[col] = aug[pivot_row[col]][r] / aug[pivot_row[col]][col];
  return x;
}

} // namespace

std::vector<TypeDistribution> enumerate_representations(const Instance& inst,
                                                        size_t max_support) {
  PolytopeSpec poly = build_polytope(inst, 12);
  size_t ncols = poly.types.size();
  if (ncols > 12)
    fail(Errc::TooLarge, "vertex enumeration caps at 12 types, instance has " +
                             std::to_string(ncols));

  size_t rank = matrix_rank(poly.A);
  std::vector<TypeDistribution> out;
  std::set<std::vector<Rational>> seen;

  std::vector<size_t> cols(rank);
  // enumerate column subsets of size `rank` in lexicographic order
  auto advance = [&](std::vector<size_t>& c) {
    size_t k = c.size();
    for (size_t i = k; i-- > 0;) {
      if (c[i] + (k - i) < ncols) {
        ++c[i];
        for (size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  for (size_t i = 0; i < rank; ++i) cols[i] = i;
  if (rank == 0 || rank > ncols) fail(Errc::Internal, "degenerate polytope rank");

  do {
    auto x = solve_square(poly.A, poly.b, cols);
    if (!x) continue;
    bool nonneg = true;
    for (const auto& v : *x)
      if (v.sign() < 0) { nonneg = false; break; }
    if (!nonneg) continue;

    std::vector<Rational> full(ncols);
    size_t support = 0;
    for (size_t k = 0; k < cols.size(); ++k) {
      full[cols[k]] = (*x)[k];
      if ((*x)[k].sign() > 0) ++support;
    }
    if (support > max_support) continue;
    if (!seen.insert(full).second) continue;

    TypeDistribution dist(inst);
    for (size_t j = 0; j < ncols; ++j)
      if (full[j].sign() > 0) dist.add(poly.types[j], full[j]);
    out.push_back(std::move(dist));
  } while (advance(cols));

  return out;
}

Prop1Report verify_prop1(const Instance& inst,
                         const std::vector<ChoiceType>& samples) {
  Prop1Report report;
  PolytopeSpec poly = build_polytope(inst);
  TypeDistribution pi_min = identify_min(inst);

  for (const auto& s : samples) {
    Prop1Report::Entry e;
    e.s = s;
    e.min_up = pi_min.up_mass(s);
    e.min_down = pi_min.down_mass(s);
    ExtremalResult up = extremal_mass(poly, s, TargetSet::UpSet, LpSense::Max);
    ExtremalResult down = extremal_mass(poly, s, TargetSet::DownSet, LpSense::Max);
    e.lp_up = up.optimum;
    e.lp_down = down.optimum;
    e.ok = e.min_up == e.lp_up && e.min_down == e.lp_down;
    if (!e.ok) {
      report.all_ok = false;
      if (e.min_up != e.lp_up) e.up_argmax = std::move(up.argmax);
      if (e.min_down != e.lp_down) e.down_argmax = std::move(down.argmax);
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

} // namespace ochoice

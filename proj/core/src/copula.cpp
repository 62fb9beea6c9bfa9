#include "ochoice/copula.hpp"

#include <algorithm>
#include <cctype>

#include "ochoice/error.hpp"

namespace ochoice {

CopulaSpec CopulaSpec::frechet(Rational alpha) {
  if (alpha.sign() < 0 || alpha > Rational(1))
    fail(Errc::OutOfUnitInterval, "Frechet weight must lie in [0,1], got " + alpha.str());
  CopulaSpec s;
  s.kind = Kind::Frechet;
  s.param = std::move(alpha);
  return s;
}

CopulaSpec CopulaSpec::threshold(Rational t) {
  if (t.sign() < 0 || t > Rational(1))
    fail(Errc::OutOfUnitInterval, "threshold level must lie in [0,1], got " + t.str());
  CopulaSpec s;
  s.kind = Kind::Threshold;
  s.param = std::move(t);
  return s;
}

namespace {

struct Parser {
  std::string_view text;
  size_t pos = 0;

  [[noreturn]] void error(const std::string& msg) const {
    fail(Errc::ParseError, "copula spec: " + msg,
         "column " + std::to_string(pos + 1));
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) error("expected a copula name");
    return std::string(text.substr(start, pos - start));
  }

  Rational rational() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/' ||
            text[pos] == '.' || text[pos] == '-' || text[pos] == '+'))
      ++pos;
    if (pos == start) error("expected a rational literal");
    return Rational::parse(text.substr(start, pos - start));
  }

  // Composite argument: a coordinate index or a nested M/W(...) group.
  CopulaSpec argument(std::vector<int>& coords) {
    skip_ws();
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      int idx = std::stoi(std::string(text.substr(start, pos - start)));
      if (idx < 1) error("coordinate indices are 1-based");
      CopulaSpec leaf;
      leaf.kind = CopulaSpec::Kind::Coordinate;
      leaf.coordinate = idx - 1;
      leaf.arity = 1;
      coords.push_back(idx);
      return leaf;
    }
    std::string name = ident();
    if (name != "M" && name != "W")
      error("only M and W may combine coordinate groups, got '" + name + "'");
    if (!eat('(')) error("expected '(' after nested '" + name + "'");
    return composite(name == "M" ? CopulaSpec::Kind::Min : CopulaSpec::Kind::Lower, coords);
  }

  CopulaSpec composite(CopulaSpec::Kind outer, std::vector<int>& coords) {
    CopulaSpec node;
    node.kind = CopulaSpec::Kind::Composite;
    node.outer = outer;
    do {
      node.children.push_back(argument(coords));
      node.arity += node.children.back().arity;
    } while (eat(','));
    if (!eat(')')) error("expected ')' in composite spec");
    return node;
  }

  CopulaSpec spec() {
    std::string name = ident();
    if (name == "Pi") return CopulaSpec::independent();
    if (name == "Frechet" || name == "Threshold") {
      if (!eat('(')) error("expected '(' after " + name);
      Rational p = rational();
      if (!eat(')')) error("expected ')' after " + name + " parameter");
      return name == "Frechet" ? CopulaSpec::frechet(std::move(p))
                               : CopulaSpec::threshold(std::move(p));
    }
    if (name == "M" || name == "W") {
      CopulaSpec::Kind kind = name == "M" ? CopulaSpec::Kind::Min : CopulaSpec::Kind::Lower;
      skip_ws();
      if (eat('(')) {
        std::vector<int> coords;
        CopulaSpec node = composite(kind, coords);
        for (size_t k = 0; k < coords.size(); ++k)
          if (coords[k] != static_cast<int>(k + 1))
            error("coordinates must read 1.." + std::to_string(coords.size()) +
                  " left to right (contiguous groups)");
        return node;
      }
      CopulaSpec bare;
      bare.kind = kind;
      return bare;
    }
    error("unknown copula '" + name + "'");
  }
};

} // namespace

CopulaSpec CopulaSpec::parse(std::string_view text) {
  Parser p{text};
  CopulaSpec s = p.spec();
  p.skip_ws();
  if (p.pos != text.size()) p.error("trailing input");
  return s;
}

std::string CopulaSpec::str() const {
  switch (kind) {
    case Kind::Min: return "M";
    case Kind::Lower: return "W";
    case Kind::Independent: return "Pi";
    case Kind::Frechet: return "Frechet(" + param.str() + ")";
    case Kind::Threshold: return "Threshold(" + param.str() + ")";
    case Kind::Coordinate: return std::to_string(coordinate + 1);
    case Kind::Composite: {
      std::string out = outer == Kind::Min ? "M(" : "W(";
      for (size_t i = 0; i < children.size(); ++i) {
        if (i) out += ",";
        out += children[i].str();
      }
      return out + ")";
    }
  }
  return "?";
}

namespace {

Rational eval_min(std::span<const Rational> u) {
  Rational m = u[0];
  for (const auto& v : u.subspan(1)) m = min(m, v);
  return m;
}

Rational eval_lower(std::span<const Rational> u) {
  Rational s;
  for (const auto& v : u) s += v;
  s += Rational(1) - Rational(static_cast<long>(u.size()));
  return max(s, Rational(0));
}

Rational eval_node(const CopulaSpec& spec, std::span<const Rational> u) {
  switch (spec.kind) {
    case CopulaSpec::Kind::Min:
      return eval_min(u);
    case CopulaSpec::Kind::Lower:
      return eval_lower(u);
    case CopulaSpec::Kind::Independent: {
      Rational p(1);
      for (const auto& v : u) p *= v;
      return p;
    }
    case CopulaSpec::Kind::Frechet: {
      Rational m = eval_min(u);
      Rational w = eval_lower(u);
      return spec.param * m + (Rational(1) - spec.param) * w;
    }
    case CopulaSpec::Kind::Threshold: {
      bool above = true;
      for (const auto& v : u)
        if (v < spec.param) { above = false; break; }
      if (!above) return eval_min(u);
      Rational s;
      for (const auto& v : u) s += v;
      s += Rational(1) - Rational(static_cast<long>(u.size()));
      return max(s, spec.param);
    }
    case CopulaSpec::Kind::Coordinate:
      return u[0];
    case CopulaSpec::Kind::Composite: {
      std::vector<Rational> vals;
      vals.reserve(spec.children.size());
      size_t off = 0;
      for (const auto& child : spec.children) {
        size_t take = child.arity > 0 ? static_cast<size_t>(child.arity) : u.size();
        vals.push_back(eval_node(child, u.subspan(off, take)));
        off += take;
      }
      std::span<const Rational> vs(vals);
      return spec.outer == CopulaSpec::Kind::Min ? eval_min(vs) : eval_lower(vs);
    }
  }
  fail(Errc::Internal, "unhandled copula kind");
}

} // namespace

Rational eval(const CopulaSpec& spec, std::span<const Rational> u) {
  if (u.empty()) fail(Errc::ArityMismatch, "copula evaluated on zero coordinates");
  if (spec.arity > 0 && u.size() != static_cast<size_t>(spec.arity))
    fail(Errc::ArityMismatch, "spec " + spec.str() + " expects " +
                                  std::to_string(spec.arity) + " coordinates, got " +
                                  std::to_string(u.size()));
  for (const auto& v : u)
    if (v.sign() < 0 || v > Rational(1))
      fail(Errc::OutOfUnitInterval, "coordinate " + v.str() + " outside [0,1]");
  return eval_node(spec, u);
}

namespace {

// Dense table of values at every grid point, row-major with the last
// coordinate fastest.
struct GridTable {
  const Grid& grid;
  std::vector<size_t> stride;
  std::vector<Rational> values;

  explicit GridTable(const GridFn& fn, const Grid& g) : grid(g) {
    size_t n = g.size();
    size_t total = 1;
    stride.assign(n, 1);
    for (size_t i = n; i-- > 0;) {
      stride[i] = total;
      total *= g[i].size();
      if (total > 4'000'000)
        fail(Errc::TooLarge, "axiom grid has too many points");
    }
    values.reserve(total);
    std::vector<size_t> idx(n, 0);
    std::vector<Rational> point(n);
    for (size_t flat = 0; flat < total; ++flat) {
      for (size_t i = 0; i < n; ++i) point[i] = g[i][idx[i]];
      values.push_back(fn(point));
      for (size_t i = n; i-- > 0;) {
        if (++idx[i] < g[i].size()) break;
        idx[i] = 0;
      }
    }
  }

  const Rational& at(const std::vector<size_t>& idx) const {
    size_t flat = 0;
    for (size_t i = 0; i < idx.size(); ++i) flat += idx[i] * stride[i];
    return values[flat];
  }

  std::vector<Rational> point_of(const std::vector<size_t>& idx) const {
    std::vector<Rational> p(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) p[i] = grid[i][idx[i]];
    return p;
  }
};

template <typename F>
void for_each_index(const std::vector<size_t>& sizes, F&& f) {
  std::vector<size_t> idx(sizes.size(), 0);
  for (;;) {
    f(const_cast<const std::vector<size_t>&>(idx));
    size_t i = sizes.size();
    for (; i-- > 0;) {
      if (++idx[i] < sizes[i]) break;
      idx[i] = 0;
    }
    if (i == static_cast<size_t>(-1)) break;
  }
}

Grid normalize_grid(const Grid& grid) {
  if (grid.empty()) fail(Errc::EmptyGrid, "axiom grid has no coordinates");
  Grid g = grid;
  for (size_t i = 0; i < g.size(); ++i) {
    auto& list = g[i];
    if (list.empty())
      fail(Errc::EmptyGrid, "grid for coordinate " + std::to_string(i + 1) + " is empty");
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (const auto& v : list)
      if (v.sign() < 0 || v > Rational(1))
        fail(Errc::OutOfUnitInterval,
             "grid value " + v.str() + " outside [0,1] in coordinate " + std::to_string(i + 1));
    if (list.front() != Rational(0) || list.back() != Rational(1))
      fail(Errc::EmptyGrid,
           "grid for coordinate " + std::to_string(i + 1) + " must contain 0 and 1");
  }
  return g;
}

} // namespace

GridAxiomReport check_axioms(const GridFn& fn, const Grid& raw_grid) {
  Grid grid = normalize_grid(raw_grid);
  size_t n = grid.size();
  GridTable table(fn, grid);

  GridAxiomReport report;
  std::optional<AxiomWitness> grounded_w, margins_w, lipschitz_w, rectangle_w;

  std::vector<size_t> sizes(n);
  for (size_t i = 0; i < n; ++i) sizes[i] = grid[i].size();

  // grounded: value 0 whenever any coordinate is 0
  for_each_index(sizes, [&](const std::vector<size_t>& idx) {
    if (!report.grounded) return;
    bool touches_zero = false;
    for (size_t i = 0; i < n; ++i)
      if (grid[i][idx[i]].is_zero()) { touches_zero = true; break; }
    if (!touches_zero) return;
    const Rational& v = table.at(idx);
    if (!v.is_zero()) {
      report.grounded = false;
      AxiomWitness w;
      w.axiom = AxiomWitness::Axiom::Grounded;
      w.point = table.point_of(idx);
      w.value = v;
      w.expected = Rational(0);
      grounded_w = std::move(w);
    }
  });

  // uniform margins: C(1,..,1,u_i,1,..,1) = u_i
  for (size_t i = 0; i < n && report.uniform_margins; ++i) {
    std::vector<size_t> idx(n);
    for (size_t k = 0; k < n; ++k) idx[k] = sizes[k] - 1;
    for (size_t pos = 0; pos < sizes[i]; ++pos) {
      idx[i] = pos;
      const Rational& v = table.at(idx);
      if (v != grid[i][pos]) {
        report.uniform_margins = false;
        AxiomWitness w;
        w.axiom = AxiomWitness::Axiom::UniformMargins;
        w.point = table.point_of(idx);
        w.value = v;
        w.expected = grid[i][pos];
        margins_w = std::move(w);
        break;
      }
    }
  }

  // Lipschitz on grid-adjacent pairs; adjacency composes, so this bounds
  // |C(u)-C(v)| <= sum |u_i - v_i| for all grid pairs
  for_each_index(sizes, [&](const std::vector<size_t>& idx) {
    if (!report.lipschitz) return;
    for (size_t i = 0; i < n; ++i) {
      if (idx[i] + 1 >= sizes[i]) continue;
      std::vector<size_t> up = idx;
      ++up[i];
      Rational diff = abs(table.at(up) - table.at(idx));
      Rational step = grid[i][up[i]] - grid[i][idx[i]];
      if (diff > step) {
        report.lipschitz = false;
        AxiomWitness w;
        w.axiom = AxiomWitness::Axiom::Lipschitz;
        w.point = table.point_of(idx);
        w.point2 = table.point_of(up);
        w.value = diff - step;
        lipschitz_w = std::move(w);
        return;
      }
    }
  });

  // rectangle inequality on every grid-aligned box
  {
    std::vector<size_t> pair_counts(n);
    size_t boxes = 1;
    for (size_t i = 0; i < n; ++i) {
      pair_counts[i] = sizes[i] * (sizes[i] - 1) / 2;
      if (pair_counts[i] == 0) { boxes = 0; break; }
      boxes *= pair_counts[i];
      if (boxes > 16'000'000) fail(Errc::TooLarge, "too many grid boxes to check");
    }
    // pair p in 0..count-1 maps to (lo,hi) indices in lexicographic order
    auto nth_pair = [&](size_t i, size_t p) {
      size_t lo = 0, span = sizes[i] - 1;
      while (p >= span) { p -= span; ++lo; --span; }
      return std::pair<size_t, size_t>(lo, lo + 1 + p);
    };
    if (boxes > 0) {
      for_each_index(pair_counts, [&](const std::vector<size_t>& choice) {
        if (!report.rectangle_nonneg) return;
        std::vector<size_t> lo(n), hi(n);
        for (size_t i = 0; i < n; ++i) {
          auto [l, h] = nth_pair(i, choice[i]);
          lo[i] = l;
          hi[i] = h;
        }
        Rational volume;
        std::vector<size_t> corner(n);
        for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
          int bits = 0;
          for (size_t i = 0; i < n; ++i) {
            bool low = (mask >> i) & 1;
            corner[i] = low ? lo[i] : hi[i];
            bits += low;
          }
          if (bits % 2 == 0)
            volume += table.at(corner);
          else
            volume -= table.at(corner);
        }
        if (volume.sign() < 0) {
          report.rectangle_nonneg = false;
          AxiomWitness w;
          w.axiom = AxiomWitness::Axiom::Rectangle;
          w.box_lo = table.point_of(lo);
          w.box_hi = table.point_of(hi);
          w.value = volume;
          rectangle_w = std::move(w);
        }
      });
    }
  }

  if (!report.grounded)
    report.witness = std::move(grounded_w);
  else if (!report.uniform_margins)
    report.witness = std::move(margins_w);
  else if (!report.lipschitz)
    report.witness = std::move(lipschitz_w);
  else if (!report.rectangle_nonneg)
    report.witness = std::move(rectangle_w);
  return report;
}

GridAxiomReport check_axioms(const CopulaSpec& spec, const Grid& grid) {
  if (spec.arity > 0 && grid.size() != static_cast<size_t>(spec.arity))
    fail(Errc::ArityMismatch, "grid has " + std::to_string(grid.size()) +
                                  " coordinates but spec " + spec.str() + " expects " +
                                  std::to_string(spec.arity));
  return check_axioms(
      [&spec](std::span<const Rational> u) { return eval(spec, u); }, grid);
}

Grid attained_grid(const Instance& inst) {
  Grid g(inst.menu_count());
  for (size_t i = 0; i < inst.menu_count(); ++i) {
    g[i].push_back(Rational(0));
    for (const auto& v : inst.ccf(i)) g[i].push_back(v);
    std::sort(g[i].begin(), g[i].end());
    g[i].erase(std::unique(g[i].begin(), g[i].end()), g[i].end());
  }
  return g;
}

Rational Subcopula::at(const std::vector<Rational>& point) const {
  auto it = values.find(point);
  if (it == values.end())
    fail(Errc::EmptyGrid, "point is not on the subcopula grid");
  return it->second;
}

Subcopula subcopula_from_representation(const Instance& inst,
                                        const TypeDistribution& pi) {
  if (!represents(inst, pi))
    fail(Errc::NotARepresentation,
         "distribution marginals do not equal the instance's rho");

  Subcopula sub;
  sub.grid = attained_grid(inst);
  size_t n = sub.grid.size();

  // value at a grid point v: total mass of types t with P_i(t_i) <= v_i
  // everywhere (equals F_pi at any type realizing v)
  auto value_at = [&](std::span<const Rational> v) {
    Rational total;
    for (const auto& [t, m] : pi.mass()) {
      bool inside = true;
      for (size_t i = 0; i < n; ++i) {
        if (inst.cumulative(i, t[i]) > v[i]) { inside = false; break; }
      }
      if (inside) total += m;
    }
    return total;
  };

  std::vector<size_t> sizes(n);
  for (size_t i = 0; i < n; ++i) sizes[i] = sub.grid[i].size();
  for_each_index(sizes, [&](const std::vector<size_t>& idx) {
    std::vector<Rational> point(n);
    for (size_t i = 0; i < n; ++i) point[i] = sub.grid[i][idx[i]];
    sub.values.emplace(point, value_at(point));
  });

  sub.report = check_axioms(
      [&sub](std::span<const Rational> u) {
        return sub.at(std::vector<Rational>(u.begin(), u.end()));
      },
      sub.grid);
  return sub;
}

} // namespace ochoice

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ochoice/instance.hpp"
#include "ochoice/rational.hpp"

namespace ochoice {

// Expression tree for the (quasi-)copula families used here. Bare kinds
// (M, W, Pi, Frechet, Threshold) apply to however many coordinates they are
// given; composites fix their arity and partition the coordinates into
// contiguous groups, one per child, combined by an outer M or W.
struct CopulaSpec {
  enum class Kind {
    Min,         // M(u) = min_i u_i, the FH-upper bound
    Lower,       // W(u) = max{sum u_i + 1 - n, 0}, the FH-lower bound
    Independent, // Pi(u) = prod u_i
    Frechet,     // alpha*M + (1-alpha)*W
    Threshold,   // max{sum u_i + 1 - n, t} when all u_i >= t, else M(u)
    Composite,
    Coordinate,  // passthrough leaf inside a composite
  };

  Kind kind = Kind::Min;
  Rational param;                  // alpha / t, in [0,1]
  Kind outer = Kind::Min;          // Min or Lower, composites only
  std::vector<CopulaSpec> children;
  int coordinate = -1;             // 0-based, Coordinate leaves only
  int arity = 0;                   // 0 = any (bare kinds); fixed for composites

  // Grammar: M | W | Pi | Frechet(<rat>) | Threshold(<rat>) | M(<args>) | W(<args>)
  // where composite args are coordinates or nested composites, and the
  // coordinates read left to right must be exactly 1..n.
  static CopulaSpec parse(std::string_view text);
  std::string str() const;

  static CopulaSpec min_copula() { return {}; }
  static CopulaSpec fh_lower() { CopulaSpec s; s.kind = Kind::Lower; return s; }
  static CopulaSpec independent() { CopulaSpec s; s.kind = Kind::Independent; return s; }
  static CopulaSpec frechet(Rational alpha);
  static CopulaSpec threshold(Rational t);
};

// Exact pointwise evaluation; u entries must lie in [0,1] and match the
// spec's arity when fixed.
Rational eval(const CopulaSpec& spec, std::span<const Rational> u);

// Per-coordinate sorted grids; every list must contain 0 and 1.
using Grid = std::vector<std::vector<Rational>>;

struct AxiomWitness {
  enum class Axiom { Grounded, UniformMargins, Lipschitz, Rectangle };
  Axiom axiom;
  // Grounded / UniformMargins: `point` and its value (plus expected value).
  // Lipschitz: `point` and `point2`, value = |dC| - sum|du| > 0.
  // Rectangle: `box_lo`/`box_hi` corners, value = alternating sum < 0.
  std::vector<Rational> point, point2, box_lo, box_hi;
  Rational value, expected;
};

struct GridAxiomReport {
  bool grounded = true;
  bool uniform_margins = true;
  bool lipschitz = true;
  bool rectangle_nonneg = true;
  std::optional<AxiomWitness> witness;
  bool is_copula() const {
    return grounded && uniform_margins && lipschitz && rectangle_nonneg;
  }
  bool is_quasi_copula() const { return grounded && uniform_margins && lipschitz; }
};

using GridFn = std::function<Rational(std::span<const Rational>)>;

// Checks groundedness and uniform margins at grid points, the Lipschitz
// condition on grid-adjacent pairs, and the rectangle inequality on every
// grid-aligned box. The witness, when present, replays as a strict violation.
GridAxiomReport check_axioms(const CopulaSpec& spec, const Grid& grid);
GridAxiomReport check_axioms(const GridFn& fn, const Grid& grid);

// Default verification grid: the attained cumulative values per menu,
// extended with 0 (1 is always attained at the menu best).
Grid attained_grid(const Instance& inst);

// The grid restriction of Sklar's theorem: the function on
// Range(P_1) x ... x Range(P_n) defined by C(P_1(s_1),...,P_n(s_n)) = F_pi(s).
struct Subcopula {
  Grid grid;
  std::map<std::vector<Rational>, Rational> values; // every grid point
  GridAxiomReport report;
  Rational at(const std::vector<Rational>& point) const;
};

// Requires pi to represent the instance's rho (NotARepresentation otherwise).
Subcopula subcopula_from_representation(const Instance& inst,
                                        const TypeDistribution& pi);

} // namespace ochoice

#include "ochoice/identify.hpp"

#include <algorithm>
#include <bit>

#include "ochoice/error.hpp"

namespace ochoice {

IdentificationResult identify(const CopulaSpec& spec, const Instance& inst,
                              const IdentifyLimits& limits) {
  size_t n = inst.menu_count();
  // the per-type corner sum has 2^n terms; 24 bounds the mask width
  if (n > limits.max_coords || n > 24)
    fail(Errc::TooLarge, "instance has " + std::to_string(n) +
                             " menus, identify caps at " +
                             std::to_string(std::min<size_t>(limits.max_coords, 24)));
  if (inst.type_space_size(limits.max_types) > limits.max_types)
    fail(Errc::TooLarge, "type space exceeds the cap of " + std::to_string(limits.max_types));
  if (spec.arity > 0 && static_cast<size_t>(spec.arity) != n)
    fail(Errc::ArityMismatch, "spec " + spec.str() + " expects " +
                                  std::to_string(spec.arity) + " coordinates, instance has " +
                                  std::to_string(n));

  // cum/below per menu position; below is empty at the menu-worst
  std::vector<std::vector<Rational>> cum(n);
  std::vector<std::vector<std::optional<Rational>>> below(n);
  for (size_t i = 0; i < n; ++i) {
    const auto& c = inst.ccf(i);
    cum[i].assign(c.begin(), c.end());
    below[i].resize(c.size());
    for (size_t k = 0; k + 1 < c.size(); ++k) below[i][k] = c[k + 1];
  }

  const auto deadline = limits.time_budget
                            ? std::optional(std::chrono::steady_clock::now() + *limits.time_budget)
                            : std::nullopt;

  IdentificationResult result;
  TypeDistribution dist(inst);
  Rational total;
  std::vector<Rational> corner(n);
  std::vector<size_t> pos(n, 0);
  bool done = false;

  // canonical (menu-lexicographic, best first) enumeration of the product space
  std::vector<size_t> sizes(n);
  for (size_t i = 0; i < n; ++i) sizes[i] = inst.menu(i).elems.size();

  while (!done) {
    if (deadline && std::chrono::steady_clock::now() > *deadline)
      fail(Errc::TooLarge, "identify exceeded its wall-clock budget");
    ++result.stats.types_enumerated;

    Rational mass;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
      bool grounded_out = false;
      for (size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1) {
          if (!below[i][pos[i]]) { grounded_out = true; break; }
          corner[i] = *below[i][pos[i]];
        } else {
          corner[i] = cum[i][pos[i]];
        }
      }
      if (grounded_out) continue;
      Rational f = eval(spec, corner);
      if (std::popcount(mask) % 2 == 0)
        mass += f;
      else
        mass -= f;
    }

    if (mass.sign() < 0) {
      ChoiceType s(n);
      for (size_t i = 0; i < n; ++i) s[i] = inst.menu(i).elems[pos[i]];
      result.witness = std::move(s);
      result.witness_mass = std::move(mass);
      return result;
    }
    if (mass.sign() > 0) {
      ChoiceType s(n);
      for (size_t i = 0; i < n; ++i) s[i] = inst.menu(i).elems[pos[i]];
      total += mass;
      dist.add(std::move(s), std::move(mass));
    }

    size_t i = n;
    for (; i-- > 0;) {
      if (++pos[i] < sizes[i]) break;
      pos[i] = 0;
    }
    done = i == static_cast<size_t>(-1);
  }

  // All masses nonnegative; the alternating sums telescope to the CDF at the
  // all-best type, so a unit total certifies the spec was grounded with
  // C(1,...,1) = 1 on the attained values.
  if (!total.is_one())
    fail(Errc::Internal,
         "induced masses sum to " + total.str() + " (spec is not grounded/normalized)");

  result.stats.support_size = dist.support_size();
  result.distribution = std::move(dist);
  return result;
}

TypeDistribution identify_min(const Instance& inst) {
  size_t n = inst.menu_count();

  std::vector<Rational> breaks;
  for (size_t i = 0; i < n; ++i)
    for (const auto& v : inst.ccf(i))
      if (!v.is_zero()) breaks.push_back(v);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  // per menu, walk elements worst-to-best as the level rises; the quantile
  // at level b is the worst element with P_i >= b
  std::vector<size_t> quant(n);
  for (size_t i = 0; i < n; ++i) quant[i] = inst.menu(i).elems.size() - 1;

  TypeDistribution dist(inst);
  Rational prev;
  for (const auto& b : breaks) {
    ChoiceType s(n);
    for (size_t i = 0; i < n; ++i) {
      const auto& cumv = inst.ccf(i);
      while (cumv[quant[i]] < b) --quant[i];
      s[i] = inst.menu(i).elems[quant[i]];
    }
    dist.add(std::move(s), b - prev);
    prev = b;
  }
  return dist;
}

TypeDistribution identify_onemistake(const Instance& inst) {
  size_t n = inst.menu_count();
  ChoiceType core = inst.best_type();

  Rational deficit;
  for (size_t i = 0; i < n; ++i)
    deficit += Rational(1) - inst.mass(i, core[i]);
  if (deficit > Rational(1))
    fail(Errc::NotOneMistake,
         "total mistake probability " + deficit.str() + " exceeds 1");

  TypeDistribution dist(inst);
  for (size_t i = 0; i < n; ++i) {
    const auto& elems = inst.menu(i).elems;
    for (size_t k = 0; k < elems.size(); ++k) {
      if (elems[k] == core[i]) continue;
      const Rational& m = inst.pcf()[i][k];
      if (m.is_zero()) continue;
      ChoiceType s = core;
      s[i] = elems[k];
      dist.add(std::move(s), m);
    }
  }
  Rational core_mass = Rational(1) - deficit;
  if (core_mass.sign() > 0) dist.add(core, core_mass);
  return dist;
}

} // namespace ochoice

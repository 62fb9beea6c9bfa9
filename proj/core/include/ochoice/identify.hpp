#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "ochoice/copula.hpp"
#include "ochoice/instance.hpp"

namespace ochoice {

struct IdentifyLimits {
  std::uint64_t max_types = 100'000;
  size_t max_coords = 12;
  // Wall-clock abort for the generic inclusion-exclusion path.
  std::optional<std::chrono::milliseconds> time_budget = std::chrono::minutes(1);
};

struct IdentifyStats {
  std::uint64_t types_enumerated = 0;
  size_t support_size = 0;
};

struct IdentificationResult {
  std::optional<TypeDistribution> distribution; // set exactly when identified
  std::optional<ChoiceType> witness;            // canonically first negative type
  Rational witness_mass;
  IdentifyStats stats;
  bool identified() const { return distribution.has_value(); }
};

// Inverts the copula identity: each type's candidate mass is the
// inclusion-exclusion sum of the spec-induced CDF over the corners of its
// predecessor box; coordinates at the menu-worst have CDF 0 below them.
// Identified when every mass is nonnegative (the total is then exactly 1).
IdentificationResult identify(const CopulaSpec& spec, const Instance& inst,
                              const IdentifyLimits& limits = {});

// Comonotone construction for the min-copula: merge the menus' cumulative
// breakpoints and read one chain type per gap. Equals identify(M, inst)
// exactly, with no type-space enumeration.
TypeDistribution identify_min(const Instance& inst);

// The one-deviation construction: each non-best alternative keeps its own
// mass on the type deviating only there; the remainder sits on the all-best
// type. Requires the deviation masses to sum to at most 1 (NotOneMistake).
TypeDistribution identify_onemistake(const Instance& inst);

} // namespace ochoice

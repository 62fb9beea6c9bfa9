#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ochoice/instance.hpp"

namespace ochoice {

// Shape of generated instances. Text form, any subset of the keys:
//   "menus=3,alts=6,minsize=2,maxsize=4,denmax=20"
struct ShapeSpec {
  size_t menus = 3;
  size_t alts = 6;
  size_t min_size = 2;
  size_t max_size = 4;
  long den_max = 20; // ceiling for the integer mass weights

  static ShapeSpec parse(std::string_view text);
  std::string str() const;
};

enum class GenMode { Arbitrary, OneMistake, ProgressiveSource, LatticeSource };

GenMode gen_mode_parse(std::string_view name);
std::string_view gen_mode_name(GenMode mode);

struct Generated {
  Instance instance;
  // Generating distribution for one-mistake / progressive-source /
  // lattice-source modes.
  std::optional<TypeDistribution> pi;
  // The lattice the source distribution was drawn over.
  std::optional<std::vector<ChoiceType>> type_set;
};

// Deterministic for fixed (shape, seed, mode); no platform-dependent
// distributions are involved.
Generated gen_random(const ShapeSpec& shape, std::uint64_t seed, GenMode mode);

} // namespace ochoice

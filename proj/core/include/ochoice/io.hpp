#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ochoice/instance.hpp"

namespace ochoice {

using Json = nlohmann::ordered_json;

// Instance files: {"order": [...], "menus": [[...],...], "rho": [{alt: mass}...]}
// Masses are exact rational strings ("1/5", "0.35") or JSON integers; JSON
// floats are rejected to keep the exactness contract.
Instance instance_from_json(const Json& doc);
Instance parse_instance_text(std::string_view text);
Json instance_to_json(const Instance& inst, std::optional<int> decimals = {});

// Distribution files add "pi" (or "support"): [{"type": [...], "mass": ...}].
// When "rho" is omitted the instance masses are the marginals of pi.
struct DistributionFile {
  Instance instance;
  TypeDistribution pi;
  bool had_rho = false;
};
DistributionFile parse_distribution_text(std::string_view text);

// Type-set files need only {"order": [...], "types": [[...],...]}; "menus"
// is validated against when present.
struct TypeSetFile {
  std::vector<std::string> order;
  std::vector<ChoiceType> types; // ranks w.r.t. order
};
TypeSetFile parse_type_set_text(std::string_view text);

// Grid files for axiom checks: either {"values": [...]} with an arity, or
// {"coords": [[...],...]} listing every coordinate explicitly.
struct GridFile {
  std::vector<std::vector<Rational>> coords;
};
GridFile parse_grid_text(std::string_view text, size_t arity_hint);

Json type_to_json(const Instance& inst, const ChoiceType& s);
// Support entries sorted worst-first (dominance-compatible order).
Json support_to_json(const Instance& inst, const TypeDistribution& pi,
                     std::optional<int> decimals = {});

std::string mass_string(const Rational& value, std::optional<int> decimals);

} // namespace ochoice

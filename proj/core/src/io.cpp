#include "ochoice/io.hpp"

#include <algorithm>

#include "ochoice/error.hpp"

namespace ochoice {

namespace {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::ParseError, e.what(), "byte " + std::to_string(e.byte));
  }
}

Rational mass_from_json(const Json& v, const std::string& path) {
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const Error& e) {
      fail(Errc::ParseError, e.what(), path);
    }
  }
  if (v.is_number_integer())
    return Rational(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_number_float())
    fail(Errc::ParseError,
         "probabilities must be exact rational strings (e.g. \"1/5\" or \"0.2\"), not JSON floats",
         path);
  fail(Errc::ParseError, "expected a rational string", path);
}

const Json& require(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end())
    fail(Errc::ParseError, std::string("missing key '") + key + "'", "/");
  return *it;
}

std::vector<std::string> string_list(const Json& v, const std::string& path) {
  if (!v.is_array()) fail(Errc::ParseError, "expected an array of strings", path);
  std::vector<std::string> out;
  for (size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_string())
      fail(Errc::ParseError, "expected a string", path + "/" + std::to_string(k));
    out.push_back(v[k].get<std::string>());
  }
  return out;
}

} // namespace

namespace {

// Instance::build reports which menu misbehaves in the message; pin the
// document root as the location when none is set.
[[noreturn]] void rethrow_at_root(const Error& e) {
  throw Error(e.code(), e.what(), e.location().empty() ? "/" : e.location());
}

} // namespace

Instance instance_from_json(const Json& doc) {
  if (!doc.is_object()) fail(Errc::ParseError, "instance document must be an object", "/");
  std::vector<std::string> order = string_list(require(doc, "order"), "/order");

  const Json& jmenus = require(doc, "menus");
  if (!jmenus.is_array()) fail(Errc::ParseError, "expected an array of menus", "/menus");
  std::vector<std::vector<std::string>> menus;
  for (size_t i = 0; i < jmenus.size(); ++i)
    menus.push_back(string_list(jmenus[i], "/menus/" + std::to_string(i)));

  const Json& jrho = require(doc, "rho");
  if (!jrho.is_array() || jrho.size() != menus.size())
    fail(Errc::ParseError, "rho must list one mass map per menu", "/rho");
  std::vector<std::map<std::string, Rational>> rho(menus.size());
  for (size_t i = 0; i < jrho.size(); ++i) {
    std::string path = "/rho/" + std::to_string(i);
    if (!jrho[i].is_object()) fail(Errc::ParseError, "expected an object", path);
    for (const auto& [key, value] : jrho[i].items())
      rho[i][key] = mass_from_json(value, path + "/" + key);
  }
  try {
    return Instance::build(std::move(order), menus, rho);
  } catch (const Error& e) {
    rethrow_at_root(e);
  }
}

Instance parse_instance_text(std::string_view text) {
  return instance_from_json(parse_json(text));
}

std::string mass_string(const Rational& value, std::optional<int> decimals) {
  return decimals ? value.decimal(*decimals) : value.str();
}

Json instance_to_json(const Instance& inst, std::optional<int> decimals) {
  Json doc = Json::object();
  doc["order"] = inst.order();

  Json menus = Json::array();
  Json rho = Json::array();
  for (size_t i = 0; i < inst.menu_count(); ++i) {
    Json menu = Json::array();
    Json masses = Json::object();
    const auto& elems = inst.menu(i).elems;
    for (size_t k = 0; k < elems.size(); ++k) {
      const std::string& lab = inst.label(elems[k]);
      menu.push_back(lab);
      masses[lab] = mass_string(inst.pcf()[i][k], decimals);
    }
    menus.push_back(std::move(menu));
    rho.push_back(std::move(masses));
  }
  doc["menus"] = std::move(menus);
  doc["rho"] = std::move(rho);
  return doc;
}

Json type_to_json(const Instance& inst, const ChoiceType& s) {
  Json out = Json::array();
  for (AltRank r : s) out.push_back(inst.label(r));
  return out;
}

Json support_to_json(const Instance& inst, const TypeDistribution& pi,
                     std::optional<int> decimals) {
  Json out = Json::array();
  const auto& mass = pi.mass();
  for (auto it = mass.rbegin(); it != mass.rend(); ++it) {
    Json entry = Json::object();
    entry["type"] = type_to_json(inst, it->first);
    entry["mass"] = mass_string(it->second, decimals);
    out.push_back(std::move(entry));
  }
  return out;
}

namespace {

ChoiceType type_from_json(const Json& v, const std::string& path,
                          const std::map<std::string, AltRank>& rank) {
  if (!v.is_array()) fail(Errc::ParseError, "expected an array of labels", path);
  ChoiceType s;
  for (size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_string())
      fail(Errc::ParseError, "expected a label", path + "/" + std::to_string(k));
    auto it = rank.find(v[k].get<std::string>());
    if (it == rank.end())
      fail(Errc::UnknownAlternative, "label '" + v[k].get<std::string>() + "' is not ranked",
           path + "/" + std::to_string(k));
    s.push_back(it->second);
  }
  return s;
}

} // namespace

DistributionFile parse_distribution_text(std::string_view text) {
  Json doc = parse_json(text);
  if (!doc.is_object()) fail(Errc::ParseError, "distribution document must be an object", "/");

  std::vector<std::string> order = string_list(require(doc, "order"), "/order");
  std::map<std::string, AltRank> rank;
  for (size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<AltRank>(r);

  const Json& jmenus = require(doc, "menus");
  std::vector<std::vector<std::string>> menus;
  for (size_t i = 0; i < jmenus.size(); ++i)
    menus.push_back(string_list(jmenus[i], "/menus/" + std::to_string(i)));

  const char* key = doc.contains("pi") ? "pi" : "support";
  const Json& jpi = require(doc, key);
  std::string base = std::string("/") + key;
  if (!jpi.is_array()) fail(Errc::ParseError, "expected an array of {type, mass} entries", base);

  std::vector<std::pair<ChoiceType, Rational>> entries;
  for (size_t k = 0; k < jpi.size(); ++k) {
    std::string path = base + "/" + std::to_string(k);
    if (!jpi[k].is_object() || !jpi[k].contains("type") || !jpi[k].contains("mass"))
      fail(Errc::ParseError, "expected {type, mass}", path);
    entries.emplace_back(type_from_json(jpi[k]["type"], path + "/type", rank),
                         mass_from_json(jpi[k]["mass"], path + "/mass"));
  }

  bool had_rho = doc.contains("rho");
  auto build_instance = [&]() -> Instance {
    if (had_rho) return instance_from_json(doc);
    // rho is the aggregate of pi
    Rational total;
    for (const auto& [s, m] : entries) total += m;
    if (!total.is_one())
      fail(Errc::InvalidMass, "pi masses sum to " + total.str() + ", expected 1", base);
    std::vector<std::map<std::string, Rational>> rho(menus.size());
    for (size_t i = 0; i < menus.size(); ++i)
      for (const auto& lab : menus[i]) rho[i][lab] = Rational(0);
    for (size_t k = 0; k < entries.size(); ++k) {
      const auto& [s, m] = entries[k];
      if (s.size() != menus.size())
        fail(Errc::ParseError, "type length does not match the menu count",
             base + "/" + std::to_string(k) + "/type");
      for (size_t i = 0; i < menus.size(); ++i) {
        auto it = rho[i].find(order[s[i]]);
        if (it == rho[i].end())
          fail(Errc::UnknownAlternative,
               "type selects '" + order[s[i]] + "' outside menu " + std::to_string(i + 1),
               base + "/" + std::to_string(k) + "/type");
        it->second += m;
      }
    }
    return Instance::build(order, menus, rho);
  };

  DistributionFile out{build_instance(), TypeDistribution(), had_rho};
  TypeDistribution pi(out.instance);
  for (auto& [s, m] : entries) {
    out.instance.validate_type(s);
    if (m.is_zero()) continue;
    pi.add(std::move(s), std::move(m));
  }
  if (!pi.total().is_one())
    fail(Errc::InvalidMass, "pi masses sum to " + pi.total().str() + ", expected 1", base);
  out.pi = std::move(pi);
  return out;
}

TypeSetFile parse_type_set_text(std::string_view text) {
  Json doc = parse_json(text);
  if (!doc.is_object()) fail(Errc::ParseError, "type-set document must be an object", "/");

  TypeSetFile out;
  out.order = string_list(require(doc, "order"), "/order");
  std::map<std::string, AltRank> rank;
  for (size_t r = 0; r < out.order.size(); ++r) {
    if (!rank.emplace(out.order[r], static_cast<AltRank>(r)).second)
      fail(Errc::InvalidOrder, "duplicate label '" + out.order[r] + "' in order", "/order");
  }

  const Json& jtypes = require(doc, "types");
  if (!jtypes.is_array()) fail(Errc::ParseError, "expected an array of types", "/types");
  size_t len = 0;
  for (size_t k = 0; k < jtypes.size(); ++k) {
    ChoiceType s = type_from_json(jtypes[k], "/types/" + std::to_string(k), rank);
    if (k == 0)
      len = s.size();
    else if (s.size() != len)
      fail(Errc::ParseError, "types must all have the same length",
           "/types/" + std::to_string(k));
    out.types.push_back(std::move(s));
  }

  if (doc.contains("menus")) {
    const Json& jmenus = doc["menus"];
    if (!jmenus.is_array())
      fail(Errc::ParseError, "expected an array of menus", "/menus");
    for (const auto& s : out.types) {
      if (s.size() != jmenus.size())
        fail(Errc::ParseError, "type length does not match the menu count", "/types");
      for (size_t i = 0; i < s.size(); ++i) {
        auto labels = string_list(jmenus[i], "/menus/" + std::to_string(i));
        if (std::find(labels.begin(), labels.end(), out.order[s[i]]) == labels.end())
          fail(Errc::UnknownAlternative,
               "type selects '" + out.order[s[i]] + "' outside menu " + std::to_string(i + 1),
               "/types");
      }
    }
  }
  return out;
}

GridFile parse_grid_text(std::string_view text, size_t arity_hint) {
  Json doc = parse_json(text);
  if (!doc.is_object()) fail(Errc::ParseError, "grid document must be an object", "/");
  GridFile out;
  if (doc.contains("coords")) {
    const Json& coords = doc["coords"];
    if (!coords.is_array() || coords.empty())
      fail(Errc::EmptyGrid, "coords must be a non-empty array", "/coords");
    for (size_t i = 0; i < coords.size(); ++i) {
      std::string path = "/coords/" + std::to_string(i);
      if (!coords[i].is_array()) fail(Errc::ParseError, "expected an array", path);
      std::vector<Rational> list;
      for (size_t k = 0; k < coords[i].size(); ++k)
        list.push_back(mass_from_json(coords[i][k], path + "/" + std::to_string(k)));
      out.coords.push_back(std::move(list));
    }
    return out;
  }
  if (doc.contains("values")) {
    if (arity_hint == 0)
      fail(Errc::ParseError,
           "grid file gives shared 'values'; the copula arity is needed (use --arity)",
           "/values");
    const Json& values = doc["values"];
    if (!values.is_array()) fail(Errc::ParseError, "expected an array", "/values");
    std::vector<Rational> list;
    for (size_t k = 0; k < values.size(); ++k)
      list.push_back(mass_from_json(values[k], "/values/" + std::to_string(k)));
    out.coords.assign(arity_hint, list);
    return out;
  }
  fail(Errc::ParseError, "grid file needs 'coords' or 'values'", "/");
}

} // namespace ochoice

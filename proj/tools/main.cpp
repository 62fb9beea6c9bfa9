// ochoice: exact identification of type distributions from ordered
// probabilistic choice data via (quasi-)copulas, plus the model checks and
// polytope verifiers that go with it. All arithmetic is exact; output is
// deterministic JSON.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ochoice/copula.hpp"
#include "ochoice/error.hpp"
#include "ochoice/generate.hpp"
#include "ochoice/identify.hpp"
#include "ochoice/io.hpp"
#include "ochoice/models.hpp"
#include "ochoice/polytope.hpp"

namespace {

using ochoice::Json;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in)
    ochoice::fail(ochoice::Errc::ParseError, "cannot open '" + path + "'", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Json& doc, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
      ochoice::fail(ochoice::Errc::ParseError, "cannot write '" + out_path + "'", out_path);
    out << doc.dump(2) << "\n";
  }
}

Json rationals_to_json(const std::vector<ochoice::Rational>& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(v.str());
  return arr;
}

Json witness_to_json(const ochoice::AxiomWitness& w) {
  using Axiom = ochoice::AxiomWitness::Axiom;
  Json out = Json::object();
  switch (w.axiom) {
    case Axiom::Grounded:
      out["axiom"] = "grounded";
      out["point"] = rationals_to_json(w.point);
      out["value"] = w.value.str();
      out["expected"] = w.expected.str();
      break;
    case Axiom::UniformMargins:
      out["axiom"] = "uniform-margins";
      out["point"] = rationals_to_json(w.point);
      out["value"] = w.value.str();
      out["expected"] = w.expected.str();
      break;
    case Axiom::Lipschitz:
      out["axiom"] = "lipschitz";
      out["point"] = rationals_to_json(w.point);
      out["point2"] = rationals_to_json(w.point2);
      out["excess"] = w.value.str();
      break;
    case Axiom::Rectangle:
      out["axiom"] = "rectangle";
      out["box"] = Json{{"lo", rationals_to_json(w.box_lo)},
                        {"hi", rationals_to_json(w.box_hi)}};
      out["alternating_sum"] = w.value.str();
      break;
  }
  return out;
}

Json axiom_report_to_json(const ochoice::GridAxiomReport& report) {
  Json out = Json::object();
  out["grounded"] = report.grounded;
  out["uniform_margins"] = report.uniform_margins;
  out["lipschitz"] = report.lipschitz;
  out["rectangle_nonneg"] = report.rectangle_nonneg;
  if (report.witness) out["witness"] = witness_to_json(*report.witness);
  return out;
}

struct CommonOpts {
  std::string out_path;
  std::optional<int> decimals;
};

int run_identify(const std::string& spec_text, const std::string& instance_path,
                 const CommonOpts& opts, std::uint64_t max_types) {
  ochoice::CopulaSpec spec = ochoice::CopulaSpec::parse(spec_text);
  ochoice::Instance inst = ochoice::parse_instance_text(slurp(instance_path));

  ochoice::IdentifyLimits limits;
  limits.max_types = max_types;
  ochoice::IdentificationResult result = ochoice::identify(spec, inst, limits);

  Json doc = Json::object();
  doc["instance"] = ochoice::instance_to_json(inst, opts.decimals);
  doc["copula"] = spec.str();
  if (result.identified()) {
    doc["status"] = "identified";
    doc["support"] = ochoice::support_to_json(inst, *result.distribution, opts.decimals);
  } else {
    doc["status"] = "not-identified";
    doc["witness"] = Json{{"type", ochoice::type_to_json(inst, *result.witness)},
                          {"mass", ochoice::mass_string(result.witness_mass, opts.decimals)}};
  }
  doc["stats"] = Json{{"types_enumerated", result.stats.types_enumerated},
                      {"support_size", result.stats.support_size}};
  emit(doc, opts.out_path);
  return result.identified() ? 0 : 2;
}

int run_check_one_mistake(const std::string& path, const CommonOpts& opts) {
  ochoice::Instance inst = ochoice::parse_instance_text(slurp(path));
  ochoice::OneMistakeCheck check = ochoice::is_one_mistake(inst);
  Json doc = Json::object();
  doc["check"] = "one-mistake";
  doc["member"] = check.member;
  doc["deficit"] = ochoice::mass_string(check.deficit, opts.decimals);
  emit(doc, opts.out_path);
  return 0;
}

int run_check_fh_lower(const std::string& path, const CommonOpts& opts) {
  ochoice::Instance inst = ochoice::parse_instance_text(slurp(path));
  ochoice::FHLowerVerdict verdict = ochoice::fh_lower_identifiable(inst);
  Json doc = Json::object();
  doc["check"] = "fh-lower";
  switch (verdict.kind) {
    case ochoice::FHLowerVerdict::Kind::CondI:
      doc["verdict"] = "cond-i";
      doc["core"] = ochoice::type_to_json(inst, verdict.core);
      doc["direction"] =
          verdict.direction == ochoice::MistakeDirection::Downward ? "downward" : "upward";
      break;
    case ochoice::FHLowerVerdict::Kind::CondII:
      doc["verdict"] = "cond-ii";
      doc["menus"] = Json::array({verdict.i + 1, verdict.j + 1});
      break;
    case ochoice::FHLowerVerdict::Kind::No:
      doc["verdict"] = "no";
      doc["witness"] = ochoice::type_to_json(inst, verdict.witness);
      break;
  }
  emit(doc, opts.out_path);
  return 0;
}

int run_check_scrum(const std::string& path, const CommonOpts& opts) {
  ochoice::Instance inst = ochoice::parse_instance_text(slurp(path));
  ochoice::ScrumReport report = ochoice::scrum_membership(inst);
  auto axiom_name = [](ochoice::ScrumReport::Axiom a) {
    switch (a) {
      case ochoice::ScrumReport::Axiom::Ok: return "ok";
      case ochoice::ScrumReport::Axiom::Violated: return "violated";
      case ochoice::ScrumReport::Axiom::NotApplicable: return "not-applicable";
    }
    return "?";
  };
  Json doc = Json::object();
  doc["check"] = "scrum";
  doc["member"] = report.member;
  doc["regularity"] = axiom_name(report.regularity);
  doc["centrality"] = axiom_name(report.centrality);
  if (report.irrational_support_type)
    doc["irrational_support_type"] = ochoice::type_to_json(inst, *report.irrational_support_type);
  if (report.regularity_witness)
    doc["regularity_witness"] = Json{{"superset_menu", report.regularity_witness->first + 1},
                                     {"subset_menu", report.regularity_witness->second + 1}};
  if (report.centrality_witness)
    doc["centrality_witness"] = Json{{"triple_menu", report.centrality_witness->first + 1},
                                     {"pair_menu", report.centrality_witness->second + 1}};
  emit(doc, opts.out_path);
  return 0;
}

Json labels_for_type(const std::vector<std::string>& order, const ochoice::ChoiceType& s) {
  Json arr = Json::array();
  for (ochoice::AltRank r : s) arr.push_back(order[r]);
  return arr;
}

int run_check_progressive(const std::string& path, const CommonOpts& opts) {
  ochoice::TypeSetFile file = ochoice::parse_type_set_text(slurp(path));
  Json doc = Json::object();
  doc["check"] = "progressive";
  doc["progressive"] = ochoice::is_progressive(file.types);
  emit(doc, opts.out_path);
  return 0;
}

int run_check_lattice(const std::string& path, const CommonOpts& opts) {
  ochoice::TypeSetFile file = ochoice::parse_type_set_text(slurp(path));
  ochoice::LatticeCheck check = ochoice::is_lattice(file.types);
  Json doc = Json::object();
  doc["check"] = "lattice";
  doc["lattice"] = check.is_lattice;
  if (!check.is_lattice) {
    doc["witness"] = Json{
        {"pair", Json::array({labels_for_type(file.order, check.witness_pair->first),
                              labels_for_type(file.order, check.witness_pair->second)})},
        {"missing", labels_for_type(file.order, *check.missing)},
        {"kind", check.missing_is_meet ? "meet" : "join"}};
  }
  emit(doc, opts.out_path);
  return 0;
}

int run_copula_eval(const std::string& spec_text, const std::vector<std::string>& args,
                    const CommonOpts& opts) {
  ochoice::CopulaSpec spec = ochoice::CopulaSpec::parse(spec_text);
  std::vector<ochoice::Rational> u;
  for (const auto& a : args) u.push_back(ochoice::Rational::parse(a));
  ochoice::Rational value = ochoice::eval(spec, u);
  if (!opts.out_path.empty() && opts.out_path != "-") {
    std::ofstream out(opts.out_path, std::ios::binary);
    out << ochoice::mass_string(value, opts.decimals) << "\n";
  } else {
    std::cout << ochoice::mass_string(value, opts.decimals) << "\n";
  }
  return 0;
}

int run_copula_axioms(const std::string& spec_text, const std::string& grid_arg,
                      size_t arity, const CommonOpts& opts) {
  ochoice::CopulaSpec spec = ochoice::CopulaSpec::parse(spec_text);
  size_t n = spec.arity > 0 ? static_cast<size_t>(spec.arity) : arity;

  ochoice::Grid grid;
  if (grid_arg == "auto") {
    if (n == 0)
      ochoice::fail(ochoice::Errc::EmptyGrid,
                    "bare copulas need --arity with --grid auto");
    std::vector<ochoice::Rational> values = {
        ochoice::Rational(0), ochoice::Rational(1, 4), ochoice::Rational(1, 2),
        ochoice::Rational(3, 4), ochoice::Rational(1)};
    grid.assign(n, values);
  } else {
    grid = ochoice::parse_grid_text(slurp(grid_arg), n).coords;
  }

  ochoice::GridAxiomReport report = ochoice::check_axioms(spec, grid);
  Json doc = Json::object();
  doc["copula"] = spec.str();
  Json jgrid = Json::array();
  for (const auto& coord : grid) jgrid.push_back(rationals_to_json(coord));
  doc["grid"] = std::move(jgrid);
  Json rep = axiom_report_to_json(report);
  for (auto& [k, v] : rep.items()) doc[k] = v;
  emit(doc, opts.out_path);
  return 0;
}

int run_verify_prop1(const std::string& path, bool all_types, std::uint64_t sample,
                     std::uint64_t seed, const CommonOpts& opts) {
  ochoice::Instance inst = ochoice::parse_instance_text(slurp(path));

  std::vector<ochoice::ChoiceType> samples;
  std::uint64_t total = inst.type_space_size(100'000);
  if (all_types || sample == 0 || sample >= total) {
    inst.for_each_type([&](const ochoice::ChoiceType& s) { samples.push_back(s); });
  } else {
    // deterministic skip-sampling over the canonical enumeration
    std::uint64_t stride = total / sample;
    std::uint64_t idx = 0, offset = seed % stride;
    inst.for_each_type([&](const ochoice::ChoiceType& s) {
      if (idx % stride == offset && samples.size() < sample) samples.push_back(s);
      ++idx;
    });
  }

  ochoice::Prop1Report report = ochoice::verify_prop1(inst, samples);
  Json doc = Json::object();
  doc["check"] = "prop1";
  doc["types_checked"] = report.entries.size();
  doc["all_match"] = report.all_ok;
  Json failures = Json::array();
  for (const auto& e : report.entries) {
    if (e.ok) continue;
    Json f = Json::object();
    f["type"] = ochoice::type_to_json(inst, e.s);
    f["up_mass"] = e.min_up.str();
    f["lp_up"] = e.lp_up.str();
    f["down_mass"] = e.min_down.str();
    f["lp_down"] = e.lp_down.str();
    if (e.up_argmax) f["lp_up_argmax"] = ochoice::support_to_json(inst, *e.up_argmax);
    if (e.down_argmax) f["lp_down_argmax"] = ochoice::support_to_json(inst, *e.down_argmax);
    failures.push_back(std::move(f));
  }
  doc["failures"] = std::move(failures);
  emit(doc, opts.out_path);
  return 0;
}

int run_gen(const std::string& mode_name, std::uint64_t seed, const std::string& shape_text,
            const CommonOpts& opts) {
  ochoice::ShapeSpec shape =
      shape_text.empty() ? ochoice::ShapeSpec{} : ochoice::ShapeSpec::parse(shape_text);
  ochoice::GenMode mode = ochoice::gen_mode_parse(mode_name);
  ochoice::Generated gen = ochoice::gen_random(shape, seed, mode);

  Json doc = ochoice::instance_to_json(gen.instance, opts.decimals);
  if (gen.pi) doc["pi"] = ochoice::support_to_json(gen.instance, *gen.pi, opts.decimals);
  if (gen.type_set) {
    Json types = Json::array();
    for (const auto& s : *gen.type_set)
      types.push_back(ochoice::type_to_json(gen.instance, s));
    doc["type_set"] = std::move(types);
  }
  doc["meta"] = Json{{"mode", std::string(ochoice::gen_mode_name(mode))},
                     {"seed", seed},
                     {"shape", shape.str()}};
  emit(doc, opts.out_path);
  return 0;
}

int run_aggregate(const std::string& path, const CommonOpts& opts) {
  ochoice::DistributionFile file = ochoice::parse_distribution_text(slurp(path));
  ochoice::Pcf marginals = ochoice::aggregate(file.instance, file.pi);

  Json doc = Json::object();
  doc["order"] = file.instance.order();
  Json menus = Json::array();
  Json rho = Json::array();
  for (size_t i = 0; i < file.instance.menu_count(); ++i) {
    Json menu = Json::array();
    Json masses = Json::object();
    const auto& elems = file.instance.menu(i).elems;
    for (size_t k = 0; k < elems.size(); ++k) {
      const std::string& lab = file.instance.label(elems[k]);
      menu.push_back(lab);
      masses[lab] = ochoice::mass_string(marginals[i][k], opts.decimals);
    }
    menus.push_back(std::move(menu));
    rho.push_back(std::move(masses));
  }
  doc["menus"] = std::move(menus);
  doc["rho"] = std::move(rho);
  if (file.had_rho) doc["matches_input_rho"] = marginals == file.instance.pcf();
  emit(doc, opts.out_path);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact copula-based identification for ordered probabilistic choice"};
  app.require_subcommand(1);

  CommonOpts opts;
  int decimals_flag = -1;
  app.add_option("--out", opts.out_path, "write the report here instead of stdout");
  app.add_option("--decimals", decimals_flag,
                 "render probabilities as fixed-point decimals (display only)");

  // identify
  std::string id_spec, id_instance;
  std::uint64_t id_max_types = 100'000;
  CLI::App* identify = app.add_subcommand("identify", "invert a copula into a type distribution");
  identify->add_option("--copula", id_spec, "copula spec, e.g. M, W, Pi, Frechet(1/3)")->required();
  identify->add_option("--max-types", id_max_types, "type-space cap");
  identify->add_option("instance", id_instance, "instance file")->required();

  // check <what>
  CLI::App* check = app.add_subcommand("check", "model membership and structure checks");
  check->require_subcommand(1);
  std::string chk_path;
  CLI::App* c_one = check->add_subcommand("one-mistake", "total mistake mass at most 1");
  c_one->add_option("instance", chk_path, "instance file")->required();
  CLI::App* c_fh = check->add_subcommand("fh-lower", "FH-lower-bound identifiability");
  c_fh->add_option("instance", chk_path, "instance file")->required();
  CLI::App* c_scrum = check->add_subcommand("scrum", "rational-progressive membership");
  c_scrum->add_option("instance", chk_path, "instance file")->required();
  CLI::App* c_prog = check->add_subcommand("progressive", "is the type set a dominance chain");
  c_prog->add_option("types", chk_path, "type-set file")->required();
  CLI::App* c_lat = check->add_subcommand("lattice", "is the type set closed under join/meet");
  c_lat->add_option("types", chk_path, "type-set file")->required();

  // copula <eval|axioms>
  CLI::App* copula = app.add_subcommand("copula", "evaluate specs and check axioms");
  copula->require_subcommand(1);
  std::string cop_spec, cop_grid = "auto";
  std::vector<std::string> cop_args;
  std::uint64_t cop_arity = 0;
  CLI::App* c_eval = copula->add_subcommand("eval", "evaluate a spec at a point");
  c_eval->add_option("spec", cop_spec, "copula spec")->required();
  c_eval->add_option("u", cop_args, "coordinates in [0,1]")->required()->expected(-1);
  CLI::App* c_ax = copula->add_subcommand("axioms", "grid axiom report");
  c_ax->add_option("spec", cop_spec, "copula spec")->required();
  c_ax->add_option("--grid", cop_grid, "grid file or 'auto'");
  c_ax->add_option("--arity", cop_arity, "coordinate count for bare specs");

  // verify prop1
  CLI::App* verify = app.add_subcommand("verify", "polytope extremality verification");
  verify->require_subcommand(1);
  std::string ver_path;
  bool ver_all = false;
  std::uint64_t ver_sample = 0, ver_seed = 1;
  CLI::App* v_prop1 = verify->add_subcommand("prop1", "min-copula attains the LP maxima");
  v_prop1->add_option("instance", ver_path, "instance file")->required();
  v_prop1->add_flag("--all-types", ver_all, "check every type");
  v_prop1->add_option("--sample", ver_sample, "check k types");
  v_prop1->add_option("--seed", ver_seed, "sampling seed");

  // gen
  std::string gen_mode = "arbitrary", gen_shape;
  std::uint64_t gen_seed = 1;
  CLI::App* gen = app.add_subcommand("gen", "deterministic random instances");
  gen->add_option("--mode", gen_mode, "arbitrary | one-mistake | progressive-source | lattice-source");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--shape", gen_shape, "e.g. menus=3,alts=6,minsize=2,maxsize=4,denmax=20");

  // aggregate
  std::string agg_path;
  CLI::App* agg = app.add_subcommand("aggregate", "marginals of a type distribution");
  agg->add_option("pi", agg_path, "distribution file")->required();

  // let --out/--decimals appear after a subcommand too
  for (CLI::App* sub : app.get_subcommands(nullptr)) {
    sub->fallthrough();
    for (CLI::App* nested : sub->get_subcommands(nullptr)) nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (decimals_flag >= 0) opts.decimals = decimals_flag;

  try {
    if (*identify) return run_identify(id_spec, id_instance, opts, id_max_types);
    if (*c_one) return run_check_one_mistake(chk_path, opts);
    if (*c_fh) return run_check_fh_lower(chk_path, opts);
    if (*c_scrum) return run_check_scrum(chk_path, opts);
    if (*c_prog) return run_check_progressive(chk_path, opts);
    if (*c_lat) return run_check_lattice(chk_path, opts);
    if (*c_eval) return run_copula_eval(cop_spec, cop_args, opts);
    if (*c_ax) return run_copula_axioms(cop_spec, cop_grid, cop_arity, opts);
    if (*v_prop1) return run_verify_prop1(ver_path, ver_all, ver_sample, ver_seed, opts);
    if (*gen) return run_gen(gen_mode, gen_seed, gen_shape, opts);
    if (*agg) return run_aggregate(agg_path, opts);
  } catch (const ochoice::Error& e) {
    Json err = Json::object();
    err["error"] = Json{{"code", std::string(ochoice::errc_name(e.code()))},
                        {"message", e.what()},
                        {"location", e.location()}};
    std::cerr << err.dump() << "\n";
    return e.code() == ochoice::Errc::TooLarge ? 3 : 1;
  } catch (const std::exception& e) {
    std::cerr << R"({"error":{"code":"internal","message":")" << e.what() << "\"}}\n";
    return 1;
  }
  return 1;
}

#pragma once

// The divisor-lab command line. Exit codes: 0 every asserted divisibility
// holds, 1 one failed (a bug), 2 input error, 3 size or search cap exceeded.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "divisor_lab/catalog.hpp"
#include "divisor_lab/crossed_homs.hpp"
#include "divisor_lab/error.hpp"
#include "divisor_lab/explore.hpp"
#include "divisor_lab/hom_verify.hpp"
#include "divisor_lab/json_io.hpp"
#include "divisor_lab/ring_equations.hpp"
#include "divisor_lab/solver.hpp"

namespace divlab {

enum ExitCode : int { exit_ok = 0, exit_bound_failed = 1, exit_input = 2, exit_cap = 3 };

namespace detail {

struct CliOptions {
  std::string group_file, catalog, system_file, ring_file, action_file, presentation_file, out_file;
  std::string question = "Q1";
  std::uint64_t cap = 100'000'000;
  std::uint64_t seed = 0;
  std::uint64_t trials = 100;
  std::size_t max_order = 12;
  unsigned threads = 0;
  bool oracle = false;
  bool abelian = false;
};

inline SolveOptions solve_options(const CliOptions& o) {
  SolveOptions s;
  s.cap = o.cap;
  s.threads = o.threads;
  s.gcd_mode = o.oracle ? GcdMode::oracle : GcdMode::fast;
  return s;
}

inline std::filesystem::path dir_of(const std::string& file) { return std::filesystem::path(file).parent_path(); }

inline std::optional<FiniteGroup> group_option(const CliOptions& o) {
  if (!o.group_file.empty() && !o.catalog.empty())
    throw Error(ErrorKind::input_error, "give either --group or --catalog, not both");
  if (!o.group_file.empty()) return group_from_json(read_json_file(o.group_file), dir_of(o.group_file));
  if (!o.catalog.empty()) return catalog_group(o.catalog);
  return std::nullopt;
}

inline const std::string& require(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(ErrorKind::input_error, std::string(flag) + " is required");
  return value;
}

inline int status_of(const Json& reports) {
  for (const auto& r : reports)
    if (!r.at("divides").get<bool>()) return exit_bound_failed;
  return exit_ok;
}

inline int cmd_group(const CliOptions& o, bool info, Json& out) {
  const auto g = group_option(o);
  if (!g) throw Error(ErrorKind::input_error, "--group or --catalog is required");
  out = report_envelope(info ? "group info" : "group validate");
  out["valid"] = true;
  out["order"] = g->order();
  if (!info) return exit_ok;
  out["abelian"] = g->is_abelian();
  std::map<std::size_t, std::size_t> orders;
  std::size_t exponent = 1;
  for (ElementId a = 0; a < g->order(); ++a) {
    const auto k = g->element_order(a);
    ++orders[k];
    exponent = std::lcm(exponent, k);
  }
  Json oj = Json::object();
  for (const auto& [k, c] : orders) oj[std::to_string(k)] = c;
  out["element_orders"] = oj;
  out["exponent"] = exponent;
  out["conjugacy_classes"] = conjugacy_class_count(*g);
  out["abelianization"] = abelianization(*g);
  out["commutator_subgroup_order"] = commutator_subgroup(*g).order();
  if (g->order() <= subgroup_enumeration_cap) out["subgroups"] = all_subgroups(*g).size();
  out["names"] = g->names();
  return exit_ok;
}

inline int cmd_solve(const CliOptions& o, Json& out) {
  const auto& file = require(o.system_file, "--system");
  const auto sys = system_from_json(read_json_file(file), dir_of(file));
  const auto opts = solve_options(o);
  out = report_envelope("solve");
  out["group_order"] = sys.group().order();
  out["unknowns"] = sys.unknowns();
  Json reports = Json::array();
  if (sys.all_plain()) {
    reports.push_back(report_to_json(theorem1_verdict(sys, opts)));
    if (sys.arity() == 1) reports.push_back(report_to_json(hall_verdict(sys, opts)));
  }
  reports.push_back(report_to_json(theorem2_verdict(sys, opts)));
  out["reports"] = reports;
  return status_of(reports);
}

inline int cmd_ring_solve(const CliOptions& o, Json& out) {
  const auto& file = require(o.ring_file, "--ring");
  const auto sys = ring_system_from_json(read_json_file(file), dir_of(file));
  out = report_envelope("ring-solve");
  out["ring"] = sys.ring().describe();
  out["unit_group_order"] = sys.units().group.order();
  out["homogeneity_modulus"] = big_to_json(homogeneity_modulus(sys));
  Json reports = Json::array({report_to_json(theorem3_verdict(sys, solve_options(o)))});
  out["reports"] = reports;
  return status_of(reports);
}

inline int cmd_crossed(const CliOptions& o, Json& out) {
  const auto& file = require(o.action_file, "--action");
  const auto act = action_from_json(read_json_file(file), dir_of(file));
  const auto gens = small_generating_set(act.actor());
  const auto direct = count_crossed_homs_direct(act, gens, o.cap);
  const auto via_sections = count_crossed_homs(act, gens, o.cap);
  out = report_envelope("crossed");
  out["actor_order"] = act.actor().order();
  out["target_order"] = act.target().order();
  out["trivial_action"] = act.is_trivial();
  out["abelianization"] = abelianization(act.actor());
  out["direct_count"] = direct;
  out["section_count"] = via_sections;
  out["routes_agree"] = direct == via_sections;
  Json reports = Json::array();
  for (const auto& r : theorem4_verdict(act, solve_options(o))) reports.push_back(report_to_json(r));
  out["reports"] = reports;
  if (direct != via_sections) return exit_bound_failed;
  return status_of(reports);
}

inline int cmd_hom_check(const CliOptions& o, Json& out) {
  const auto& file = require(o.presentation_file, "--presentation");
  auto in = presentation_from_json(read_json_file(file), dir_of(file));
  if (auto g = group_option(o)) {
    if (in.images || !in.subgroup_generators.empty())
      throw Error(ErrorKind::input_error, "images and subgroup refer to the group in the file");
    in.group = std::move(g);
  }
  if (!in.group) throw Error(ErrorKind::input_error, "hom-check needs a group (in the file or via --group/--catalog)");
  const FiniteGroup& g = *in.group;
  const auto homs = in.images ? *in.images : enumerate_homs(in.presentation, g, o.cap);
  const Subgroup h = subgroup_generated(g, in.subgroup_generators);
  const auto v = conditions_check(g, in.presentation, in.indexing, homs, h);
  out = report_envelope("hom-check");
  out["n"] = in.indexing.n;
  out["phi_size"] = v.phi_size;
  out["h_order"] = v.h_order;
  out["condition_I"] = v.closed_I;
  out["condition_II"] = v.closed_II;
  if (!v.witness.empty()) out["witness"] = v.witness;
  out["twist_exists"] = v.twist_exists;
  out["lemma0_agrees"] = v.lemma0_agrees;
  out["lemma1_holds"] = v.lemma1_holds;
  if (v.divides) out["divides"] = *v.divides;
  const bool bad = (v.divides && !*v.divides) || !v.lemma0_agrees || !v.lemma1_holds || !v.twist_exists;
  return bad ? exit_bound_failed : exit_ok;
}

inline int cmd_explore(const CliOptions& o, Json& out) {
  ExplorationConfig cfg;
  cfg.question = parse_question(o.question);
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.max_order = o.max_order;
  cfg.abelian_actor = o.abelian;
  cfg.threads = o.threads;
  cfg.gcd_mode = o.oracle ? GcdMode::oracle : GcdMode::fast;
  if (cfg.max_order > catalog_order_cap) throw Error(ErrorKind::size_cap_exceeded, "--max-order above the catalog cap");
  const auto rep = explore(cfg);
  out = exploration_to_json(rep);
  return rep.weak_failures == 0 ? exit_ok : exit_bound_failed;
}

}  // namespace detail

/// Runs one command line (without the program name).
inline int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  detail::CliOptions o;
  CLI::App app{"Divisibility experiments for equations over finite groups and rings", "divisor-lab"};
  app.require_subcommand(1);
  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", o.out_file, "write the JSON report here instead of standard output");
    c->add_option("--cap", o.cap, "largest search space to enumerate");
    c->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    c->add_flag("--oracle", o.oracle, "use the subgroup-enumeration GCD path");
  };
  auto add_group = [&](CLI::App* c) {
    c->add_option("--group", o.group_file, "group table JSON file");
    c->add_option("--catalog", o.catalog, "catalog spec such as S4 or Z2xZ4");
  };

  auto* group = app.add_subcommand("group", "inspect a group");
  group->require_subcommand(1);
  auto* validate = group->add_subcommand("validate", "check the group axioms");
  auto* info = group->add_subcommand("info", "summarize a group");
  for (auto* c : {validate, info}) {
    add_group(c);
    c->add_option("--out", o.out_file, "write the JSON report here instead of standard output");
  }

  auto* solve = app.add_subcommand("solve", "count solutions of a system over a group");
  solve->add_option("--system", o.system_file, "system JSON file");
  add_common(solve);

  auto* ring_solve = app.add_subcommand("ring-solve", "count unit solutions of a ring system");
  ring_solve->add_option("--ring", o.ring_file, "ring system JSON file");
  add_common(ring_solve);

  auto* crossed = app.add_subcommand("crossed", "count crossed homomorphisms");
  crossed->add_option("--action", o.action_file, "action JSON file");
  add_common(crossed);

  auto* hom = app.add_subcommand("hom-check", "check closure conditions on a set of homomorphisms");
  hom->add_option("--presentation", o.presentation_file, "presentation JSON file");
  add_group(hom);
  add_common(hom);

  auto* exp = app.add_subcommand("explore", "search for counterexamples to strengthened bounds");
  exp->add_option("--question", o.question, "Q1, Q2, Q3 or Q4");
  exp->add_option("--seed", o.seed, "64-bit seed");
  exp->add_option("--trials", o.trials, "number of trials");
  exp->add_option("--max-order", o.max_order, "largest catalog group order");
  exp->add_flag("--abelian", o.abelian, "Q4: abelian actors only");
  add_common(exp);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  }

  try {
    Json report;
    int code = exit_ok;
    if (validate->parsed()) code = detail::cmd_group(o, false, report);
    else if (info->parsed()) code = detail::cmd_group(o, true, report);
    else if (solve->parsed()) code = detail::cmd_solve(o, report);
    else if (ring_solve->parsed()) code = detail::cmd_ring_solve(o, report);
    else if (crossed->parsed()) code = detail::cmd_crossed(o, report);
    else if (hom->parsed()) code = detail::cmd_hom_check(o, report);
    else if (exp->parsed()) code = detail::cmd_explore(o, report);
    const std::string text = dump_report(report);
    if (o.out_file.empty()) {
      out << text;
    } else {
      std::ofstream f(o.out_file, std::ios::binary);
      if (!f) throw Error(ErrorKind::input_error, "cannot write " + o.out_file);
      f << text;
    }
    if (code == exit_bound_failed) err << "error: an asserted divisibility failed\n";
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_cap_error() ? exit_cap : exit_input;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return exit_cap;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_bound_failed;
  }
}

inline int run_command(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_command(args);
}

}  // namespace divlab

#pragma once

// Seeded search for counterexamples to four strengthened bounds:
//   Q1/Q2  GCD(H, Δ_m) in place of GCD(H, Δ_m/Δ_{m-1}) for theorems 1 and 2
//   Q3     GCD(G0, Δ_{m+s}) in place of the homogeneity modulus
//   Q4     GCD(B, |F/F'|) in place of GCD(B, exp(F/F'))
// Each trial first builds its instance as an ordinary input document (the
// same JSON the CLI reads), then evaluates it through the loaders, so any
// recorded instance replays through `evaluate_instance` or the CLI.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "divisor_lab/catalog.hpp"
#include "divisor_lab/crossed_homs.hpp"
#include "divisor_lab/json_io.hpp"
#include "divisor_lab/random.hpp"
#include "divisor_lab/ring_equations.hpp"
#include "divisor_lab/solver.hpp"

namespace divlab {

enum class Question { q1, q2, q3, q4 };

inline std::string to_string(Question q) {
  switch (q) {
    case Question::q1: return "Q1";
    case Question::q2: return "Q2";
    case Question::q3: return "Q3";
    case Question::q4: return "Q4";
  }
  return "?";
}

inline Question parse_question(const std::string& s) {
  if (s == "Q1" || s == "q1") return Question::q1;
  if (s == "Q2" || s == "q2") return Question::q2;
  if (s == "Q3" || s == "q3") return Question::q3;
  if (s == "Q4" || s == "q4") return Question::q4;
  throw Error(ErrorKind::input_error, "question must be one of Q1, Q2, Q3, Q4");
}

struct ExplorationConfig {
  Question question = Question::q1;
  std::size_t max_order = 12;          // catalog groups (Q1, Q2), actor and target (Q4, capped at 8)
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  bool abelian_actor = false;          // Q4: draw F from abelian groups only
  std::uint64_t space_limit = 50'000;  // largest |G|^m a generated instance may have
  unsigned threads = 0;
  GcdMode gcd_mode = GcdMode::fast;
};

struct TrialOutcome {
  std::uint64_t count = 0;
  std::uint64_t weak_bound = 1;
  std::uint64_t strong_bound = 1;
  bool weak_divides = true;
  bool strong_divides = true;
  Json details = Json::object();
};

struct TrialRecord {
  std::uint64_t trial = 0;
  Json instance;
  TrialOutcome outcome;
};

struct ExplorationReport {
  ExplorationConfig config;
  std::vector<TrialRecord> records;
  std::uint64_t violations = 0;     // strengthened bound failed
  std::uint64_t weak_failures = 0;  // proven bound failed: a bug, not a discovery
};

// ------------------------------------------------------------ evaluation

/// Count and both bounds for one instance document.
inline TrialOutcome evaluate_instance(Question q, const Json& instance, const SolveOptions& opts = {}) {
  TrialOutcome out;
  switch (q) {
    case Question::q1:
    case Question::q2: {
      const auto sys = system_from_json(instance);
      const auto rep = q == Question::q1 ? theorem1_verdict(sys, opts) : theorem2_verdict(sys, opts);
      const std::uint64_t h = q == Question::q1 ? *rep.breakdown.centralizer_order : *rep.breakdown.h_tilde_order;
      out.count = rep.solution_count;
      out.weak_bound = rep.bound;
      if (q == Question::q1) {
        out.strong_bound = group_gcd(centralizer(sys.group(), coefficient_set(sys)), *rep.breakdown.delta_m, opts.gcd_mode);
      } else {
        out.strong_bound = group_gcd(h_tilde(sys), *rep.breakdown.delta_m, opts.gcd_mode);
      }
      out.details = Json{{"group_order", sys.group().order()},
                         {"subgroup_order", h},
                         {"delta_m", big_to_json(*rep.breakdown.delta_m)},
                         {"delta_m_minus_1", big_to_json(*rep.breakdown.delta_m_minus_1)}};
      break;
    }
    case Question::q3: {
      const auto sys = ring_system_from_json(instance);
      const auto rep = theorem3_verdict(sys, opts);
      out.count = rep.solution_count;
      out.weak_bound = rep.bound;
      out.strong_bound = group_gcd(unit_centralizer(sys), *rep.breakdown.delta_m, opts.gcd_mode);
      out.details = Json{{"unit_group_order", sys.units().group.order()},
                         {"centralizer_order", *rep.breakdown.centralizer_order},
                         {"delta_top", big_to_json(*rep.breakdown.delta_m)},
                         {"delta_top_minus_1", big_to_json(*rep.breakdown.delta_m_minus_1)}};
      break;
    }
    case Question::q4: {
      const auto act = action_from_json(instance);
      const auto inv = abelianization(act.actor());
      std::uint64_t e = 1, order = 1;
      for (auto d : inv) {
        e = std::max(e, d);
        order *= d;
      }
      out.count = count_crossed_homs(act);
      out.weak_bound = group_gcd(act.target(), BigInt(e), opts.gcd_mode);
      out.strong_bound = group_gcd(act.target(), BigInt(order), opts.gcd_mode);
      out.details = Json{{"abelianization", inv}, {"target_order", act.target().order()}};
      break;
    }
  }
  out.weak_divides = out.count % out.weak_bound == 0;
  out.strong_divides = out.count % out.strong_bound == 0;
  return out;
}

// ------------------------------------------------------------ generation

namespace detail {

inline std::size_t affordable_arity(std::size_t order, std::size_t wanted, std::uint64_t limit) {
  while (wanted > 1) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < wanted; ++i) total *= order;
    if (total <= limit) break;
    --wanted;
  }
  return wanted;
}

inline std::string random_letter(SplitMix64& rng, const std::vector<std::string>& vars,
                                 const std::vector<std::string>& coeffs) {
  if (!coeffs.empty() && rng.chance(1, 3)) return rng.pick(coeffs);
  return rng.pick(vars);
}

/// Variable exponents are multiplied by `scale`, which pushes Δ_{m-1} above 1.
inline std::string random_word(SplitMix64& rng, const std::vector<std::string>& vars,
                               const std::vector<std::string>& coeffs, long long scale) {
  const auto factors = rng.between(1, 4);
  std::string w;
  for (long long i = 0; i < factors; ++i) {
    if (!w.empty()) w += ' ';
    const auto kind = rng.below(6);
    if (kind == 0) {
      w += "[" + random_letter(rng, vars, coeffs) + "," + random_letter(rng, vars, coeffs) + "]";
    } else {
      const std::string letter = random_letter(rng, vars, coeffs);
      long long e = rng.between(-4, 4);
      if (e == 0) e = 1;
      if (std::find(vars.begin(), vars.end(), letter) != vars.end()) e *= scale;
      w += letter;
      if (e != 1) w += "^" + std::to_string(e);
    }
  }
  return w;
}

inline Json group_system_instance(SplitMix64& rng, const std::vector<CatalogEntry>& corpus, bool generalized,
                                  std::uint64_t limit) {
  const auto& entry = rng.pick(corpus);
  const FiniteGroup& g = entry.group;
  const std::size_t m = affordable_arity(g.order(), static_cast<std::size_t>(rng.between(1, 3)), limit);
  static const std::vector<std::string> var_names{"x", "y", "z"};
  static const std::vector<std::string> coeff_names{"a", "b"};
  std::vector<std::string> vars(var_names.begin(), var_names.begin() + static_cast<long>(m));
  std::vector<std::string> coeffs(coeff_names.begin(), coeff_names.begin() + rng.between(0, 2));
  Json j{{"group", entry.label}, {"unknowns", vars}};
  Json cj = Json::object();
  for (const auto& c : coeffs) cj[c] = g.name(static_cast<ElementId>(rng.below(g.order())));
  j["coefficients"] = cj;
  Json eqs = Json::array();
  const auto s = rng.between(1, 3);
  const long long scale = rng.chance(1, 2) ? 1 : rng.between(2, 4);
  std::vector<std::size_t> subsystem;
  for (long long i = 0; i < s; ++i) {
    Json e{{"word", random_word(rng, vars, coeffs, scale)}};
    if (generalized && rng.chance(1, 2)) {
      Json h = Json::array();
      for (long long k = rng.between(1, 2); k > 0; --k) h.push_back(g.name(static_cast<ElementId>(rng.below(g.order()))));
      e["H"] = h;
      e["g"] = g.name(static_cast<ElementId>(rng.below(g.order())));
    }
    if (!generalized || rng.chance(2, 3)) subsystem.push_back(static_cast<std::size_t>(i));
    eqs.push_back(std::move(e));
  }
  j["equations"] = eqs;
  if (generalized) {
    if (subsystem.empty()) subsystem.push_back(0);
    j["subsystem"] = subsystem;
  }
  return j;
}

inline Json random_coords(SplitMix64& rng, const FiniteRing& r) {
  Json c = Json::array();
  for (std::size_t i = 0; i < r.width(); ++i) c.push_back(rng.below(static_cast<std::uint64_t>(r.modulus())));
  return c;
}

inline Json ring_system_instance(SplitMix64& rng, const std::vector<CatalogEntry>& small_groups,
                                 std::uint64_t limit) {
  Json spec, units = "all";
  switch (rng.below(4)) {
    case 0: spec = Json{{"kind", "modint"}, {"k", rng.between(2, 16)}}; break;
    case 1: spec = Json{{"kind", "matrix"}, {"k", 2}, {"d", 2}}; break;
    case 2: {
      spec = Json{{"kind", "matrix"}, {"k", 3}, {"d", 2}};
      const FiniteRing r = FiniteRing::matrix(3, 2);
      Json gens = Json::array();
      for (long long n = rng.between(1, 2); n > 0;) {
        Json c = random_coords(rng, r);
        if (!r.inverse(ring_element_from_json(r, c))) continue;
        gens.push_back(std::move(c));
        --n;
      }
      units = Json{{"generators", gens}};
      break;
    }
    default:
      spec = Json{{"kind", "groupring"}, {"k", rng.between(2, 3)}, {"group", rng.pick(small_groups).label}};
      units = "group";
      break;
  }
  const FiniteRing r = ring_from_json(spec);
  const std::size_t g_order = units_from_json(r, &units).group.order();
  const std::size_t m = affordable_arity(g_order, static_cast<std::size_t>(rng.between(1, 2)), limit);
  static const std::vector<std::string> var_names{"x", "y"};
  std::vector<std::string> vars(var_names.begin(), var_names.begin() + static_cast<long>(m));

  const long long scale = rng.chance(1, 2) ? 1 : rng.between(2, 3);
  Json eqs = Json::array();
  for (long long s = rng.between(1, 2); s > 0; --s) {
    Json terms = Json::array();
    for (long long t = rng.between(1, 3); t > 0; --t) {
      Json factors = Json::array();
      for (long long f = rng.between(0, 3); f > 0; --f) {
        if (rng.chance(1, 3))
          factors.push_back(Json{{"scalar", random_coords(rng, r)}});
        else
          factors.push_back(Json{{"var", rng.pick(vars)}, {"exp", scale * rng.between(-3, 4)}});
      }
      terms.push_back(std::move(factors));
    }
    eqs.push_back(Json{{"terms", std::move(terms)}});
  }
  return Json{{"ring", spec}, {"unknowns", vars}, {"units", units}, {"equations", eqs}};
}

}  // namespace detail

/// The instance document for trial `index`; depends only on (config, index).
inline Json generate_instance(const ExplorationConfig& cfg, std::uint64_t index) {
  SplitMix64 rng = SplitMix64(cfg.seed).split(index);
  switch (cfg.question) {
    case Question::q1:
    case Question::q2: {
      const auto corpus = catalog_corpus(cfg.max_order);
      if (corpus.empty()) throw Error(ErrorKind::input_error, "no catalog group fits the order cap");
      return detail::group_system_instance(rng, corpus, cfg.question == Question::q2, cfg.space_limit);
    }
    case Question::q3: return detail::ring_system_instance(rng, catalog_corpus(6), cfg.space_limit);
    case Question::q4: {
      auto corpus = catalog_corpus(std::min<std::size_t>(cfg.max_order, 8));
      std::vector<CatalogEntry> actors;
      for (const auto& e : corpus)
        if (!cfg.abelian_actor || e.group.is_abelian()) actors.push_back(e);
      const auto& f = rng.pick(actors);
      const auto& b = rng.pick(corpus);
      const auto actions = all_actions(f.group, b.group);
      const auto& act = rng.pick(actions);
      Json j = action_to_json(act);
      j["actor"] = f.label;
      j["target"] = b.label;
      return j;
    }
  }
  return {};
}

inline ExplorationReport explore(const ExplorationConfig& cfg) {
  if (cfg.trials == 0) throw Error(ErrorKind::input_error, "trials must be positive");
  ExplorationReport rep{cfg, std::vector<TrialRecord>(cfg.trials), 0, 0};
  SolveOptions opts;
  opts.threads = 1;
  opts.gcd_mode = cfg.gcd_mode;

  std::atomic<std::uint64_t> next{0};
  std::vector<std::exception_ptr> errors(cfg.trials);
  auto work = [&] {
    for (std::uint64_t i = next++; i < cfg.trials; i = next++) {
      try {
        auto& r = rep.records[i];
        r.trial = i;
        r.instance = generate_instance(cfg, i);
        r.outcome = evaluate_instance(cfg.question, r.instance, opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, cfg.trials));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (const auto& r : rep.records) {
    if (!r.outcome.strong_divides) ++rep.violations;
    if (!r.outcome.weak_divides) ++rep.weak_failures;
  }
  return rep;
}

inline Json record_to_json(const TrialRecord& r) {
  const auto& o = r.outcome;
  return Json{{"trial", r.trial},
              {"instance", r.instance},
              {"count", o.count},
              {"weak_bound", o.weak_bound},
              {"strong_bound", o.strong_bound},
              {"weak_divides", o.weak_divides},
              {"strong_divides", o.strong_divides},
              {"details", o.details}};
}

inline Json exploration_to_json(const ExplorationReport& rep) {
  const auto& c = rep.config;
  Json j = report_envelope("explore");
  j["question"] = to_string(c.question);
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["max_order"] = c.max_order;
  if (c.question == Question::q4) j["abelian_actor"] = c.abelian_actor;
  Json records = Json::array(), violating = Json::array();
  for (const auto& r : rep.records) {
    records.push_back(record_to_json(r));
    if (!r.outcome.strong_divides || !r.outcome.weak_divides) violating.push_back(record_to_json(r));
  }
  j["records"] = std::move(records);
  const std::string n = std::to_string(c.trials);
  j["summary"] = Json{{"trials", c.trials},
                      {"violations", rep.violations},
                      {"weak_failures", rep.weak_failures},
                      {"statement", rep.violations == 0
                                        ? "no counterexample found in " + n + " trials"
                                        : std::to_string(rep.violations) + " counterexample(s) found in " + n + " trials"},
                      {"violating_instances", std::move(violating)}};
  return j;
}

}  // namespace divlab

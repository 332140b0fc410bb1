#pragma once

// JSON ingestion for groups, systems, rings, actions and presentations, and
// serialization of reports. Every malformed document surfaces as
// Error(input_error) so the CLI can map it to one exit code.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "divisor_lab/bigint.hpp"
#include "divisor_lab/catalog.hpp"
#include "divisor_lab/crossed_homs.hpp"
#include "divisor_lab/error.hpp"
#include "divisor_lab/group.hpp"
#include "divisor_lab/hom_verify.hpp"
#include "divisor_lab/ring.hpp"
#include "divisor_lab/ring_equations.hpp"
#include "divisor_lab/solver.hpp"
#include "divisor_lab/system.hpp"

namespace divlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* report_schema = "divisor-lab/1";

namespace detail {

inline Error bad_input(const std::string& what) { return Error(ErrorKind::input_error, what); }

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw bad_input(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get_as(const Json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw bad_input(what + " has the wrong type");
  }
}

inline std::vector<std::string> string_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw bad_input(what + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(get_as<std::string>(x, what + " entry"));
  return out;
}

}  // namespace detail

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::input_error, std::string("malformed JSON: ") + e.what());
  }
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::input_error, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

/// An element given by name or by id.
inline ElementId element_ref(const FiniteGroup& g, const Json& j) {
  if (j.is_string()) {
    const auto id = g.find(j.get<std::string>());
    if (!id) throw Error(ErrorKind::unbound_name, "no element named '" + j.get<std::string>() + "'");
    return *id;
  }
  if (j.is_number_integer()) {
    const auto v = j.get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= g.order())
      throw Error(ErrorKind::input_error, "element id " + std::to_string(v) + " out of range");
    return static_cast<ElementId>(v);
  }
  throw Error(ErrorKind::input_error, "element must be a name or an id");
}

inline std::vector<ElementId> element_list(const FiniteGroup& g, const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::input_error, "element list must be an array");
  std::vector<ElementId> out;
  for (const auto& x : j) out.push_back(element_ref(g, x));
  return out;
}

/// {"order": n, "names": [...], "table": [[...]]}
inline FiniteGroup group_from_table_json(const Json& j) {
  const auto& table_j = detail::member(j, "table");
  const auto table = detail::get_as<std::vector<std::vector<long long>>>(table_j, "table");
  std::vector<std::string> names;
  if (j.contains("names")) {
    names = detail::string_list(j.at("names"), "names");
  } else {
    for (std::size_t i = 0; i < table.size(); ++i) names.push_back(std::to_string(i));
  }
  if (j.contains("order") && detail::get_as<std::size_t>(j.at("order"), "order") != table.size())
    throw Error(ErrorKind::input_error, "order does not match the table");
  return build_group(table, names);
}

/// A catalog spec string, {"catalog": spec}, {"file": path} or an inline table.
inline FiniteGroup group_from_json(const Json& j, const std::filesystem::path& base = {}) {
  if (j.is_string()) return catalog_group(j.get<std::string>());
  if (!j.is_object()) throw Error(ErrorKind::input_error, "group must be a catalog spec or an object");
  if (j.contains("catalog")) return catalog_group(detail::get_as<std::string>(j.at("catalog"), "catalog"));
  if (j.contains("file")) {
    std::filesystem::path p = detail::get_as<std::string>(j.at("file"), "file");
    if (p.is_relative()) p = base / p;
    return group_from_json(read_json_file(p), p.parent_path());
  }
  return group_from_table_json(j);
}

inline Json group_to_json(const FiniteGroup& g) {
  Json table = Json::array();
  for (ElementId a = 0; a < g.order(); ++a) {
    Json row = Json::array();
    for (ElementId b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
    table.push_back(std::move(row));
  }
  return Json{{"order", g.order()}, {"names", g.names()}, {"table", std::move(table)}};
}

// ---------------------------------------------------------------- systems

inline GeneralizedSystem system_from_json(const Json& j, const std::filesystem::path& base = {}) {
  const FiniteGroup g = group_from_json(detail::member(j, "group"), base);
  auto unknowns = detail::string_list(detail::member(j, "unknowns"), "unknowns");
  std::map<std::string, ElementId> coefficients;
  if (j.contains("coefficients")) {
    const auto& c = j.at("coefficients");
    if (!c.is_object()) throw Error(ErrorKind::input_error, "coefficients must be an object");
    for (const auto& [name, value] : c.items()) coefficients[name] = element_ref(g, value);
  }
  const auto& eqs = detail::member(j, "equations");
  if (!eqs.is_array()) throw Error(ErrorKind::input_error, "equations must be an array");
  std::vector<EquationSpec> specs;
  for (const auto& e : eqs) {
    EquationSpec s;
    s.word = detail::get_as<std::string>(detail::member(e, "word"), "word");
    if (e.contains("H")) s.subgroup_generators = element_list(g, e.at("H"));
    if (e.contains("g")) s.representative = element_ref(g, e.at("g"));
    if (e.contains("eq1") && !(s.subgroup_generators.empty() && s.representative == identity_id))
      throw Error(ErrorKind::input_error, "an eq1 equation cannot carry H or g");
    specs.push_back(std::move(s));
  }
  std::optional<std::vector<std::size_t>> subsystem;
  if (j.contains("subsystem")) {
    subsystem = detail::get_as<std::vector<std::size_t>>(j.at("subsystem"), "subsystem");
    for (auto i : *subsystem)
      if (i >= specs.size()) throw Error(ErrorKind::input_error, "subsystem index out of range");
  }
  return make_system(g, std::move(unknowns), coefficients, specs, std::move(subsystem));
}

// ------------------------------------------------------------------ rings

inline FiniteRing ring_from_json(const Json& j, const std::filesystem::path& base = {}) {
  const auto kind = detail::get_as<std::string>(detail::member(j, "kind"), "kind");
  const auto k = detail::get_as<std::int64_t>(detail::member(j, "k"), "k");
  if (kind == "modint") return FiniteRing::modular(k);
  if (kind == "matrix") return FiniteRing::matrix(k, detail::get_as<std::size_t>(detail::member(j, "d"), "d"));
  if (kind == "groupring") return FiniteRing::group_ring(k, group_from_json(detail::member(j, "group"), base));
  throw Error(ErrorKind::input_error, "unknown ring kind '" + kind + "'");
}

/// An integer (scalar), a flat coordinate list, a nested matrix, or for a
/// group ring an object {"<element name>": coefficient}.
inline RingElement ring_element_from_json(const FiniteRing& r, const Json& j) {
  if (j.is_number_integer()) return r.scalar(j.get<std::int64_t>());
  if (j.is_object()) {
    if (r.kind() != RingKind::group_ring)
      throw Error(ErrorKind::input_error, "named coefficients need a group ring");
    std::vector<std::int64_t> coords(r.width(), 0);
    for (const auto& [name, c] : j.items())
      coords[element_ref(r.base_group(), Json(name))] += detail::get_as<std::int64_t>(c, "coefficient");
    return r.element(std::move(coords));
  }
  if (j.is_array()) {
    std::vector<std::int64_t> coords;
    for (const auto& x : j) {
      if (x.is_array()) {
        for (const auto& y : x) coords.push_back(detail::get_as<std::int64_t>(y, "matrix entry"));
      } else {
        coords.push_back(detail::get_as<std::int64_t>(x, "coordinate"));
      }
    }
    return r.element(std::move(coords));
  }
  throw Error(ErrorKind::input_error, "cannot read a ring element");
}

/// A term is an array of factors: {"var": "x", "exp": 3} or {"scalar": element}.
inline RingTerm ring_term_from_json(const FiniteRing& r, const std::vector<std::string>& unknowns, const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::input_error, "a term must be an array of factors");
  RingTerm t;
  for (const auto& f : j) {
    if (f.contains("var")) {
      const auto name = detail::get_as<std::string>(f.at("var"), "var");
      const auto it = std::find(unknowns.begin(), unknowns.end(), name);
      if (it == unknowns.end()) throw Error(ErrorKind::unbound_name, "unknown '" + name + "' is not declared");
      const long long e = f.contains("exp") ? detail::get_as<long long>(f.at("exp"), "exp") : 1;
      t.factors.push_back(VariablePower{static_cast<std::size_t>(it - unknowns.begin()), e});
    } else if (f.contains("scalar")) {
      t.factors.push_back(ScalarFactor{ring_element_from_json(r, f.at("scalar"))});
    } else {
      throw Error(ErrorKind::input_error, "factor needs 'var' or 'scalar'");
    }
  }
  return t;
}

/// "all" (default), "group" (group rings only) or {"generators": [...]}.
inline UnitEmbedding units_from_json(const FiniteRing& r, const Json* j) {
  if (j == nullptr || (j->is_string() && j->get<std::string>() == "all")) return all_units(r);
  if (j->is_string() && j->get<std::string>() == "group") return group_ring_embedding(r);
  if (j->is_object() && j->contains("generators")) {
    std::vector<RingElement> gens;
    for (const auto& x : detail::member(*j, "generators")) gens.push_back(ring_element_from_json(r, x));
    return unit_group_generated(r, gens);
  }
  throw Error(ErrorKind::input_error, "units must be \"all\", \"group\" or {\"generators\": [...]}");
}

/// {"ring": spec, "unknowns": [...], "units": ..., "equations": [{"terms": [term, ...]}]}
inline RingEquationSystem ring_system_from_json(const Json& j, const std::filesystem::path& base = {}) {
  FiniteRing r = ring_from_json(detail::member(j, "ring"), base);
  auto unknowns = detail::string_list(detail::member(j, "unknowns"), "unknowns");
  UnitEmbedding units = units_from_json(r, j.contains("units") ? &j.at("units") : nullptr);
  std::vector<RingEquation> eqs;
  const auto& eqs_j = detail::member(j, "equations");
  if (!eqs_j.is_array()) throw Error(ErrorKind::input_error, "equations must be an array");
  for (const auto& e : eqs_j) {
    RingEquation eq;
    for (const auto& t : detail::member(e, "terms")) eq.terms.push_back(ring_term_from_json(r, unknowns, t));
    eqs.push_back(std::move(eq));
  }
  return RingEquationSystem(std::move(r), std::move(unknowns), std::move(eqs), std::move(units));
}

// ---------------------------------------------------------------- actions

/// Permutations may be given for a generating set only; the rest follow
/// from b^{xs} = (b^x)^s. Missing "perms" means the trivial action.
inline GroupAction action_from_json(const Json& j, const std::filesystem::path& base = {}) {
  FiniteGroup f = group_from_json(detail::member(j, "actor"), base);
  FiniteGroup b = group_from_json(detail::member(j, "target"), base);
  if (!j.contains("perms")) return trivial_action(f, b);
  const auto& pj = j.at("perms");
  if (!pj.is_object()) throw Error(ErrorKind::input_error, "perms must be an object keyed by actor element");
  std::vector<std::optional<std::vector<ElementId>>> perms(f.order());
  std::vector<ElementId> gens;
  for (const auto& [name, imgs] : pj.items()) {
    const ElementId x = element_ref(f, Json(name));
    auto p = element_list(b, imgs);
    if (p.size() != b.order()) throw Error(ErrorKind::invalid_action, "permutation of the wrong length");
    perms[x] = std::move(p);
    gens.push_back(x);
  }
  std::vector<ElementId> identity(b.order());
  for (ElementId y = 0; y < b.order(); ++y) identity[y] = y;
  if (perms[identity_id] && *perms[identity_id] != identity)
    throw Error(ErrorKind::invalid_action, "identity must act trivially");
  perms[identity_id] = identity;
  std::vector<ElementId> queue{identity_id};
  std::vector<char> seen(f.order(), 0);
  seen[identity_id] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const ElementId x = queue[i];
    for (ElementId s : gens) {
      const ElementId xs = f.mul(x, s);
      std::vector<ElementId> p(b.order());
      for (ElementId y = 0; y < b.order(); ++y) p[y] = (*perms[s])[(*perms[x])[y]];
      if (!seen[xs]) {
        seen[xs] = 1;
        queue.push_back(xs);
      }
      if (!perms[xs]) {
        perms[xs] = std::move(p);
      } else if (*perms[xs] != p) {
        throw Error(ErrorKind::invalid_action, "given permutations are not consistent at " + f.name(xs));
      }
    }
  }
  std::vector<std::vector<ElementId>> full;
  for (ElementId x = 0; x < f.order(); ++x) {
    if (!perms[x]) throw Error(ErrorKind::invalid_action, "perms do not determine the action of " + f.name(x));
    full.push_back(std::move(*perms[x]));
  }
  return GroupAction(std::move(f), std::move(b), std::move(full));
}

inline Json action_to_json(const GroupAction& act) {
  Json perms = Json::object();
  for (ElementId x = 0; x < act.actor().order(); ++x) perms[act.actor().name(x)] = act.perms()[x];
  return Json{{"actor", group_to_json(act.actor())}, {"target", group_to_json(act.target())}, {"perms", perms}};
}

// ---------------------------------------------------------- presentations

struct PresentationInput {
  FinitePresentation presentation;
  Indexing indexing;
  std::optional<FiniteGroup> group;
  std::vector<ElementId> subgroup_generators;
  std::optional<std::vector<HomImages>> images;  // absent: all homomorphisms
};

/// {"generators", "relators", "deg": {name: d}, "n"} with optional "group",
/// "subgroup" (generators of H) and "images" (the set Φ, one list per hom).
inline PresentationInput presentation_from_json(const Json& j, const std::filesystem::path& base = {}) {
  auto gens = detail::string_list(detail::member(j, "generators"), "generators");
  std::vector<std::string> rels;
  if (j.contains("relators")) rels = detail::string_list(j.at("relators"), "relators");
  PresentationInput in{make_presentation(gens, rels), {}, std::nullopt, {}, std::nullopt};
  in.indexing.n = detail::get_as<long long>(detail::member(j, "n"), "n");
  const auto& deg = detail::member(j, "deg");
  if (!deg.is_object()) throw Error(ErrorKind::input_error, "deg must be an object");
  for (const auto& name : in.presentation.generators) {
    if (!deg.contains(name)) throw Error(ErrorKind::input_error, "no degree for generator '" + name + "'");
    in.indexing.degrees.push_back(detail::get_as<long long>(deg.at(name), "degree"));
  }
  for (const auto& [name, _] : deg.items())
    if (std::find(gens.begin(), gens.end(), name) == gens.end())
      throw Error(ErrorKind::unbound_name, "degree given for unknown generator '" + name + "'");
  validate_indexing(in.presentation, in.indexing);
  if (j.contains("group")) {
    in.group = group_from_json(j.at("group"), base);
    if (j.contains("subgroup")) in.subgroup_generators = element_list(*in.group, j.at("subgroup"));
    if (j.contains("images")) {
      in.images.emplace();
      for (const auto& h : j.at("images")) {
        auto imgs = element_list(*in.group, h);
        if (imgs.size() != in.presentation.rank())
          throw Error(ErrorKind::input_error, "need one image per generator");
        in.images->push_back(std::move(imgs));
      }
    }
  } else if (j.contains("subgroup") || j.contains("images")) {
    throw Error(ErrorKind::input_error, "subgroup and images need a group");
  }
  return in;
}

// ---------------------------------------------------------------- reports

inline Json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return Json(static_cast<long long>(v));
  return Json(to_string(v));
}

inline Json matrix_to_json(const IntMatrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < a.cols(); ++k) row.push_back(big_to_json(a(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json report_to_json(const DivisibilityReport& r) {
  Json j{{"theorem", r.theorem}, {"solution_count", r.solution_count}, {"bound", r.bound}, {"divides", r.divides}};
  Json b = Json::object();
  const auto& d = r.breakdown;
  if (d.matrix) b["matrix"] = matrix_to_json(*d.matrix);
  if (d.delta_m) b["delta_m"] = big_to_json(*d.delta_m);
  if (d.delta_m_minus_1) b["delta_m_minus_1"] = big_to_json(*d.delta_m_minus_1);
  if (d.invariant_factor) b["invariant_factor"] = big_to_json(*d.invariant_factor);
  if (d.centralizer_order) b["centralizer_order"] = *d.centralizer_order;
  if (d.h_tilde_order) b["h_tilde_order"] = *d.h_tilde_order;
  for (const auto& [k, v] : d.notes) b[k] = v;
  j["breakdown"] = std::move(b);
  return j;
}

/// Top-level envelope shared by every command.
inline Json report_envelope(const std::string& command) { return Json{{"schema", report_schema}, {"command", command}}; }

inline std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace divlab

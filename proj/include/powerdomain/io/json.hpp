#pragma once

/// JSON documents for spaces, valuations, functions, maps and molecular
/// second-order valuations. Rationals travel as strings ("p/q", "p", "inf").
/// Opens are referenced by index into the sorted open list, guarded by a
/// checksum of that list.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "powerdomain/error.hpp"
#include "powerdomain/ext_rational.hpp"
#include "powerdomain/hyperspace.hpp"
#include "powerdomain/lawcheck/random.hpp"
#include "powerdomain/topology.hpp"
#include "powerdomain/valuation.hpp"

namespace powerdomain::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// The document is not well-formed (bad JSON, missing field, bad rational).
struct MalformedDocument : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedDocument("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw MalformedDocument(path + ": " + e.what());
  }
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedDocument(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) throw MalformedDocument(std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline void check_schema(const json& j) {
  if (!j.is_object()) throw MalformedDocument("document must be an object");
  if (j.contains("schema") && j.at("schema") != kSchemaVersion)
    throw MalformedDocument("unsupported schema version " + j.at("schema").dump());
}

inline std::size_t point_index(const FiniteSpace& x, const std::string& name) {
  const auto& names = x.names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw MalformedDocument("unknown point '" + name + "'");
}

inline PointSet point_list(const FiniteSpace& x, const json& j) {
  if (!j.is_array()) throw MalformedDocument("expected a list of point names");
  PointSet s;
  for (const auto& p : j) s = s.with(point_index(x, as_string(p, "point")));
  return s;
}

}  // namespace detail

inline ExtRational parse_rational(const json& j) {
  const std::string text = detail::as_string(j, "rational");
  try {
    return ExtRational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw MalformedDocument(e.what());
  }
}

inline json rational_json(const ExtRational& v) { return v.str(); }

inline json point_list_json(const FiniteSpace& x, PointSet s) {
  json a = json::array();
  for (auto p : s) a.push_back(x.name(p));
  return a;
}

/// Sorted open list as lists of point names.
inline json open_list_json(const FiniteSpace& x) {
  json a = json::array();
  for (auto u : x.opens()) a.push_back(point_list_json(x, u));
  return a;
}

/// FNV-1a of the serialized open list, as 16 hex digits.
inline std::string opens_checksum(const FiniteSpace& x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(lawcheck::fnv1a(open_list_json(x).dump())));
  return buf;
}

// ---------------------------------------------------------------- spaces

inline json specialization_json(const FiniteSpace& x) {
  json a = json::array();
  for (std::size_t p = 0; p < x.size(); ++p)
    for (std::size_t q = 0; q < x.size(); ++q)
      if (x.leq(p, q)) a.push_back({x.name(p), x.name(q)});
  return a;
}

inline json space_document(const FiniteSpace& x, const std::optional<std::string>& name = std::nullopt) {
  json j{{"schema", kSchemaVersion}, {"points", x.names()}, {"preorder", specialization_json(x)}};
  if (name) j["name"] = *name;
  return j;
}

/// Parses a SpaceDocument. Axiom violations surface as Error.
inline FiniteSpace parse_space(const json& j) {
  detail::check_schema(j);
  const json& pts = detail::field(j, "points");
  if (!pts.is_array()) throw MalformedDocument("points must be a list");
  std::vector<std::string> names;
  for (const auto& p : pts) names.push_back(detail::as_string(p, "point name"));
  for (std::size_t a = 0; a < names.size(); ++a)
    for (std::size_t b = a + 1; b < names.size(); ++b)
      if (names[a] == names[b]) throw MalformedDocument("duplicate point '" + names[a] + "'");
  const bool has_opens = j.contains("opens");
  const bool has_preorder = j.contains("preorder");
  if (has_opens == has_preorder) throw MalformedDocument("exactly one of 'opens' and 'preorder' is required");
  if (names.size() > PointSet::kMaxPoints) fail(ErrorKind::TooManyPoints, std::to_string(names.size()) + " points");
  if (has_opens) {
    const json& os = j.at("opens");
    if (!os.is_array()) throw MalformedDocument("opens must be a list");
    std::vector<PointSet> opens;
    for (const auto& o : os) {
      if (!o.is_array()) throw MalformedDocument("each open must be a list of point names");
      PointSet s;
      for (const auto& p : o) {
        const std::string n = detail::as_string(p, "point");
        std::size_t k = 0;
        while (k < names.size() && names[k] != n) ++k;
        if (k == names.size()) throw MalformedDocument("unknown point '" + n + "'");
        s = s.with(k);
      }
      opens.push_back(s);
    }
    return FiniteSpace::from_opens(std::move(names), std::move(opens));
  }
  const json& rel = j.at("preorder");
  if (!rel.is_array()) throw MalformedDocument("preorder must be a list of pairs");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& pr : rel) {
    if (!pr.is_array() || pr.size() != 2) throw MalformedDocument("preorder entries must be pairs");
    pairs.emplace_back(detail::as_string(pr[0], "point"), detail::as_string(pr[1], "point"));
  }
  return FiniteSpace::from_preorder(std::move(names), pairs);
}

/// A space given inline or as a path to a SpaceDocument; relative paths are
/// taken from `base`, the directory of the referring document.
inline FiniteSpace resolve_space(const json& ref, const std::filesystem::path& base = {}) {
  if (!ref.is_string()) return parse_space(ref);
  std::filesystem::path path(ref.get<std::string>());
  if (path.is_relative() && !base.empty()) path = base / path;
  return parse_space(read_json_file(path.string()));
}

inline json space_info(const FiniteSpace& x) {
  const Separation s = check_separation(x);
  return json{{"T0", s.is_t0},
              {"T1", s.is_t1},
              {"sober", s.is_sober},
              {"opens", x.opens().size()},
              {"specialization", specialization_json(x)},
              {"open_sets", open_list_json(x)},
              {"opens_checksum", opens_checksum(x)}};
}

inline json hyperspace_document(const Hyperspace& h) {
  json j = space_document(h.space);
  json closed = json::array();
  for (auto c : h.closed_sets) closed.push_back(point_list_json(h.base, c));
  j["closed_sets"] = closed;
  return j;
}

// ---------------------------------------------------------------- valuations

/// ValuationDocument with weights when ν has a point-weight decomposition,
/// otherwise with the full open table.
inline json valuation_document(const Valuation& nu) {
  const auto& x = nu.space();
  json j{{"schema", kSchemaVersion}, {"space", space_document(x)}, {"opens_checksum", opens_checksum(x)}};
  if (auto w = weight_decomposition(nu)) {
    json m = json::object();
    for (std::size_t p = 0; p < w->size(); ++p) m[x.name(p)] = rational_json((*w)[p]);
    j["weights"] = m;
  } else {
    json m = json::object();
    for (std::size_t i = 0; i < nu.table().size(); ++i) m[std::to_string(i)] = rational_json(nu.table()[i]);
    j["table"] = m;
  }
  return j;
}

/// Weights or table on a known space (the body of a valuation document).
inline Valuation parse_valuation_on(const FiniteSpace& x, const json& j) {
  if (j.contains("opens_checksum") && detail::as_string(j.at("opens_checksum"), "checksum") != opens_checksum(x))
    throw MalformedDocument("opens_checksum does not match the space's open list");
  const bool has_w = j.contains("weights");
  const bool has_t = j.contains("table");
  if (has_w == has_t) throw MalformedDocument("exactly one of 'weights' and 'table' is required");
  if (has_w) {
    const json& m = j.at("weights");
    if (!m.is_object()) throw MalformedDocument("weights must map point names to rationals");
    std::vector<ExtRational> w(x.size());
    for (auto it = m.begin(); it != m.end(); ++it) w[detail::point_index(x, it.key())] = parse_rational(it.value());
    return valuation_from_weights(x, w);
  }
  const json& m = j.at("table");
  if (!m.is_object()) throw MalformedDocument("table must map open indices to rationals");
  std::vector<std::optional<ExtRational>> t(x.opens().size());
  for (auto it = m.begin(); it != m.end(); ++it) {
    std::size_t i = 0;
    try {
      std::size_t used = 0;
      i = std::stoul(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw MalformedDocument("open index '" + it.key() + "' is not a number");
    }
    if (i >= t.size()) throw MalformedDocument("open index " + it.key() + " out of range");
    t[i] = parse_rational(it.value());
  }
  std::vector<ExtRational> table;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!t[i]) throw MalformedDocument("table misses open index " + std::to_string(i));
    table.push_back(*t[i]);
  }
  return Valuation(x, std::move(table));
}

inline Valuation parse_valuation(const json& j, const std::filesystem::path& base = {}) {
  detail::check_schema(j);
  return parse_valuation_on(resolve_space(detail::field(j, "space"), base), j);
}

/// FunctionDocument: {"space": …, "values": {point: rational}}.
inline LowerSemiFn parse_function(const json& j, const std::filesystem::path& base = {}) {
  detail::check_schema(j);
  const FiniteSpace x = resolve_space(detail::field(j, "space"), base);
  const json& m = detail::field(j, "values");
  if (!m.is_object()) throw MalformedDocument("values must map point names to rationals");
  std::vector<ExtRational> v(x.size());
  for (auto it = m.begin(); it != m.end(); ++it) v[detail::point_index(x, it.key())] = parse_rational(it.value());
  return LowerSemiFn(x, std::move(v));
}

inline json function_document(const LowerSemiFn& g) {
  json m = json::object();
  for (std::size_t p = 0; p < g.space().size(); ++p) m[g.space().name(p)] = rational_json(g(p));
  return json{{"schema", kSchemaVersion}, {"space", space_document(g.space())}, {"values", m}};
}

/// MapDocument: {"source": …, "target": …, "assignment": {point: point}}.
inline ContinuousMap parse_map(const json& j, const std::filesystem::path& base = {}) {
  detail::check_schema(j);
  const FiniteSpace src = resolve_space(detail::field(j, "source"), base);
  const FiniteSpace tgt = resolve_space(detail::field(j, "target"), base);
  const json& m = detail::field(j, "assignment");
  if (!m.is_object()) throw MalformedDocument("assignment must map point names to point names");
  std::vector<std::optional<std::size_t>> a(src.size());
  for (auto it = m.begin(); it != m.end(); ++it)
    a[detail::point_index(src, it.key())] = detail::point_index(tgt, detail::as_string(it.value(), "point"));
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (!a[p]) throw MalformedDocument("assignment misses point '" + src.name(p) + "'");
    out.push_back(*a[p]);
  }
  return ContinuousMap(src, tgt, std::move(out));
}

inline json map_document(const ContinuousMap& f) {
  json m = json::object();
  for (std::size_t p = 0; p < f.source().size(); ++p) m[f.source().name(p)] = f.target().name(f(p));
  return json{{"schema", kSchemaVersion},
              {"source", space_document(f.source())},
              {"target", space_document(f.target())},
              {"assignment", m}};
}

/// SecondOrderDocument: {"space": …, "atoms": [{"weight": r, "weights"|"table": …}]}.
inline SimpleSecondOrder parse_second_order(const json& j, const std::filesystem::path& base = {}) {
  detail::check_schema(j);
  const FiniteSpace x = resolve_space(detail::field(j, "space"), base);
  const json& atoms = detail::field(j, "atoms");
  if (!atoms.is_array()) throw MalformedDocument("atoms must be a list");
  std::vector<SimpleSecondOrder::Atom> out;
  for (const auto& a : atoms) out.push_back({parse_rational(detail::field(a, "weight")), parse_valuation_on(x, a)});
  return SimpleSecondOrder(x, std::move(out));
}

inline json second_order_document(const SimpleSecondOrder& xi) {
  json atoms = json::array();
  for (const auto& a : xi.atoms()) {
    json d = valuation_document(a.inner);
    d.erase("schema");
    d.erase("space");
    d["weight"] = rational_json(a.weight);
    atoms.push_back(d);
  }
  return json{{"schema", kSchemaVersion}, {"space", space_document(xi.space())}, {"atoms", atoms}};
}

}  // namespace powerdomain::io

#pragma once

/// Plain-data test instances: spaces plus numeric payload referring to them
/// by index. Everything a suite checks is rebuilt from this data, so an
/// instance can be serialized, replayed and shrunk.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "powerdomain/error.hpp"
#include "powerdomain/ext_rational.hpp"
#include "powerdomain/topology.hpp"

namespace powerdomain::lawcheck {

struct Instance {
  struct Weights {  // point weights (or function values) on a space
    std::size_t space = 0;
    std::vector<ExtRational> values;
  };
  struct Map {
    std::size_t source = 0, target = 0;
    std::vector<std::size_t> assignment;
  };
  struct KernelRows {
    std::size_t source = 0, target = 0;
    std::vector<std::vector<ExtRational>> rows;
  };
  struct Molecule {  // Σ cⱼ δ_{νⱼ} with νⱼ given by weights
    std::size_t space = 0;
    std::vector<ExtRational> coefficients;
    std::vector<std::vector<ExtRational>> atoms;
  };
  struct Point {
    std::size_t space = 0, index = 0;
  };
  struct Subset {
    std::size_t space = 0;
    PointSet members;
  };

  std::vector<FiniteSpace> spaces;
  std::vector<Weights> valuations;
  std::vector<Weights> functions;
  std::vector<Map> maps;
  std::vector<KernelRows> kernels;
  std::vector<Molecule> molecules;
  std::vector<Point> points;
  std::vector<Subset> subsets;
  std::vector<Rational> scalars;
  std::uint64_t sample_seed = 0;

  bool operator==(const Instance& o) const { return to_json() == o.to_json(); }

  nlohmann::json to_json() const {
    using nlohmann::json;
    auto vals = [](const std::vector<ExtRational>& v) {
      json a = json::array();
      for (const auto& x : v) a.push_back(x.str());
      return a;
    };
    json j;
    j["spaces"] = json::array();
    for (const auto& s : spaces) {
      json rel = json::array();
      for (auto [a, b] : specialization(s)) rel.push_back({s.name(a), s.name(b)});
      j["spaces"].push_back({{"points", s.names()}, {"preorder", rel}});
    }
    j["valuations"] = json::array();
    for (const auto& w : valuations) j["valuations"].push_back({{"space", w.space}, {"weights", vals(w.values)}});
    j["functions"] = json::array();
    for (const auto& w : functions) j["functions"].push_back({{"space", w.space}, {"values", vals(w.values)}});
    j["maps"] = json::array();
    for (const auto& m : maps)
      j["maps"].push_back({{"source", m.source}, {"target", m.target}, {"assignment", m.assignment}});
    j["kernels"] = json::array();
    for (const auto& k : kernels) {
      json rows = json::array();
      for (const auto& r : k.rows) rows.push_back(vals(r));
      j["kernels"].push_back({{"source", k.source}, {"target", k.target}, {"rows", rows}});
    }
    j["molecules"] = json::array();
    for (const auto& m : molecules) {
      json atoms = json::array();
      for (const auto& a : m.atoms) atoms.push_back(vals(a));
      j["molecules"].push_back({{"space", m.space}, {"coefficients", vals(m.coefficients)}, {"atoms", atoms}});
    }
    j["points"] = json::array();
    for (const auto& p : points) j["points"].push_back({{"space", p.space}, {"index", p.index}});
    j["subsets"] = json::array();
    for (const auto& s : subsets) j["subsets"].push_back({{"space", s.space}, {"members", s.members.to_vector()}});
    j["scalars"] = json::array();
    for (const auto& r : scalars) j["scalars"].push_back(r.str());
    j["sample_seed"] = sample_seed;
    return j;
  }

  static Instance from_json(const nlohmann::json& j) {
    auto vals = [](const nlohmann::json& a) {
      std::vector<ExtRational> v;
      for (const auto& x : a) v.push_back(ExtRational::parse(x.get<std::string>()));
      return v;
    };
    Instance in;
    for (const auto& s : j.at("spaces")) {
      std::vector<std::pair<std::string, std::string>> rel;
      for (const auto& p : s.at("preorder")) rel.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
      in.spaces.push_back(FiniteSpace::from_preorder(s.at("points").get<std::vector<std::string>>(), rel));
    }
    for (const auto& w : j.at("valuations")) in.valuations.push_back({w.at("space"), vals(w.at("weights"))});
    for (const auto& w : j.at("functions")) in.functions.push_back({w.at("space"), vals(w.at("values"))});
    for (const auto& m : j.at("maps"))
      in.maps.push_back({m.at("source"), m.at("target"), m.at("assignment").get<std::vector<std::size_t>>()});
    for (const auto& k : j.at("kernels")) {
      KernelRows kr{k.at("source"), k.at("target"), {}};
      for (const auto& r : k.at("rows")) kr.rows.push_back(vals(r));
      in.kernels.push_back(std::move(kr));
    }
    for (const auto& m : j.at("molecules")) {
      Molecule mol{m.at("space"), vals(m.at("coefficients")), {}};
      for (const auto& a : m.at("atoms")) mol.atoms.push_back(vals(a));
      in.molecules.push_back(std::move(mol));
    }
    for (const auto& p : j.at("points")) in.points.push_back({p.at("space"), p.at("index")});
    for (const auto& s : j.at("subsets")) {
      PointSet m;
      for (const auto& x : s.at("members")) m = m.with(x.get<std::size_t>());
      in.subsets.push_back({s.at("space"), m});
    }
    for (const auto& r : j.at("scalars")) in.scalars.push_back(ExtRational::parse(r.get<std::string>()).finite());
    in.sample_seed = j.at("sample_seed").get<std::uint64_t>();
    return in;
  }

  struct Size {
    std::size_t points = 0, nonzero = 0, infinities = 0;
    Integer denominators = 0;
    auto key() const { return std::tie(points, nonzero, infinities, denominators); }
    bool operator<(const Size& o) const { return key() < o.key(); }
    bool dominated_by(const Size& o) const {
      return points <= o.points && nonzero <= o.nonzero && infinities <= o.infinities && denominators <= o.denominators;
    }
  };

  /// Calls f on every numeric entry.
  template <class F>
  void for_each_entry(F&& f) {
    for (auto& w : valuations)
      for (auto& v : w.values) f(v);
    for (auto& w : functions)
      for (auto& v : w.values) f(v);
    for (auto& k : kernels)
      for (auto& r : k.rows)
        for (auto& v : r) f(v);
    for (auto& m : molecules) {
      for (auto& v : m.coefficients) f(v);
      for (auto& a : m.atoms)
        for (auto& v : a) f(v);
    }
  }

  Size size() const {
    Size s;
    for (const auto& sp : spaces) s.points += sp.size();
    auto copy = *this;
    copy.for_each_entry([&](ExtRational& v) {
      if (!v.is_zero()) ++s.nonzero;
      if (v.is_infinite())
        ++s.infinities;
      else
        s.denominators += boost::multiprecision::denominator(v.finite());
    });
    return s;
  }

  /// Restriction to the subspace without point p of space k; nullopt if a
  /// map or point reference needs p.
  std::optional<Instance> drop_point(std::size_t k, std::size_t p) const {
    for (const auto& m : maps)
      if (m.target == k)
        for (auto v : m.assignment)
          if (v == p) return std::nullopt;
    for (const auto& pt : points)
      if (pt.space == k && pt.index == p) return std::nullopt;
    Instance out = *this;
    out.spaces[k] = subspace(spaces[k], spaces[k].all().without(p)).space;
    auto erase = [&](auto& vec) { vec.erase(vec.begin() + static_cast<std::ptrdiff_t>(p)); };
    for (auto& w : out.valuations)
      if (w.space == k) erase(w.values);
    for (auto& w : out.functions)
      if (w.space == k) erase(w.values);
    for (auto& m : out.maps) {
      if (m.source == k) erase(m.assignment);
      if (m.target == k)
        for (auto& v : m.assignment)
          if (v > p) --v;
    }
    for (auto& kr : out.kernels) {
      if (kr.source == k) erase(kr.rows);
      if (kr.target == k)
        for (auto& r : kr.rows) erase(r);
    }
    for (auto& m : out.molecules)
      if (m.space == k)
        for (auto& a : m.atoms) erase(a);
    for (auto& pt : out.points)
      if (pt.space == k && pt.index > p) --pt.index;
    for (auto& s : out.subsets)
      if (s.space == k) {
        PointSet r;
        for (auto x : s.members)
          if (x != p) r = r.with(x > p ? x - 1 : x);
        s.members = r;
      }
    return out;
  }

  /// Candidate one-step simplifications, most aggressive first.
  std::vector<Instance> shrink_candidates() const {
    std::vector<Instance> out;
    for (std::size_t k = 0; k < spaces.size(); ++k)
      for (std::size_t p = spaces[k].size(); p-- > 0;)
        if (auto d = drop_point(k, p)) out.push_back(std::move(*d));
    for (std::size_t i = 0; i < molecules.size(); ++i)
      for (std::size_t a = 0; a < molecules[i].atoms.size() && molecules[i].atoms.size() > 1; ++a) {
        Instance c = *this;
        c.molecules[i].atoms.erase(c.molecules[i].atoms.begin() + static_cast<std::ptrdiff_t>(a));
        c.molecules[i].coefficients.erase(c.molecules[i].coefficients.begin() + static_cast<std::ptrdiff_t>(a));
        out.push_back(std::move(c));
      }
    // Entry-wise edits, addressed by position in for_each_entry order.
    std::size_t count = 0;
    {
      auto copy = *this;
      copy.for_each_entry([&](ExtRational&) { ++count; });
    }
    auto edit = [&](std::size_t target, const std::function<std::optional<ExtRational>(const ExtRational&)>& f) {
      Instance c = *this;
      std::size_t i = 0;
      bool changed = false;
      c.for_each_entry([&](ExtRational& v) {
        if (i++ != target) return;
        if (auto nv = f(v)) {
          v = *nv;
          changed = true;
        }
      });
      if (changed) out.push_back(std::move(c));
    };
    for (std::size_t t = 0; t < count; ++t)
      edit(t, [](const ExtRational& v) -> std::optional<ExtRational> {
        if (v.is_zero()) return std::nullopt;
        return ExtRational(0);
      });
    for (std::size_t t = 0; t < count; ++t) {
      edit(t, [](const ExtRational& v) -> std::optional<ExtRational> {
        if (v.is_infinite()) return ExtRational(1);
        if (boost::multiprecision::denominator(v.finite()) == 1) return std::nullopt;
        Integer fl = boost::multiprecision::numerator(v.finite()) / boost::multiprecision::denominator(v.finite());
        return ExtRational(Rational(fl));
      });
      edit(t, [](const ExtRational& v) -> std::optional<ExtRational> {
        if (v.is_infinite() || boost::multiprecision::denominator(v.finite()) == 1) return std::nullopt;
        Integer fl = boost::multiprecision::numerator(v.finite()) / boost::multiprecision::denominator(v.finite());
        return ExtRational(Rational(fl + 1));
      });
    }
    return out;
  }
};

enum class Status { Pass, Fail, Invalid };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Invalid: return "invalid";
  }
  return "unknown";
}

struct Outcome {
  Status status = Status::Pass;
  std::string witness;
  static Outcome pass() { return {}; }
  static Outcome failure(std::string w) { return {Status::Fail, std::move(w)}; }
  static Outcome invalid(std::string w) { return {Status::Invalid, std::move(w)}; }
};

/// Greedy minimization: repeatedly take the first candidate that still fails
/// and is no larger in every size measure, until none does.
inline Instance shrink(const Instance& input, const std::function<Outcome(const Instance&)>& evaluate) {
  if (evaluate(input).status != Status::Fail) fail(ErrorKind::NotAFailure, "instance does not fail");
  Instance current = input;
  for (bool progress = true; progress;) {
    progress = false;
    const auto size = current.size();
    for (auto& c : current.shrink_candidates()) {
      const auto cs = c.size();
      if (!cs.dominated_by(size) || !(cs < size)) continue;
      if (evaluate(c).status == Status::Fail) {
        current = std::move(c);
        progress = true;
        break;
      }
    }
  }
  return current;
}

}  // namespace powerdomain::lawcheck

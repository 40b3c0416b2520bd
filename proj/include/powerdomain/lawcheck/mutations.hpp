#pragma once

/// Single-operation semantic mutants of the reference Ops, for checking that
/// the suites notice broken implementations.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "powerdomain/ops.hpp"

namespace powerdomain::lawcheck {

struct Mutant {
  std::string name;
  std::string description;
  Ops ops;
};

inline std::vector<Mutant> mutants() {
  std::vector<Mutant> out;
  auto add = [&](std::string name, std::string description, auto patch) {
    Ops ops = reference_ops();
    patch(ops);
    out.push_back({std::move(name), std::move(description), std::move(ops)});
  };

  add("push_image_no_closure", "f# C = f(C) without closure", [](Ops& o) {
    o.push_closed = [](const ContinuousMap& f, const ClosedSet& c) {
      return ClosedSet(f.target(), f.image(c.members()));
    };
  });
  add("sigma_singleton", "σ(x) = {x}", [](Ops& o) {
    o.unit_sigma = [](const FiniteSpace& x, std::size_t p) { return ClosedSet(x, PointSet::singleton(p)); };
  });
  add("union_as_intersection", "𝒰 intersects the family instead of joining it", [](Ops& o) {
    o.mult_union = [](const Hyperspace& hx, PointSet family) {
      PointSet u = hx.base.all();
      for (auto i : family) u &= hx.closed_sets[i];
      if (family.empty()) u = PointSet{};
      return ClosedSet(hx.base, closure(hx.base, u));
    };
  });
  add("hit_as_containment", "⟨C, U⟩ = (C nonempty and C ⊆ U)", [](Ops& o) {
    o.hit = [](const ClosedSet& c, PointSet u) { return !c.members().empty() && c.members().subset_of(u); };
  });
  add("sgn_nonstrict", "sgn(v) = (v >= 0)", [](Ops& o) { o.sgn = [](const ExtRational& v) { return v >= ExtRational(0); }; });
  add("E_ignores_weights", "ℰ(Σ cⱼ δ_νⱼ) = Σ νⱼ", [](Ops& o) {
    o.mult_E = [](const SimpleSecondOrder& xi) {
      Valuation s = Valuation::zero(xi.space());
      for (const auto& a : xi.atoms()) s = s + a.inner;
      return s;
    };
  });
  add("integrate_strict_levels", "layer cake over {g > vᵢ} instead of {g >= vᵢ}", [](Ops& o) {
    o.integrate = [](const Valuation& nu, const LowerSemiFn& g) {
      std::vector<ExtRational> levels;
      for (const auto& v : g.values())
        if (v.is_finite() && v.is_positive()) levels.push_back(v);
      std::sort(levels.begin(), levels.end());
      levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
      ExtRational sum, previous;
      for (const auto& v : levels) {
        sum += difference(v, previous) * nu(g.level_above(v));
        previous = v;
      }
      return sum + ExtRational::infinity() * nu(g.level_at_least(ExtRational::infinity()));
    };
  });
  add("product_no_inclusion_exclusion", "ν ⊗ ρ summed over generating rectangles without correction", [](Ops& o) {
    o.product_valuation = [](const Product& xy, const Valuation& nu, const Valuation& rho) {
      const auto& xs = xy.first.target();
      const auto& ys = xy.second.target();
      std::vector<ExtRational> table;
      for (auto w : xy.space.opens()) {
        ExtRational s;
        for (auto p : powerdomain::detail::minimal_points(xy.space, w)) s += nu(xs.up(xy.first(p))) * rho(ys.up(xy.second(p)));
        table.push_back(s);
      }
      return Valuation(xy.space, std::move(table), Valuation::Trusted{});
    };
  });
  add("extend_no_moebius", "extension weights w_x = ν(↑x)", [](Ops& o) {
    o.extend_to_measure = [](const Valuation& nu) {
      std::vector<ExtRational> w;
      for (std::size_t x = 0; x < nu.space().size(); ++x) w.push_back(nu(nu.space().up(x)));
      return FiniteMeasure{nu.space(), std::move(w), std::nullopt};
    };
  });
  add("strength_H_no_closure", "s(x, C) = {x} × C without closure", [](Ops& o) {
    o.strength_H = [](const Product& xy, std::size_t x, const ClosedSet& c) {
      return ClosedSet(xy.space, xy.rectangle(PointSet::singleton(x), c.members()));
    };
  });
  return out;
}

}  // namespace powerdomain::lawcheck

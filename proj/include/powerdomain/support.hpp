#pragma once

/// The support map supp: VX → HX and checks that it is a continuous,
/// natural, monoidal morphism of monads, plus the V-algebra induced on an
/// H-algebra.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "powerdomain/error.hpp"
#include "powerdomain/ext_rational.hpp"
#include "powerdomain/hyperspace.hpp"
#include "powerdomain/ops.hpp"
#include "powerdomain/topology.hpp"
#include "powerdomain/valuation.hpp"

namespace powerdomain {

/// supp ν: the complement of the union of the null opens, validated against
/// ⟨supp ν, U⟩ = sgn ν(U) on every open and against the closed set dual to
/// the functional U ↦ sgn ν(U).
inline ClosedSet support(const Valuation& nu, const Ops& ops = reference_ops()) {
  const auto& x = nu.space();
  PointSet null_union;
  std::vector<bool> signs;
  for (auto u : x.opens()) {
    const bool s = ops.sgn(nu(u));
    signs.push_back(s);
    if (!s) null_union |= u;
  }
  ClosedSet c(x, null_union.complement(x.size()));
  for (std::size_t i = 0; i < x.opens().size(); ++i)
    if (ops.hit(c, x.opens()[i]) != signs[i])
      fail(ErrorKind::Anomaly, "support misses the defining property on " + x.describe(x.opens()[i]));
  if (!(closed_of_functional(HitFunctional(x, signs)) == c)) fail(ErrorKind::Anomaly, "support differs from sgn ∘ ν");
  return c;
}

/// sgn ⟨ν, g⟩, asserted equal to ⟨supp ν, {g > 0}⟩.
inline bool support_test_lsc(const Valuation& nu, const LowerSemiFn& g, const Ops& ops = reference_ops()) {
  if (!(nu.space() == g.space())) fail(ErrorKind::ShapeMismatch, "valuation and function on different spaces");
  const bool lhs = ops.sgn(ops.integrate(nu, g));
  const bool rhs = ops.hit(support(nu, ops), g.level_above(ExtRational(0)));
  if (lhs != rhs) fail(ErrorKind::Anomaly, "sgn of the integral disagrees with the support test");
  return lhs;
}

struct MorphismVerdict {
  std::string instance;
  std::vector<std::pair<std::string, bool>> diagrams;
  std::optional<std::string> counterexample;

  bool ok() const {
    for (const auto& [name, holds] : diagrams)
      if (!holds) return false;
    return true;
  }
  bool holds(const std::string& name) const {
    for (const auto& [n, h] : diagrams)
      if (n == name && !h) return false;
    return true;
  }
  void record(const std::string& name, bool holds_now, const std::string& witness) {
    diagrams.emplace_back(name, holds_now);
    if (!holds_now && !counterexample) counterexample = name + ": " + witness;
  }
  void merge(const MorphismVerdict& other) {
    for (const auto& d : other.diagrams) diagrams.push_back(d);
    if (!counterexample && other.counterexample) counterexample = other.counterexample;
  }
};

namespace detail {

inline std::string show(const Valuation& nu) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < nu.table().size(); ++i) os << (i ? "," : "") << nu.table()[i];
  os << "]";
  return os.str();
}

inline std::string show(const ClosedSet& c) { return c.space().describe(c.members()); }

}  // namespace detail

/// supp⁻¹(Hit U) = θ(U, 0) for every open U, extensionally over `family`.
inline MorphismVerdict check_supp_continuity(const FiniteSpace& space, const std::vector<Valuation>& family,
                                             const Ops& ops = reference_ops()) {
  MorphismVerdict v{"continuity on " + std::to_string(space.size()) + " points", {}, std::nullopt};
  std::vector<ClosedSet> supports;
  for (const auto& nu : family) supports.push_back(support(nu, ops));
  for (auto u : space.opens()) {
    bool same = true;
    std::string witness;
    for (std::size_t i = 0; i < family.size() && same; ++i)
      if (ops.hit(supports[i], u) != in_theta(family[i], u, 0)) {
        same = false;
        witness = "nu=" + detail::show(family[i]) + " U=" + space.describe(u);
      }
    v.record("preimage of Hit " + space.describe(u), same, witness);
  }
  return v;
}

/// supp(f_*ν) = f♯ supp ν.
inline MorphismVerdict check_supp_naturality(const ContinuousMap& f, const Valuation& nu, const Ops& ops = reference_ops()) {
  if (!(nu.space() == f.source())) fail(ErrorKind::ShapeMismatch, "valuation does not live on the source of f");
  MorphismVerdict v{"naturality", {}, std::nullopt};
  const ClosedSet lhs = support(ops.pushforward(f, nu), ops);
  const ClosedSet rhs = ops.push_closed(f, support(nu, ops));
  v.record("supp f_* = f# supp", lhs == rhs, "nu=" + detail::show(nu) + " lhs=" + detail::show(lhs) + " rhs=" + detail::show(rhs));
  return v;
}

/// Right-hand route of the multiplication square, 𝒰 ∘ supp♯ ∘ supp on a
/// molecular ξ: supp♯ξ = Σ cⱼ δ_{supp νⱼ} on HX, its support is a closed
/// family in HX, and 𝒰 joins it.
inline ClosedSet supp_mult_right_route(const SimpleSecondOrder& xi, const Ops& ops = reference_ops()) {
  const auto& x = xi.space();
  std::vector<PointSet> closed = closed_sets_of(x);
  if (closed.size() <= PointSet::kMaxPoints) {
    const Hyperspace hx = build_hyperspace(x);
    std::vector<ExtRational> w(hx.size());
    for (const auto& a : xi.atoms()) w[hx.index_of(support(a.inner, ops).members())] += a.weight;
    const Valuation pushed = valuation_from_weights(hx.space, w);
    return ops.mult_union(hx, support(pushed, ops).members());
  }
  // HX too large to materialize: the support of Σ cⱼ δ_{Cⱼ} is the family of
  // closed sets below some Cⱼ, whose union is ⋃ Cⱼ.
  PointSet u;
  for (const auto& a : xi.atoms())
    if (ops.sgn(a.weight)) u |= support(a.inner, ops).members();
  return ClosedSet(x, closure(x, u));
}

/// supp ∘ δ = σ on every point, and supp ∘ ℰ = 𝒰 ∘ supp♯ ∘ supp on each ξ.
inline MorphismVerdict check_monad_morphism(const FiniteSpace& space, const std::vector<SimpleSecondOrder>& xis,
                                            const Ops& ops = reference_ops()) {
  MorphismVerdict v{"monad morphism on " + std::to_string(space.size()) + " points", {}, std::nullopt};
  for (std::size_t p = 0; p < space.size(); ++p) {
    const ClosedSet lhs = support(ops.unit_delta(space, p), ops);
    const ClosedSet rhs = ops.unit_sigma(space, p);
    v.record("unit square", lhs == rhs, "x=" + space.name(p) + " lhs=" + detail::show(lhs) + " rhs=" + detail::show(rhs));
  }
  for (const auto& xi : xis) {
    const ClosedSet lhs = support(ops.mult_E(xi), ops);
    const ClosedSet rhs = supp_mult_right_route(xi, ops);
    std::string atoms;
    for (const auto& a : xi.atoms()) atoms += a.weight.str() + "*" + detail::show(a.inner) + " ";
    v.record("multiplication square", lhs == rhs, "xi=" + atoms + "lhs=" + detail::show(lhs) + " rhs=" + detail::show(rhs));
  }
  return v;
}

/// Strength, costrength and product squares for supp, plus the marginal
/// (opmonoidal) compatibility.
inline MorphismVerdict check_supp_monoidal(const Product& xy, const Valuation& nu, const Valuation& rho,
                                           const Ops& ops = reference_ops()) {
  const auto& xs = xy.first.target();
  const auto& ys = xy.second.target();
  if (!(nu.space() == xs) || !(rho.space() == ys)) fail(ErrorKind::ShapeMismatch, "factors do not match the product");
  MorphismVerdict v{"monoidal", {}, std::nullopt};
  const std::string inst = " nu=" + detail::show(nu) + " rho=" + detail::show(rho);
  const ClosedSet snu = support(nu, ops);
  const ClosedSet srho = support(rho, ops);
  for (std::size_t x = 0; x < xs.size(); ++x) {
    const ClosedSet lhs = support(ops.strength_V(xy, x, rho), ops);
    const ClosedSet rhs = ops.strength_H(xy, x, srho);
    v.record("strength square", lhs == rhs, "x=" + xs.name(x) + inst);
  }
  for (std::size_t y = 0; y < ys.size(); ++y) {
    const ClosedSet lhs = support(ops.costrength_V(xy, nu, y), ops);
    const ClosedSet rhs = ops.costrength_H(xy, snu, y);
    v.record("costrength square", lhs == rhs, "y=" + ys.name(y) + inst);
  }
  const Valuation prod = ops.product_valuation(xy, nu, rho);
  const ClosedSet sprod = support(prod, ops);
  v.record("product square", sprod.members() == xy.rectangle(snu.members(), srho.members()),
           inst + " supp=" + detail::show(sprod));
  v.record("first marginal", support(ops.pushforward(xy.first, prod), ops) == ops.push_closed(xy.first, sprod), inst);
  v.record("second marginal", support(ops.pushforward(xy.second, prod), ops) == ops.push_closed(xy.second, sprod), inst);
  return v;
}

/// e = a ∘ supp on an H-algebra (A, a) together with the derived cone
/// operations.
class InducedVAlgebra {
 public:
  InducedVAlgebra(FiniteSpace a_space, std::vector<std::size_t> a_map, const Ops& ops = reference_ops())
      : a_space_(std::move(a_space)), a_map_(std::move(a_map)), ops_(&ops) {
    const HAlgebraVerdict hv = check_H_algebra(a_space_, a_map_);
    if (!hv.is_algebra()) fail(ErrorKind::NotAnHAlgebra, "structure map fails the H-algebra laws");
    hx_ = build_hyperspace(a_space_);
  }

  const FiniteSpace& space() const { return a_space_; }

  std::size_t operator()(const Valuation& nu) const { return a_map_[hx_.index_of(support(nu, *ops_).members())]; }

  /// x + y := e(δ_x + δ_y).
  std::size_t plus(std::size_t x, std::size_t y) const {
    return (*this)(ops_->unit_delta(a_space_, x) + ops_->unit_delta(a_space_, y));
  }
  /// r·x := e(r·δ_x).
  std::size_t scale(const ExtRational& r, std::size_t x) const { return (*this)(r * ops_->unit_delta(a_space_, x)); }
  /// 0 := e(zero valuation).
  std::size_t zero() const { return (*this)(Valuation::zero(a_space_)); }

  /// Unit law e ∘ δ = id on every point and multiplication law
  /// e ∘ ℰ = e ∘ V(e) on the given molecular ξ.
  MorphismVerdict check_laws(const std::vector<SimpleSecondOrder>& xis) const {
    MorphismVerdict v{"induced V-algebra", {}, std::nullopt};
    for (std::size_t x = 0; x < a_space_.size(); ++x) {
      const std::size_t ex = (*this)(ops_->unit_delta(a_space_, x));
      v.record("unit law", ex == x, "x=" + a_space_.name(x) + " e(delta_x)=" + a_space_.name(ex));
    }
    for (const auto& xi : xis) {
      const std::size_t lhs = (*this)(ops_->mult_E(xi));
      std::vector<ExtRational> w(a_space_.size());
      for (const auto& a : xi.atoms()) w[(*this)(a.inner)] += a.weight;
      const std::size_t rhs = (*this)(valuation_from_weights(a_space_, w));
      v.record("multiplication law", lhs == rhs, "lhs=" + a_space_.name(lhs) + " rhs=" + a_space_.name(rhs));
    }
    return v;
  }

  /// Semimodule axioms for the derived cone over a scalar grid, and
  /// monotonicity of r ↦ r·x along the grid.
  MorphismVerdict check_cone(const std::vector<Rational>& grid) const {
    MorphismVerdict v{"induced cone", {}, std::nullopt};
    const std::size_t n = a_space_.size();
    const std::size_t z = zero();
    auto nm = [&](std::size_t p) { return a_space_.name(p); };
    for (std::size_t x = 0; x < n; ++x) {
      v.record("additive unit", plus(x, z) == x, "x=" + nm(x));
      v.record("scalar unit", scale(ExtRational(1), x) == x, "x=" + nm(x));
      for (std::size_t y = 0; y < n; ++y) {
        v.record("commutativity", plus(x, y) == plus(y, x), "x=" + nm(x) + " y=" + nm(y));
        for (std::size_t w = 0; w < n; ++w)
          v.record("associativity", plus(plus(x, y), w) == plus(x, plus(y, w)),
                   "x=" + nm(x) + " y=" + nm(y) + " z=" + nm(w));
        for (const auto& r : grid)
          v.record("distributivity over points", scale(ExtRational(r), plus(x, y)) ==
                                                     plus(scale(ExtRational(r), x), scale(ExtRational(r), y)),
                   "r=" + r.str() + " x=" + nm(x) + " y=" + nm(y));
      }
      for (const auto& r : grid)
        for (const auto& s : grid) {
          const ExtRational er(r), es(s);
          v.record("distributivity over scalars", scale(er + es, x) == plus(scale(er, x), scale(es, x)),
                   "r=" + r.str() + " s=" + s.str() + " x=" + nm(x));
          v.record("scalar associativity", scale(er * es, x) == scale(er, scale(es, x)),
                   "r=" + r.str() + " s=" + s.str() + " x=" + nm(x));
          if (r <= s)
            v.record("monotone in the scalar", a_space_.leq(scale(er, x), scale(es, x)),
                     "r=" + r.str() + " s=" + s.str() + " x=" + nm(x));
        }
    }
    return v;
  }

 private:
  FiniteSpace a_space_;
  std::vector<std::size_t> a_map_;
  const Ops* ops_;
  Hyperspace hx_;
};

/// The default scalar grid for cone checks.
inline std::vector<Rational> default_scalar_grid() { return {Rational(0), Rational(1, 2), Rational(1), Rational(2), Rational(7, 3)}; }

}  // namespace powerdomain

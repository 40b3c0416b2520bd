#pragma once

/// Continuous valuations on finite spaces with exact values in [0, ∞], lower
/// integration, the V-monad structure (δ, ℰ, pushforward), Kleisli
/// composition of kernels, strength and product valuations, and the weak
/// topology's subbasic membership tests.
///
/// Scott continuity needs no runtime check: the open lattice is finite, so
/// every directed family of opens contains its union, and strict, monotone,
/// modular tables are already continuous valuations.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "powerdomain/error.hpp"
#include "powerdomain/ext_rational.hpp"
#include "powerdomain/point_set.hpp"
#include "powerdomain/topology.hpp"

namespace powerdomain {

class Valuation {
 public:
  /// Validates strictness, monotonicity and modularity.
  Valuation(FiniteSpace space, std::vector<ExtRational> table) : space_(std::move(space)), table_(std::move(table)) {
    validate();
  }

  struct Trusted {};
  /// For tables that satisfy the axioms by construction.
  Valuation(FiniteSpace space, std::vector<ExtRational> table, Trusted)
      : space_(std::move(space)), table_(std::move(table)) {
    if (table_.size() != space_.opens().size()) fail(ErrorKind::ShapeMismatch, "table size differs from open count");
  }

  static Valuation zero(const FiniteSpace& space) {
    return Valuation(space, std::vector<ExtRational>(space.opens().size()), Trusted{});
  }

  const FiniteSpace& space() const { return space_; }
  /// Values in the canonical open order.
  const std::vector<ExtRational>& table() const { return table_; }
  const ExtRational& operator()(PointSet u) const { return table_[space_.open_index(u)]; }
  const ExtRational& total() const { return table_.back(); }
  bool is_zero() const { return total().is_zero(); }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.table_ == b.table_ && a.space_ == b.space_;
  }

  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (!(a.space_ == b.space_)) fail(ErrorKind::ShapeMismatch, "valuations on different spaces");
    std::vector<ExtRational> t(a.table_.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = a.table_[i] + b.table_[i];
    return Valuation(a.space_, std::move(t), Trusted{});
  }
  friend Valuation operator*(const ExtRational& c, const Valuation& a) {
    std::vector<ExtRational> t(a.table_.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = c * a.table_[i];
    return Valuation(a.space_, std::move(t), Trusted{});
  }

 private:
  void validate() const {
    const auto& opens = space_.opens();
    if (table_.size() != opens.size()) fail(ErrorKind::ShapeMismatch, "table size differs from open count");
    if (!table_[0].is_zero()) fail(ErrorKind::NotStrict, "value " + table_[0].str() + " on the empty set");
    for (std::size_t i = 0; i < opens.size(); ++i)
      for (std::size_t j = 0; j < opens.size(); ++j)
        if (i != j && opens[i].subset_of(opens[j]) && table_[j] < table_[i])
          fail(ErrorKind::NotMonotone, space_.describe(opens[i]) + " = " + table_[i].str() + " exceeds " +
                                           space_.describe(opens[j]) + " = " + table_[j].str());
    for (std::size_t i = 0; i < opens.size(); ++i)
      for (std::size_t j = i + 1; j < opens.size(); ++j) {
        const auto& join = table_[space_.open_index(opens[i] | opens[j])];
        const auto& meet = table_[space_.open_index(opens[i] & opens[j])];
        if (join + meet != table_[i] + table_[j])
          fail(ErrorKind::NotModular, "on " + space_.describe(opens[i]) + " and " + space_.describe(opens[j]) + ": " +
                                          join.str() + " + " + meet.str() + " != " + table_[i].str() + " + " +
                                          table_[j].str());
      }
  }

  FiniteSpace space_;
  std::vector<ExtRational> table_;
};

inline Valuation validate_valuation(const FiniteSpace& space, std::vector<ExtRational> table) {
  return Valuation(space, std::move(table));
}

/// ν(U) = Σ_{x ∈ U} w_x.
inline Valuation valuation_from_weights(const FiniteSpace& space, const std::vector<ExtRational>& weights) {
  if (weights.size() != space.size()) fail(ErrorKind::ShapeMismatch, "one weight per point expected");
  std::vector<ExtRational> table;
  table.reserve(space.opens().size());
  for (auto u : space.opens()) {
    ExtRational s;
    for (auto x : u) s += weights[x];
    table.push_back(std::move(s));
  }
  return Valuation(space, std::move(table), Valuation::Trusted{});
}

/// δ_x(U) = ⟦x ∈ U⟧.
inline Valuation unit_delta(const FiniteSpace& space, std::size_t x) {
  if (x >= space.size()) fail(ErrorKind::ShapeMismatch, "unknown point");
  std::vector<ExtRational> table;
  for (auto u : space.opens()) table.emplace_back(u.contains(x) ? 1 : 0);
  return Valuation(space, std::move(table), Valuation::Trusted{});
}

/// A [0, ∞]-valued function with open strict upper level sets, i.e. a
/// function monotone for the specialization preorder.
class LowerSemiFn {
 public:
  LowerSemiFn(FiniteSpace space, std::vector<ExtRational> values) : space_(std::move(space)), values_(std::move(values)) {
    if (values_.size() != space_.size()) fail(ErrorKind::ShapeMismatch, "one value per point expected");
    std::optional<std::string> order_witness;
    for (std::size_t x = 0; x < values_.size() && !order_witness; ++x)
      for (auto y : space_.up(x))
        if (values_[y] < values_[x]) {
          order_witness = space_.name(x) + " <= " + space_.name(y) + " but " + values_[x].str() + " > " + values_[y].str();
          break;
        }
    bool levels_open = space_.is_open(level_above(ExtRational(0)));
    for (const auto& r : values_)
      if (r.is_finite() && !space_.is_open(level_above(r))) levels_open = false;
    if (levels_open == order_witness.has_value()) fail(ErrorKind::Anomaly, "semicontinuity criteria disagree");
    if (order_witness) fail(ErrorKind::NotLowerSemicontinuous, *order_witness);
  }

  static LowerSemiFn indicator(const FiniteSpace& space, PointSet u) {
    space.require_open(u);
    std::vector<ExtRational> v;
    for (std::size_t x = 0; x < space.size(); ++x) v.emplace_back(u.contains(x) ? 1 : 0);
    return LowerSemiFn(space, std::move(v));
  }
  static LowerSemiFn constant(const FiniteSpace& space, const ExtRational& c) {
    return LowerSemiFn(space, std::vector<ExtRational>(space.size(), c));
  }

  const FiniteSpace& space() const { return space_; }
  const std::vector<ExtRational>& values() const { return values_; }
  const ExtRational& operator()(std::size_t x) const { return values_.at(x); }

  /// {x : g(x) > r}.
  PointSet level_above(const ExtRational& r) const {
    PointSet s;
    for (std::size_t x = 0; x < values_.size(); ++x)
      if (values_[x] > r) s = s.with(x);
    return s;
  }
  /// {x : g(x) >= r}.
  PointSet level_at_least(const ExtRational& r) const {
    PointSet s;
    for (std::size_t x = 0; x < values_.size(); ++x)
      if (values_[x] >= r) s = s.with(x);
    return s;
  }

  friend bool operator==(const LowerSemiFn& a, const LowerSemiFn& b) {
    return a.values_ == b.values_ && a.space_ == b.space_;
  }

 private:
  FiniteSpace space_;
  std::vector<ExtRational> values_;
};

/// g ∘ f for a lower semicontinuous g on the target of f.
inline LowerSemiFn precompose(const LowerSemiFn& g, const ContinuousMap& f) {
  if (!(g.space() == f.target())) fail(ErrorKind::ShapeMismatch, "function does not live on the target");
  std::vector<ExtRational> v;
  for (std::size_t x = 0; x < f.source().size(); ++x) v.push_back(g(f(x)));
  return LowerSemiFn(f.source(), std::move(v));
}

/// ⟨ν, g⟩ by the layer-cake formula over the distinct values
/// 0 = v₀ < v₁ < … of g: Σᵢ (vᵢ − vᵢ₋₁)·ν({g ≥ vᵢ}) + ∞·ν({g = ∞}).
inline ExtRational integrate(const Valuation& nu, const LowerSemiFn& g) {
  if (!(nu.space() == g.space())) fail(ErrorKind::ShapeMismatch, "valuation and function on different spaces");
  std::vector<ExtRational> levels;
  for (const auto& v : g.values())
    if (v.is_finite() && v.is_positive()) levels.push_back(v);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  ExtRational sum;
  ExtRational previous;
  for (const auto& v : levels) {
    sum += difference(v, previous) * nu(g.level_at_least(v));
    previous = v;
  }
  sum += ExtRational::infinity() * nu(g.level_at_least(ExtRational::infinity()));
  return sum;
}

/// f_*ν(U) = ν(f⁻¹(U)).
inline Valuation pushforward(const ContinuousMap& f, const Valuation& nu) {
  if (!(nu.space() == f.source())) fail(ErrorKind::ShapeMismatch, "valuation does not live on the source of f");
  std::vector<ExtRational> table;
  for (auto u : f.target().opens()) table.push_back(nu(f.preimage(u)));
  return Valuation(f.target(), std::move(table), Valuation::Trusted{});
}

/// A finite positive combination Σ cⱼ δ_{νⱼ} of Dirac valuations on VX.
class SimpleSecondOrder {
 public:
  struct Atom {
    ExtRational weight;
    Valuation inner;
  };

  SimpleSecondOrder(FiniteSpace space, std::vector<Atom> atoms) : space_(std::move(space)), atoms_(std::move(atoms)) {
    for (const auto& a : atoms_) {
      if (!a.weight.is_positive()) fail(ErrorKind::PreconditionFailed, "atom weight must be positive");
      if (!(a.inner.space() == space_)) fail(ErrorKind::ShapeMismatch, "atom lives on a different space");
    }
  }

  /// δ_ν.
  static SimpleSecondOrder dirac(const Valuation& nu) { return SimpleSecondOrder(nu.space(), {{ExtRational(1), nu}}); }

  const FiniteSpace& space() const { return space_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  /// ⟨ξ, F⟩ = Σ cⱼ F(νⱼ).
  ExtRational integrate(const std::function<ExtRational(const Valuation&)>& f) const {
    ExtRational s;
    for (const auto& a : atoms_) s += a.weight * f(a.inner);
    return s;
  }

  /// Image under F: VX → VY, i.e. Σ cⱼ δ_{F(νⱼ)}.
  SimpleSecondOrder map(const FiniteSpace& target, const std::function<Valuation(const Valuation&)>& f) const {
    std::vector<Atom> out;
    for (const auto& a : atoms_) out.push_back({a.weight, f(a.inner)});
    return SimpleSecondOrder(target, std::move(out));
  }

 private:
  FiniteSpace space_;
  std::vector<Atom> atoms_;
};

/// ℰξ = Σ cⱼ νⱼ.
inline Valuation mult_E(const SimpleSecondOrder& xi) {
  Valuation sum = Valuation::zero(xi.space());
  for (const auto& a : xi.atoms()) sum = sum + a.weight * a.inner;
  return sum;
}

/// A continuous map X → VY: one valuation per source point, with
/// x ↦ k(x)(U) lower semicontinuous for every open U.
class Kernel {
 public:
  Kernel(FiniteSpace source, FiniteSpace target, std::vector<Valuation> rows)
      : source_(std::move(source)), target_(std::move(target)), rows_(std::move(rows)) {
    if (rows_.size() != source_.size()) fail(ErrorKind::NotAKernel, "one valuation per source point expected");
    for (const auto& r : rows_)
      if (!(r.space() == target_)) fail(ErrorKind::NotAKernel, "row lives on a different space");
    for (std::size_t x = 0; x < source_.size(); ++x)
      for (auto y : source_.up(x))
        for (std::size_t i = 0; i < target_.opens().size(); ++i)
          if (rows_[y].table()[i] < rows_[x].table()[i])
            fail(ErrorKind::NotAKernel, "not continuous: " + source_.name(x) + " <= " + source_.name(y) + " but mass on " +
                                            target_.describe(target_.opens()[i]) + " drops");
  }

  /// x ↦ δ_{f(x)}.
  static Kernel from_map(const ContinuousMap& f) {
    std::vector<Valuation> rows;
    for (std::size_t x = 0; x < f.source().size(); ++x) rows.push_back(unit_delta(f.target(), f(x)));
    return Kernel(f.source(), f.target(), std::move(rows));
  }
  static Kernel identity(const FiniteSpace& x) { return from_map(ContinuousMap::identity(x)); }

  const FiniteSpace& source() const { return source_; }
  const FiniteSpace& target() const { return target_; }
  const std::vector<Valuation>& rows() const { return rows_; }
  const Valuation& operator()(std::size_t x) const { return rows_.at(x); }

  /// y ↦ k(y)(U) as a lower semicontinuous function on the source.
  LowerSemiFn mass_on(PointSet u) const {
    std::vector<ExtRational> v;
    for (const auto& r : rows_) v.push_back(r(u));
    return LowerSemiFn(source_, std::move(v));
  }

  friend bool operator==(const Kernel& a, const Kernel& b) {
    return a.rows_ == b.rows_ && a.source_ == b.source_ && a.target_ == b.target_;
  }

 private:
  FiniteSpace source_;
  FiniteSpace target_;
  std::vector<Valuation> rows_;
};

/// (k ∘† h)(x)(U) = ⟨h(x), y ↦ k(y)(U)⟩, without materializing VVZ.
inline Kernel kleisli_compose(const Kernel& k, const Kernel& h) {
  if (!(k.source() == h.target())) fail(ErrorKind::ShapeMismatch, "kernels are not composable");
  std::vector<LowerSemiFn> masses;
  for (auto u : k.target().opens()) masses.push_back(k.mass_on(u));
  std::vector<Valuation> rows;
  for (std::size_t x = 0; x < h.source().size(); ++x) {
    std::vector<ExtRational> table;
    for (const auto& g : masses) table.push_back(integrate(h(x), g));
    rows.emplace_back(k.target(), std::move(table));
  }
  return Kernel(h.source(), k.target(), std::move(rows));
}

/// s(x, ν)(W) = ν(W_x) with W_x = {y : (x, y) ∈ W}.
inline Valuation strength_V(const Product& xy, std::size_t x, const Valuation& nu) {
  if (!(nu.space() == xy.second.target())) fail(ErrorKind::ShapeMismatch, "valuation does not live on Y");
  if (x >= xy.first.target().size()) fail(ErrorKind::ShapeMismatch, "unknown point");
  std::vector<ExtRational> table;
  for (auto w : xy.space.opens()) table.push_back(nu(xy.slice(x, w)));
  return Valuation(xy.space, std::move(table), Valuation::Trusted{});
}

/// t(ν, y)(W) = ν({x : (x, y) ∈ W}).
inline Valuation costrength_V(const Product& xy, const Valuation& nu, std::size_t y) {
  if (!(nu.space() == xy.first.target())) fail(ErrorKind::ShapeMismatch, "valuation does not live on X");
  if (y >= xy.second.target().size()) fail(ErrorKind::ShapeMismatch, "unknown point");
  std::vector<ExtRational> table;
  for (auto w : xy.space.opens()) table.push_back(nu(xy.coslice(w, y)));
  return Valuation(xy.space, std::move(table), Valuation::Trusted{});
}

/// Point weights reproducing ν on every open, via w_x = ν(↑x) − ν(↑x ∖ [x])
/// on a representative of each specialization class (0 elsewhere). Returns
/// nullopt when the subtraction meets ∞ − ∞ or the weights fail to
/// reproduce ν.
inline std::optional<std::vector<ExtRational>> weight_decomposition(const Valuation& nu) {
  const auto& x = nu.space();
  std::vector<ExtRational> w(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    bool representative = true;
    for (std::size_t q = 0; q < p; ++q)
      if (x.equivalent(p, q)) representative = false;
    if (!representative) continue;
    PointSet cls;
    for (auto q : x.up(p))
      if (x.equivalent(p, q)) cls = cls.with(q);
    const ExtRational& whole = nu(x.up(p));
    const ExtRational& rest = nu(x.up(p).minus(cls));
    if (rest.is_infinite())
      w[p] = ExtRational(0);
    else
      w[p] = difference(whole, rest);
  }
  if (!(valuation_from_weights(x, w) == nu)) return std::nullopt;
  return w;
}

namespace detail {

/// Minimal points of an open set (one per specialization class).
inline std::vector<std::size_t> minimal_points(const FiniteSpace& s, PointSet w) {
  std::vector<std::size_t> mins;
  for (auto p : w) {
    bool minimal = true;
    for (auto q : w)
      if (q != p && s.leq(q, p) && (!s.leq(p, q) || q < p)) minimal = false;
    if (minimal) mins.push_back(p);
  }
  return mins;
}

}  // namespace detail

/// ν ⊗ ρ evaluated on rectangles as ν(U)·ρ(V) and extended to every open W by
/// n-ary inclusion–exclusion over the rectangles ↑x × ↑y at the minimal
/// points (x, y) of W.
inline Valuation product_valuation_by_rectangles(const Product& xy, const Valuation& nu, const Valuation& rho) {
  const auto& xs = xy.first.target();
  const auto& ys = xy.second.target();
  if (!(nu.space() == xs) || !(rho.space() == ys)) fail(ErrorKind::ShapeMismatch, "factors do not match the product");
  std::vector<ExtRational> table;
  for (auto w : xy.space.opens()) {
    auto mins = detail::minimal_points(xy.space, w);
    // A generating rectangle of infinite mass makes W infinite by
    // monotonicity; otherwise every term below is finite.
    bool infinite = false;
    for (auto p : mins)
      if ((nu(xs.up(xy.first(p))) * rho(ys.up(xy.second(p)))).is_infinite()) infinite = true;
    if (infinite) {
      table.push_back(ExtRational::infinity());
      continue;
    }
    // Aggregate the signed coefficient of each intersected rectangle first.
    std::map<std::pair<PointSet, PointSet>, long long> coeff;
    const std::size_t k = mins.size();
    if (k >= 63) fail(ErrorKind::TooManyPoints, "too many generating rectangles");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      PointSet u = xs.all(), v = ys.all();
      for (std::size_t i = 0; i < k; ++i)
        if ((mask >> i) & 1U) {
          u &= xs.up(xy.first(mins[i]));
          v &= ys.up(xy.second(mins[i]));
        }
      coeff[{u, v}] += (std::popcount(mask) % 2 == 1) ? 1 : -1;
    }
    SignedSum sum;
    for (const auto& [rect, c] : coeff) {
      if (c == 0) continue;
      ExtRational term = ExtRational(c < 0 ? -c : c) * (nu(rect.first) * rho(rect.second));
      sum.add(term, c < 0);
    }
    table.push_back(sum.result());
  }
  return Valuation(xy.space, std::move(table), Valuation::Trusted{});
}

/// ℰ ∘ t_* ∘ s applied to (ν, ρ) with ρ = Σ w_y δ_y: Σ_y w_y · t(ν, y).
inline Valuation product_via_costrength(const Product& xy, const Valuation& nu, const std::vector<ExtRational>& rho_weights) {
  Valuation sum = Valuation::zero(xy.space);
  for (std::size_t y = 0; y < rho_weights.size(); ++y)
    if (rho_weights[y].is_positive()) sum = sum + rho_weights[y] * costrength_V(xy, nu, y);
  return sum;
}

/// ℰ ∘ s_* ∘ t applied to (ν, ρ) with ν = Σ w_x δ_x: Σ_x w_x · s(x, ρ).
inline Valuation product_via_strength(const Product& xy, const std::vector<ExtRational>& nu_weights, const Valuation& rho) {
  Valuation sum = Valuation::zero(xy.space);
  for (std::size_t x = 0; x < nu_weights.size(); ++x)
    if (nu_weights[x].is_positive()) sum = sum + nu_weights[x] * strength_V(xy, x, rho);
  return sum;
}

/// ν ⊗ ρ. The inclusion–exclusion value is cross-checked against both
/// diagonal composites of the Fubini square whenever the factors admit a
/// weight decomposition.
inline Valuation product_valuation(const Product& xy, const Valuation& nu, const Valuation& rho) {
  Valuation result = product_valuation_by_rectangles(xy, nu, rho);
  auto wn = weight_decomposition(nu);
  auto wr = weight_decomposition(rho);
  if (wn && wr) {
    if (!(product_via_costrength(xy, nu, *wr) == result) || !(product_via_strength(xy, *wn, rho) == result))
      fail(ErrorKind::Anomaly, "product valuation disagrees with the Fubini composites");
  }
  return result;
}

/// ν ∈ θ(U, r), i.e. ν(U) > r.
inline bool in_theta(const Valuation& nu, PointSet u, const Rational& r) {
  if (r < 0) fail(ErrorKind::PreconditionFailed, "threshold must be nonnegative");
  return nu(u) > ExtRational(r);
}

/// ν ∈ Θ(f, r), i.e. ⟨ν, f⟩ > r.
inline bool in_Theta(const Valuation& nu, const LowerSemiFn& f, const Rational& r) {
  if (r < 0) fail(ErrorKind::PreconditionFailed, "threshold must be nonnegative");
  return integrate(nu, f) > ExtRational(r);
}

struct PortmanteauTerm {
  PointSet open;
  Rational coefficient;  // cᵢ > 0
  Rational threshold;    // rᵢ >= 0 with ν(Uᵢ) > rᵢ
};

/// Subbasic neighbourhood ⋂ θ(Uᵢ, rᵢ) of ν inside Θ(f, r): the simple
/// function Σ cᵢ 1_{Uᵢ} is dominated by f and Σ cᵢ rᵢ > r.
inline std::vector<PortmanteauTerm> portmanteau_witness(const Valuation& nu, const LowerSemiFn& f, const Rational& r) {
  if (!(nu.space() == f.space())) fail(ErrorKind::ShapeMismatch, "valuation and function on different spaces");
  if (r < 0) fail(ErrorKind::PreconditionFailed, "threshold must be nonnegative");
  if (!(integrate(nu, f) > ExtRational(r))) fail(ErrorKind::PreconditionFailed, "integral does not exceed the threshold");

  // Layer-cake terms with finite coefficients, dropping null opens.
  std::vector<std::pair<PointSet, Rational>> terms;
  std::vector<Rational> levels;
  for (const auto& v : f.values())
    if (v.is_finite() && v.is_positive()) levels.push_back(v.finite());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  Rational previous = 0;
  for (const auto& v : levels) {
    PointSet u = f.level_at_least(ExtRational(v));
    if (nu(u).is_positive()) terms.emplace_back(u, v - previous);
    previous = v;
  }

  // An infinite contribution alone certifies the bound.
  const PointSet top = f.level_at_least(ExtRational::infinity());
  if (!top.empty() && nu(top).is_positive()) {
    // f = ∞ on top, so any finite multiple of 1_top is dominated.
    Rational threshold = nu(top).is_infinite() ? Rational(1) : nu(top).finite() / 2;
    return {{top, (r + 1) / threshold, threshold}};
  }
  for (const auto& [u, c] : terms)
    if (nu(u).is_infinite()) {
      Rational threshold = (r + 1) / c;
      return {{u, c, threshold}};
    }

  Rational slack_sum = 0, coeff_sum = 0;
  std::optional<Rational> min_mass;
  for (const auto& [u, c] : terms) {
    const Rational& m = nu(u).finite();
    slack_sum += c * m;
    coeff_sum += c;
    if (!min_mass || m < *min_mass) min_mass = m;
  }
  const Rational slack = slack_sum - r;
  Rational eps = slack / coeff_sum;
  if (*min_mass < eps) eps = *min_mass;
  eps /= 2;
  std::vector<PortmanteauTerm> out;
  for (const auto& [u, c] : terms) out.push_back({u, c, nu(u).finite() - eps});
  return out;
}

struct OrderReport {
  bool opens_order = false;      // ν(U) <= ρ(U) for every open U
  bool integrals_order = false;  // ⟨ν, g⟩ <= ⟨ρ, g⟩ on the canonical test family
  std::optional<bool> stochastic;
};

/// Every monotone function into {0, 1, …, levels}, written as Σₖ 1_{Uₖ}
/// for a descending chain of opens U₁ ⊇ … ⊇ U_levels.
inline std::vector<LowerSemiFn> canonical_test_functions(const FiniteSpace& space, std::size_t levels) {
  std::vector<LowerSemiFn> out;
  std::vector<PointSet> chain;
  std::function<void(std::size_t)> walk = [&](std::size_t depth) {
    if (depth == levels) {
      std::vector<ExtRational> v(space.size());
      for (auto u : chain)
        for (auto x : u) v[x] += ExtRational(1);
      out.emplace_back(space, std::move(v));
      return;
    }
    for (auto u : space.opens())
      if (chain.empty() || u.subset_of(chain.back())) {
        chain.push_back(u);
        walk(depth + 1);
        chain.pop_back();
      }
  };
  walk(0);
  return out;
}

/// Compares ν and ρ pointwise on opens and on the canonical integrands with
/// values in {0, …, |X|} (plus all indicators), which must agree. With an
/// auxiliary preorder (pairs (a, b) meaning a <= b) whose graph is closed in
/// X × X, also reports the stochastic order: ν(U) <= ρ(U) on opens that are
/// upper sets of the auxiliary order.
inline OrderReport order_checks(const Valuation& nu, const Valuation& rho, const std::optional<Relation>& aux = std::nullopt) {
  if (!(nu.space() == rho.space())) fail(ErrorKind::ShapeMismatch, "valuations on different spaces");
  const auto& x = nu.space();
  OrderReport rep;
  rep.opens_order = true;
  for (std::size_t i = 0; i < x.opens().size(); ++i)
    if (rho.table()[i] < nu.table()[i]) rep.opens_order = false;
  rep.integrals_order = true;
  for (auto u : x.opens()) {
    auto g = LowerSemiFn::indicator(x, u);
    if (integrate(rho, g) < integrate(nu, g)) rep.integrals_order = false;
  }
  for (const auto& g : canonical_test_functions(x, x.size()))
    if (integrate(rho, g) < integrate(nu, g)) rep.integrals_order = false;
  if (rep.opens_order != rep.integrals_order) fail(ErrorKind::Anomaly, "pointwise orders on opens and integrals disagree");

  if (aux) {
    const std::size_t n = x.size();
    std::vector<PointSet> above(n);
    for (auto [a, b] : *aux) {
      if (a >= n || b >= n) fail(ErrorKind::ShapeMismatch, "auxiliary order refers to unknown point");
      above[a] = above[a].with(b);
    }
    for (std::size_t a = 0; a < n; ++a)
      if (!above[a].contains(a)) fail(ErrorKind::NotAPreorder, "auxiliary order is not reflexive");
    for (std::size_t a = 0; a < n; ++a)
      for (auto b : above[a])
        if (!above[b].subset_of(above[a])) fail(ErrorKind::NotAPreorder, "auxiliary order is not transitive");
    // The graph is closed iff it is a down-set of the product preorder.
    for (std::size_t a = 0; a < n; ++a)
      for (auto b : above[a])
        for (auto a2 : x.down(a))
          for (auto b2 : x.down(b))
            if (!above[a2].contains(b2))
              fail(ErrorKind::OrderNotClosed, "graph contains (" + x.name(a) + "," + x.name(b) + ") but not its limit (" +
                                                  x.name(a2) + "," + x.name(b2) + ")");
    bool st = true;
    for (std::size_t i = 0; i < x.opens().size(); ++i) {
      PointSet u = x.opens()[i];
      bool upper = true;
      for (auto a : u) upper = upper && above[a].subset_of(u);
      if (upper && rho.table()[i] < nu.table()[i]) st = false;
    }
    rep.stochastic = st;
  }
  return rep;
}

}  // namespace powerdomain

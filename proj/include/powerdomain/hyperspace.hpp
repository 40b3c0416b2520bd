#pragma once

/// The hyperspace HX of closed subsets with the lower Vietoris topology, its
/// duality with join-preserving Sierpiński-valued functionals, and the monad
/// structure (σ, 𝒰, f♯) with its strength.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "powerdomain/error.hpp"
#include "powerdomain/point_set.hpp"
#include "powerdomain/topology.hpp"

namespace powerdomain {

class ClosedSet {
 public:
  ClosedSet(FiniteSpace space, PointSet members) : space_(std::move(space)), members_(members) {
    if (!space_.is_closed(members_)) fail(ErrorKind::NotClosed, space_.describe(members_) + " is not closed");
  }

  static ClosedSet empty(const FiniteSpace& space) { return ClosedSet(space, PointSet{}); }
  static ClosedSet whole(const FiniteSpace& space) { return ClosedSet(space, space.all()); }

  const FiniteSpace& space() const { return space_; }
  PointSet members() const { return members_; }

  friend bool operator==(const ClosedSet& a, const ClosedSet& b) {
    return a.members_ == b.members_ && a.space_ == b.space_;
  }

 private:
  FiniteSpace space_;
  PointSet members_;
};

/// HX together with the index of its points: point i of `space` is the
/// closed set `closed_sets[i]` of `base`. Closed sets are sorted by bit
/// pattern, so HHX and HHHX reuse the same machinery.
struct Hyperspace {
  FiniteSpace base;
  FiniteSpace space;
  std::vector<PointSet> closed_sets;

  std::size_t size() const { return closed_sets.size(); }

  std::size_t index_of(PointSet c) const {
    auto it = std::lower_bound(closed_sets.begin(), closed_sets.end(), c);
    if (it == closed_sets.end() || *it != c) fail(ErrorKind::NotClosed, base.describe(c) + " is not closed");
    return static_cast<std::size_t>(it - closed_sets.begin());
  }
  ClosedSet closed(std::size_t i) const { return ClosedSet(base, closed_sets.at(i)); }

  /// Hit(U) = {C : C ∩ U ≠ ∅} as a set of points of HX.
  PointSet hit_set(PointSet u) const {
    PointSet r;
    for (std::size_t i = 0; i < closed_sets.size(); ++i)
      if (closed_sets[i].intersects(u)) r = r.with(i);
    return r;
  }
};

/// All closed sets of x, sorted by bit pattern, without building HX.
inline std::vector<PointSet> closed_sets_of(const FiniteSpace& x) {
  std::vector<PointSet> down;
  for (std::size_t i = 0; i < x.size(); ++i) down.push_back(x.down(i));
  return detail::enumerate_down_sets(down);
}

inline std::string closed_set_name(const FiniteSpace& x, PointSet c) { return x.describe(c); }

/// Builds HX. Its points are the down-sets of x; its opens are the up-sets of
/// inclusion, cross-checked against the topology generated by {Hit(U)}.
inline Hyperspace build_hyperspace(const FiniteSpace& x) {
  std::vector<PointSet> closed = closed_sets_of(x);
  if (closed.size() > PointSet::kMaxPoints)
    fail(ErrorKind::TooManyPoints, "hyperspace has " + std::to_string(closed.size()) + " points");
  const std::size_t m = closed.size();
  std::vector<std::string> names;
  std::vector<PointSet> up(m);
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back(closed_set_name(x, closed[i]));
    for (std::size_t j = 0; j < m; ++j)
      if (closed[i].subset_of(closed[j])) up[i] = up[i].with(j);
  }
  Hyperspace h{x, SpaceBuilderAccess::from_up_sets(std::move(names), std::move(up)), std::move(closed)};
  if (h.space.opens().size() <= 4096) {
    std::vector<PointSet> subbasis;
    for (auto u : x.opens()) subbasis.push_back(h.hit_set(u));
    if (generate_topology(m, subbasis) != h.space.opens())
      fail(ErrorKind::Anomaly, "lower Vietoris topology differs from the up-sets of inclusion");
  }
  return h;
}

/// ⟨C, U⟩: whether C meets the open set U.
inline bool hit(const ClosedSet& c, PointSet u) {
  c.space().require_open(u);
  return c.members().intersects(u);
}

/// A strict, join-preserving map from the opens of a space to {0, 1},
/// tabulated in the canonical open order.
class HitFunctional {
 public:
  HitFunctional(FiniteSpace space, std::vector<bool> table) : space_(std::move(space)), table_(std::move(table)) {
    const auto& opens = space_.opens();
    if (table_.size() != opens.size()) fail(ErrorKind::ShapeMismatch, "table size differs from open count");
    if (table_[0]) fail(ErrorKind::NotAValidFunctional, "not strict: value 1 on the empty set");
    for (std::size_t i = 0; i < opens.size(); ++i)
      for (std::size_t j = i + 1; j < opens.size(); ++j) {
        bool joined = table_[space_.open_index(opens[i] | opens[j])];
        if (joined != (table_[i] || table_[j]))
          fail(ErrorKind::NotAValidFunctional,
               "join not preserved on " + space_.describe(opens[i]) + " and " + space_.describe(opens[j]));
      }
  }

  const FiniteSpace& space() const { return space_; }
  const std::vector<bool>& table() const { return table_; }
  bool operator()(PointSet u) const { return table_[space_.open_index(u)]; }

  /// Pointwise order of truth values.
  bool leq(const HitFunctional& other) const {
    for (std::size_t i = 0; i < table_.size(); ++i)
      if (table_[i] && !other.table_[i]) return false;
    return true;
  }

  friend bool operator==(const HitFunctional& a, const HitFunctional& b) {
    return a.table_ == b.table_ && a.space_ == b.space_;
  }

 private:
  FiniteSpace space_;
  std::vector<bool> table_;
};

inline HitFunctional functional_of_closed(const ClosedSet& c) {
  std::vector<bool> table;
  for (auto u : c.space().opens()) table.push_back(c.members().intersects(u));
  return HitFunctional(c.space(), std::move(table));
}

/// The complement of the largest open set on which φ vanishes.
inline ClosedSet closed_of_functional(const HitFunctional& phi) {
  const auto& opens = phi.space().opens();
  PointSet null;
  for (std::size_t i = 0; i < opens.size(); ++i)
    if (!phi.table()[i]) null |= opens[i];
  return ClosedSet(phi.space(), null.complement(phi.space().size()));
}

/// f♯C = cl(f(C)).
inline ClosedSet push_closed(const ContinuousMap& f, const ClosedSet& c) {
  if (!(c.space() == f.source())) fail(ErrorKind::ShapeMismatch, "closed set does not live on the source of f");
  return ClosedSet(f.target(), closure(f.target(), f.image(c.members())));
}

/// σ(x) = cl({x}).
inline ClosedSet unit_sigma(const FiniteSpace& x, std::size_t point) {
  if (point >= x.size()) fail(ErrorKind::ShapeMismatch, "unknown point");
  return ClosedSet(x, x.down(point));
}

/// 𝒰: HHX → HX, the closure of the union of a closed family of closed sets.
/// `family` is a set of points of `hx.space`.
inline ClosedSet mult_union(const Hyperspace& hx, PointSet family) {
  if (!hx.space.is_closed(family))
    fail(ErrorKind::NotClosedFamily, hx.space.describe(family) + " is not down-closed under inclusion");
  PointSet u;
  for (auto i : family) u |= hx.closed_sets[i];
  return ClosedSet(hx.base, closure(hx.base, u));
}

inline ClosedSet mult_union(const Hyperspace& hx, const ClosedSet& family) {
  if (!(family.space() == hx.space)) fail(ErrorKind::ShapeMismatch, "family does not live on HX");
  return mult_union(hx, family.members());
}

/// Whether c lies in the closure of σ(X) inside HX, decided by the criterion
/// "every finite family of opens hit by c has nonempty intersection" and
/// cross-checked against the down-closure of σ(X) under inclusion.
inline bool unit_closure_membership(const FiniteSpace& x, const ClosedSet& c) {
  if (!(c.space() == x)) fail(ErrorKind::ShapeMismatch, "closed set does not live on x");
  PointSet meet = x.all();
  for (auto u : x.opens())
    if (c.members().intersects(u)) meet &= u;
  const bool criterion = !meet.empty();
  bool below_point_closure = false;
  for (std::size_t p = 0; p < x.size(); ++p)
    if (c.members().subset_of(x.down(p))) below_point_closure = true;
  if (criterion != below_point_closure) fail(ErrorKind::Anomaly, "closure-of-image criterion disagrees");
  return criterion;
}

/// σ is a subspace embedding iff it is injective (the topology of X is always
/// initial for σ).
inline bool sigma_is_embedding(const FiniteSpace& x) {
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = a + 1; b < x.size(); ++b)
      if (x.down(a) == x.down(b)) return false;
  return true;
}

/// Strength s(x, C) = cl({x} × C) on a product X × Y.
inline ClosedSet strength_H(const Product& xy, std::size_t x, const ClosedSet& c) {
  if (!(c.space() == xy.second.target())) fail(ErrorKind::ShapeMismatch, "closed set does not live on Y");
  return ClosedSet(xy.space, closure(xy.space, xy.rectangle(PointSet::singleton(x), c.members())));
}

/// Costrength t(C, y) = cl(C × {y}).
inline ClosedSet costrength_H(const Product& xy, const ClosedSet& c, std::size_t y) {
  if (!(c.space() == xy.first.target())) fail(ErrorKind::ShapeMismatch, "closed set does not live on X");
  return ClosedSet(xy.space, closure(xy.space, xy.rectangle(c.members(), PointSet::singleton(y))));
}

/// C × D, cross-checked against the diagonal composite 𝒰 ∘ t♯ ∘ s of the
/// commutativity square.
inline ClosedSet product_closed(const Product& xy, const ClosedSet& c, const ClosedSet& d) {
  const auto& x = xy.first.target();
  const auto& y = xy.second.target();
  if (!(c.space() == x) || !(d.space() == y)) fail(ErrorKind::ShapeMismatch, "factors do not match the product");
  ClosedSet direct(xy.space, xy.rectangle(c.members(), d.members()));
  // s(C, D) = cl({C} × D) in HX × Y consists of the pairs (C', y') with
  // C' ⊆ C closed and y' ∈ D; t sends each to cl(C' × {y'}), and 𝒰 unions.
  PointSet composite;
  for (auto u : x.opens()) {
    PointSet sub = u.complement(x.size());
    if (!sub.subset_of(c.members())) continue;
    for (auto yp : d.members()) composite |= costrength_H(xy, ClosedSet(x, sub), yp).members();
  }
  if (composite != direct.members()) fail(ErrorKind::Anomaly, "product of closed sets differs from 𝒰∘t♯∘s");
  return direct;
}

struct HAlgebraVerdict {
  bool continuous = false;         // a: HA → A is continuous
  bool unit = false;               // a ∘ σ = id
  bool square = false;             // a ∘ 𝒰 = a ∘ a♯
  bool is_join = false;            // a(C) is a least upper bound of C
  bool t0 = false;
  bool sober = false;
  bool complete_lattice = false;
  bool binary_join_continuous = false;
  bool closed_join_continuous = false;

  bool is_algebra() const { return continuous && unit && square; }
  bool is_tcjs() const { return t0 && sober && complete_lattice && binary_join_continuous; }
  bool consistent() const { return is_algebra() == (is_join && is_tcjs()); }
};

namespace detail {

/// A least upper bound of s in the specialization preorder, if one exists.
inline std::optional<std::size_t> least_upper_bound(const FiniteSpace& a, PointSet s) {
  for (std::size_t u = 0; u < a.size(); ++u) {
    bool upper = true;
    for (auto c : s) upper = upper && a.leq(c, u);
    if (!upper) continue;
    bool least = true;
    for (std::size_t v = 0; v < a.size() && least; ++v) {
      bool v_upper = true;
      for (auto c : s) v_upper = v_upper && a.leq(c, v);
      if (v_upper && !a.leq(u, v)) least = false;
    }
    if (least) return u;
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks whether `a_map` (a table on the points of HA, in the order of
/// `build_hyperspace(a_space)`) is an H-algebra structure, and independently
/// whether a_space is a topological complete join-semilattice with a_map its
/// join of closed sets.
inline HAlgebraVerdict check_H_algebra(const FiniteSpace& a_space, const std::vector<std::size_t>& a_map) {
  const Hyperspace ha = build_hyperspace(a_space);
  if (a_map.size() != ha.size()) fail(ErrorKind::ShapeMismatch, "algebra map is not defined on HA");
  for (auto v : a_map)
    if (v >= a_space.size()) fail(ErrorKind::ShapeMismatch, "algebra map refers to unknown point");

  HAlgebraVerdict v;
  v.continuous = true;
  for (auto u : a_space.opens()) {
    PointSet pre;
    for (std::size_t i = 0; i < ha.size(); ++i)
      if (u.contains(a_map[i])) pre = pre.with(i);
    if (!ha.space.is_open(pre)) v.continuous = false;
  }

  v.unit = true;
  for (std::size_t x = 0; x < a_space.size(); ++x)
    if (a_map[ha.index_of(a_space.down(x))] != x) v.unit = false;

  v.square = true;
  for (const PointSet family : closed_sets_of(ha.space)) {
    const std::size_t lhs = a_map[ha.index_of(mult_union(ha, family).members())];
    PointSet image;
    for (auto i : family) image = image.with(a_map[i]);
    const std::size_t rhs = a_map[ha.index_of(closure(a_space, image))];
    if (lhs != rhs) v.square = false;
  }

  v.is_join = true;
  for (std::size_t i = 0; i < ha.size(); ++i) {
    auto sup = detail::least_upper_bound(a_space, ha.closed_sets[i]);
    if (!sup || !a_space.equivalent(*sup, a_map[i])) v.is_join = false;
  }

  const Separation sep = check_separation(a_space);
  v.t0 = sep.is_t0;
  v.sober = sep.is_sober;
  std::vector<std::size_t> joins(ha.size());
  v.complete_lattice = v.t0;
  for (std::size_t i = 0; i < ha.size() && v.complete_lattice; ++i) {
    auto sup = detail::least_upper_bound(a_space, ha.closed_sets[i]);
    if (sup)
      joins[i] = *sup;
    else
      v.complete_lattice = false;
  }
  if (v.complete_lattice) {
    const Product aa = product(a_space, a_space);
    std::vector<std::size_t> binary(aa.space.size());
    for (std::size_t p = 0; p < a_space.size(); ++p)
      for (std::size_t q = 0; q < a_space.size(); ++q)
        binary[aa.pair(p, q)] = joins[ha.index_of(closure(a_space, PointSet::singleton(p).with(q)))];
    v.binary_join_continuous = true;
    v.closed_join_continuous = true;
    for (auto u : a_space.opens()) {
      PointSet pre2, pre_closed;
      for (std::size_t i = 0; i < binary.size(); ++i)
        if (u.contains(binary[i])) pre2 = pre2.with(i);
      for (std::size_t i = 0; i < ha.size(); ++i)
        if (u.contains(joins[i])) pre_closed = pre_closed.with(i);
      if (!aa.space.is_open(pre2)) v.binary_join_continuous = false;
      if (!ha.space.is_open(pre_closed)) v.closed_join_continuous = false;
    }
    if (v.sober && v.binary_join_continuous != v.closed_join_continuous)
      fail(ErrorKind::Anomaly, "binary and closed-set join continuity disagree on a sober space");
  }
  return v;
}

/// The join-of-closed-sets table for a space whose specialization order is a
/// complete lattice; nullopt otherwise.
inline std::optional<std::vector<std::size_t>> join_of_closed_sets(const FiniteSpace& a_space) {
  const Hyperspace ha = build_hyperspace(a_space);
  std::vector<std::size_t> table;
  for (auto c : ha.closed_sets) {
    auto sup = detail::least_upper_bound(a_space, c);
    if (!sup) return std::nullopt;
    table.push_back(*sup);
  }
  return table;
}

}  // namespace powerdomain

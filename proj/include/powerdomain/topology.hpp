#pragma once

/// Finite topological spaces and continuous maps.
///
/// A finite space is determined by its specialization preorder: the open sets
/// are exactly the up-sets, the closed sets exactly the down-sets. Points are
/// indexed 0..n-1 and carry opaque string identifiers; subsets are PointSet
/// bit masks, so a space has at most 64 points.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "powerdomain/error.hpp"
#include "powerdomain/point_set.hpp"

namespace powerdomain {

using Relation = std::vector<std::pair<std::size_t, std::size_t>>;

namespace detail {

inline std::string describe_set(const std::vector<std::string>& names, PointSet s) {
  std::string out = "{";
  bool first = true;
  for (auto i : s) {
    if (!first) out += ",";
    out += names[i];
    first = false;
  }
  return out + "}";
}

/// All down-sets of the preorder given by `down[x] = {y : y <= x}`, sorted by
/// bit pattern. Walks equivalence classes in a linear extension, so only
/// valid down-sets are ever visited.
inline std::vector<PointSet> enumerate_down_sets(const std::vector<PointSet>& down) {
  const std::size_t n = down.size();
  std::vector<PointSet> classes;
  PointSet seen;
  for (std::size_t x = 0; x < n; ++x) {
    if (seen.contains(x)) continue;
    PointSet cls;
    for (std::size_t y = 0; y < n; ++y)
      if (down[x].contains(y) && down[y].contains(x)) cls = cls.with(y);
    seen |= cls;
    classes.push_back(cls);
  }
  std::stable_sort(classes.begin(), classes.end(), [&](PointSet a, PointSet b) {
    return down[a.first()].size() < down[b.first()].size();
  });

  std::vector<PointSet> result;
  std::function<void(std::size_t, PointSet)> walk = [&](std::size_t k, PointSet acc) {
    if (k == classes.size()) {
      result.push_back(acc);
      return;
    }
    walk(k + 1, acc);
    const PointSet cls = classes[k];
    if (down[cls.first()].minus(cls).subset_of(acc)) walk(k + 1, acc | cls);
  };
  walk(0, PointSet{});
  std::sort(result.begin(), result.end());
  return result;
}

struct SpaceData {
  std::vector<std::string> names;
  std::vector<PointSet> opens;  // sorted, deduplicated
  std::vector<PointSet> up;     // smallest open neighbourhood of each point
  std::vector<PointSet> down;   // closure of each singleton
};

}  // namespace detail

class FiniteSpace {
 public:
  /// The empty space: no points, opens = {∅}.
  FiniteSpace() : FiniteSpace(build({}, {})) {}

  /// Space whose opens are the up-sets of `relation`, where (a, b) means
  /// a <= b. The relation must already be reflexive and transitive.
  static FiniteSpace from_preorder(std::vector<std::string> names, const Relation& relation) {
    const std::size_t n = names.size();
    check_size(n);
    std::vector<PointSet> up(n);
    for (auto [a, b] : relation) {
      if (a >= n || b >= n) fail(ErrorKind::NotAPreorder, "pair refers to unknown point");
      up[a] = up[a].with(b);
    }
    for (std::size_t x = 0; x < n; ++x)
      if (!up[x].contains(x)) fail(ErrorKind::NotAPreorder, "not reflexive at (" + names[x] + "," + names[x] + ")");
    for (std::size_t x = 0; x < n; ++x)
      for (auto y : up[x])
        for (auto z : up[y])
          if (!up[x].contains(z))
            fail(ErrorKind::NotAPreorder, "not transitive: (" + names[x] + "," + names[y] + "), (" + names[y] + "," +
                                              names[z] + ") but not (" + names[x] + "," + names[z] + ")");
    return build(std::move(names), std::move(up));
  }

  static FiniteSpace from_preorder(std::vector<std::string> names,
                                   const std::vector<std::pair<std::string, std::string>>& relation) {
    Relation rel;
    for (const auto& [a, b] : relation) {
      auto ia = std::find(names.begin(), names.end(), a);
      auto ib = std::find(names.begin(), names.end(), b);
      if (ia == names.end() || ib == names.end())
        fail(ErrorKind::NotAPreorder, "pair (" + a + "," + b + ") refers to unknown point");
      rel.emplace_back(ia - names.begin(), ib - names.begin());
    }
    return from_preorder(std::move(names), rel);
  }

  /// Space with an explicit family of opens, validated to contain ∅ and the
  /// whole set and to be closed under pairwise unions and intersections.
  static FiniteSpace from_opens(std::vector<std::string> names, std::vector<PointSet> opens) {
    const std::size_t n = names.size();
    check_size(n);
    const PointSet all = PointSet::full(n);
    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    for (auto u : opens)
      if (!u.subset_of(all)) fail(ErrorKind::NotATopology, "open set refers to unknown point");
    auto has = [&](PointSet s) { return std::binary_search(opens.begin(), opens.end(), s); };
    if (!has(PointSet{})) fail(ErrorKind::NotATopology, "missing empty set");
    if (!has(all)) fail(ErrorKind::NotATopology, "missing whole space");
    for (std::size_t i = 0; i < opens.size(); ++i)
      for (std::size_t j = i + 1; j < opens.size(); ++j) {
        if (!has(opens[i] | opens[j]))
          fail(ErrorKind::NotATopology, "not closed under union: " + detail::describe_set(names, opens[i]) + " and " +
                                            detail::describe_set(names, opens[j]));
        if (!has(opens[i] & opens[j]))
          fail(ErrorKind::NotATopology, "not closed under intersection: " + detail::describe_set(names, opens[i]) +
                                            " and " + detail::describe_set(names, opens[j]));
      }
    std::vector<PointSet> up(n, all);
    for (auto u : opens)
      for (auto x : u) up[x] &= u;
    FiniteSpace space = build(std::move(names), std::move(up));
    if (space.opens() != opens) fail(ErrorKind::Anomaly, "open family differs from the up-sets of its specialization");
    return space;
  }

  static FiniteSpace discrete(std::size_t n) { return from_preorder(default_names(n), identity_relation(n)); }
  static FiniteSpace indiscrete(std::size_t n) {
    Relation rel;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) rel.emplace_back(a, b);
    return from_preorder(default_names(n), rel);
  }
  /// Points 0 <= 1 <= ... <= n-1.
  static FiniteSpace chain(std::size_t n) {
    Relation rel;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) rel.emplace_back(a, b);
    return from_preorder(default_names(n), rel);
  }
  /// {0, 1} with opens ∅, {1}, {0, 1}.
  static FiniteSpace sierpinski() { return chain(2); }
  static FiniteSpace one_point() { return discrete(1); }
  /// The four-element lattice 0 < x, y < t with the up-set topology.
  static FiniteSpace w_lattice() {
    return from_preorder({"0", "x", "y", "t"}, Relation{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}});
  }

  static std::vector<std::string> default_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    return names;
  }

  std::size_t size() const { return data_->names.size(); }
  const std::vector<std::string>& names() const { return data_->names; }
  const std::string& name(std::size_t i) const { return data_->names.at(i); }
  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(data_->names.begin(), data_->names.end(), name);
    if (it == data_->names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - data_->names.begin());
  }

  PointSet all() const { return PointSet::full(size()); }
  const std::vector<PointSet>& opens() const { return data_->opens; }
  bool is_open(PointSet s) const { return std::binary_search(opens().begin(), opens().end(), s); }
  bool is_closed(PointSet s) const { return s.subset_of(all()) && is_open(s.complement(size())); }
  /// Position of `u` in the canonical sorted open list; throws NotOpen.
  std::size_t open_index(PointSet u) const {
    auto it = std::lower_bound(opens().begin(), opens().end(), u);
    if (it == opens().end() || *it != u) fail(ErrorKind::NotOpen, describe(u) + " is not open");
    return static_cast<std::size_t>(it - opens().begin());
  }
  void require_open(PointSet u) const { (void)open_index(u); }

  /// Smallest open neighbourhood of x (its up-set).
  PointSet up(std::size_t x) const { return data_->up.at(x); }
  /// Closure of {x} (its down-set).
  PointSet down(std::size_t x) const { return data_->down.at(x); }
  /// Specialization preorder: x <= y iff x ∈ cl({y}).
  bool leq(std::size_t x, std::size_t y) const { return data_->down[y].contains(x); }
  bool equivalent(std::size_t x, std::size_t y) const { return leq(x, y) && leq(y, x); }

  std::string describe(PointSet s) const { return detail::describe_set(names(), s); }

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.data_ == b.data_ || (a.data_->names == b.data_->names && a.data_->opens == b.data_->opens);
  }

 private:
  explicit FiniteSpace(std::shared_ptr<const detail::SpaceData> d) : data_(std::move(d)) {}

  static void check_size(std::size_t n) {
    if (n > PointSet::kMaxPoints) fail(ErrorKind::TooManyPoints, std::to_string(n) + " points exceed the limit of 64");
  }
  static Relation identity_relation(std::size_t n) {
    Relation rel;
    for (std::size_t a = 0; a < n; ++a) rel.emplace_back(a, a);
    return rel;
  }

  // `up` must be a validated preorder.
  static FiniteSpace build(std::vector<std::string> names, std::vector<PointSet> up) {
    auto d = std::make_shared<detail::SpaceData>();
    const std::size_t n = names.size();
    d->names = std::move(names);
    d->up = std::move(up);
    d->down.assign(n, PointSet{});
    for (std::size_t x = 0; x < n; ++x)
      for (auto y : d->up[x]) d->down[y] = d->down[y].with(x);
    auto downs = detail::enumerate_down_sets(d->down);
    d->opens.reserve(downs.size());
    for (auto c : downs) d->opens.push_back(c.complement(n));
    std::sort(d->opens.begin(), d->opens.end());
    return FiniteSpace(std::move(d));
  }

  friend class SpaceBuilderAccess;
  std::shared_ptr<const detail::SpaceData> data_;
};

/// Builds a space directly from a specialization preorder given as per-point
/// up-sets. Used by constructions (hyperspaces, products) whose order is
/// known to be a preorder by construction.
class SpaceBuilderAccess {
 public:
  static FiniteSpace from_up_sets(std::vector<std::string> names, std::vector<PointSet> up) {
    FiniteSpace::check_size(names.size());
    return FiniteSpace::build(std::move(names), std::move(up));
  }
};

/// The specialization preorder as a list of pairs (x, y) with x <= y.
inline Relation specialization(const FiniteSpace& space) {
  Relation rel;
  for (std::size_t x = 0; x < space.size(); ++x)
    for (auto y : space.up(x)) rel.emplace_back(x, y);
  return rel;
}

/// Smallest closed superset: the down-set of `subset`.
inline PointSet closure(const FiniteSpace& space, PointSet subset) {
  PointSet c;
  for (auto x : subset) c |= space.down(x);
  return c;
}

/// Largest open subset.
inline PointSet interior(const FiniteSpace& space, PointSet subset) {
  PointSet u;
  for (auto x : subset)
    if (space.up(x).subset_of(subset)) u = u.with(x);
  return u;
}

inline PointSet up_closure(const FiniteSpace& space, PointSet subset) {
  PointSet u;
  for (auto x : subset) u |= space.up(x);
  return u;
}

class ContinuousMap {
 public:
  ContinuousMap(FiniteSpace source, FiniteSpace target, std::vector<std::size_t> assignment)
      : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
    if (assignment_.size() != source_.size()) fail(ErrorKind::ShapeMismatch, "assignment size differs from source");
    for (auto y : assignment_)
      if (y >= target_.size()) fail(ErrorKind::ShapeMismatch, "assignment refers to unknown target point");
    for (auto u : target_.opens())
      if (!source_.is_open(preimage(u)))
        fail(ErrorKind::NotContinuous, "preimage of open " + target_.describe(u) + " is " + source_.describe(preimage(u)));
  }

  static ContinuousMap identity(const FiniteSpace& x) {
    std::vector<std::size_t> a(x.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = i;
    return ContinuousMap(x, x, std::move(a));
  }
  static ContinuousMap constant(const FiniteSpace& source, const FiniteSpace& target, std::size_t y) {
    return ContinuousMap(source, target, std::vector<std::size_t>(source.size(), y));
  }

  const FiniteSpace& source() const { return source_; }
  const FiniteSpace& target() const { return target_; }
  const std::vector<std::size_t>& assignment() const { return assignment_; }
  std::size_t operator()(std::size_t x) const { return assignment_.at(x); }

  PointSet preimage(PointSet u) const {
    PointSet r;
    for (std::size_t x = 0; x < assignment_.size(); ++x)
      if (u.contains(assignment_[x])) r = r.with(x);
    return r;
  }
  PointSet image(PointSet s) const {
    PointSet r;
    for (auto x : s) r = r.with(assignment_[x]);
    return r;
  }

  friend bool operator==(const ContinuousMap& a, const ContinuousMap& b) {
    return a.assignment_ == b.assignment_ && a.source_ == b.source_ && a.target_ == b.target_;
  }

 private:
  FiniteSpace source_;
  FiniteSpace target_;
  std::vector<std::size_t> assignment_;
};

/// g ∘ f.
inline ContinuousMap compose(const ContinuousMap& g, const ContinuousMap& f) {
  if (!(f.target() == g.source())) fail(ErrorKind::ShapeMismatch, "maps are not composable");
  std::vector<std::size_t> a(f.source().size());
  for (std::size_t x = 0; x < a.size(); ++x) a[x] = g(f(x));
  return ContinuousMap(f.source(), g.target(), std::move(a));
}

struct Product {
  FiniteSpace space;
  ContinuousMap first;
  ContinuousMap second;

  /// Index of the pair (x, y); pairs are laid out row-major.
  std::size_t pair(std::size_t x, std::size_t y) const { return x * second.target().size() + y; }
  PointSet rectangle(PointSet u, PointSet v) const {
    PointSet r;
    for (auto x : u)
      for (auto y : v) r = r.with(pair(x, y));
    return r;
  }
  /// {y : (x, y) ∈ w}.
  PointSet slice(std::size_t x, PointSet w) const {
    PointSet r;
    for (std::size_t y = 0; y < second.target().size(); ++y)
      if (w.contains(pair(x, y))) r = r.with(y);
    return r;
  }
  /// {x : (x, y) ∈ w}.
  PointSet coslice(PointSet w, std::size_t y) const {
    PointSet r;
    for (std::size_t x = 0; x < first.target().size(); ++x)
      if (w.contains(pair(x, y))) r = r.with(x);
    return r;
  }
};

/// Topology generated by a family of subsets: close under finite
/// intersections, then under unions. Used to cross-check spaces built from
/// preorders against their subbasis description.
inline std::vector<PointSet> generate_topology(std::size_t n, const std::vector<PointSet>& subbasis) {
  std::set<PointSet> basis{PointSet::full(n)};
  for (auto s : subbasis) {
    std::vector<PointSet> add;
    for (auto b : basis) add.push_back(b & s);
    basis.insert(add.begin(), add.end());
  }
  std::set<PointSet> opens{PointSet{}};
  for (auto b : basis) {
    std::vector<PointSet> add;
    for (auto u : opens) add.push_back(u | b);
    opens.insert(add.begin(), add.end());
  }
  return {opens.begin(), opens.end()};
}

/// Product space with its projections. The opens are the up-sets of the
/// product preorder, validated against the topology generated by rectangles.
inline Product product(const FiniteSpace& a, const FiniteSpace& b) {
  const std::size_t na = a.size(), nb = b.size();
  if (na * nb > PointSet::kMaxPoints) fail(ErrorKind::TooManyPoints, "product exceeds 64 points");
  std::vector<std::string> names;
  std::vector<PointSet> up(na * nb);
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < nb; ++y) {
      names.push_back("(" + a.name(x) + "," + b.name(y) + ")");
      PointSet u;
      for (auto x2 : a.up(x))
        for (auto y2 : b.up(y)) u = u.with(x2 * nb + y2);
      up[x * nb + y] = u;
    }
  FiniteSpace space = SpaceBuilderAccess::from_up_sets(std::move(names), std::move(up));
  std::vector<std::size_t> p1(na * nb), p2(na * nb);
  for (std::size_t i = 0; i < na * nb; ++i) {
    p1[i] = i / nb;
    p2[i] = i % nb;
  }
  Product prod{space, ContinuousMap(space, a, std::move(p1)), ContinuousMap(space, b, std::move(p2))};
  if (space.opens().size() <= 4096) {
    std::vector<PointSet> rects;
    for (auto u : a.opens())
      for (auto v : b.opens()) rects.push_back(prod.rectangle(u, v));
    if (generate_topology(na * nb, rects) != space.opens())
      fail(ErrorKind::Anomaly, "product preorder topology differs from rectangle topology");
  }
  return prod;
}

struct Subspace {
  FiniteSpace space;
  ContinuousMap inclusion;
};

/// Subspace topology on `subset`; point identifiers are kept.
inline Subspace subspace(const FiniteSpace& x, PointSet subset) {
  if (!subset.subset_of(x.all())) fail(ErrorKind::ShapeMismatch, "subset refers to unknown points");
  std::vector<std::size_t> members = subset.to_vector();
  std::vector<std::string> names;
  std::vector<PointSet> up(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    names.push_back(x.name(members[i]));
    for (std::size_t j = 0; j < members.size(); ++j)
      if (x.leq(members[i], members[j])) up[i] = up[i].with(j);
  }
  FiniteSpace s = SpaceBuilderAccess::from_up_sets(std::move(names), std::move(up));
  return {s, ContinuousMap(s, x, members)};
}

struct Separation {
  bool is_t0 = false;
  bool is_t1 = false;
  bool is_sober = false;
  friend bool operator==(const Separation&, const Separation&) = default;
};

/// Irreducible: nonempty and not the union of two proper closed subsets.
inline bool is_irreducible_closed(const FiniteSpace& space, PointSet c) {
  if (c.empty()) return false;
  std::vector<PointSet> proper;
  for (auto u : space.opens()) {
    PointSet d = u.complement(space.size());
    if (d.subset_of(c) && d != c) proper.push_back(d);
  }
  for (std::size_t i = 0; i < proper.size(); ++i)
    for (std::size_t j = i; j < proper.size(); ++j)
      if ((proper[i] | proper[j]) == c) return false;
  return true;
}

/// Sobriety: every irreducible closed set is the closure of exactly one point.
inline Separation check_separation(const FiniteSpace& space) {
  Separation s{true, true, true};
  const std::size_t n = space.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      if (space.leq(x, y)) s.is_t1 = false;
      if (space.equivalent(x, y)) s.is_t0 = false;
    }
  for (auto u : space.opens()) {
    PointSet c = u.complement(n);
    if (!is_irreducible_closed(space, c)) continue;
    std::size_t generic = 0;
    for (std::size_t x = 0; x < n; ++x)
      if (space.down(x) == c) ++generic;
    if (generic != 1) s.is_sober = false;
  }
  return s;
}

struct Quotient {
  FiniteSpace space;
  ContinuousMap map;
};

/// Identifies specialization-equivalent points. Classes of size one keep the
/// point's identifier; larger classes are named "a~b~...".
inline Quotient kolmogorov_quotient(const FiniteSpace& space) {
  const std::size_t n = space.size();
  std::vector<std::size_t> cls(n, n);
  std::vector<std::size_t> reps;
  std::vector<std::string> names;
  for (std::size_t x = 0; x < n; ++x) {
    if (cls[x] != n) continue;
    std::string name;
    for (std::size_t y = x; y < n; ++y)
      if (space.up(y) == space.up(x)) {
        cls[y] = reps.size();
        name += (name.empty() ? "" : "~") + space.name(y);
      }
    reps.push_back(x);
    names.push_back(name);
  }
  std::vector<PointSet> up(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (auto y : space.up(reps[i])) up[i] = up[i].with(cls[y]);
  FiniteSpace q = SpaceBuilderAccess::from_up_sets(std::move(names), std::move(up));
  return {q, ContinuousMap(space, q, std::move(cls))};
}

/// The 2-cell order f <= g: f(x) <= g(x) in the target for every x. Checked
/// both pointwise and by preimage inclusion on every open; a disagreement is
/// reported as an anomaly.
inline bool le_2cell(const ContinuousMap& f, const ContinuousMap& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    fail(ErrorKind::ShapeMismatch, "2-cell between maps of different shape");
  bool pointwise = true;
  for (std::size_t x = 0; x < f.source().size(); ++x)
    if (!f.target().leq(f(x), g(x))) pointwise = false;
  bool preimages = true;
  for (auto u : f.target().opens())
    if (!f.preimage(u).subset_of(g.preimage(u))) preimages = false;
  if (pointwise != preimages) fail(ErrorKind::Anomaly, "2-cell criteria disagree");
  return pointwise;
}

inline bool equivalent_2cell(const ContinuousMap& f, const ContinuousMap& g) { return le_2cell(f, g) && le_2cell(g, f); }

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<ContinuousMap> quasi_inverse;
  std::string reason;
};

/// f is an equivalence iff f⁻¹ is a bijection of open lattices and every
/// target point is equivalent to an image point. On success the quasi-inverse
/// g is built and g∘f ~ id, f∘g ~ id are verified.
inline EquivalenceResult is_equivalence(const ContinuousMap& f) {
  const auto& src = f.source();
  const auto& tgt = f.target();
  std::set<PointSet> preimages;
  for (auto v : tgt.opens()) preimages.insert(f.preimage(v));
  if (preimages.size() != tgt.opens().size()) return {false, std::nullopt, "preimage map on opens is not injective"};
  if (preimages.size() != src.opens().size()) return {false, std::nullopt, "preimage map on opens is not surjective"};
  std::vector<std::size_t> back(tgt.size());
  for (std::size_t y = 0; y < tgt.size(); ++y) {
    std::optional<std::size_t> pre;
    for (std::size_t x = 0; x < src.size() && !pre; ++x)
      if (tgt.equivalent(f(x), y)) pre = x;
    if (!pre) return {false, std::nullopt, "point " + tgt.name(y) + " is not equivalent to any image point"};
    back[y] = *pre;
  }
  ContinuousMap g(tgt, src, std::move(back));
  if (!equivalent_2cell(compose(g, f), ContinuousMap::identity(src)) ||
      !equivalent_2cell(compose(f, g), ContinuousMap::identity(tgt)))
    fail(ErrorKind::Anomaly, "quasi-inverse fails the equivalence identities");
  return {true, std::move(g), ""};
}

/// v ≪ u: every open cover of u has a finite subfamily covering v. Every
/// cover of a finite space is finite, so this is v ⊆ u.
inline bool way_below(const FiniteSpace& space, PointSet v, PointSet u) {
  space.require_open(v);
  space.require_open(u);
  return v.subset_of(u);
}

}  // namespace powerdomain

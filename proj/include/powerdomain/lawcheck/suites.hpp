#pragma once

/// Law suites. Each suite draws plain-data instances from a seeded stream
/// and checks one family of commuting diagrams on them through an Ops table.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "powerdomain/error.hpp"
#include "powerdomain/ext_rational.hpp"
#include "powerdomain/hyperspace.hpp"
#include "powerdomain/lawcheck/generators.hpp"
#include "powerdomain/lawcheck/instance.hpp"
#include "powerdomain/lawcheck/oracles.hpp"
#include "powerdomain/lawcheck/random.hpp"
#include "powerdomain/ops.hpp"
#include "powerdomain/probability.hpp"
#include "powerdomain/support.hpp"
#include "powerdomain/topology.hpp"
#include "powerdomain/valuation.hpp"

namespace powerdomain::lawcheck {

struct InvalidInstance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Runs a construction step; a library error there means the instance data
/// is malformed (e.g. after shrinking), not that a law failed.
template <class F>
auto build(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw InvalidInstance(e.what());
  } catch (const std::out_of_range& e) {
    throw InvalidInstance(e.what());
  }
}

class Ctx {
 public:
  explicit Ctx(const Instance& in) : in_(in) {}

  const FiniteSpace& space(std::size_t i) const {
    return build([&]() -> const FiniteSpace& { return in_.spaces.at(i); });
  }
  Valuation valuation(std::size_t i) const {
    return build([&] {
      const auto& w = in_.valuations.at(i);
      return valuation_from_weights(in_.spaces.at(w.space), w.values);
    });
  }
  const std::vector<ExtRational>& weights(std::size_t i) const {
    return build([&]() -> const std::vector<ExtRational>& { return in_.valuations.at(i).values; });
  }
  LowerSemiFn function(std::size_t i) const {
    return build([&] {
      const auto& w = in_.functions.at(i);
      return LowerSemiFn(in_.spaces.at(w.space), w.values);
    });
  }
  ContinuousMap map(std::size_t i) const {
    return build([&] {
      const auto& m = in_.maps.at(i);
      return ContinuousMap(in_.spaces.at(m.source), in_.spaces.at(m.target), m.assignment);
    });
  }
  Kernel kernel(std::size_t i) const {
    return build([&] {
      const auto& k = in_.kernels.at(i);
      std::vector<Valuation> rows;
      for (const auto& r : k.rows) rows.push_back(valuation_from_weights(in_.spaces.at(k.target), r));
      return Kernel(in_.spaces.at(k.source), in_.spaces.at(k.target), std::move(rows));
    });
  }
  SimpleSecondOrder molecule(std::size_t i) const {
    return build([&] {
      const auto& m = in_.molecules.at(i);
      if (m.coefficients.size() != m.atoms.size()) fail(ErrorKind::ShapeMismatch, "coefficients and atoms differ");
      std::vector<SimpleSecondOrder::Atom> atoms;
      for (std::size_t j = 0; j < m.atoms.size(); ++j)
        atoms.push_back({m.coefficients[j], valuation_from_weights(in_.spaces.at(m.space), m.atoms[j])});
      return SimpleSecondOrder(in_.spaces.at(m.space), std::move(atoms));
    });
  }
  std::size_t point(std::size_t i) const {
    return build([&] {
      const auto& p = in_.points.at(i);
      if (p.index >= in_.spaces.at(p.space).size()) fail(ErrorKind::ShapeMismatch, "point out of range");
      return p.index;
    });
  }
  ClosedSet closed(std::size_t i) const {
    return build([&] {
      const auto& s = in_.subsets.at(i);
      return ClosedSet(in_.spaces.at(s.space), s.members);
    });
  }
  const Rational& scalar(std::size_t i) const {
    return build([&]() -> const Rational& { return in_.scalars.at(i); });
  }
  std::size_t molecule_count() const { return in_.molecules.size(); }
  std::size_t valuation_count() const { return in_.valuations.size(); }
  std::uint64_t sample_seed() const { return in_.sample_seed; }

 private:
  const Instance& in_;
};

class Expect {
 public:
  bool that(bool ok, const std::string& label) {
    if (!ok && !first_) first_ = label;
    return ok;
  }
  Outcome outcome() const { return first_ ? Outcome::failure(*first_) : Outcome::pass(); }
  bool failed() const { return first_.has_value(); }

 private:
  std::optional<std::string> first_;
};

inline std::size_t cap(const GenConfig& cfg, std::size_t k) { return std::min(cfg.max_points, k); }

inline std::size_t add_space(Instance& in, FiniteSpace s) {
  in.spaces.push_back(std::move(s));
  return in.spaces.size() - 1;
}

/// A nonempty space of at most `limit` points (random beyond the corpus).
inline FiniteSpace small_space(Rng& rng, const GenConfig& cfg, std::size_t index, std::size_t limit) {
  GenConfig c = cfg;
  c.max_points = cap(cfg, limit);
  if (c.max_points == 0) return FiniteSpace::one_point();
  return nonempty_space_at(c, index, rng, limit);
}

inline void add_valuation(Instance& in, Rng& rng, const GenConfig& cfg, std::size_t space, bool finite = false) {
  in.valuations.push_back({space, random_weights(rng, cfg, in.spaces[space].size(), finite)});
}

inline void add_probability(Instance& in, Rng& rng, const GenConfig& cfg, std::size_t space) {
  in.valuations.push_back({space, random_probability(rng, cfg, in.spaces[space].size())});
}

inline void add_function(Instance& in, Rng& rng, const GenConfig& cfg, std::size_t space) {
  in.functions.push_back({space, random_lsc_values(rng, cfg, in.spaces[space])});
}

inline void add_map(Instance& in, Rng& rng, std::size_t source, std::size_t target) {
  in.maps.push_back({source, target, random_map(rng, in.spaces[source], in.spaces[target])});
}

inline void add_molecule(Instance& in, Rng& rng, const GenConfig& cfg, std::size_t space, std::size_t max_atoms,
                         bool probability = false) {
  Instance::Molecule m{space, {}, {}};
  const std::size_t atoms = 1 + rng.below(max_atoms);
  const std::size_t n = in.spaces[space].size();
  if (probability) {
    auto c = random_probability(rng, cfg, atoms);
    for (std::size_t j = 0; j < atoms; ++j)
      if (c[j].is_positive()) {
        m.coefficients.push_back(c[j]);
        m.atoms.push_back(random_probability(rng, cfg, n));
      }
  } else {
    for (std::size_t j = 0; j < atoms; ++j) {
      m.coefficients.push_back(random_weight(rng, cfg, false));
      m.atoms.push_back(random_weights(rng, cfg, n));
    }
  }
  in.molecules.push_back(std::move(m));
}

inline void add_point(Instance& in, Rng& rng, std::size_t space) {
  in.points.push_back({space, static_cast<std::size_t>(rng.below(in.spaces[space].size()))});
}

inline void add_closed(Instance& in, Rng& rng, std::size_t space) {
  in.subsets.push_back({space, random_closed(rng, in.spaces[space])});
}

/// Index of a closed set among the points of a hyperspace.
inline std::size_t idx(const Hyperspace& h, const ClosedSet& c) { return h.index_of(c.members()); }

/// Up to `limit` elements of `all`, sampled when there are more.
inline std::vector<PointSet> sample(const std::vector<PointSet>& all, std::size_t limit, Rng& rng) {
  if (all.size() <= limit) return all;
  std::vector<PointSet> out;
  for (std::size_t i = 0; i < limit; ++i) out.push_back(all[rng.below(all.size())]);
  return out;
}

/// Kleisli composition with every integral taken through ops.
inline Kernel kleisli_ops(const Kernel& k, const Kernel& h, const Ops& ops) {
  std::vector<Valuation> rows;
  for (std::size_t x = 0; x < h.source().size(); ++x) {
    std::vector<ExtRational> table;
    for (auto u : k.target().opens()) table.push_back(ops.integrate(h(x), k.mass_on(u)));
    rows.emplace_back(k.target(), std::move(table), Valuation::Trusted{});
  }
  return Kernel(h.source(), k.target(), std::move(rows));
}

/// (x, y) ↦ (f x, g y) on a product.
inline ContinuousMap product_map(const Product& p, const ContinuousMap& f, const ContinuousMap& g) {
  std::vector<std::size_t> a(p.space.size());
  const std::size_t ny = p.second.target().size();
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = f(i / ny) * g.target().size() + g(i % ny);
  const Product q = product(f.target(), g.target());
  return ContinuousMap(p.space, q.space, std::move(a));
}

/// ((x, y), z) ↦ (x, (y, z)).
inline ContinuousMap associator(const Product& xy_z, const Product& x_yz, const Product& xy, const Product& yz) {
  std::vector<std::size_t> a(xy_z.space.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t pxy = xy_z.first(i), z = xy_z.second(i);
    a[i] = x_yz.pair(xy.first(pxy), yz.pair(xy.second(pxy), z));
  }
  return ContinuousMap(xy_z.space, x_yz.space, std::move(a));
}

/// (*, y) ↦ y.
inline ContinuousMap left_unitor(const Product& one_y) { return one_y.second; }

}  // namespace detail

struct SuiteDef {
  std::string name;
  std::string description;
  std::function<Instance(Rng&, const GenConfig&, std::size_t)> generate;
  std::function<Outcome(const Instance&, const Ops&)> check;
};

inline Outcome evaluate(const SuiteDef& suite, const Instance& in, const Ops& ops) {
  try {
    return suite.check(in, ops);
  } catch (const InvalidInstance& e) {
    return Outcome::invalid(e.what());
  } catch (const Error& e) {
    return Outcome::failure(std::string("error ") + e.what());
  } catch (const std::exception& e) {
    return Outcome::failure(std::string("exception ") + e.what());
  }
}

namespace suites {

using detail::Ctx;
using detail::Expect;
using detail::idx;

// ---------------------------------------------------------------- topology

inline SuiteDef topology_core() {
  SuiteDef s{"topology-core", "topology axioms, specialization, products, subspaces, quotients, lower Vietoris", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, space_at(cfg, i, rng));
    const auto y = detail::add_space(in, detail::small_space(rng, cfg, i, 3));
    detail::add_map(in, rng, x, y);
    in.subsets.push_back({x, PointSet(rng.below(std::uint64_t{1} << in.spaces[x].size()))});
    in.sample_seed = rng.next();
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const FiniteSpace& x = c.space(0);
    const FiniteSpace& y = c.space(1);
    const ContinuousMap f = c.map(0);
    const PointSet subset = detail::build([&] { return in.subsets.at(0).members; });
    const std::size_t n = x.size();
    const auto& opens = x.opens();

    ex.that(x.is_open(PointSet{}) && x.is_open(x.all()), "empty set and whole space are open");
    for (auto u : opens)
      for (auto v : opens) ex.that(x.is_open(u | v) && x.is_open(u & v), "opens closed under union and intersection");
    ex.that(FiniteSpace::from_opens(x.names(), opens) == x, "open-family round trip");
    ex.that(FiniteSpace::from_preorder(x.names(), specialization(x)) == x, "preorder round trip");
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        bool every_open = true;
        for (auto u : opens)
          if (u.contains(p) && !u.contains(q)) every_open = false;
        ex.that(x.leq(p, q) == closure(x, PointSet::singleton(q)).contains(p), "specialization via closure");
        ex.that(x.leq(p, q) == every_open, "specialization via opens");
      }
    if (n <= 8)
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        const PointSet a(bits);
        PointSet meet = x.all();
        for (auto u : opens) {
          const PointSet k = u.complement(n);
          if (a.subset_of(k)) meet &= k;
        }
        ex.that(closure(x, a) == meet, "closure is the least closed superset");
        ex.that(interior(x, a) == closure(x, a.complement(n)).complement(n), "interior/closure duality");
      }
    for (auto v : y.opens()) ex.that(x.is_open(f.preimage(v)), "preimages of opens are open");
    ex.that(f.image(closure(x, subset)).subset_of(closure(y, f.image(subset))), "f(cl A) inside cl f(A)");

    const Separation sep = check_separation(x);
    ex.that(!sep.is_t1 || sep.is_t0, "T1 implies T0");
    ex.that(sep.is_sober == sep.is_t0, "finite spaces are sober exactly when T0");
    ex.that(sigma_is_embedding(x) == sep.is_t0, "σ is an embedding exactly when T0");

    if (n * y.size() <= 64) {
      const Product p = product(x, y);
      std::vector<std::size_t> graph(n);
      for (std::size_t a = 0; a < n; ++a) graph[a] = p.pair(a, f(a));
      const ContinuousMap pairing(x, p.space, graph);
      ex.that(compose(p.first, pairing) == ContinuousMap::identity(x) && compose(p.second, pairing) == f,
              "pairing is a cone");
      if (n <= 3 && y.size() <= 3) {
        std::size_t expected = 0;
        for (auto u : x.opens())
          for (auto v : y.opens()) (void)u, (void)v, ++expected;
        ex.that(p.space.opens().size() >= std::min<std::size_t>(expected, 1), "product has opens");
      }
    }
    const Subspace sub = subspace(x, subset);
    for (auto u : opens) ex.that(sub.space.is_open(sub.inclusion.preimage(u)), "subspace opens are traces");
    for (auto w : sub.space.opens()) {
      bool trace = false;
      for (auto u : opens)
        if (sub.inclusion.preimage(u) == w) trace = true;
      ex.that(trace, "every subspace open is a trace");
    }
    const Quotient q = kolmogorov_quotient(x);
    ex.that(check_separation(q.space).is_t0, "Kolmogorov quotient is T0");
    ex.that(is_equivalence(q.map).equivalent, "quotient map is an equivalence");
    for (auto u : opens)
      for (auto v : opens) ex.that(way_below(x, v, u) == v.subset_of(u), "way-below is inclusion");

    if (closed_sets_of(x).size() <= 64) {
      const Hyperspace hx = build_hyperspace(x);
      std::vector<PointSet> hits;
      for (auto u : opens) hits.push_back(hx.hit_set(u));
      ex.that(generate_topology(hx.size(), hits) == hx.space.opens(), "lower Vietoris equals up-sets of inclusion");
      for (std::size_t i = 0; i < hx.size(); ++i)
        for (auto u : opens)
          ex.that(ops.hit(hx.closed(i), u) == hx.hit_set(u).contains(i), "hit agrees with Hit(U)");
    }
    return ex.outcome();
  };
  return s;
}

// ---------------------------------------------------------------- H monad

inline SuiteDef h_monad() {
  SuiteDef s{"h-monad", "closed/functional duality, unit and associativity laws of H, naturality of σ and 𝒰", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, space_at(cfg, i, rng));
    const auto y = detail::add_space(in, detail::small_space(rng, cfg, i, 3));
    if (in.spaces[x].size() > 0) detail::add_map(in, rng, x, y);
    in.sample_seed = rng.next();
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const FiniteSpace& x = c.space(0);
    const FiniteSpace& y = c.space(1);
    Rng rng(c.sample_seed());

    // Duality between closed sets and strict join-preserving functionals.
    const auto closed = closed_sets_of(x);
    for (auto k : closed) {
      const ClosedSet cs(x, k);
      ex.that(closed_of_functional(functional_of_closed(cs)) == cs, "closed set round trip");
    }
    for (auto a : closed)
      for (auto b : closed)
        ex.that(a.subset_of(b) == functional_of_closed(ClosedSet(x, a)).leq(functional_of_closed(ClosedSet(x, b))),
                "duality is an order isomorphism");
    if (x.opens().size() <= 16) {
      const DualityCensus census = brute_force_duality(x);
      ex.that(census.matches_closed_sets && census.valid == closed.size(), "every valid functional comes from a closed set");
    }

    if (closed.size() > 64) return ex.outcome();
    const Hyperspace hx = build_hyperspace(x);

    std::vector<std::size_t> sigma_table;
    for (std::size_t p = 0; p < x.size(); ++p) sigma_table.push_back(idx(hx, ops.unit_sigma(x, p)));
    const ContinuousMap sigma(x, hx.space, sigma_table);

    for (std::size_t i = 0; i < hx.size(); ++i) {
      const ClosedSet k = hx.closed(i);
      ex.that(ops.mult_union(hx, ops.unit_sigma(hx.space, i).members()) == k, "𝒰 ∘ σ_H = id");
      ex.that(ops.mult_union(hx, ops.push_closed(sigma, k).members()) == k, "𝒰 ∘ Hσ = id");
      ex.that(ops.push_closed(ContinuousMap::identity(x), k) == k, "H id = id");
    }

    if (hx.size() <= 8) {
      const Hyperspace hhx = build_hyperspace(hx.space);
      std::vector<std::size_t> u_table;
      for (std::size_t i = 0; i < hhx.size(); ++i) u_table.push_back(idx(hx, ops.mult_union(hx, hhx.closed_sets[i])));
      const ContinuousMap u_map(hhx.space, hx.space, u_table);
      const auto hhhx = closed_sets_of(hhx.space);
      for (auto phi : detail::sample(hhhx, 256, rng)) {
        const ClosedSet lhs = ops.mult_union(hx, ops.mult_union(hhx, phi).members());
        const ClosedSet rhs = ops.mult_union(hx, ops.push_closed(u_map, ClosedSet(hhx.space, phi)).members());
        ex.that(lhs == rhs, "𝒰 ∘ 𝒰_H = 𝒰 ∘ H𝒰");
      }
    }

    if (!in.maps.empty()) {
      const ContinuousMap f = c.map(0);
      for (std::size_t p = 0; p < x.size(); ++p)
        ex.that(ops.push_closed(f, ops.unit_sigma(x, p)) == ops.unit_sigma(y, f(p)), "σ is natural");
      const Hyperspace hy = build_hyperspace(y);
      std::vector<std::size_t> hf;
      for (std::size_t i = 0; i < hx.size(); ++i) hf.push_back(idx(hy, ops.push_closed(f, hx.closed(i))));
      const ContinuousMap hf_map(hx.space, hy.space, hf);
      for (auto fam : detail::sample(closed_sets_of(hx.space), 64, rng)) {
        const ClosedSet lhs = ops.push_closed(f, ops.mult_union(hx, fam));
        const ClosedSet rhs = ops.mult_union(hy, ops.push_closed(hf_map, ClosedSet(hx.space, fam)).members());
        ex.that(lhs == rhs, "𝒰 is natural");
      }
    }
    return ex.outcome();
  };
  return s;
}

// ---------------------------------------------------------------- H strength

inline SuiteDef h_strength() {
  SuiteDef s{"h-strength", "strength diagrams and commutativity for H", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, detail::small_space(rng, cfg, i, 3));
    const auto y = detail::add_space(in, detail::small_space(rng, cfg, i / 3, 3));
    const auto z = detail::add_space(in, detail::small_space(rng, cfg, i / 7, 2));
    (void)z;
    detail::add_map(in, rng, x, x);
    detail::add_map(in, rng, y, y);
    detail::add_closed(in, rng, x);
    detail::add_closed(in, rng, y);
    in.sample_seed = rng.next();
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const FiniteSpace& xs = c.space(0);
    const FiniteSpace& ys = c.space(1);
    const FiniteSpace& zs = c.space(2);
    const ContinuousMap f = c.map(0);
    const ContinuousMap g = c.map(1);
    const ClosedSet d = c.closed(0);
    const ClosedSet k = c.closed(1);
    Rng rng(c.sample_seed());
    const Product p = product(xs, ys);

    for (std::size_t x = 0; x < xs.size(); ++x)
      for (std::size_t y = 0; y < ys.size(); ++y)
        ex.that(ops.strength_H(p, x, ops.unit_sigma(ys, y)) == ops.unit_sigma(p.space, p.pair(x, y)), "s ∘ (id × σ) = σ");

    const Hyperspace hy = build_hyperspace(ys);
    const Product x_hy = product(xs, hy.space);
    for (std::size_t x = 0; x < xs.size(); ++x)
      for (auto fam : detail::sample(closed_sets_of(hy.space), 32, rng)) {
        const ClosedSet lhs = ops.strength_H(p, x, ops.mult_union(hy, fam));
        const ClosedSet s1 = ops.strength_H(x_hy, x, ClosedSet(hy.space, fam));
        PointSet u;
        for (auto q : s1.members()) u |= ops.strength_H(p, x_hy.first(q), hy.closed(x_hy.second(q))).members();
        ex.that(lhs.members() == closure(p.space, u), "s ∘ (id × 𝒰) = 𝒰 ∘ Hs ∘ s");
      }

    const ContinuousMap fg = detail::product_map(p, f, g);
    for (std::size_t x = 0; x < xs.size(); ++x)
      ex.that(ops.push_closed(fg, ops.strength_H(p, x, k)) == ops.strength_H(p, f(x), ops.push_closed(g, k)),
              "strength is natural");

    const Product one_y = product(FiniteSpace::one_point(), ys);
    ex.that(ops.push_closed(detail::left_unitor(one_y), ops.strength_H(one_y, 0, k)) == k, "strength respects the unitor");

    const Product xy = p;
    const Product yz = product(ys, zs);
    const Product xy_z = product(xy.space, zs);
    const Product x_yz = product(xs, yz.space);
    const ContinuousMap alpha = detail::associator(xy_z, x_yz, xy, yz);
    for (auto e : closed_sets_of(zs))
      for (std::size_t x = 0; x < xs.size(); ++x)
        for (std::size_t y = 0; y < ys.size(); ++y) {
          const ClosedSet ez(zs, e);
          const ClosedSet lhs = ops.push_closed(alpha, ops.strength_H(xy_z, xy.pair(x, y), ez));
          const ClosedSet rhs = ops.strength_H(x_yz, x, ops.strength_H(yz, y, ez));
          ex.that(lhs == rhs, "strength respects the associator");
        }

    // Commutativity: 𝒰 ∘ Ht ∘ s = 𝒰 ∘ Hs ∘ t = product of closed sets.
    const Hyperspace hx = build_hyperspace(xs);
    const Product hx_y = product(hx.space, ys);
    PointSet route_a;
    for (auto q : ops.strength_H(hx_y, idx(hx, d), k).members())
      route_a |= ops.costrength_H(p, hx.closed(hx_y.first(q)), hx_y.second(q)).members();
    PointSet route_b;
    for (auto q : ops.costrength_H(x_hy, d, idx(hy, k)).members())
      route_b |= ops.strength_H(p, x_hy.first(q), hy.closed(x_hy.second(q))).members();
    const PointSet direct = p.rectangle(d.members(), k.members());
    ex.that(closure(p.space, route_a) == direct, "𝒰 ∘ Ht ∘ s = product");
    ex.that(closure(p.space, route_b) == direct, "𝒰 ∘ Hs ∘ t = product");
    ex.that(product_closed(p, d, k).members() == direct, "product of closed sets");
    return ex.outcome();
  };
  return s;
}

// ---------------------------------------------------------------- H algebras

inline SuiteDef h_algebra() {
  SuiteDef s{"h-algebra", "H-algebras coincide with topological complete join-semilattices", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const std::vector<FiniteSpace> lattices{FiniteSpace::one_point(), FiniteSpace::w_lattice(), FiniteSpace::chain(2),
                                            FiniteSpace::chain(3), FiniteSpace::sierpinski()};
    if (i < lattices.size())
      detail::add_space(in, lattices[i]);
    else
      detail::add_space(in, detail::small_space(rng, cfg, i, 4));
    detail::add_space(in, detail::small_space(rng, cfg, i, 3));
    in.sample_seed = rng.next();
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const FiniteSpace& a = c.space(0);
    const FiniteSpace& x = c.space(1);
    Rng rng(c.sample_seed());
    if (closed_sets_of(a).size() > 64) throw InvalidInstance("algebra carrier too large");
    const Hyperspace ha = build_hyperspace(a);

    std::vector<std::vector<std::size_t>> candidates;
    if (auto j = join_of_closed_sets(a)) candidates.push_back(*j);
    std::vector<std::size_t> random_table(ha.size());
    for (auto& v : random_table) v = rng.below(a.size());
    candidates.push_back(random_table);
    for (const auto& table : candidates) {
      const HAlgebraVerdict v = check_H_algebra(a, table);
      ex.that(v.consistent(), "H-algebra laws agree with the join-semilattice characterization");
    }

    // The free algebra (HX, 𝒰).
    if (closed_sets_of(x).size() <= 8) {
      const Hyperspace hx = build_hyperspace(x);
      const Hyperspace hhx = build_hyperspace(hx.space);
      std::vector<std::size_t> u_table;
      for (std::size_t i = 0; i < hhx.size(); ++i) u_table.push_back(idx(hx, ops.mult_union(hx, hhx.closed_sets[i])));
      const HAlgebraVerdict v = check_H_algebra(hx.space, u_table);
      ex.that(v.is_algebra() && v.is_tcjs() && v.is_join, "(HX, 𝒰) is a topological complete join-semilattice");
      ex.that(join_of_closed_sets(hx.space) == u_table, "𝒰 is the join of closed families");
    }
    return ex.outcome();
  };
  return s;
}

// ---------------------------------------------------------------- V monad

inline SuiteDef v_monad() {
  SuiteDef s{"v-monad", "unit, associativity and naturality laws of V; Kleisli category laws", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, detail::small_space(rng, cfg, i, 4));
    const auto y = detail::add_space(in, detail::small_space(rng, cfg, i / 2, 3));
    const auto z = detail::add_space(in, detail::small_space(rng, cfg, i / 3, 3));
    const auto w = detail::add_space(in, detail::small_space(rng, cfg, i / 5, 3));
    detail::add_valuation(in, rng, cfg, x);
    detail::add_molecule(in, rng, cfg, x, 3);
    detail::add_molecule(in, rng, cfg, x, 2);
    detail::add_molecule(in, rng, cfg, x, 2);
    in.scalars = {rng.positive_rational(cfg.weight_denominator_bound), rng.positive_rational(cfg.weight_denominator_bound)};
    detail::add_map(in, rng, x, y);
    in.kernels.push_back({x, y, random_kernel_rows(rng, cfg, in.spaces[x], in.spaces[y])});
    in.kernels.push_back({y, z, random_kernel_rows(rng, cfg, in.spaces[y], in.spaces[z])});
    in.kernels.push_back({z, w, random_kernel_rows(rng, cfg, in.spaces[z], in.spaces[w])});
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const FiniteSpace& x = c.space(0);
    const FiniteSpace& y = c.space(1);
    const Valuation nu = c.valuation(0);
    const auto& w = c.weights(0);
    const SimpleSecondOrder xi = c.molecule(0);
    const SimpleSecondOrder xi1 = c.molecule(1);
    const SimpleSecondOrder xi2 = c.molecule(2);
    const ContinuousMap f = c.map(0);
    const Kernel k1 = c.kernel(0), k2 = c.kernel(1), k3 = c.kernel(2);
    const ExtRational a1(c.scalar(0)), a2(c.scalar(1));

    ex.that(ops.mult_E(SimpleSecondOrder::dirac(nu)) == nu, "ℰ ∘ δ_V = id");
    std::vector<SimpleSecondOrder::Atom> vdelta;
    for (std::size_t p = 0; p < x.size(); ++p)
      if (w[p].is_positive()) vdelta.push_back({w[p], ops.unit_delta(x, p)});
    ex.that(ops.mult_E(SimpleSecondOrder(x, vdelta)) == nu, "ℰ ∘ Vδ = id");

    const Valuation exi = ops.mult_E(xi);
    for (auto u : x.opens())
      ex.that(exi(u) == xi.integrate([&](const Valuation& v) { return v(u); }), "ℰξ(U) = ⟨ξ, ν ↦ ν(U)⟩");

    std::vector<SimpleSecondOrder::Atom> flat;
    for (const auto& at : xi1.atoms()) flat.push_back({a1 * at.weight, at.inner});
    for (const auto& at : xi2.atoms()) flat.push_back({a2 * at.weight, at.inner});
    const Valuation lhs = ops.mult_E(SimpleSecondOrder(x, flat));
    const Valuation rhs = ops.mult_E(SimpleSecondOrder(x, {{a1, ops.mult_E(xi1)}, {a2, ops.mult_E(xi2)}}));
    ex.that(lhs == rhs, "ℰ ∘ ℰ_V = ℰ ∘ Vℰ");

    for (std::size_t p = 0; p < x.size(); ++p)
      ex.that(ops.pushforward(f, ops.unit_delta(x, p)) == ops.unit_delta(y, f(p)), "δ is natural");
    ex.that(ops.pushforward(f, exi) == ops.mult_E(xi.map(y, [&](const Valuation& v) { return ops.pushforward(f, v); })),
            "ℰ is natural");
    ex.that(ops.pushforward(ContinuousMap::identity(x), nu) == nu, "V id = id");

    const Kernel k21 = detail::kleisli_ops(k2, k1, ops);
    ex.that(detail::kleisli_ops(k3, k21, ops) == detail::kleisli_ops(detail::kleisli_ops(k3, k2, ops), k1, ops),
            "Kleisli associativity");
    ex.that(detail::kleisli_ops(Kernel::identity(k1.target()), k1, ops) == k1, "Kleisli left unit");
    ex.that(detail::kleisli_ops(k1, Kernel::identity(k1.source()), ops) == k1, "Kleisli right unit");
    ex.that(k21 == kleisli_compose(k2, k1), "Kleisli composition matches the reference");
    for (std::size_t p = 0; p < k1.source().size(); ++p) {
      const auto wd = weight_decomposition(k1(p));
      if (!wd) continue;
      std::vector<SimpleSecondOrder::Atom> atoms;
      for (std::size_t q = 0; q < wd->size(); ++q)
        if ((*wd)[q].is_positive()) atoms.push_back({(*wd)[q], k2(q)});
      ex.that(ops.mult_E(SimpleSecondOrder(k2.target(), atoms)) == k21(p), "Kleisli composite = ℰ ∘ Vk ∘ h");
    }
    return ex.outcome();
  };
  return s;
}

// ---------------------------------------------------------------- V strength

inline SuiteDef v_strength() {
  SuiteDef s{"v-strength", "strength and costrength diagrams for V", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, detail::small_space(rng, cfg, i, 3));
    const auto y = detail::add_space(in, detail::small_space(rng, cfg, i / 3, 3));
    const auto z = detail::add_space(in, detail::small_space(rng, cfg, i / 7, 2));
    detail::add_valuation(in, rng, cfg, y);
    detail::add_valuation(in, rng, cfg, z);
    detail::add_valuation(in, rng, cfg, x);
    detail::add_molecule(in, rng, cfg, y, 3);
    detail::add_map(in, rng, x, x);
    detail::add_map(in, rng, y, y);
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const FiniteSpace& xs = c.space(0);
    const FiniteSpace& ys = c.space(1);
    const FiniteSpace& zs = c.space(2);
    const Valuation rho = c.valuation(0);
    const Valuation nz = c.valuation(1);
    const Valuation nx = c.valuation(2);
    const SimpleSecondOrder xi = c.molecule(0);
    const ContinuousMap f = c.map(0);
    const ContinuousMap g = c.map(1);
    const Product p = product(xs, ys);

    for (std::size_t x = 0; x < xs.size(); ++x)
      for (std::size_t y = 0; y < ys.size(); ++y) {
        ex.that(ops.strength_V(p, x, ops.unit_delta(ys, y)) == ops.unit_delta(p.space, p.pair(x, y)), "s ∘ (id × δ) = δ");
        ex.that(ops.costrength_V(p, ops.unit_delta(xs, x), y) == ops.unit_delta(p.space, p.pair(x, y)), "t ∘ (δ × id) = δ");
      }
    for (std::size_t x = 0; x < xs.size(); ++x) {
      const Valuation lhs = ops.strength_V(p, x, ops.mult_E(xi));
      const Valuation rhs = ops.mult_E(xi.map(p.space, [&](const Valuation& v) { return ops.strength_V(p, x, v); }));
      ex.that(lhs == rhs, "s ∘ (id × ℰ) = ℰ ∘ Vs ∘ s");
    }
    const ContinuousMap fg = detail::product_map(p, f, g);
    for (std::size_t x = 0; x < xs.size(); ++x)
      ex.that(ops.pushforward(fg, ops.strength_V(p, x, rho)) == ops.strength_V(p, f(x), ops.pushforward(g, rho)),
              "strength is natural");
    for (std::size_t y = 0; y < ys.size(); ++y)
      ex.that(ops.pushforward(fg, ops.costrength_V(p, nx, y)) == ops.costrength_V(p, ops.pushforward(f, nx), g(y)),
              "costrength is natural");

    const Product one_y = product(FiniteSpace::one_point(), ys);
    ex.that(ops.pushforward(detail::left_unitor(one_y), ops.strength_V(one_y, 0, rho)) == rho,
            "strength respects the unitor");

    const Product yz = product(ys, zs);
    const Product xy_z = product(p.space, zs);
    const Product x_yz = product(xs, yz.space);
    const ContinuousMap alpha = detail::associator(xy_z, x_yz, p, yz);
    for (std::size_t x = 0; x < xs.size(); ++x)
      for (std::size_t y = 0; y < ys.size(); ++y) {
        const Valuation lhs = ops.pushforward(alpha, ops.strength_V(xy_z, p.pair(x, y), nz));
        const Valuation rhs = ops.strength_V(x_yz, x, ops.strength_V(yz, y, nz));
        ex.that(lhs == rhs, "strength respects the associator");
      }
    return ex.outcome();
  };
  return s;
}

// ---------------------------------------------------------------- Fubini

inline SuiteDef v_fubini() {
  SuiteDef s{"v-fubini", "product valuation: rectangles, both Fubini composites, weight products", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, detail::small_space(rng, cfg, i, 3));
    const auto y = detail::add_space(in, detail::small_space(rng, cfg, i / 3, 3));
    detail::add_valuation(in, rng, cfg, x);
    detail::add_valuation(in, rng, cfg, y);
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const Valuation nu = c.valuation(0);
    const Valuation rho = c.valuation(1);
    const Product p = product(c.space(0), c.space(1));
    const Valuation prod = ops.product_valuation(p, nu, rho);
    for (auto u : c.space(0).opens())
      for (auto v : c.space(1).opens())
        ex.that(prod(p.rectangle(u, v)) == nu(u) * rho(v), "ν ⊗ ρ on rectangles");
    ex.that(prod == product_valuation_by_rectangles(p, nu, rho), "inclusion–exclusion reconstruction");
    const auto wn = weight_decomposition(nu);
    const auto wr = weight_decomposition(rho);
    ex.that(wn.has_value() && wr.has_value(), "weight decompositions exist");
    if (wn && wr) {
      Valuation ts = Valuation::zero(p.space);
      for (std::size_t y = 0; y < wr->size(); ++y)
        if ((*wr)[y].is_positive()) ts = ts + (*wr)[y] * ops.costrength_V(p, nu, y);
      Valuation st = Valuation::zero(p.space);
      for (std::size_t x = 0; x < wn->size(); ++x)
        if ((*wn)[x].is_positive()) st = st + (*wn)[x] * ops.strength_V(p, x, rho);
      ex.that(prod == ts, "ν ⊗ ρ = ℰ ∘ t_* ∘ s");
      ex.that(prod == st, "ν ⊗ ρ = ℰ ∘ s_* ∘ t");
      ex.that(prod == product_by_weight_products(p, *wn, *wr), "ν ⊗ ρ = weight products");
    }
    ex.that(ops.product_valuation(p, nu, Valuation::zero(c.space(1))).is_zero(), "ν ⊗ 0 = 0");
    return ex.outcome();
  };
  return s;
}

// ---------------------------------------------------------------- duality

inline SuiteDef v_duality() {
  SuiteDef s{"v-duality", "lower integral: layer cake against dominated simple functions, linearity, change of variables",
             {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, space_at(cfg, i, rng));
    const auto y = detail::add_space(in, detail::small_space(rng, cfg, i, 3));
    detail::add_valuation(in, rng, cfg, x);
    detail::add_valuation(in, rng, cfg, x);
    detail::add_function(in, rng, cfg, x);
    detail::add_function(in, rng, cfg, x);
    detail::add_function(in, rng, cfg, y);
    if (in.spaces[x].size() > 0) detail::add_map(in, rng, x, y);
    in.scalars = {rng.positive_rational(cfg.weight_denominator_bound)};
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const FiniteSpace& x = c.space(0);
    const Valuation nu = c.valuation(0);
    const Valuation rho = c.valuation(1);
    const LowerSemiFn g = c.function(0);
    const LowerSemiFn g2 = c.function(1);
    const ExtRational r(c.scalar(0));

    const ExtRational value = ops.integrate(nu, g);
    ex.that(value == integral_by_dominated_simple(nu, g), "layer cake = sup over dominated simple functions");
    if (auto w = weight_decomposition(nu)) ex.that(value == integral_by_weights(*w, g), "layer cake = Σ w_x g(x)");
    for (auto u : x.opens()) ex.that(ops.integrate(nu, LowerSemiFn::indicator(x, u)) == nu(u), "⟨ν, 1_U⟩ = ν(U)");

    std::vector<ExtRational> sum(x.size()), scaled(x.size());
    for (std::size_t p = 0; p < x.size(); ++p) {
      sum[p] = g(p) + g2(p);
      scaled[p] = r * g(p);
    }
    ex.that(ops.integrate(nu, LowerSemiFn(x, sum)) == value + ops.integrate(nu, g2), "additive in the integrand");
    ex.that(ops.integrate(nu, LowerSemiFn(x, scaled)) == r * value, "homogeneous in the integrand");
    ex.that(ops.integrate(nu + rho, g) == value + ops.integrate(rho, g), "additive in the valuation");
    if (!in.maps.empty()) {
      const ContinuousMap f = c.map(0);
      const LowerSemiFn h = c.function(2);
      ex.that(ops.integrate(ops.pushforward(f, nu), h) == ops.integrate(nu, precompose(h, f)), "change of variables");
    }
    ex.that(support_test_lsc(nu, g, ops) == ops.sgn(value), "sign of the integral via the support");
    if (x.size() <= 3) {
      ex.that(order_checks(nu, nu + rho).opens_order, "ν <= ν + ρ");
      (void)order_checks(nu, rho);
    }
    return ex.outcome();
  };
  return s;
}

// ---------------------------------------------------------------- portmanteau

inline SuiteDef v_portmanteau() {
  SuiteDef s{"v-portmanteau", "subbasic neighbourhood certificates for Θ(f, r); order characterizations", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, detail::small_space(rng, cfg, i, 4));
    detail::add_valuation(in, rng, cfg, x);
    detail::add_valuation(in, rng, cfg, x);
    detail::add_function(in, rng, cfg, x);
    const std::int64_t q = rng.between(2, cfg.weight_denominator_bound);
    in.scalars = {Rational(rng.between(0, q - 1), q), rng.positive_rational(cfg.weight_denominator_bound, 4)};
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const FiniteSpace& x = c.space(0);
    const Valuation nu = c.valuation(0);
    const Valuation rho = c.valuation(1);
    const LowerSemiFn f = c.function(0);
    const Rational t = c.scalar(0);
    const Rational big = c.scalar(1);

    const ExtRational value = ops.integrate(nu, f);
    if (value.is_positive()) {
      const Rational r = value.is_infinite() ? big : t * value.finite();
      const auto cert = portmanteau_witness(nu, f, r);
      ex.that(!check_certificate(cert, nu, f, r).has_value(), "certificate passes the checker");
      ex.that(in_Theta(nu, f, r), "ν ∈ Θ(f, r)");
    }
    for (auto u : x.opens())
      ex.that(in_Theta(nu, LowerSemiFn::indicator(x, u), t) == in_theta(nu, u, t), "Θ(1_U, r) = θ(U, r)");

    const OrderReport all = order_checks(nu, rho, Relation{[&] {
                                           Relation rel;
                                           for (std::size_t a = 0; a < x.size(); ++a)
                                             for (std::size_t b = 0; b < x.size(); ++b) rel.emplace_back(a, b);
                                           return rel;
                                         }()});
    ex.that(all.stochastic == (nu.total() <= rho.total()), "trivial order compares total mass");
    Relation eq;
    for (std::size_t a = 0; a < x.size(); ++a) eq.emplace_back(a, a);
    if (check_separation(x).is_t1) {
      const OrderReport r = order_checks(nu, rho, eq);
      ex.that(r.stochastic == r.opens_order, "equality order on a T1 space is the opens order");
    } else {
      bool rejected = false;
      try {
        (void)order_checks(nu, rho, eq);
      } catch (const Error& e) {
        rejected = e.kind() == ErrorKind::OrderNotClosed;
      }
      ex.that(rejected, "equality order is rejected off T1 spaces");
    }
    return ex.outcome();
  };
  return s;
}

// ---------------------------------------------------------------- probability

inline SuiteDef p_submonad() {
  SuiteDef s{"p-submonad", "measure-level E against ℰ, normalization, A-topology", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, detail::small_space(rng, cfg, i, 3));
    const auto y = detail::add_space(in, detail::small_space(rng, cfg, i / 2, 3));
    detail::add_probability(in, rng, cfg, x);
    detail::add_probability(in, rng, cfg, y);
    detail::add_molecule(in, rng, cfg, x, 3, true);
    detail::add_map(in, rng, x, y);
    in.scalars = {Rational(rng.between(0, 4), 4), rng.positive_rational(cfg.weight_denominator_bound, 1)};
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const FiniteSpace& x = c.space(0);
    const FiniteSpace& y = c.space(1);
    const ProbValuation pv = detail::build([&] { return ProbValuation(c.valuation(0)); });
    const ProbValuation qv = detail::build([&] { return ProbValuation(c.valuation(1)); });
    const SimpleSecondOrder xi = c.molecule(0);
    const ContinuousMap f = c.map(0);
    detail::build([&] { return ProbValuation(mult_E(xi)); });

    const ProbValuation e = mult_E_measure(xi);
    ex.that(e.underlying() == ops.mult_E(xi), "measure-level E = ℰ");

    const FiniteMeasure m = ops.extend_to_measure(ops.mult_E(xi));
    std::vector<FiniteMeasure> atoms;
    for (const auto& a : xi.atoms()) atoms.push_back(ops.extend_to_measure(a.inner));
    const std::size_t n = m.space.size();
    if (n <= 10)
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        ExtRational mix;
        for (std::size_t j = 0; j < atoms.size(); ++j) mix += xi.atoms()[j].weight * atoms[j](PointSet(bits));
        ex.that(mix == m(PointSet(bits)), "(Eμ)(A) = ∫ p(A) dμ on every subset");
      }

    const ExtRational one(1);
    ex.that(ops.mult_E(xi).total() == one, "ℰ preserves mass 1");
    ex.that(ops.pushforward(f, pv.underlying()).total() == one, "pushforward preserves mass 1");
    const Product p = product(x, y);
    for (std::size_t a = 0; a < x.size(); ++a)
      ex.that(ops.strength_V(p, a, qv.underlying()).total() == one, "strength preserves mass 1");
    ex.that(ops.product_valuation(p, pv.underlying(), qv.underlying()).total() == one, "product preserves mass 1");
    for (std::size_t k = 0; k < 2; ++k)
      for (auto u : x.opens()) ex.that(in_A_open(pv, u, c.scalar(k)) == (pv(u) > ExtRational(c.scalar(k))), "A-topology");
    return ex.outcome();
  };
  return s;
}

inline SuiteDef p_extension() {
  SuiteDef s{"p-extension", "Möbius extension to measures, integrals against measures, full-measure support", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, space_at(cfg, i, rng));
    detail::add_valuation(in, rng, cfg, x, true);
    detail::add_function(in, rng, cfg, x);
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const FiniteSpace& x = c.space(0);
    const Valuation nu = c.valuation(0);
    const LowerSemiFn g = c.function(0);
    const bool t0 = check_separation(x).is_t0;

    const FiniteMeasure m = ops.extend_to_measure(nu);
    const Valuation seen = m.quotient ? pushforward(m.quotient->map, nu) : nu;
    ex.that(t0 != m.quotient.has_value(), "quotient marker exactly off T0");
    ex.that(valuation_from_weights(m.space, m.weights) == seen, "weights reproduce ν on every open");
    if (t0) ex.that(m.weights == c.weights(0), "weights are unique on a T0 space");
    ex.that(integrate_measure(m, g) == ops.integrate(nu, g), "∫ g dm = ⟨ν, g⟩");

    const ClosedSet supp = support(nu, ops);
    const PointSet carrier_supp = m.quotient ? m.quotient->map.image(supp.members()) : supp.members();
    ex.that(m(carrier_supp) == m.total(), "support has full measure");
    ex.that(full_measure_support(m) == carrier_supp, "support = ⋂ of full-measure closed sets");

    if (x.size() > 0) {
      std::vector<ExtRational> w = c.weights(0);
      w[0] = ExtRational::infinity();
      bool rejected = false;
      try {
        (void)ops.extend_to_measure(valuation_from_weights(x, w));
      } catch (const Error& e) {
        rejected = e.kind() == ErrorKind::InfiniteMass;
      }
      ex.that(rejected, "infinite mass is rejected");
    }
    return ex.outcome();
  };
  return s;
}

inline SuiteDef p_product() {
  SuiteDef s{"p-product", "product measures: weight products and marginals", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, detail::small_space(rng, cfg, i, 3));
    const auto y = detail::add_space(in, detail::small_space(rng, cfg, i / 3, 3));
    detail::add_probability(in, rng, cfg, x);
    detail::add_probability(in, rng, cfg, y);
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const ProbValuation pv = detail::build([&] { return ProbValuation(c.valuation(0)); });
    const ProbValuation qv = detail::build([&] { return ProbValuation(c.valuation(1)); });
    const Product p = product(c.space(0), c.space(1));
    const Valuation pq = ops.product_valuation(p, pv.underlying(), qv.underlying());
    ex.that(pq.total() == ExtRational(1), "product is normalized");
    ex.that(ops.pushforward(p.first, pq) == pv.underlying(), "first marginal");
    ex.that(ops.pushforward(p.second, pq) == qv.underlying(), "second marginal");
    const FiniteMeasure mp = ops.extend_to_measure(pv.underlying());
    const FiniteMeasure mq = ops.extend_to_measure(qv.underlying());
    const FiniteMeasure m = ops.extend_to_measure(pq);
    if (!mp.quotient && !mq.quotient) {
      bool products = true;
      for (std::size_t a = 0; a < mp.weights.size(); ++a)
        for (std::size_t b = 0; b < mq.weights.size(); ++b)
          products = products && m.weights[p.pair(a, b)] == mp.weights[a] * mq.weights[b];
      ex.that(products, "extension weights are products");
    }
    ex.that(product_measure(p, pv, qv).underlying() == pq, "product measure agrees");
    return ex.outcome();
  };
  return s;
}

// ---------------------------------------------------------------- support

inline SuiteDef supp_unit() {
  SuiteDef s{"supp-unit", "supp ∘ δ = σ, the defining property, monotonicity", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, space_at(cfg, i, rng));
    detail::add_valuation(in, rng, cfg, x);
    detail::add_valuation(in, rng, cfg, x);
    detail::add_function(in, rng, cfg, x);
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const FiniteSpace& x = c.space(0);
    const Valuation nu = c.valuation(0);
    const Valuation rho = c.valuation(1);
    for (std::size_t p = 0; p < x.size(); ++p)
      ex.that(support(ops.unit_delta(x, p), ops) == ops.unit_sigma(x, p), "supp ∘ δ = σ");
    const ClosedSet sn = support(nu, ops);
    for (auto u : x.opens()) ex.that(ops.hit(sn, u) == nu(u).is_positive(), "⟨supp ν, U⟩ = [ν(U) > 0]");
    ex.that(support(Valuation::zero(x), ops).members().empty(), "supp 0 = ∅");
    ex.that(sn.members().subset_of(support(nu + rho, ops).members()), "supp is monotone");
    const LowerSemiFn g = c.function(0);
    ex.that(support_test_lsc(nu, g, ops) == ops.integrate(nu, g).is_positive(), "support test for lsc functions");
    return ex.outcome();
  };
  return s;
}

inline SuiteDef supp_mult() {
  SuiteDef s{"supp-mult", "supp ∘ ℰ = 𝒰 ∘ supp♯ ∘ supp on molecular ξ", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, space_at(cfg, i, rng));
    detail::add_molecule(in, rng, cfg, x, 4);
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    std::vector<SimpleSecondOrder> xis;
    for (std::size_t j = 0; j < c.molecule_count(); ++j) xis.push_back(c.molecule(j));
    const MorphismVerdict v = check_monad_morphism(c.space(0), xis, ops);
    return v.ok() ? Outcome::pass() : Outcome::failure(v.counterexample.value_or("diagram failed"));
  };
  return s;
}

inline SuiteDef supp_natural() {
  SuiteDef s{"supp-natural", "supp(f_*ν) = f♯ supp ν and continuity of supp", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, space_at(cfg, i, rng));
    const auto y = detail::add_space(in, detail::small_space(rng, cfg, i / 2, cfg.max_points));
    if (in.spaces[x].size() > 0) detail::add_map(in, rng, x, y);
    for (int k = 0; k < 4; ++k) detail::add_valuation(in, rng, cfg, x);
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    std::vector<Valuation> family;
    for (std::size_t j = 0; j < c.valuation_count(); ++j) family.push_back(c.valuation(j));
    family.push_back(Valuation::zero(c.space(0)));
    if (!in.maps.empty()) {
      const MorphismVerdict nat = check_supp_naturality(c.map(0), family[0], ops);
      ex.that(nat.ok(), nat.counterexample.value_or("naturality"));
      ex.that(check_supp_naturality(ContinuousMap::identity(c.space(0)), family[1], ops).ok(), "naturality for id");
    }
    const MorphismVerdict cont = check_supp_continuity(c.space(0), family, ops);
    ex.that(cont.ok(), cont.counterexample.value_or("continuity"));
    return ex.outcome();
  };
  return s;
}

inline SuiteDef supp_monoidal() {
  SuiteDef s{"supp-monoidal", "supp commutes with strength, products and marginals", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, detail::small_space(rng, cfg, i, 3));
    const auto y = detail::add_space(in, detail::small_space(rng, cfg, i / 3, 3));
    detail::add_valuation(in, rng, cfg, x);
    detail::add_valuation(in, rng, cfg, y);
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const Product p = product(c.space(0), c.space(1));
    const MorphismVerdict v = check_supp_monoidal(p, c.valuation(0), c.valuation(1), ops);
    ex.that(v.ok(), v.counterexample.value_or("monoidal"));
    const MorphismVerdict z = check_supp_monoidal(p, Valuation::zero(c.space(0)), c.valuation(1), ops);
    ex.that(z.ok(), z.counterexample.value_or("monoidal with zero"));
    return ex.outcome();
  };
  return s;
}

inline SuiteDef algebra_transfer() {
  SuiteDef s{"algebra-transfer", "every H-algebra is a V-algebra via a ∘ supp, with its cone structure", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const std::vector<FiniteSpace> lattices{FiniteSpace::w_lattice(), FiniteSpace::one_point(), FiniteSpace::chain(2),
                                            FiniteSpace::chain(3)};
    FiniteSpace a = lattices[i % lattices.size()];
    if (i >= lattices.size() && rng.chance(1, 2)) {
      const FiniteSpace base = detail::small_space(rng, cfg, i, 2);
      a = build_hyperspace(base).space;
    }
    const auto ai = detail::add_space(in, a);
    detail::add_molecule(in, rng, cfg, ai, 3);
    detail::add_molecule(in, rng, cfg, ai, 2);
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const FiniteSpace& a = c.space(0);
    if (a.size() == 0) throw InvalidInstance("empty carrier");
    const auto table = join_of_closed_sets(a);
    if (!table) throw InvalidInstance("carrier is not a complete lattice");
    if (!check_H_algebra(a, *table).is_algebra()) throw InvalidInstance("join is not an H-algebra");
    const InducedVAlgebra e(a, *table, ops);
    std::vector<SimpleSecondOrder> xis;
    for (std::size_t j = 0; j < c.molecule_count(); ++j) xis.push_back(c.molecule(j));
    const MorphismVerdict laws = e.check_laws(xis);
    ex.that(laws.ok(), laws.counterexample.value_or("V-algebra laws"));
    const MorphismVerdict cone = e.check_cone(default_scalar_grid());
    ex.that(cone.ok(), cone.counterexample.value_or("cone axioms"));
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = 0; y < a.size(); ++y) {
        const auto j = powerdomain::detail::least_upper_bound(a, closure(a, PointSet::singleton(x).with(y)));
        ex.that(j && e.plus(x, y) == *j, "x + y is the join");
      }
    return ex.outcome();
  };
  return s;
}

// ---------------------------------------------------------------- 2-cells

inline SuiteDef appendix_a_2cells() {
  SuiteDef s{"appendixA-2cells", "2-cells between maps, whiskering, functoriality of H and V on 2-cells, equivalences",
             {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, detail::small_space(rng, cfg, i, 4));
    const auto y = detail::add_space(in, detail::small_space(rng, cfg, i / 2, 4));
    const auto z = detail::add_space(in, detail::small_space(rng, cfg, i / 3, 3));
    detail::add_map(in, rng, x, y);
    // A second map pushed upward pointwise where continuity allows.
    auto g = in.maps[0].assignment;
    for (std::size_t p = 0; p < g.size(); ++p) {
      const auto up = in.spaces[y].up(g[p]).to_vector();
      auto trial = g;
      trial[p] = up[rng.below(up.size())];
      try {
        (void)ContinuousMap(in.spaces[x], in.spaces[y], trial);
        g = trial;
      } catch (const Error&) {
      }
    }
    in.maps.push_back({x, y, g});
    detail::add_map(in, rng, y, z);
    detail::add_map(in, rng, z, x);
    detail::add_valuation(in, rng, cfg, x);
    detail::add_closed(in, rng, x);
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const ContinuousMap f = c.map(0), g = c.map(1), h = c.map(2), k = c.map(3);
    const Valuation nu = c.valuation(0);
    const ClosedSet cl = c.closed(0);
    ex.that(le_2cell(f, f), "f <= f");
    if (le_2cell(f, g)) {
      ex.that(le_2cell(compose(h, f), compose(h, g)), "left whiskering");
      ex.that(le_2cell(compose(f, k), compose(g, k)), "right whiskering");
      ex.that(ops.push_closed(f, cl).members().subset_of(ops.push_closed(g, cl).members()), "H preserves 2-cells");
      const Valuation a = ops.pushforward(f, nu), b = ops.pushforward(g, nu);
      bool below = true;
      for (std::size_t i = 0; i < a.table().size(); ++i) below = below && a.table()[i] <= b.table()[i];
      ex.that(below, "V preserves 2-cells");
      ex.that(support(a, ops).members().subset_of(support(b, ops).members()), "supp preserves 2-cells");
    }
    const Quotient q = kolmogorov_quotient(c.space(0));
    const EquivalenceResult eq = is_equivalence(q.map);
    ex.that(eq.equivalent && eq.quasi_inverse.has_value(), "Kolmogorov quotient is an equivalence");
    if (eq.quasi_inverse)
      ex.that(pushforward(*eq.quasi_inverse, pushforward(q.map, nu)) == nu, "V inverts the quotient equivalence");
    const EquivalenceResult ef = is_equivalence(f);
    if (ef.equivalent)
      ex.that(equivalent_2cell(compose(*ef.quasi_inverse, f), ContinuousMap::identity(f.source())), "quasi-inverse");
    return ex.outcome();
  };
  return s;
}

inline SuiteDef appendix_c_morphism_equivalence() {
  SuiteDef s{"appendixC-morphism-equivalence", "supp preserves strength exactly when it is monoidal", {}, {}};
  s.generate = [](Rng& rng, const GenConfig& cfg, std::size_t i) {
    Instance in;
    const auto x = detail::add_space(in, detail::small_space(rng, cfg, i, 3));
    const auto y = detail::add_space(in, detail::small_space(rng, cfg, i / 3, 3));
    detail::add_valuation(in, rng, cfg, x);
    detail::add_valuation(in, rng, cfg, y);
    return in;
  };
  s.check = [](const Instance& in, const Ops& ops) {
    Ctx c(in);
    Expect ex;
    const FiniteSpace& xs = c.space(0);
    const FiniteSpace& ys = c.space(1);
    const Valuation nu = c.valuation(0);
    const Valuation rho = c.valuation(1);
    const Product p = product(xs, ys);
    bool strong = true;
    for (std::size_t x = 0; x < xs.size(); ++x)
      strong = strong && support(ops.strength_V(p, x, rho), ops) == ops.strength_H(p, x, support(rho, ops));
    const Product one = product(FiniteSpace::one_point(), FiniteSpace::one_point());
    bool monoidal = support(ops.product_valuation(p, nu, rho), ops).members() ==
                    p.rectangle(support(nu, ops).members(), support(rho, ops).members());
    monoidal = monoidal && support(ops.unit_delta(one.space, 0), ops) == ops.unit_sigma(one.space, 0);
    ex.that(strong == monoidal, "strength square holds iff monoidal squares hold");
    ex.that(strong, "strength square");
    ex.that(monoidal, "monoidal squares");
    return ex.outcome();
  };
  return s;
}

}  // namespace suites

inline const std::vector<SuiteDef>& all_suites() {
  static const std::vector<SuiteDef> list{
      suites::h_monad(),      suites::h_strength(),       suites::h_algebra(),     suites::v_monad(),
      suites::v_strength(),   suites::v_fubini(),         suites::v_duality(),     suites::v_portmanteau(),
      suites::p_submonad(),   suites::p_extension(),      suites::p_product(),     suites::supp_unit(),
      suites::supp_mult(),    suites::supp_natural(),     suites::supp_monoidal(), suites::algebra_transfer(),
      suites::topology_core(), suites::appendix_a_2cells(), suites::appendix_c_morphism_equivalence()};
  return list;
}

inline const SuiteDef& find_suite(const std::string& name) {
  for (const auto& s : all_suites())
    if (s.name == name) return s;
  fail(ErrorKind::UnknownSuite, "unknown suite '" + name + "'");
}

inline Instance generate_instance(const SuiteDef& suite, const GenConfig& cfg, std::size_t index) {
  Rng rng(instance_seed(cfg.seed, suite.name, index));
  return suite.generate(rng, cfg, index);
}

struct FailureRecord {
  std::size_t index = 0;
  std::string witness;
  Instance original;
  Instance shrunk;
  std::string shrunk_witness;
  std::string replay;
};

struct SuiteReport {
  std::string name;
  std::size_t instances = 0;
  std::size_t invalid = 0;
  std::size_t failures = 0;
  std::vector<FailureRecord> failure_records;
  double wall_seconds = 0;

  bool ok() const { return failures == 0; }

  /// Everything except wall time, for determinism comparisons.
  nlohmann::json content() const {
    nlohmann::json j{{"suite", name}, {"instances", instances}, {"invalid", invalid}, {"failures", failures}};
    j["counterexamples"] = nlohmann::json::array();
    for (const auto& f : failure_records)
      j["counterexamples"].push_back({{"index", f.index},
                                      {"witness", f.witness},
                                      {"shrunk_witness", f.shrunk_witness},
                                      {"instance", f.original.to_json()},
                                      {"shrunk", f.shrunk.to_json()},
                                      {"replay", f.replay}});
    return j;
  }
  nlohmann::json to_json() const {
    auto j = content();
    j["wall_seconds"] = wall_seconds;
    return j;
  }
};

struct RunOptions {
  std::size_t jobs = 1;
  std::size_t shrink_limit = 3;  // failures that get a shrunk counterexample
  const Ops* ops = nullptr;
  std::string program = "powerdomain";
};

inline std::string replay_command(const RunOptions& opt, const std::string& suite, const GenConfig& cfg,
                                  std::size_t index) {
  return opt.program + " laws " + suite + " --seed " + std::to_string(cfg.seed) + " --max-points " +
         std::to_string(cfg.max_points) + " --count " + std::to_string(cfg.instance_count) + " --instance " +
         std::to_string(index);
}

inline SuiteReport run_suite(const std::string& name, const GenConfig& cfg, const RunOptions& opt = {}) {
  const SuiteDef& suite = find_suite(name);
  const Ops& ops = opt.ops ? *opt.ops : reference_ops();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = cfg.instance_count;
  std::vector<Outcome> outcomes(n);
  auto worker = [&](std::size_t first) {
    for (std::size_t i = first; i < n; i += std::max<std::size_t>(opt.jobs, 1)) {
      Instance in;
      try {
        in = generate_instance(suite, cfg, i);
      } catch (const std::exception& e) {
        outcomes[i] = Outcome::failure(std::string("generator: ") + e.what());
        continue;
      }
      outcomes[i] = evaluate(suite, in, ops);
    }
  };
  if (opt.jobs <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < opt.jobs; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
  }
  SuiteReport rep;
  rep.name = name;
  rep.instances = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (outcomes[i].status == Status::Invalid) ++rep.invalid;
    if (outcomes[i].status != Status::Fail) continue;
    ++rep.failures;
    if (rep.failure_records.size() >= opt.shrink_limit) continue;
    FailureRecord fr;
    fr.index = i;
    fr.witness = outcomes[i].witness;
    fr.original = generate_instance(suite, cfg, i);
    auto eval = [&](const Instance& in) { return evaluate(suite, in, ops); };
    fr.shrunk = shrink(fr.original, eval);
    fr.shrunk_witness = eval(fr.shrunk).witness;
    fr.replay = replay_command(opt, name, cfg, i);
    rep.failure_records.push_back(std::move(fr));
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace powerdomain::lawcheck

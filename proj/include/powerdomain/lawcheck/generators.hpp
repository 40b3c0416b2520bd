#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "powerdomain/ext_rational.hpp"
#include "powerdomain/lawcheck/random.hpp"
#include "powerdomain/topology.hpp"
#include "powerdomain/valuation.hpp"

namespace powerdomain::lawcheck {

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_points = 3;
  std::size_t instance_count = 200;
  std::int64_t weight_denominator_bound = 16;
  bool allow_infinity = true;
};

/// Spaces every stream starts with: empty, one-point, Sierpiński, discrete2,
/// indiscrete2, W, chains of length 2 to 4.
inline std::vector<FiniteSpace> canned_corpus() {
  return {FiniteSpace::discrete(0), FiniteSpace::one_point(), FiniteSpace::sierpinski(), FiniteSpace::discrete(2),
          FiniteSpace::indiscrete(2), FiniteSpace::w_lattice(), FiniteSpace::chain(2), FiniteSpace::chain(3),
          FiniteSpace::chain(4)};
}

/// Random preorder on n points: a random partition into classes (collapsing
/// points for non-T0 cases) and the reachability closure of a random DAG on
/// the classes.
inline FiniteSpace random_space(Rng& rng, std::size_t n) {
  std::vector<std::size_t> cls(n);
  std::size_t classes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    // Mostly singletons, with an occasional merge into an earlier class.
    if (classes > 0 && rng.chance(1, 4))
      cls[i] = rng.below(classes);
    else
      cls[i] = classes++;
  }
  std::vector<std::size_t> order(classes);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = classes; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  std::vector<std::vector<bool>> reach(classes, std::vector<bool>(classes, false));
  for (std::size_t i = 0; i < classes; ++i) reach[i][i] = true;
  for (std::size_t i = 0; i < classes; ++i)
    for (std::size_t j = i + 1; j < classes; ++j)
      if (rng.chance(1, 2)) reach[order[i]][order[j]] = true;
  for (std::size_t k = 0; k < classes; ++k)
    for (std::size_t i = 0; i < classes; ++i)
      for (std::size_t j = 0; j < classes; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  Relation rel;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (reach[cls[a]][cls[b]]) rel.emplace_back(a, b);
  return FiniteSpace::from_preorder(FiniteSpace::default_names(n), rel);
}

/// The index-th space of the stream: the fitting corpus entries first, then
/// random preorders with up to max_points points.
inline FiniteSpace space_at(const GenConfig& cfg, std::size_t index, Rng& rng) {
  std::vector<FiniteSpace> corpus;
  for (auto& s : canned_corpus())
    if (s.size() <= cfg.max_points || s.size() == 0) corpus.push_back(std::move(s));
  if (index < corpus.size()) return corpus[index];
  return random_space(rng, rng.below(cfg.max_points + 1));
}

/// Same, but never empty when max_points >= 1.
inline FiniteSpace nonempty_space_at(const GenConfig& cfg, std::size_t index, Rng& rng, std::size_t cap) {
  const std::size_t limit = std::min(cfg.max_points, cap);
  if (limit == 0) return FiniteSpace::discrete(0);
  std::vector<FiniteSpace> corpus;
  for (auto& s : canned_corpus())
    if (s.size() >= 1 && s.size() <= limit) corpus.push_back(std::move(s));
  if (index < corpus.size()) return corpus[index];
  return random_space(rng, 1 + rng.below(limit));
}

inline ExtRational random_weight(Rng& rng, const GenConfig& cfg, bool allow_zero = true) {
  if (allow_zero && rng.chance(1, 4)) return ExtRational(0);
  if (cfg.allow_infinity && rng.chance(1, 25)) return ExtRational::infinity();
  return ExtRational(rng.positive_rational(cfg.weight_denominator_bound));
}

inline std::vector<ExtRational> random_weights(Rng& rng, const GenConfig& cfg, std::size_t n, bool finite = false) {
  GenConfig c = cfg;
  if (finite) c.allow_infinity = false;
  std::vector<ExtRational> w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(random_weight(rng, c));
  return w;
}

/// Weights of a probability valuation (nonnegative, summing to 1).
inline std::vector<ExtRational> random_probability(Rng& rng, const GenConfig& cfg, std::size_t n) {
  if (n == 0) return {};
  std::vector<Rational> raw;
  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rational r = rng.chance(1, 4) ? Rational(0) : rng.positive_rational(cfg.weight_denominator_bound);
    raw.push_back(r);
    total += r;
  }
  if (total == 0) {
    raw[rng.below(n)] = 1;
    total = 1;
  }
  std::vector<ExtRational> w;
  for (const auto& r : raw) w.emplace_back(r / total);
  return w;
}

/// Monotone function: g(x) = max of random base values over the closure of x.
inline std::vector<ExtRational> random_lsc_values(Rng& rng, const GenConfig& cfg, const FiniteSpace& x) {
  std::vector<ExtRational> base;
  for (std::size_t i = 0; i < x.size(); ++i) base.push_back(random_weight(rng, cfg));
  std::vector<ExtRational> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (auto y : x.down(i)) g[i] = max(g[i], base[y]);
  return g;
}

/// A random continuous map; falls back to a constant map when the greedy
/// assignment gets stuck.
inline std::vector<std::size_t> random_map(Rng& rng, const FiniteSpace& x, const FiniteSpace& y) {
  if (x.size() == 0) return {};
  if (y.size() == 0) fail(ErrorKind::PreconditionFailed, "no map into the empty space");
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x.down(a).size() < x.down(b).size(); });
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<std::size_t> f(x.size(), y.size());
    bool stuck = false;
    for (auto p : order) {
      PointSet cand = y.all();
      for (std::size_t q = 0; q < x.size(); ++q) {
        if (f[q] == y.size()) continue;
        if (x.leq(q, p)) cand &= y.up(f[q]);
        if (x.leq(p, q)) cand &= y.down(f[q]);
      }
      if (cand.empty()) {
        stuck = true;
        break;
      }
      auto members = cand.to_vector();
      f[p] = members[rng.below(members.size())];
    }
    if (!stuck) return f;
  }
  return std::vector<std::size_t>(x.size(), rng.below(y.size()));
}

/// Kernel rows k(x) = Σ_{y <= x} base(y), one weight vector per source point.
inline std::vector<std::vector<ExtRational>> random_kernel_rows(Rng& rng, const GenConfig& cfg, const FiniteSpace& x,
                                                                const FiniteSpace& y) {
  std::vector<std::vector<ExtRational>> base;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<ExtRational> w(y.size());
    if (rng.chance(1, 2))
      for (auto& v : w)
        if (rng.chance(1, 3)) v = random_weight(rng, cfg, false);
    base.push_back(std::move(w));
  }
  std::vector<std::vector<ExtRational>> rows(x.size(), std::vector<ExtRational>(y.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (auto d : x.down(i))
      for (std::size_t j = 0; j < y.size(); ++j) rows[i][j] += base[d][j];
  return rows;
}

/// A closed set of x drawn uniformly from its closed sets.
inline PointSet random_closed(Rng& rng, const FiniteSpace& x) {
  const auto& opens = x.opens();
  return opens[rng.below(opens.size())].complement(x.size());
}

/// Weight-based valuation, or (adversarially) a perturbed table that still
/// passes validation; falls back to the weight-based table.
inline Valuation random_valuation_table(Rng& rng, const GenConfig& cfg, const FiniteSpace& x, bool adversarial) {
  Valuation nu = valuation_from_weights(x, random_weights(rng, cfg, x.size()));
  if (!adversarial || x.opens().size() < 2) return nu;
  std::vector<ExtRational> t = nu.table();
  const std::size_t i = 1 + rng.below(t.size() - 1);
  if (t[i].is_finite()) t[i] = t[i] + ExtRational(rng.positive_rational(cfg.weight_denominator_bound, 1));
  try {
    return Valuation(x, std::move(t));
  } catch (const Error&) {
    return nu;
  }
}

}  // namespace powerdomain::lawcheck

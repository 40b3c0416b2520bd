#pragma once

/// Reference computations that avoid the library's own formulas: brute-force
/// suprema, symbolic certificate checks and exhaustive dual enumerations.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "powerdomain/ext_rational.hpp"
#include "powerdomain/hyperspace.hpp"
#include "powerdomain/topology.hpp"
#include "powerdomain/valuation.hpp"

namespace powerdomain::lawcheck {

/// sup Σ cᵢ ν(Uᵢ) over simple functions Σ cᵢ 1_{Uᵢ} <= g, searched over every
/// strictly descending chain of nonempty opens U₁ ⊋ … ⊋ U_k. For a fixed
/// chain the best coefficients are found exactly: the partial sums
/// Cⱼ = c₁ + … + cⱼ are bounded by the minimum of g on Uⱼ ∖ Uⱼ₊₁ and must
/// increase, so Cⱼ = min over i >= j of those bounds.
inline ExtRational integral_by_dominated_simple(const Valuation& nu, const LowerSemiFn& g) {
  const auto& x = nu.space();
  std::vector<PointSet> opens;
  for (auto u : x.opens())
    if (!u.empty()) opens.push_back(u);
  ExtRational best(0);
  std::vector<PointSet> chain;
  std::function<void()> evaluate = [&] {
    const std::size_t k = chain.size();
    std::vector<ExtRational> bound(k);
    for (std::size_t j = 0; j < k; ++j) {
      const PointSet layer = j + 1 < k ? chain[j].minus(chain[j + 1]) : chain[j];
      std::optional<ExtRational> m;
      for (auto p : layer)
        if (!m || g(p) < *m) m = g(p);
      bound[j] = *m;
    }
    std::vector<ExtRational> partial(k);
    for (std::size_t j = k; j-- > 0;) partial[j] = j + 1 < k ? min(bound[j], partial[j + 1]) : bound[j];
    ExtRational value(0);
    ExtRational previous(0);
    for (std::size_t j = 0; j < k; ++j) {
      if (partial[j] > previous) {
        const ExtRational c = previous.is_infinite() ? ExtRational(0)
                              : partial[j].is_infinite() ? ExtRational::infinity()
                                                         : difference(partial[j], previous);
        value += c * nu(chain[j]);
      }
      previous = partial[j];
    }
    if (value > best) best = value;
  };
  std::function<void()> walk = [&] {
    if (!chain.empty()) evaluate();
    for (auto u : opens)
      if (chain.empty() || (u.subset_of(chain.back()) && u != chain.back())) {
        chain.push_back(u);
        walk();
        chain.pop_back();
      }
  };
  walk();
  return best;
}

/// Σ_x w_x g(x) for a point-weight decomposition of ν.
inline ExtRational integral_by_weights(const std::vector<ExtRational>& weights, const LowerSemiFn& g) {
  ExtRational s;
  for (std::size_t x = 0; x < weights.size(); ++x) s += weights[x] * g(x);
  return s;
}

/// Symbolic checker for a portmanteau certificate: Σ cᵢrᵢ > r, the simple
/// function Σ cᵢ 1_{Uᵢ} is dominated by f, every Uᵢ is open with
/// ν(Uᵢ) > rᵢ >= 0 and cᵢ > 0.
inline std::optional<std::string> check_certificate(const std::vector<PortmanteauTerm>& cert, const Valuation& nu,
                                                    const LowerSemiFn& f, const Rational& r) {
  const auto& x = nu.space();
  Rational total = 0;
  std::vector<Rational> simple(x.size(), 0);
  for (const auto& t : cert) {
    if (!x.is_open(t.open)) return "term set " + x.describe(t.open) + " is not open";
    if (t.coefficient <= 0) return "nonpositive coefficient";
    if (t.threshold < 0) return "negative threshold";
    if (!(nu(t.open) > ExtRational(t.threshold))) return "valuation does not exceed the term threshold";
    total += t.coefficient * t.threshold;
    for (auto p : t.open) simple[p] += t.coefficient;
  }
  if (!(total > r)) return "Σ c r = " + total.str() + " does not exceed " + r.str();
  for (std::size_t p = 0; p < x.size(); ++p)
    if (ExtRational(simple[p]) > f(p)) return "simple function exceeds f at " + x.name(p);
  return std::nullopt;
}

struct DualityCensus {
  std::size_t tables = 0;
  std::size_t valid = 0;
  bool matches_closed_sets = false;
};

/// Enumerates every boolean table on the opens, keeps the strict,
/// join-preserving ones and compares them with the tables of closed sets.
inline DualityCensus brute_force_duality(const FiniteSpace& x) {
  const auto& opens = x.opens();
  const std::size_t k = opens.size();
  DualityCensus census;
  if (k > 20) return census;
  std::vector<std::vector<std::size_t>> join(k, std::vector<std::size_t>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) join[i][j] = x.open_index(opens[i] | opens[j]);
  std::set<std::uint64_t> from_closed;
  for (auto u : opens) {
    const PointSet c = u.complement(x.size());
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (c.intersects(opens[i])) t |= std::uint64_t{1} << i;
    from_closed.insert(t);
  }
  std::set<std::uint64_t> valid;
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << k); ++t) {
    ++census.tables;
    if (t & 1U) continue;
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i)
      for (std::size_t j = i + 1; j < k && ok; ++j) {
        const bool lhs = (t >> join[i][j]) & 1U;
        const bool rhs = ((t >> i) | (t >> j)) & 1U;
        ok = lhs == rhs;
      }
    if (ok) valid.insert(t);
  }
  census.valid = valid.size();
  census.matches_closed_sets = valid == from_closed;
  return census;
}

/// Point weights of ν ⊗ ρ from weight decompositions of the factors.
inline Valuation product_by_weight_products(const Product& xy, const std::vector<ExtRational>& wn,
                                            const std::vector<ExtRational>& wr) {
  std::vector<ExtRational> w(xy.space.size());
  for (std::size_t a = 0; a < wn.size(); ++a)
    for (std::size_t b = 0; b < wr.size(); ++b) w[xy.pair(a, b)] = wn[a] * wr[b];
  return valuation_from_weights(xy.space, w);
}

}  // namespace powerdomain::lawcheck

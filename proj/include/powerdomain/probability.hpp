#pragma once

/// Probability valuations, their extension to measures on finite T0 spaces by
/// Möbius inversion, the measure-level multiplication and product measures.
///
/// On a finite T0 space every subset is Borel and every measure is τ-smooth,
/// so a measure is a vector of point weights.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "powerdomain/error.hpp"
#include "powerdomain/ext_rational.hpp"
#include "powerdomain/point_set.hpp"
#include "powerdomain/topology.hpp"
#include "powerdomain/valuation.hpp"

namespace powerdomain {

class ProbValuation {
 public:
  explicit ProbValuation(Valuation underlying) : underlying_(std::move(underlying)) {
    for (const auto& v : underlying_.table())
      if (v.is_infinite() || v > ExtRational(1)) fail(ErrorKind::NotNormalized, "value " + v.str() + " outside [0,1]");
    if (underlying_.total() != ExtRational(1))
      fail(ErrorKind::NotNormalized, "total mass " + underlying_.total().str() + " != 1");
  }

  const Valuation& underlying() const { return underlying_; }
  const FiniteSpace& space() const { return underlying_.space(); }
  const ExtRational& operator()(PointSet u) const { return underlying_(u); }

  friend bool operator==(const ProbValuation& a, const ProbValuation& b) { return a.underlying_ == b.underlying_; }

 private:
  Valuation underlying_;
};

/// p ∈ O(U, r), the subbasic opens of the A-topology.
inline bool in_A_open(const ProbValuation& p, PointSet u, const Rational& r) {
  if (r < 0) fail(ErrorKind::PreconditionFailed, "threshold must be nonnegative");
  const bool a = p(u) > ExtRational(r);
  if (a != in_theta(p.underlying(), u, r)) fail(ErrorKind::Anomaly, "A-topology and weak topology disagree");
  return a;
}

/// Point weights on a T0 space. When built from a valuation on a non-T0
/// space, `quotient` records the Kolmogorov quotient the weights live on.
struct FiniteMeasure {
  FiniteSpace space;
  std::vector<ExtRational> weights;
  std::optional<Quotient> quotient;

  /// m(A) for an arbitrary subset A of `space`.
  ExtRational operator()(PointSet a) const {
    ExtRational s;
    for (auto x : a) s += weights.at(x);
    return s;
  }
  ExtRational total() const { return (*this)(space.all()); }
  Valuation restriction() const { return valuation_from_weights(space, weights); }
};

/// μ(x, y) of the specialization poset of a T0 space, for x <= y.
inline std::vector<std::vector<Rational>> moebius_function(const FiniteSpace& space) {
  const std::size_t n = space.size();
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n, 0));
  for (std::size_t x = 0; x < n; ++x) {
    // Visit the up-set of x from the bottom so every z < y is done before y.
    std::vector<std::size_t> order = space.up(x).to_vector();
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return space.down(a).size() < space.down(b).size(); });
    for (auto y : order) {
      if (y == x) {
        mu[x][y] = 1;
        continue;
      }
      Rational s = 0;
      for (auto z : space.up(x) & space.down(y))
        if (z != y) s += mu[x][z];
      mu[x][y] = -s;
    }
  }
  return mu;
}

/// Weights with Σ_{x ∈ U} w_x = ν(U) on every open U, by Möbius inversion
/// w_x = Σ_{y >= x} μ(x, y) ν(↑y), cross-checked against the local difference
/// ν(↑x) − ν(↑x ∖ {x}).
inline FiniteMeasure extend_to_measure(const Valuation& nu) {
  if (nu.total().is_infinite()) fail(ErrorKind::InfiniteMass, "total mass is infinite");
  if (!check_separation(nu.space()).is_t0) {
    Quotient q = kolmogorov_quotient(nu.space());
    FiniteMeasure m = extend_to_measure(pushforward(q.map, nu));
    m.quotient = std::move(q);
    return m;
  }
  const auto& x = nu.space();
  const auto mu = moebius_function(x);
  std::vector<ExtRational> w(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    Rational s = 0;
    for (auto y : x.up(p)) s += mu[p][y] * nu(x.up(y)).finite();
    if (s < 0) fail(ErrorKind::NegativeWeight, "weight " + s.str() + " at " + x.name(p));
    const Rational local = nu(x.up(p)).finite() - nu(x.up(p).without(p)).finite();
    if (local != s) fail(ErrorKind::Anomaly, "Möbius inversion routes disagree at " + x.name(p));
    w[p] = ExtRational(s);
  }
  FiniteMeasure m{x, std::move(w), std::nullopt};
  if (!(m.restriction() == nu)) fail(ErrorKind::Anomaly, "extension does not reproduce the valuation");
  return m;
}

/// ∫ g dm = Σ w_x g(x). A function on the original space of a quotient
/// measure is read through the quotient map.
inline ExtRational integrate_measure(const FiniteMeasure& m, const LowerSemiFn& g) {
  std::vector<ExtRational> values;
  if (g.space() == m.space) {
    values = g.values();
  } else if (m.quotient && g.space() == m.quotient->map.source()) {
    values.resize(m.space.size());
    for (std::size_t x = 0; x < g.space().size(); ++x) values[m.quotient->map(x)] = g(x);
  } else {
    fail(ErrorKind::ShapeMismatch, "function and measure on different spaces");
  }
  ExtRational s;
  for (std::size_t x = 0; x < values.size(); ++x) s += m.weights[x] * values[x];
  return s;
}

/// Σ cⱼ pⱼ for probability atoms with Σ cⱼ = 1, computed once as ℰ of the
/// underlying valuations and once as the mixture of the extended measures on
/// every subset; the two must agree.
inline ProbValuation mult_E_measure(const SimpleSecondOrder& xi) {
  ExtRational mass;
  for (const auto& a : xi.atoms()) {
    mass += a.weight;
    if (a.inner.total() != ExtRational(1)) fail(ErrorKind::NotNormalized, "atom of mass " + a.inner.total().str());
  }
  if (mass != ExtRational(1)) fail(ErrorKind::NotNormalized, "atom weights sum to " + mass.str());
  Valuation by_valuations = mult_E(xi);

  std::optional<FiniteSpace> carrier;
  std::vector<ExtRational> mixture;
  for (const auto& a : xi.atoms()) {
    FiniteMeasure m = extend_to_measure(a.inner);
    if (!carrier) {
      carrier = m.space;
      mixture.assign(m.space.size(), ExtRational(0));
    }
    for (std::size_t x = 0; x < mixture.size(); ++x) mixture[x] += a.weight * m.weights[x];
  }
  FiniteMeasure by_measure = extend_to_measure(by_valuations);
  if (carrier && by_measure.weights != mixture) fail(ErrorKind::Anomaly, "measure-level mixture differs from ℰ");
  return ProbValuation(std::move(by_valuations));
}

/// p ⊗ q, checked against the weight products and both marginals.
inline ProbValuation product_measure(const Product& xy, const ProbValuation& p, const ProbValuation& q) {
  ProbValuation pq(product_valuation(xy, p.underlying(), q.underlying()));
  if (check_separation(p.space()).is_t0 && check_separation(q.space()).is_t0) {
    FiniteMeasure mp = extend_to_measure(p.underlying());
    FiniteMeasure mq = extend_to_measure(q.underlying());
    FiniteMeasure m = extend_to_measure(pq.underlying());
    for (std::size_t x = 0; x < p.space().size(); ++x)
      for (std::size_t y = 0; y < q.space().size(); ++y)
        if (m.weights[xy.pair(x, y)] != mp.weights[x] * mq.weights[y])
          fail(ErrorKind::Anomaly, "product weights are not products");
  }
  if (!(pushforward(xy.first, pq.underlying()) == p.underlying()) ||
      !(pushforward(xy.second, pq.underlying()) == q.underlying()))
    fail(ErrorKind::Anomaly, "marginals of the product measure differ");
  return pq;
}

/// Intersection of all closed sets of full measure, on the carrier of m.
inline PointSet full_measure_support(const FiniteMeasure& m) {
  const ExtRational total = m.total();
  PointSet s = m.space.all();
  for (auto u : m.space.opens()) {
    PointSet c = u.complement(m.space.size());
    if (m(c) == total) s &= c;
  }
  return s;
}

}  // namespace powerdomain

#pragma once

/// Dispatch table for the core operations. Diagram checks and law suites
/// call through an Ops value so that individual operations can be swapped
/// out, e.g. by the mutation harness.

#include <cstddef>
#include <functional>

#include "powerdomain/ext_rational.hpp"
#include "powerdomain/hyperspace.hpp"
#include "powerdomain/probability.hpp"
#include "powerdomain/topology.hpp"
#include "powerdomain/valuation.hpp"

namespace powerdomain {

struct Ops {
  std::function<ClosedSet(const ContinuousMap&, const ClosedSet&)> push_closed;
  std::function<ClosedSet(const FiniteSpace&, std::size_t)> unit_sigma;
  std::function<ClosedSet(const Hyperspace&, PointSet)> mult_union;
  std::function<bool(const ClosedSet&, PointSet)> hit;
  std::function<ClosedSet(const Product&, std::size_t, const ClosedSet&)> strength_H;
  std::function<ClosedSet(const Product&, const ClosedSet&, std::size_t)> costrength_H;

  std::function<bool(const ExtRational&)> sgn;
  std::function<ExtRational(const Valuation&, const LowerSemiFn&)> integrate;
  std::function<Valuation(const ContinuousMap&, const Valuation&)> pushforward;
  std::function<Valuation(const FiniteSpace&, std::size_t)> unit_delta;
  std::function<Valuation(const SimpleSecondOrder&)> mult_E;
  std::function<Valuation(const Product&, std::size_t, const Valuation&)> strength_V;
  std::function<Valuation(const Product&, const Valuation&, std::size_t)> costrength_V;
  std::function<Valuation(const Product&, const Valuation&, const Valuation&)> product_valuation;
  std::function<FiniteMeasure(const Valuation&)> extend_to_measure;
};

inline const Ops& reference_ops() {
  static const Ops ops{
      [](const ContinuousMap& f, const ClosedSet& c) { return push_closed(f, c); },
      [](const FiniteSpace& x, std::size_t p) { return unit_sigma(x, p); },
      [](const Hyperspace& hx, PointSet family) { return mult_union(hx, family); },
      [](const ClosedSet& c, PointSet u) { return hit(c, u); },
      [](const Product& xy, std::size_t x, const ClosedSet& c) { return strength_H(xy, x, c); },
      [](const Product& xy, const ClosedSet& c, std::size_t y) { return costrength_H(xy, c, y); },
      [](const ExtRational& v) { return sgn(v); },
      [](const Valuation& nu, const LowerSemiFn& g) { return integrate(nu, g); },
      [](const ContinuousMap& f, const Valuation& nu) { return pushforward(f, nu); },
      [](const FiniteSpace& x, std::size_t p) { return unit_delta(x, p); },
      [](const SimpleSecondOrder& xi) { return mult_E(xi); },
      [](const Product& xy, std::size_t x, const Valuation& nu) { return strength_V(xy, x, nu); },
      [](const Product& xy, const Valuation& nu, std::size_t y) { return costrength_V(xy, nu, y); },
      [](const Product& xy, const Valuation& nu, const Valuation& rho) { return product_valuation(xy, nu, rho); },
      [](const Valuation& nu) { return extend_to_measure(nu); },
  };
  return ops;
}

}  // namespace powerdomain

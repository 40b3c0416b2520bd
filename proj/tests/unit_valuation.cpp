#include <gtest/gtest.h>

#include "powerdomain/lawcheck/oracles.hpp"
#include "powerdomain/probability.hpp"
#include "powerdomain/support.hpp"
#include "powerdomain/valuation.hpp"

using namespace powerdomain;

namespace {

PointSet set(std::initializer_list<std::size_t> xs) {
  PointSet s;
  for (auto x : xs) s = s.with(x);
  return s;
}

ExtRational q(std::int64_t n, std::int64_t d = 1) { return ExtRational(n, d); }

const FiniteSpace& S() {
  static const FiniteSpace s = FiniteSpace::sierpinski();
  return s;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Anomaly;
}

}  // namespace

TEST(ExtRational, Arithmetic) {
  const auto inf = ExtRational::infinity();
  EXPECT_EQ(inf * q(0), q(0));
  EXPECT_EQ(inf + q(3), inf);
  EXPECT_EQ(q(1, 2) + q(1, 3), q(5, 6));
  EXPECT_EQ(ExtRational::parse("4/6"), q(2, 3));
  EXPECT_EQ(ExtRational::parse("inf"), inf);
  EXPECT_EQ(q(2, 3).str(), "2/3");
  EXPECT_THROW(ExtRational::parse("-1"), std::invalid_argument);
  EXPECT_THROW(ExtRational::parse("1/0"), std::invalid_argument);
  EXPECT_EQ(kind_of([&] { (void)difference(inf, inf); }), ErrorKind::InfinityIndeterminate);
}

TEST(Valuation, FromWeights) {
  const Valuation d = valuation_from_weights(S(), {q(0), q(1)});
  EXPECT_EQ(d, unit_delta(S(), 1));
  for (auto u : S().opens()) EXPECT_EQ(d(u), q(u.contains(1) ? 1 : 0));
  EXPECT_TRUE(valuation_from_weights(S(), {q(0), q(0)}).is_zero());
  const Valuation h = valuation_from_weights(S(), {q(1, 2), q(1, 2)});
  EXPECT_EQ(h(set({1})), q(1, 2));
  EXPECT_EQ(h.total(), q(1));
}

TEST(Valuation, Validation) {
  EXPECT_NO_THROW(validate_valuation(S(), valuation_from_weights(S(), {q(1), q(2)}).table()));
  EXPECT_EQ(kind_of([] { validate_valuation(S(), {q(0), q(1), q(1, 2)}); }), ErrorKind::NotMonotone);
  EXPECT_EQ(kind_of([] { validate_valuation(S(), {q(1), q(1), q(1)}); }), ErrorKind::NotStrict);
  const auto d = FiniteSpace::discrete(2);
  EXPECT_EQ(kind_of([&] { validate_valuation(d, {q(0), q(1), q(1), q(1)}); }), ErrorKind::NotModular);
}

TEST(Valuation, Integrate) {
  const Valuation h = valuation_from_weights(S(), {q(1, 2), q(1, 2)});
  const LowerSemiFn g(S(), {q(1), q(2)});
  EXPECT_EQ(integrate(h, g), q(3, 2));
  EXPECT_EQ(lawcheck::integral_by_dominated_simple(h, g), q(3, 2));
  EXPECT_EQ(kind_of([] { LowerSemiFn(S(), {q(2), q(1)}); }), ErrorKind::NotLowerSemicontinuous);
  const LowerSemiFn top(S(), {q(0), ExtRational::infinity()});
  EXPECT_EQ(integrate(h, top), ExtRational::infinity());
  EXPECT_EQ(integrate(Valuation::zero(S()), top), q(0));
}

TEST(Valuation, PushforwardAndDelta) {
  const Valuation h = valuation_from_weights(S(), {q(1, 2), q(1, 2)});
  EXPECT_EQ(pushforward(ContinuousMap::identity(S()), h), h);
  const ContinuousMap up(S(), S(), {1, 1});
  EXPECT_EQ(pushforward(up, h), valuation_from_weights(S(), {q(0), q(1)}));
  const auto ind = FiniteSpace::indiscrete(2);
  const Valuation d0 = unit_delta(ind, 0);
  EXPECT_EQ(d0.table(), (std::vector<ExtRational>{q(0), q(1)}));
  EXPECT_EQ(d0, unit_delta(ind, 1));
  EXPECT_NE(unit_delta(S(), 0), unit_delta(S(), 1));
}

TEST(Valuation, MultiplicationE) {
  const Valuation h = valuation_from_weights(S(), {q(1, 3), q(2, 3)});
  EXPECT_EQ(mult_E(SimpleSecondOrder::dirac(h)), h);
  const SimpleSecondOrder xi(S(), {{q(3), unit_delta(S(), 0)}, {q(5, 2), unit_delta(S(), 1)}});
  EXPECT_EQ(mult_E(xi), valuation_from_weights(S(), {q(3), q(5, 2)}));
}

TEST(Valuation, Kleisli) {
  const auto d = FiniteSpace::discrete(2);
  const Kernel h(d, S(), {valuation_from_weights(S(), {q(1), q(0)}), valuation_from_weights(S(), {q(1, 2), q(1, 2)})});
  EXPECT_EQ(kleisli_compose(Kernel::identity(S()), h), h);
  EXPECT_EQ(kleisli_compose(h, Kernel::identity(d)), h);
  const ContinuousMap f(d, S(), {0, 1});
  EXPECT_EQ(Kernel::from_map(f)(1), unit_delta(S(), 1));
  EXPECT_EQ(kind_of([&] { Kernel(S(), S(), {unit_delta(S(), 1), unit_delta(S(), 0)}); }), ErrorKind::NotAKernel);
}

TEST(Valuation, Strength) {
  const Product ss = product(S(), S());
  EXPECT_EQ(strength_V(ss, 1, unit_delta(S(), 0)), unit_delta(ss.space, ss.pair(1, 0)));
  EXPECT_TRUE(strength_V(ss, 1, Valuation::zero(S())).is_zero());
  EXPECT_EQ(costrength_V(ss, unit_delta(S(), 0), 1), unit_delta(ss.space, ss.pair(0, 1)));
}

TEST(Valuation, Product) {
  const Product ss = product(S(), S());
  const Valuation a = valuation_from_weights(S(), {q(1, 2), q(1, 2)});
  const Valuation b = valuation_from_weights(S(), {q(1, 3), q(2, 3)});
  const Valuation p = product_valuation(ss, a, b);
  const PointSet u = ss.rectangle(set({1}), S().all()) | ss.rectangle(S().all(), set({1}));
  EXPECT_EQ(p(u), q(5, 6));
  for (auto x : S().opens())
    for (auto y : S().opens()) EXPECT_EQ(p(ss.rectangle(x, y)), a(x) * b(y));
  const Valuation inf = valuation_from_weights(S(), {ExtRational::infinity(), q(1)});
  const Valuation pi = product_valuation(ss, inf, b);
  EXPECT_EQ(pi(ss.space.all()), ExtRational::infinity());
  EXPECT_EQ(pi(ss.rectangle(set({1}), set({1}))), q(2, 3));
}

TEST(Valuation, Portmanteau) {
  const Valuation h = valuation_from_weights(S(), {q(1, 2), q(1, 2)});
  const LowerSemiFn g(S(), {q(1), q(2)});
  const auto cert = portmanteau_witness(h, g, Rational(1));
  EXPECT_FALSE(lawcheck::check_certificate(cert, h, g, Rational(1)).has_value());
  const auto single = portmanteau_witness(h, LowerSemiFn::indicator(S(), set({1})), Rational(1, 4));
  ASSERT_EQ(single.size(), 1U);
  EXPECT_EQ(single[0].open, set({1}));
  EXPECT_TRUE(in_theta(h, set({1}), Rational(1, 4)));
  EXPECT_FALSE(in_theta(h, set({1}), Rational(1, 2)));
}

TEST(Valuation, Orders) {
  const Valuation a = valuation_from_weights(S(), {q(1, 2), q(0)});
  const Valuation b = valuation_from_weights(S(), {q(0), q(1, 2)});
  const OrderReport r = order_checks(a, b);
  EXPECT_TRUE(r.opens_order);
  EXPECT_TRUE(r.integrals_order);
  EXPECT_FALSE(order_checks(b, a).opens_order);
  EXPECT_EQ(kind_of([&] { order_checks(a, b, Relation{{0, 0}, {1, 1}}); }), ErrorKind::OrderNotClosed);
}

TEST(Probability, Extension) {
  const Valuation nu(S(), {q(0), q(1, 3), q(1)});
  const FiniteMeasure m = extend_to_measure(nu);
  EXPECT_EQ(m.weights, (std::vector<ExtRational>{q(2, 3), q(1, 3)}));
  const LowerSemiFn g(S(), {q(1), q(2)});
  EXPECT_EQ(integrate_measure(m, g), q(4, 3));
  EXPECT_EQ(integrate(nu, g), q(4, 3));
  EXPECT_EQ(extend_to_measure(unit_delta(S(), 1)).weights, (std::vector<ExtRational>{q(0), q(1)}));
  EXPECT_EQ(integrate_measure(extend_to_measure(Valuation::zero(S())), g), q(0));
  const Valuation inf = valuation_from_weights(S(), {ExtRational::infinity(), q(0)});
  EXPECT_EQ(kind_of([&] { extend_to_measure(inf); }), ErrorKind::InfiniteMass);
}

TEST(Probability, ExtensionNonT0) {
  const auto ind = FiniteSpace::indiscrete(2);
  const FiniteMeasure m = extend_to_measure(unit_delta(ind, 0));
  ASSERT_TRUE(m.quotient.has_value());
  EXPECT_EQ(m.weights, (std::vector<ExtRational>{q(1)}));
}

TEST(Probability, Moebius) {
  const auto mu = moebius_function(FiniteSpace::chain(3));
  EXPECT_EQ(mu[0][0], 1);
  EXPECT_EQ(mu[0][1], -1);
  EXPECT_EQ(mu[0][2], 0);
}

TEST(Probability, SubmonadAndProducts) {
  const SimpleSecondOrder xi(S(), {{q(1, 2), unit_delta(S(), 0)}, {q(1, 2), unit_delta(S(), 1)}});
  const ProbValuation e = mult_E_measure(xi);
  EXPECT_EQ(e.underlying(), valuation_from_weights(S(), {q(1, 2), q(1, 2)}));
  const ProbValuation single = mult_E_measure(SimpleSecondOrder::dirac(unit_delta(S(), 1)));
  EXPECT_EQ(single.underlying(), unit_delta(S(), 1));

  const Product ss = product(S(), S());
  const ProbValuation u(valuation_from_weights(S(), {q(1, 2), q(1, 2)}));
  const FiniteMeasure pm = extend_to_measure(product_measure(ss, u, u).underlying());
  for (const auto& w : pm.weights) EXPECT_EQ(w, q(1, 4));
  EXPECT_EQ(kind_of([] { ProbValuation(unit_delta(S(), 0) + unit_delta(S(), 1)); }), ErrorKind::NotNormalized);
  EXPECT_TRUE(in_A_open(u, set({1}), Rational(1, 3)));
  EXPECT_FALSE(in_A_open(u, set({1}), Rational(1, 2)));
}

TEST(Support, Examples) {
  EXPECT_EQ(support(unit_delta(S(), 1)).members(), set({0, 1}));
  EXPECT_EQ(support(unit_delta(S(), 0)).members(), set({0}));
  EXPECT_TRUE(support(Valuation::zero(S())).members().empty());
  const auto w = FiniteSpace::w_lattice();
  for (std::size_t x = 0; x < w.size(); ++x) EXPECT_EQ(support(unit_delta(w, x)), unit_sigma(w, x));
  const Valuation h = valuation_from_weights(S(), {q(1, 2), q(0)});
  EXPECT_TRUE(support_test_lsc(h, LowerSemiFn(S(), {q(1), q(1)})));
  EXPECT_FALSE(support_test_lsc(h, LowerSemiFn::indicator(S(), set({1}))));
}

TEST(Support, MorphismDiagrams) {
  const auto w = FiniteSpace::w_lattice();
  const SimpleSecondOrder xi(w, {{q(1, 2), unit_delta(w, 1)}, {q(2), valuation_from_weights(w, {q(0), q(0), q(1), q(0)})}});
  EXPECT_TRUE(check_monad_morphism(w, {xi}).ok());
  const Product ws = product(w, S());
  EXPECT_TRUE(check_supp_monoidal(ws, unit_delta(w, 2), valuation_from_weights(S(), {q(1), q(0)})).ok());
  const ContinuousMap f(w, S(), {0, 0, 1, 1});
  EXPECT_TRUE(check_supp_naturality(f, valuation_from_weights(w, {q(0), q(1), q(0), q(0)})).ok());
}

TEST(Support, InducedConeOnW) {
  const auto w = FiniteSpace::w_lattice();
  const InducedVAlgebra e(w, *join_of_closed_sets(w));
  EXPECT_EQ(e.plus(1, 2), 3U);
  EXPECT_EQ(e.plus(0, 1), 1U);
  for (std::size_t x = 0; x < 4; ++x) {
    EXPECT_EQ(e.scale(q(0), x), 0U);
    EXPECT_EQ(e.plus(x, x), x);
  }
  EXPECT_EQ(e.zero(), 0U);
  EXPECT_TRUE(e.check_cone(default_scalar_grid()).ok());
  const auto d = FiniteSpace::discrete(2);
  EXPECT_EQ(kind_of([&] { InducedVAlgebra(d, std::vector<std::size_t>(4, 0)); }), ErrorKind::NotAnHAlgebra);
}

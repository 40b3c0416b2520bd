#include <gtest/gtest.h>

#include <algorithm>

#include "powerdomain/hyperspace.hpp"
#include "powerdomain/topology.hpp"

using namespace powerdomain;

namespace {

PointSet set(std::initializer_list<std::size_t> xs) {
  PointSet s;
  for (auto x : xs) s = s.with(x);
  return s;
}

std::size_t count_up_sets(const FiniteSpace& x) {
  std::size_t n = 0;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << x.size()); ++b) {
    const PointSet s(b);
    bool up = true;
    for (auto p : s) up = up && x.up(p).subset_of(s);
    n += up;
  }
  return n;
}

}  // namespace

TEST(Topology, SierpinskiFromPreorder) {
  const auto s = FiniteSpace::from_preorder({"0", "1"}, Relation{{0, 0}, {1, 1}, {0, 1}});
  EXPECT_EQ(s.opens(), (std::vector<PointSet>{PointSet{}, set({1}), set({0, 1})}));
  EXPECT_EQ(s, FiniteSpace::sierpinski());
}

TEST(Topology, OnePointAndW) {
  EXPECT_EQ(FiniteSpace::one_point().opens().size(), 2U);
  const auto w = FiniteSpace::w_lattice();
  EXPECT_EQ(w.opens().size(), 6U);
  EXPECT_EQ(count_up_sets(w), 6U);
}

TEST(Topology, RejectsBadPreorders) {
  EXPECT_THROW(FiniteSpace::from_preorder({"a", "b"}, Relation{{0, 0}}), Error);
  try {
    FiniteSpace::from_preorder({"a", "b", "c"}, Relation{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAPreorder);
  }
}

TEST(Topology, RejectsNonTopologies) {
  try {
    FiniteSpace::from_opens({"a", "b", "c"}, {PointSet{}, set({0}), set({1}), set({0, 1, 2})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotATopology);
  }
}

TEST(Topology, Specialization) {
  EXPECT_EQ(specialization(FiniteSpace::sierpinski()), (Relation{{0, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(specialization(FiniteSpace::discrete(2)), (Relation{{0, 0}, {1, 1}}));
  EXPECT_EQ(specialization(FiniteSpace::indiscrete(2)).size(), 4U);
}

TEST(Topology, Closure) {
  const auto s = FiniteSpace::sierpinski();
  EXPECT_EQ(closure(s, set({1})), set({0, 1}));
  EXPECT_EQ(closure(s, PointSet{}), PointSet{});
  EXPECT_EQ(closure(FiniteSpace::discrete(3), set({0, 2})), set({0, 2}));
}

TEST(Topology, Products) {
  const auto s = FiniteSpace::sierpinski();
  const Product ss = product(s, s);
  EXPECT_EQ(ss.space.size(), 4U);
  // 9 rectangles U × V, of which 5 are distinct; one more open is their union
  // {1}×S ∪ S×{1}.
  EXPECT_EQ(ss.space.opens().size(), 6U);
  std::vector<PointSet> rects;
  for (auto u : s.opens())
    for (auto v : s.opens()) rects.push_back(ss.rectangle(u, v));
  EXPECT_EQ(generate_topology(4, rects), ss.space.opens());

  const Product d = product(FiniteSpace::discrete(2), FiniteSpace::discrete(2));
  EXPECT_EQ(d.space.opens().size(), 16U);

  const Product x1 = product(FiniteSpace::w_lattice(), FiniteSpace::one_point());
  EXPECT_TRUE(is_equivalence(x1.first).equivalent);
  EXPECT_EQ(x1.space.opens().size(), 6U);
}

TEST(Topology, Separation) {
  EXPECT_EQ(check_separation(FiniteSpace::sierpinski()), (Separation{true, false, true}));
  EXPECT_EQ(check_separation(FiniteSpace::indiscrete(2)), (Separation{false, false, false}));
  EXPECT_EQ(check_separation(FiniteSpace::discrete(3)), (Separation{true, true, true}));
}

TEST(Topology, KolmogorovQuotient) {
  EXPECT_EQ(kolmogorov_quotient(FiniteSpace::indiscrete(2)).space.size(), 1U);
  const auto s = FiniteSpace::sierpinski();
  const Quotient q = kolmogorov_quotient(s);
  EXPECT_EQ(q.space.size(), 2U);
  EXPECT_EQ(q.map.image(s.all()), q.space.all());
  // x ~ y, z isolated
  const auto x = FiniteSpace::from_preorder({"x", "y", "z"}, Relation{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 0}});
  const Quotient qx = kolmogorov_quotient(x);
  EXPECT_EQ(qx.space.size(), 2U);
  EXPECT_EQ(qx.space.opens().size(), 4U);
}

TEST(Topology, TwoCells) {
  const auto s = FiniteSpace::sierpinski();
  const auto one = FiniteSpace::one_point();
  const auto c0 = ContinuousMap::constant(one, s, 0);
  const auto c1 = ContinuousMap::constant(one, s, 1);
  EXPECT_TRUE(le_2cell(c0, c0));
  EXPECT_TRUE(le_2cell(c0, c1));
  EXPECT_FALSE(le_2cell(c1, c0));
}

TEST(Topology, Equivalences) {
  const auto s = FiniteSpace::sierpinski();
  const auto id = is_equivalence(ContinuousMap::identity(s));
  ASSERT_TRUE(id.equivalent);
  EXPECT_EQ(*id.quasi_inverse, ContinuousMap::identity(s));
  EXPECT_TRUE(is_equivalence(ContinuousMap::constant(FiniteSpace::indiscrete(2), FiniteSpace::one_point(), 0)).equivalent);
  EXPECT_FALSE(is_equivalence(ContinuousMap::constant(s, FiniteSpace::one_point(), 0)).equivalent);
}

TEST(Topology, WayBelow) {
  const auto s = FiniteSpace::sierpinski();
  EXPECT_TRUE(way_below(s, PointSet{}, set({1})));
  EXPECT_TRUE(way_below(s, s.all(), s.all()));
  EXPECT_FALSE(way_below(s, s.all(), set({1})));
}

TEST(Topology, SubspaceAndInterior) {
  const auto w = FiniteSpace::w_lattice();
  const Subspace sub = subspace(w, set({1, 2}));
  EXPECT_EQ(sub.space.opens().size(), 4U);
  EXPECT_EQ(interior(w, set({1, 3})), set({1, 3}));
  EXPECT_EQ(interior(w, set({0, 1})), PointSet{});
}

TEST(Hyperspace, Sierpinski) {
  const auto s = FiniteSpace::sierpinski();
  const Hyperspace h = build_hyperspace(s);
  EXPECT_EQ(h.closed_sets, (std::vector<PointSet>{PointSet{}, set({0}), set({0, 1})}));
  EXPECT_EQ(h.space.opens().size(), 4U);
  EXPECT_TRUE(h.space.leq(0, 1) && h.space.leq(1, 2));
  std::vector<PointSet> hits{h.hit_set(set({1})), h.hit_set(s.all())};
  EXPECT_EQ(generate_topology(3, hits), h.space.opens());
}

TEST(Hyperspace, EmptyAndDiscrete) {
  EXPECT_EQ(build_hyperspace(FiniteSpace()).size(), 1U);
  const Hyperspace h = build_hyperspace(FiniteSpace::discrete(2));
  EXPECT_EQ(h.size(), 4U);
  EXPECT_EQ(h.space.opens().size(), 6U);
}

TEST(Hyperspace, Hit) {
  const auto s = FiniteSpace::sierpinski();
  EXPECT_FALSE(hit(ClosedSet(s, PointSet{}), s.all()));
  EXPECT_FALSE(hit(ClosedSet(s, set({0})), set({1})));
  EXPECT_TRUE(hit(ClosedSet(s, set({0, 1})), set({1})));
  const auto w = FiniteSpace::w_lattice();
  for (auto c : closed_sets_of(w))
    for (auto u : w.opens())
      for (auto v : w.opens())
        EXPECT_EQ(hit(ClosedSet(w, c), u | v), hit(ClosedSet(w, c), u) || hit(ClosedSet(w, c), v));
}

TEST(Hyperspace, Duality) {
  const auto w = FiniteSpace::w_lattice();
  for (auto c : closed_sets_of(w)) {
    const ClosedSet cs(w, c);
    EXPECT_EQ(closed_of_functional(functional_of_closed(cs)), cs);
  }
  const HitFunctional whole = functional_of_closed(ClosedSet(w, w.all()));
  for (auto u : w.opens()) EXPECT_EQ(whole(u), !u.empty());
  std::vector<bool> strictness_broken(w.opens().size(), true);
  EXPECT_THROW(HitFunctional(w, strictness_broken), Error);
  EXPECT_THROW(ClosedSet(w, set({3})), Error);
}

TEST(Hyperspace, PushAndUnit) {
  const auto s = FiniteSpace::sierpinski();
  const auto d = FiniteSpace::discrete(2);
  const ContinuousMap f(d, s, {1, 1});
  EXPECT_EQ(push_closed(f, ClosedSet(d, set({0}))).members(), set({0, 1}));
  EXPECT_EQ(push_closed(ContinuousMap::identity(s), ClosedSet(s, set({0}))).members(), set({0}));
  EXPECT_EQ(unit_sigma(s, 1).members(), set({0, 1}));
  EXPECT_EQ(unit_sigma(d, 1).members(), set({1}));
}

TEST(Hyperspace, Union) {
  const auto s = FiniteSpace::sierpinski();
  const Hyperspace h = build_hyperspace(s);
  EXPECT_EQ(mult_union(h, PointSet::singleton(0)).members(), PointSet{});
  EXPECT_EQ(mult_union(h, set({0, 1})).members(), set({0}));
  EXPECT_EQ(mult_union(h, set({0, 1, 2})).members(), s.all());
}

TEST(Hyperspace, UnitClosureMembership) {
  const auto d = FiniteSpace::discrete(2);
  EXPECT_FALSE(unit_closure_membership(d, ClosedSet(d, set({0, 1}))));
  for (std::size_t p = 0; p < 2; ++p) EXPECT_TRUE(unit_closure_membership(d, unit_sigma(d, p)));
  const auto w = FiniteSpace::w_lattice();
  for (auto c : closed_sets_of(w)) EXPECT_TRUE(unit_closure_membership(w, ClosedSet(w, c)));
  EXPECT_TRUE(sigma_is_embedding(w));
  EXPECT_FALSE(sigma_is_embedding(FiniteSpace::indiscrete(2)));
}

TEST(Hyperspace, Strength) {
  const auto s = FiniteSpace::sierpinski();
  const Product ss = product(s, s);
  EXPECT_TRUE(strength_H(ss, 1, ClosedSet(s, PointSet{})).members().empty());
  EXPECT_EQ(strength_H(ss, 1, ClosedSet(s, s.all())).members(), ss.space.all());
  EXPECT_TRUE(product_closed(ss, ClosedSet(s, PointSet{}), ClosedSet(s, s.all())).members().empty());
  EXPECT_EQ(product_closed(ss, ClosedSet(s, s.all()), ClosedSet(s, s.all())).members(), ss.space.all());
}

TEST(Hyperspace, Algebras) {
  const auto w = FiniteSpace::w_lattice();
  const auto join = join_of_closed_sets(w);
  ASSERT_TRUE(join.has_value());
  const HAlgebraVerdict v = check_H_algebra(w, *join);
  EXPECT_TRUE(v.is_algebra());
  EXPECT_TRUE(v.is_tcjs());
  EXPECT_TRUE(v.consistent());

  const auto d = FiniteSpace::discrete(2);
  EXPECT_FALSE(join_of_closed_sets(d).has_value());
  const Hyperspace hd = build_hyperspace(d);
  std::vector<std::size_t> any(hd.size(), 0);
  EXPECT_FALSE(check_H_algebra(d, any).is_algebra());

  const auto one = FiniteSpace::one_point();
  EXPECT_TRUE(check_H_algebra(one, {0, 0}).is_algebra());
}

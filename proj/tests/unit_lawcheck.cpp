#include <gtest/gtest.h>

#include <set>

#include "powerdomain/lawcheck/generators.hpp"
#include "powerdomain/lawcheck/instance.hpp"
#include "powerdomain/lawcheck/mutations.hpp"
#include "powerdomain/lawcheck/suites.hpp"

using namespace powerdomain;
using namespace powerdomain::lawcheck;

namespace {

const Mutant& mutant(const std::string& name) {
  static const auto all = mutants();
  for (const auto& m : all)
    if (m.name == name) return m;
  throw std::runtime_error("no mutant " + name);
}

}  // namespace

TEST(Generators, Determinism) {
  GenConfig cfg;
  cfg.seed = 9;
  const auto& s = find_suite("v-monad");
  for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(generate_instance(s, cfg, i), generate_instance(s, cfg, i));
  cfg.seed = 10;
  GenConfig other;
  other.seed = 9;
  bool differs = false;
  for (std::size_t i = 12; i < 30; ++i) differs = differs || !(generate_instance(s, cfg, i) == generate_instance(s, other, i));
  EXPECT_TRUE(differs);
}

TEST(Generators, CorpusFirst) {
  GenConfig cfg;
  cfg.max_points = 4;
  Rng rng(0);
  const auto corpus = canned_corpus();
  for (std::size_t i = 0; i < corpus.size(); ++i) EXPECT_EQ(space_at(cfg, i, rng), corpus[i]);
}

TEST(Generators, MaxPointsZero) {
  GenConfig cfg;
  cfg.max_points = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    Rng rng(instance_seed(1, "spaces", i));
    EXPECT_EQ(space_at(cfg, i, rng).size(), 0U);
  }
}

TEST(Generators, HitsAllThreePointTopologies) {
  GenConfig cfg;
  std::set<std::vector<PointSet>> seen;
  for (std::size_t i = 0; i < 10000; ++i) {
    Rng rng(instance_seed(3, "coupon", i));
    const FiniteSpace x = random_space(rng, 3);
    seen.insert(x.opens());
  }
  EXPECT_EQ(seen.size(), 29U);
}

TEST(Generators, Valuations) {
  GenConfig cfg;
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const FiniteSpace x = random_space(rng, 3);
    EXPECT_NO_THROW(random_valuation_table(rng, cfg, x, true));
    const auto p = random_probability(rng, cfg, x.size());
    ExtRational total;
    for (const auto& v : p) total += v;
    if (x.size() > 0) EXPECT_EQ(total, ExtRational(1));
    EXPECT_NO_THROW(LowerSemiFn(x, random_lsc_values(rng, cfg, x)));
    if (x.size() > 0) EXPECT_NO_THROW(ContinuousMap(x, x, random_map(rng, x, x)));
  }
}

TEST(Instance, JsonRoundTrip) {
  GenConfig cfg;
  for (const auto& s : all_suites())
    for (std::size_t i = 0; i < 15; ++i) {
      const Instance in = generate_instance(s, cfg, i);
      EXPECT_EQ(Instance::from_json(in.to_json()), in) << s.name << " " << i;
    }
}

TEST(Shrink, FivePointChainShrinksToTwo) {
  const auto& suite = find_suite("supp-unit");
  const Ops& ops = mutant("sigma_singleton").ops;
  Instance in;
  in.spaces.push_back(FiniteSpace::chain(5));
  in.valuations.push_back({0, std::vector<ExtRational>(5, ExtRational(1, 3))});
  in.valuations.push_back({0, std::vector<ExtRational>(5, ExtRational(2))});
  in.functions.push_back({0, std::vector<ExtRational>(5, ExtRational(1))});
  auto eval = [&](const Instance& i) { return evaluate(suite, i, ops); };
  ASSERT_EQ(eval(in).status, Status::Fail);
  const Instance out = shrink(in, eval);
  EXPECT_EQ(out.spaces[0].size(), 2U);
  EXPECT_EQ(eval(out).status, Status::Fail);
  EXPECT_TRUE(out.size().dominated_by(in.size()));
  EXPECT_EQ(shrink(out, eval), out);
}

TEST(Shrink, RejectsPassingInput) {
  const auto& suite = find_suite("supp-unit");
  GenConfig cfg;
  const Instance in = generate_instance(suite, cfg, 3);
  try {
    (void)shrink(in, [&](const Instance& i) { return evaluate(suite, i, reference_ops()); });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAFailure);
  }
}

TEST(Suites, Names) {
  const std::vector<std::string> expected{"h-monad", "h-strength", "h-algebra", "v-monad", "v-strength",
                                          "v-fubini", "v-duality", "v-portmanteau", "p-submonad", "p-extension",
                                          "p-product", "supp-unit", "supp-mult", "supp-natural", "supp-monoidal",
                                          "algebra-transfer", "topology-core", "appendixA-2cells",
                                          "appendixC-morphism-equivalence"};
  std::vector<std::string> names;
  for (const auto& s : all_suites()) names.push_back(s.name);
  EXPECT_EQ(names, expected);
  try {
    (void)find_suite("bogus");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownSuite);
  }
}

TEST(Suites, DeterministicAcrossJobs) {
  GenConfig cfg;
  cfg.seed = 4;
  cfg.instance_count = 60;
  RunOptions one, two;
  two.jobs = 3;
  const Mutant& m = mutant("push_image_no_closure");
  one.ops = two.ops = &m.ops;
  const SuiteReport a = run_suite("h-monad", cfg, one);
  const SuiteReport b = run_suite("h-monad", cfg, two);
  EXPECT_GT(a.failures, 0U);
  EXPECT_EQ(a.content(), b.content());
}

TEST(Suites, ReplayedFailuresFail) {
  GenConfig cfg;
  cfg.instance_count = 40;
  RunOptions opt;
  const Mutant& m = mutant("integrate_strict_levels");
  opt.ops = &m.ops;
  const SuiteReport r = run_suite("v-duality", cfg, opt);
  ASSERT_FALSE(r.failure_records.empty());
  const auto& suite = find_suite("v-duality");
  for (const auto& f : r.failure_records) {
    EXPECT_EQ(evaluate(suite, generate_instance(suite, cfg, f.index), m.ops).status, Status::Fail);
    EXPECT_EQ(evaluate(suite, Instance::from_json(f.shrunk.to_json()), m.ops).status, Status::Fail);
    EXPECT_EQ(evaluate(suite, f.shrunk, reference_ops()).status, Status::Pass);
  }
}

TEST(Suites, SmallRunsPass) {
  GenConfig cfg;
  cfg.instance_count = 25;
  for (const auto& s : all_suites()) {
    const SuiteReport r = run_suite(s.name, cfg);
    EXPECT_EQ(r.failures, 0U) << s.name << (r.failure_records.empty() ? "" : ": " + r.failure_records[0].witness);
  }
}

// Acceptance gate: one line per criterion, exact arithmetic throughout.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "powerdomain/powerdomain.hpp"

namespace pd = powerdomain;
namespace lc = powerdomain::lawcheck;
using nlohmann::json;
using pd::ClosedSet;
using pd::FiniteSpace;
using pd::PointSet;

namespace {

struct Check {
  bool ok = true;
  std::string note;
  void that(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

struct Shell {
  int code = -1;
  std::string out;
};

Shell run(const std::string& cmd) {
  Shell r;
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string cli() { return POWERDOMAIN_CLI; }
std::string data(const std::string& f) { return std::string(POWERDOMAIN_EXAMPLES) + "/" + f; }

/// Every preorder on n labelled points.
std::vector<FiniteSpace> all_topologies(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> off;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) off.emplace_back(a, b);
  std::vector<FiniteSpace> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << off.size()); ++mask) {
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a) le[a][a] = true;
    for (std::size_t i = 0; i < off.size(); ++i)
      if ((mask >> i) & 1U) le[off[i].first][off[i].second] = true;
    bool transitive = true;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (le[a][b] && le[b][c] && !le[a][c]) transitive = false;
    if (!transitive) continue;
    pd::Relation rel;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (le[a][b]) rel.emplace_back(a, b);
    out.push_back(FiniteSpace::from_preorder(FiniteSpace::default_names(n), rel));
  }
  return out;
}

/// H-monad unit laws exhaustively, associativity on HHHX elements (all of
/// them, or `sample` random ones when there are more). Returns the number of
/// HHHX elements checked.
std::size_t h_monad_laws(const FiniteSpace& x, std::size_t sample, lc::Rng& rng, Check& c) {
  const pd::Ops& ops = pd::reference_ops();
  const pd::Hyperspace hx = pd::build_hyperspace(x);
  std::vector<std::size_t> sig;
  for (std::size_t p = 0; p < x.size(); ++p) sig.push_back(hx.index_of(ops.unit_sigma(x, p).members()));
  const pd::ContinuousMap sigma(x, hx.space, sig);
  for (std::size_t i = 0; i < hx.size(); ++i) {
    const ClosedSet k = hx.closed(i);
    c.that(ops.mult_union(hx, ops.unit_sigma(hx.space, i).members()) == k, "𝒰∘σ = id");
    c.that(ops.mult_union(hx, ops.push_closed(sigma, k).members()) == k, "𝒰∘Hσ = id");
  }
  const pd::Hyperspace hhx = pd::build_hyperspace(hx.space);
  std::vector<std::size_t> ut;
  for (std::size_t i = 0; i < hhx.size(); ++i) ut.push_back(hx.index_of(ops.mult_union(hx, hhx.closed_sets[i]).members()));
  const pd::ContinuousMap u(hhx.space, hx.space, ut);
  const auto all = pd::closed_sets_of(hhx.space);
  std::vector<PointSet> chosen = all;
  if (all.size() > sample) {
    std::set<std::size_t> picked;
    while (picked.size() < sample) picked.insert(rng.below(all.size()));
    chosen.clear();
    for (auto i : picked) chosen.push_back(all[i]);
  }
  for (auto phi : chosen) {
    const ClosedSet lhs = ops.mult_union(hx, ops.mult_union(hhx, phi).members());
    const ClosedSet rhs = ops.mult_union(hx, ops.push_closed(u, ClosedSet(hhx.space, phi)).members());
    c.that(lhs == rhs, "𝒰∘𝒰 = 𝒰∘H𝒰");
  }
  return chosen.size();
}

lc::SuiteReport suite(const std::string& name, std::size_t count, std::size_t max_points = 3) {
  lc::GenConfig cfg;
  cfg.seed = 42;
  cfg.max_points = max_points;
  cfg.instance_count = count;
  return lc::run_suite(name, cfg);
}

void suite_clean(Check& c, const lc::SuiteReport& r, std::size_t at_least) {
  c.that(r.instances >= at_least, r.name + ": too few instances");
  c.that(r.failures == 0,
         r.name + ": " + std::to_string(r.failures) + " failures" +
             (r.failure_records.empty() ? "" : " (" + r.failure_records[0].witness + ")"));
  c.that(r.invalid == 0, r.name + ": " + std::to_string(r.invalid) + " invalid instances");
}

Check criterion_1() {
  Check c;
  lc::Rng rng(1);
  const auto two = all_topologies(2);
  const auto three = all_topologies(3);
  c.that(two.size() == 4, "4 topologies on 2 points");
  c.that(three.size() == 29, "29 topologies on 3 points");
  for (const auto& x : two) {
    const std::size_t total = pd::closed_sets_of(pd::build_hyperspace(pd::build_hyperspace(x).space).space).size();
    c.that(h_monad_laws(x, SIZE_MAX, rng, c) == total, "2-point associativity exhaustive");
  }
  for (const auto& x : three) {
    const std::size_t total = pd::closed_sets_of(pd::build_hyperspace(pd::build_hyperspace(x).space).space).size();
    c.that(h_monad_laws(x, 100, rng, c) >= std::min<std::size_t>(100, total), "3-point associativity sample");
  }
  return c;
}

std::vector<FiniteSpace> stream_spaces(std::size_t count, std::size_t max_points, std::uint64_t seed) {
  lc::GenConfig cfg;
  cfg.seed = seed;
  cfg.max_points = max_points;
  std::vector<FiniteSpace> out;
  for (std::size_t i = 0; i < count; ++i) {
    lc::Rng rng(lc::instance_seed(seed, "spaces", i));
    out.push_back(lc::space_at(cfg, i, rng));
  }
  return out;
}

Check criterion_2() {
  Check c;
  std::size_t checked = 0;
  for (const auto& x : stream_spaces(200, 4, 42)) {
    const auto closed = pd::closed_sets_of(x);
    for (auto k : closed)
      c.that(pd::closed_of_functional(pd::functional_of_closed(ClosedSet(x, k))).members() == k, "round trip");
    const lc::DualityCensus census = lc::brute_force_duality(x);
    c.that(census.tables == (std::uint64_t{1} << x.opens().size()), "all tables enumerated");
    c.that(census.matches_closed_sets && census.valid == closed.size(), "valid functionals = closed sets");
    ++checked;
  }
  c.that(checked >= 200, "at least 200 spaces");
  return c;
}

Check criterion_3() {
  Check c;
  auto spaces = stream_spaces(200, 4, 7);
  for (std::size_t n = 0; n <= 3; ++n)
    for (auto& x : all_topologies(n)) spaces.push_back(x);
  for (const auto& x : spaces) {
    const pd::Hyperspace hx = pd::build_hyperspace(x);
    std::vector<PointSet> hits;
    for (auto u : x.opens()) hits.push_back(hx.hit_set(u));
    c.that(pd::generate_topology(hx.size(), hits) == hx.space.opens(), "lower Vietoris = up-sets of inclusion");
    for (std::size_t i = 0; i < hx.size(); ++i)
      for (std::size_t j = 0; j < hx.size(); ++j)
        c.that(hx.space.leq(i, j) == hx.closed_sets[i].subset_of(hx.closed_sets[j]), "specialization is inclusion");
  }
  return c;
}

Check criterion_4() {
  Check c;
  lc::GenConfig cfg;
  cfg.max_points = 5;
  cfg.weight_denominator_bound = 16;
  std::size_t n = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    lc::Rng rng(lc::instance_seed(42, "integration", i));
    const FiniteSpace x = lc::space_at(cfg, i, rng);
    const pd::Valuation nu = pd::valuation_from_weights(x, lc::random_weights(rng, cfg, x.size()));
    const pd::LowerSemiFn g(x, lc::random_lsc_values(rng, cfg, x));
    c.that(pd::integrate(nu, g) == lc::integral_by_dominated_simple(nu, g), "layer cake = dominated simple sup");
    ++n;
  }
  c.that(n >= 500, "at least 500 instances");
  return c;
}

Check criterion_5() {
  Check c;
  suite_clean(c, suite("v-monad", 500, 3), 500);
  return c;
}

Check criterion_6() {
  Check c;
  for (const char* s : {"h-strength", "v-strength", "v-fubini"}) suite_clean(c, suite(s, 200), 200);
  return c;
}

Check criterion_7() {
  Check c;
  lc::GenConfig cfg;
  cfg.max_points = 4;
  cfg.allow_infinity = false;
  std::size_t t0 = 0;
  for (std::size_t i = 0; t0 < 500 && i < 5000; ++i) {
    lc::Rng rng(lc::instance_seed(42, "extension", i));
    const FiniteSpace x = lc::space_at(cfg, i, rng);
    if (!pd::check_separation(x).is_t0) continue;
    const auto w = lc::random_weights(rng, cfg, x.size(), true);
    const pd::Valuation nu = pd::valuation_from_weights(x, w);
    const pd::FiniteMeasure m = pd::extend_to_measure(nu);
    c.that(!m.quotient.has_value(), "no quotient on T0 spaces");
    c.that(m.weights == w, "weights recovered");
    c.that(pd::valuation_from_weights(x, m.weights) == nu, "ν ↦ weights ↦ ν");
    for (const auto& v : m.weights) c.that(v >= pd::ExtRational(0), "weights nonnegative");
    ++t0;
  }
  c.that(t0 >= 500, "at least 500 T0 instances");
  suite_clean(c, suite("p-submonad", 300), 300);
  suite_clean(c, suite("p-product", 200), 200);
  return c;
}

Check criterion_8() {
  Check c;
  lc::GenConfig cfg;
  cfg.seed = 42;
  cfg.instance_count = 500;
  std::set<std::string> spaces;
  const lc::SuiteDef& mult = lc::find_suite("supp-mult");
  for (std::size_t i = 0; i < cfg.instance_count; ++i)
    spaces.insert(lc::generate_instance(mult, cfg, i).to_json()["spaces"][0].dump());
  c.that(spaces.size() >= 20, "molecular ξ across at least 20 spaces");
  suite_clean(c, suite("supp-unit", 500), 500);
  suite_clean(c, suite("supp-mult", 500), 500);
  suite_clean(c, suite("supp-natural", 500), 500);
  suite_clean(c, suite("supp-monoidal", 200), 200);
  suite_clean(c, suite("p-extension", 500), 500);
  return c;
}

Check criterion_9() {
  Check c;
  lc::GenConfig cfg;
  cfg.max_points = 4;
  std::size_t certified = 0;
  for (std::size_t i = 0; certified < 200 && i < 5000; ++i) {
    lc::Rng rng(lc::instance_seed(42, "portmanteau", i));
    const FiniteSpace x = lc::nonempty_space_at(cfg, i, rng, 4);
    const pd::Valuation nu = pd::valuation_from_weights(x, lc::random_weights(rng, cfg, x.size()));
    const pd::LowerSemiFn f(x, lc::random_lsc_values(rng, cfg, x));
    const pd::ExtRational value = pd::integrate(nu, f);
    if (!value.is_positive()) continue;
    const std::int64_t q = rng.between(2, 16);
    const pd::Rational r = value.is_infinite() ? rng.positive_rational(16, 50)
                                               : pd::Rational(rng.between(0, q - 1), q) * value.finite();
    const auto cert = pd::portmanteau_witness(nu, f, r);
    const auto err = lc::check_certificate(cert, nu, f, r);
    c.that(!err.has_value(), err.value_or(""));
    ++certified;
  }
  c.that(certified >= 200, "at least 200 certificates");
  return c;
}

Check criterion_10() {
  Check c;
  lc::GenConfig cfg;  // default configuration
  for (const auto& m : lc::mutants()) {
    bool detected = false;
    for (const auto& s : lc::all_suites()) {
      lc::RunOptions opt;
      opt.ops = &m.ops;
      opt.shrink_limit = 1;
      const lc::SuiteReport r = lc::run_suite(s.name, cfg, opt);
      if (r.failures == 0) continue;
      const auto& f = r.failure_records.at(0);
      const bool refails = lc::evaluate(s, f.shrunk, m.ops).status == lc::Status::Fail;
      const bool replays = lc::evaluate(s, lc::generate_instance(s, cfg, f.index), m.ops).status == lc::Status::Fail;
      c.that(refails && replays, m.name + ": shrunk witness does not re-fail");
      detected = true;
      break;
    }
    c.that(detected, m.name + " not detected");
  }
  return c;
}

Check criterion_11() {
  Check c;
  auto cmd = [](const std::string& args) { return run(cli() + " " + args); };
  const Shell info = cmd("space info " + data("sierpinski.json"));
  c.that(info.code == 0, "space info exit code");
  const json ij = json::parse(info.out);
  c.that(ij["T0"] == true && ij["T1"] == false && ij["sober"] == true && ij["opens"] == 3, "space info flags");
  const Shell hyper = cmd("space hyper " + data("sierpinski.json"));
  const FiniteSpace h = pd::io::parse_space(json::parse(hyper.out));
  c.that(hyper.code == 0 && h.size() == 3 && h.opens().size() == 4 && pd::check_separation(h).is_t0,
         "hyperspace is the 3-point chain");
  const Shell supp = cmd("val supp " + data("delta_1.json"));
  c.that(supp.code == 0 && json::parse(supp.out) == json::array({"0", "1"}), "supp δ_1 = [0, 1]");
  const Shell ext = cmd("val extend " + data("nu_third.json"));
  c.that(ext.code == 0 && json::parse(ext.out) == json{{"0", "2/3"}, {"1", "1/3"}}, "extend weights");
  const Shell integ = cmd("val integrate " + data("nu_half.json") + " " + data("g_one_two.json"));
  c.that(integ.code == 0 && json::parse(integ.out) == "3/2", "integral 3/2");

  const FiniteSpace w = FiniteSpace::w_lattice();
  const auto join = pd::join_of_closed_sets(w);
  c.that(join.has_value(), "W is a complete lattice");
  if (join) {
    const pd::HAlgebraVerdict v = pd::check_H_algebra(w, *join);
    c.that(v.is_algebra() && v.is_tcjs() && v.consistent(), "W join is an H-algebra");
    const pd::InducedVAlgebra e(w, *join);
    for (std::size_t x = 0; x < 4; ++x) {
      for (std::size_t y = 0; y < 4; ++y) {
        const auto lub = pd::detail::least_upper_bound(w, pd::closure(w, PointSet::singleton(x).with(y)));
        c.that(lub && e.plus(x, y) == *lub, "x + y = x ∨ y");
      }
      c.that(e.scale(pd::ExtRational(0), x) == e.zero(), "0 · x = ⊥");
      c.that(e.scale(pd::ExtRational(1, 2), x) == x, "r · x = x for r > 0");
    }
    c.that(w.name(e.zero()) == "0", "⊥ is the bottom point");
  }
  return c;
}

Check criterion_12() {
  Check c;
  const Shell r = run(cli() + " laws all --seed 42 --max-points 3");
  c.that(r.code == 0, "laws all exit code " + std::to_string(r.code));
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Check()> body;
    double limit_seconds;
  };
  const std::vector<Criterion> criteria{
      {1, "H-monad laws on all 2- and 3-point topologies", criterion_1, 60},
      {2, "closed/functional duality with brute-force surjectivity", criterion_2, 0},
      {3, "lower Vietoris topology = up-sets of inclusion", criterion_3, 0},
      {4, "layer-cake integral = dominated simple supremum", criterion_4, 30},
      {5, "V-monad and Kleisli laws", criterion_5, 0},
      {6, "strength, commutativity and Fubini", criterion_6, 0},
      {7, "extension round trip, measure-level E, product marginals", criterion_7, 0},
      {8, "support is a strong monad morphism", criterion_8, 0},
      {9, "neighbourhood certificates pass the checker", criterion_9, 0},
      {10, "every mutant is detected", criterion_10, 0},
      {11, "named examples", criterion_11, 0},
      {12, "laws all --seed 42 --max-points 3", criterion_12, 300},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.body();
    } catch (const std::exception& e) {
      c.that(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit_seconds > 0) c.that(secs < cr.limit_seconds, "time limit exceeded");
    if (!c.ok) ++failed;
    std::printf("criterion %2d %s  %s (%.2f s)%s%s\n", cr.id, c.ok ? "PASS" : "FAIL", cr.title, secs,
                c.ok ? "" : ": ", c.note.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "powerdomain/io/json.hpp"
#include "powerdomain/probability.hpp"

using namespace powerdomain;
using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  Result r;
  const std::string cmd = std::string(POWERDOMAIN_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& f) { return std::string(POWERDOMAIN_EXAMPLES) + "/" + f; }

}  // namespace

TEST(Documents, SpaceRoundTrip) {
  for (const auto& x : {FiniteSpace::sierpinski(), FiniteSpace::w_lattice(), FiniteSpace::indiscrete(2), FiniteSpace()}) {
    const json d = io::space_document(x);
    EXPECT_EQ(io::parse_space(json::parse(d.dump())), x);
  }
  const json opens{{"points", {"0", "1"}}, {"opens", {json::array(), {"1"}, {"0", "1"}}}};
  EXPECT_EQ(io::parse_space(opens), FiniteSpace::sierpinski());
}

TEST(Documents, MalformedSpaces) {
  EXPECT_THROW(io::parse_space(json{{"points", {"a"}}}), io::MalformedDocument);
  EXPECT_THROW(io::parse_space(json{{"points", {"a", "a"}}, {"preorder", json::array()}}), io::MalformedDocument);
  EXPECT_THROW(io::parse_space(json{{"schema", 2}, {"points", {"a"}}, {"preorder", {{"a", "a"}}}}), io::MalformedDocument);
  EXPECT_THROW(io::parse_space(json{{"points", {"a"}}, {"preorder", {{"a", "a"}}}, {"opens", json::array()}}),
               io::MalformedDocument);
  const json missing_reflexive{{"points", {"a", "b"}}, {"preorder", json::array({json::array({"a", "a"})})}};
  EXPECT_THROW(io::parse_space(missing_reflexive), Error);
}

TEST(Documents, ValuationRoundTrip) {
  const auto s = FiniteSpace::sierpinski();
  const Valuation nu = valuation_from_weights(s, {ExtRational(1, 3), ExtRational::infinity()});
  EXPECT_EQ(io::parse_valuation(json::parse(io::valuation_document(nu).dump())), nu);
  const json bad{{"space", io::space_document(s)}, {"opens_checksum", "0"}, {"table", {{"0", "0"}, {"1", "1"}, {"2", "1"}}}};
  EXPECT_THROW(io::parse_valuation(bad), io::MalformedDocument);
  const json bad_rational{{"space", io::space_document(s)}, {"weights", {{"0", "1/0"}}}};
  EXPECT_THROW(io::parse_valuation(bad_rational), io::MalformedDocument);
  const json short_table{{"space", io::space_document(s)}, {"table", {{"0", "0"}, {"2", "1"}}}};
  EXPECT_THROW(io::parse_valuation(short_table), io::MalformedDocument);
}

TEST(Documents, OtherRoundTrips) {
  const auto s = FiniteSpace::sierpinski();
  const LowerSemiFn g(s, {ExtRational(1), ExtRational::infinity()});
  EXPECT_EQ(io::parse_function(json::parse(io::function_document(g).dump())).values(), g.values());
  const ContinuousMap f(s, s, {1, 1});
  EXPECT_EQ(io::parse_map(json::parse(io::map_document(f).dump())), f);
  const SimpleSecondOrder xi(s, {{ExtRational(1, 2), unit_delta(s, 0)}, {ExtRational(2), unit_delta(s, 1)}});
  const SimpleSecondOrder back = io::parse_second_order(json::parse(io::second_order_document(xi).dump()));
  EXPECT_EQ(mult_E(back), mult_E(xi));
}

TEST(Cli, SpaceCommands) {
  const Result info = run("space info " + data("sierpinski.json"));
  ASSERT_EQ(info.code, 0);
  const json j = json::parse(info.out);
  EXPECT_EQ(j["T0"], true);
  EXPECT_EQ(j["T1"], false);
  EXPECT_EQ(j["sober"], true);
  EXPECT_EQ(j["opens"], 3);

  const Result hyper = run("space hyper " + data("sierpinski.json"));
  ASSERT_EQ(hyper.code, 0);
  const FiniteSpace h = io::parse_space(json::parse(hyper.out));
  EXPECT_EQ(h.opens().size(), 4U);
  EXPECT_EQ(specialization(h).size(), 6U);

  const Result prod = run("space product " + data("sierpinski.json") + " " + data("sierpinski.json"));
  ASSERT_EQ(prod.code, 0);
  EXPECT_EQ(io::parse_space(json::parse(prod.out)).opens().size(), 6U);

  EXPECT_EQ(run("space validate " + data("w_lattice.json")).code, 0);
  EXPECT_EQ(run("space validate " + data("not_union_closed.json")).code, 2);
  EXPECT_EQ(run("space info " + data("malformed.json")).code, 1);
  EXPECT_EQ(run("space info " + data("missing.json")).code, 1);
}

TEST(Cli, ValuationCommands) {
  const Result supp = run("val supp " + data("delta_1.json"));
  ASSERT_EQ(supp.code, 0);
  EXPECT_EQ(json::parse(supp.out), json::array({"0", "1"}));

  const Result integ = run("val integrate " + data("nu_half.json") + " " + data("g_one_two.json"));
  ASSERT_EQ(integ.code, 0);
  EXPECT_EQ(json::parse(integ.out), "3/2");

  const Result ext = run("val extend " + data("nu_third.json"));
  ASSERT_EQ(ext.code, 0);
  EXPECT_EQ(json::parse(ext.out), (json{{"0", "2/3"}, {"1", "1/3"}}));
  EXPECT_EQ(run("val extend " + data("nu_infinite.json")).code, 3);

  const Result prod = run("val product " + data("nu_half.json") + " " + data("nu_third_weights.json"));
  ASSERT_EQ(prod.code, 0);
  const Valuation p = io::parse_valuation(json::parse(prod.out));
  EXPECT_EQ(p.total(), ExtRational(1));

  const Result e = run("val E " + data("xi_mix.json"));
  ASSERT_EQ(e.code, 0);
  const Valuation ev = io::parse_valuation(json::parse(e.out));
  EXPECT_EQ(ev, valuation_from_weights(FiniteSpace::sierpinski(), {ExtRational(1, 2), ExtRational(1, 2)}));

  const Result push = run("val push " + data("flip.json") + " " + data("nu_half.json"));
  ASSERT_EQ(push.code, 0);
  EXPECT_EQ(io::parse_valuation(json::parse(push.out)), unit_delta(FiniteSpace::sierpinski(), 1));

  const Result valid = run("val validate " + data("nu_third.json"));
  ASSERT_EQ(valid.code, 0);
  EXPECT_EQ(io::parse_valuation(json::parse(valid.out)).table()[1], ExtRational(1, 3));
}

TEST(Cli, Laws) {
  const Result ok = run("laws supp-mult --count 500 --json");
  ASSERT_EQ(ok.code, 0);
  const json r = json::parse(ok.out);
  EXPECT_GE(r["instances"].get<std::size_t>(), 500U);
  EXPECT_EQ(r["failures"], 0);
  EXPECT_EQ(run("laws bogus").code, 5);

  const Result bad = run("laws h-monad --count 40 --json --mutant push_image_no_closure");
  ASSERT_EQ(bad.code, 4);
  const json report = json::parse(bad.out);
  ASSERT_FALSE(report["counterexamples"].empty());
  const std::string path = testing::TempDir() + "report.json";
  std::ofstream(path) << report.dump();
  EXPECT_EQ(run("laws --replay " + path + " --mutant push_image_no_closure").code, 4);
  EXPECT_EQ(run("laws --replay " + path).code, 0);

  const std::size_t index = report["counterexamples"][0]["index"];
  EXPECT_EQ(run("laws h-monad --count 40 --instance " + std::to_string(index) + " --mutant push_image_no_closure").code, 4);
}

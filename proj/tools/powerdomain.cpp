// Command-line front end: spaces, valuations, supports and law suites.

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "powerdomain/powerdomain.hpp"

namespace pd = powerdomain;
namespace lc = powerdomain::lawcheck;
using nlohmann::json;

namespace {

enum Exit : int {
  kOk = 0,
  kMalformed = 1,
  kAxiom = 2,
  kPrecondition = 3,
  kLawFailures = 4,
  kUnknownSuite = 5,
  kInternal = 6,
};

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

int report_error(const char* kind, const std::string& message, int code) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
  return code;
}

/// Runs a command, mapping every failure class to its exit code.
int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const pd::io::MalformedDocument& e) {
    return report_error("Malformed", e.what(), kMalformed);
  } catch (const pd::Error& e) {
    const auto name = std::string(pd::to_string(e.kind()));
    if (e.kind() == pd::ErrorKind::UnknownSuite) return report_error(name.c_str(), e.witness(), kUnknownSuite);
    if (pd::is_axiom_violation(e.kind())) return report_error(name.c_str(), e.witness(), kAxiom);
    if (e.kind() == pd::ErrorKind::Anomaly || e.kind() == pd::ErrorKind::NegativeWeight)
      return report_error(name.c_str(), e.witness(), kInternal);
    return report_error(name.c_str(), e.witness(), kPrecondition);
  } catch (const json::exception& e) {
    return report_error("Malformed", e.what(), kMalformed);
  }
}

json load(const std::string& path) { return pd::io::read_json_file(path); }

std::filesystem::path dir_of(const std::string& path) { return std::filesystem::path(path).parent_path(); }

std::string text_summary(const lc::SuiteReport& r) {
  std::string s = r.name + ": " + std::to_string(r.instances) + " instances, " + std::to_string(r.failures) +
                  " failures, " + std::to_string(r.invalid) + " invalid (" + std::to_string(r.wall_seconds) + " s)\n";
  for (const auto& f : r.failure_records) {
    s += "  instance " + std::to_string(f.index) + ": " + f.witness + "\n";
    s += "    shrunk: " + f.shrunk.to_json().dump() + "\n";
    s += "    replay: " + f.replay + "\n";
  }
  return s;
}

struct LawsArgs {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t max_points = 3;
  std::size_t count = 200;
  std::size_t jobs = 1;
  bool json_out = false;
  std::optional<std::size_t> instance;
  std::string replay;
  std::string mutant;
};

const pd::Ops& select_ops(const std::string& mutant, std::vector<lc::Mutant>& storage) {
  if (mutant.empty()) return pd::reference_ops();
  storage = lc::mutants();
  for (const auto& m : storage)
    if (m.name == mutant) return m.ops;
  throw pd::Error(pd::ErrorKind::PreconditionFailed, "unknown mutant '" + mutant + "'");
}

/// Re-evaluates every counterexample stored in a report (or a single
/// {"suite", "instance"} document). Exit 4 when they still fail.
int replay(const LawsArgs& a, const pd::Ops& ops) {
  const json doc = load(a.replay);
  std::vector<json> reports = doc.is_array() ? doc.get<std::vector<json>>()
                              : doc.contains("suites") ? doc.at("suites").get<std::vector<json>>()
                                                       : std::vector<json>{doc};
  json out = json::array();
  bool any_fail = false;
  for (const auto& r : reports) {
    const std::string name = r.contains("suite") ? r.at("suite").get<std::string>() : a.suite;
    const lc::SuiteDef& suite = lc::find_suite(name);
    std::vector<json> instances;
    if (r.contains("instance")) instances.push_back(r.at("instance"));
    if (r.contains("counterexamples"))
      for (const auto& c : r.at("counterexamples")) {
        instances.push_back(c.at("instance"));
        instances.push_back(c.at("shrunk"));
      }
    for (const auto& ij : instances) {
      const lc::Outcome o = lc::evaluate(suite, lc::Instance::from_json(ij), ops);
      any_fail = any_fail || o.status == lc::Status::Fail;
      out.push_back({{"suite", name}, {"status", lc::to_string(o.status)}, {"witness", o.witness}});
    }
  }
  if (a.json_out)
    print(out);
  else
    for (const auto& o : out)
      std::cout << o.at("suite").get<std::string>() << ": " << o.at("status").get<std::string>() << ' '
                << o.at("witness").get<std::string>() << '\n';
  return any_fail ? kLawFailures : kOk;
}

int laws(const LawsArgs& a) {
  std::vector<lc::Mutant> storage;
  const pd::Ops& ops = select_ops(a.mutant, storage);
  if (!a.replay.empty()) return replay(a, ops);
  if (a.suite.empty()) throw pd::Error(pd::ErrorKind::UnknownSuite, "no suite given");

  lc::GenConfig cfg;
  cfg.seed = a.seed;
  cfg.max_points = a.max_points;
  cfg.instance_count = a.count;

  if (a.instance) {
    const lc::SuiteDef& suite = lc::find_suite(a.suite);
    const lc::Instance in = lc::generate_instance(suite, cfg, *a.instance);
    const lc::Outcome o = lc::evaluate(suite, in, ops);
    print({{"suite", a.suite},
           {"index", *a.instance},
           {"status", lc::to_string(o.status)},
           {"witness", o.witness},
           {"instance", in.to_json()}});
    return o.status == lc::Status::Fail ? kLawFailures : kOk;
  }

  std::vector<std::string> names;
  if (a.suite == "all")
    for (const auto& s : lc::all_suites()) names.push_back(s.name);
  else
    names.push_back(lc::find_suite(a.suite).name);

  lc::RunOptions opt;
  opt.jobs = a.jobs;
  opt.ops = &ops;
  opt.program = "powerdomain";
  std::size_t failures = 0;
  json reports = json::array();
  for (const auto& n : names) {
    const lc::SuiteReport r = lc::run_suite(n, cfg, opt);
    failures += r.failures;
    if (a.json_out)
      reports.push_back(r.to_json());
    else
      std::cout << text_summary(r) << std::flush;
  }
  if (a.json_out) print(names.size() == 1 ? reports[0] : json{{"suites", reports}, {"failures", failures}});
  return failures == 0 ? kOk : kLawFailures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite spaces, hyperspaces, valuations and their supports"};
  app.require_subcommand(1);

  // space
  auto* space = app.add_subcommand("space", "construct and inspect finite spaces");
  space->require_subcommand(1);
  std::string space_file, space_file2;
  auto* sv = space->add_subcommand("validate", "check the topology axioms");
  sv->add_option("file", space_file)->required();
  auto* si = space->add_subcommand("info", "separation flags, specialization, opens");
  si->add_option("file", space_file)->required();
  auto* sh = space->add_subcommand("hyper", "hyperspace of closed sets");
  sh->add_option("file", space_file)->required();
  auto* sp = space->add_subcommand("product", "product of two spaces");
  sp->add_option("first", space_file)->required();
  sp->add_option("second", space_file2)->required();

  // val
  auto* val = app.add_subcommand("val", "valuations, integrals and supports");
  val->require_subcommand(1);
  std::string f1, f2;
  auto* vv = val->add_subcommand("validate", "check a valuation document");
  vv->add_option("valuation", f1)->required();
  auto* vi = val->add_subcommand("integrate", "lower integral of a function");
  vi->add_option("valuation", f1)->required();
  vi->add_option("function", f2)->required();
  auto* vp = val->add_subcommand("push", "pushforward along a continuous map");
  vp->add_option("map", f1)->required();
  vp->add_option("valuation", f2)->required();
  auto* vx = val->add_subcommand("product", "product valuation");
  vx->add_option("first", f1)->required();
  vx->add_option("second", f2)->required();
  auto* vs = val->add_subcommand("supp", "support as a sorted point list");
  vs->add_option("valuation", f1)->required();
  auto* ve = val->add_subcommand("extend", "point weights of the extended measure");
  ve->add_option("valuation", f1)->required();
  auto* vE = val->add_subcommand("E", "multiplication of a molecular second-order valuation");
  vE->add_option("second_order", f1)->required();

  // laws
  LawsArgs la;
  auto* lw = app.add_subcommand("laws", "run law suites");
  lw->add_option("suite", la.suite, "suite name or 'all'");
  lw->add_option("--seed", la.seed);
  lw->add_option("--max-points", la.max_points);
  lw->add_option("--count", la.count);
  lw->add_option("--jobs", la.jobs)->check(CLI::PositiveNumber);
  lw->add_flag("--json", la.json_out);
  lw->add_option("--instance", la.instance, "evaluate a single instance of the stream");
  lw->add_option("--replay", la.replay, "re-evaluate counterexamples from a report file");
  lw->add_option("--mutant", la.mutant)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kMalformed;
  }

  return guarded([&]() -> int {
    if (sv->parsed()) {
      const auto x = pd::io::parse_space(load(space_file));
      print({{"valid", true}, {"points", x.size()}, {"opens", x.opens().size()}});
    } else if (si->parsed()) {
      print(pd::io::space_info(pd::io::parse_space(load(space_file))));
    } else if (sh->parsed()) {
      const auto x = pd::io::parse_space(load(space_file));
      print(pd::io::hyperspace_document(pd::build_hyperspace(x)));
    } else if (sp->parsed()) {
      const auto p = pd::product(pd::io::parse_space(load(space_file)), pd::io::parse_space(load(space_file2)));
      print(pd::io::space_document(p.space));
    } else if (vv->parsed()) {
      print(pd::io::valuation_document(pd::io::parse_valuation(load(f1), dir_of(f1))));
    } else if (vi->parsed()) {
      const auto nu = pd::io::parse_valuation(load(f1), dir_of(f1));
      const auto g = pd::io::parse_function(load(f2), dir_of(f2));
      if (!(g.space() == nu.space())) pd::fail(pd::ErrorKind::ShapeMismatch, "function and valuation live on different spaces");
      print(pd::io::rational_json(pd::integrate(nu, g)));
    } else if (vp->parsed()) {
      const auto f = pd::io::parse_map(load(f1), dir_of(f1));
      print(pd::io::valuation_document(pd::pushforward(f, pd::io::parse_valuation(load(f2), dir_of(f2)))));
    } else if (vx->parsed()) {
      const auto nu = pd::io::parse_valuation(load(f1), dir_of(f1));
      const auto rho = pd::io::parse_valuation(load(f2), dir_of(f2));
      print(pd::io::valuation_document(pd::product_valuation(pd::product(nu.space(), rho.space()), nu, rho)));
    } else if (vs->parsed()) {
      const auto nu = pd::io::parse_valuation(load(f1), dir_of(f1));
      print(pd::io::point_list_json(nu.space(), pd::support(nu).members()));
    } else if (ve->parsed()) {
      const auto m = pd::extend_to_measure(pd::io::parse_valuation(load(f1), dir_of(f1)));
      json w = json::object();
      for (std::size_t p = 0; p < m.weights.size(); ++p) w[m.space.name(p)] = pd::io::rational_json(m.weights[p]);
      print(w);
    } else if (vE->parsed()) {
      print(pd::io::valuation_document(pd::mult_E(pd::io::parse_second_order(load(f1), dir_of(f1)))));
    } else if (lw->parsed()) {
      return laws(la);
    }
    return kOk;
  });
}

// krlab: transverse link homology and its skein decategorification from the command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "json_io.hpp"
#include "krlab/braid.hpp"
#include "krlab/complex.hpp"
#include "krlab/error.hpp"
#include "krlab/moy.hpp"
#include "krlab/qamod.hpp"
#include "krlab/skein.hpp"
#include "verify.hpp"

namespace {

using namespace krlab;
using nlohmann::json;

enum Exit { kOk = 0, kParse = 1, kBudget = 2, kMismatch = 3, kInternal = 4 };

struct RunConfig {
  std::string braid;
  int strands = 0;
  int n = 1;
  int xwindow = 20;
  int alpha_max = 12, xi_max = 12;
  long budget = skein::Evaluator::kDefaultBudget;
  std::string format = "table";
  std::string graph;
  std::vector<int> only;
  bool verbose = false;
};

braid::BraidWord word_of(const RunConfig& cfg) {
  auto w = braid::parse(cfg.braid, cfg.strands);
  w.validate();
  return w;
}

json header(const std::string& command, const RunConfig& cfg) {
  return {{"schema", io::kSchema}, {"command", command}, {"n", cfg.n}};
}

json braid_json(const braid::BraidWord& w) { return {{"letters", w.letters}, {"strands", w.strands}}; }

std::string tails_text(const std::vector<qamod::Tail>& tails) {
  std::ostringstream os;
  for (const auto& t : tails) {
    os << "tail eps=" << t.eps << " i=" << t.i << " from x=" << t.start << " every 2:";
    for (int f : t.pattern.free) os << " Q[a]{" << f << "}";
    for (auto [l, s] : t.pattern.torsion) os << " Q[a]/(a" << (l > 1 ? "^" + std::to_string(l) : "") << "){" << s << "}";
    os << "\n";
  }
  return os.str();
}

// Homology with a window that grows (up to 12 more degrees) until the Euler tail is confirmed.
std::pair<qamod::GradedQaModule, qamod::EulerResult> homology_with_euler(const braid::BraidWord& w, const RunConfig& cfg) {
  auto c = complex::build_complex(w, cfg.n);
  qamod::GradedQaModule m;
  qamod::EulerResult e;
  for (int W = cfg.xwindow; W <= cfg.xwindow + 12; W += 4) {
    m = qamod::two_stage_homology(c, {W, true});
    e = qamod::euler_characteristic(m);
    if (e.tail_verified) break;
  }
  return {m, e};
}

int cmd_homology(const RunConfig& cfg) {
  auto w = word_of(cfg);
  auto c = complex::build_complex(w, cfg.n);
  qamod::HomologyStats stats;
  auto m = qamod::two_stage_homology(c, {cfg.xwindow, true}, &stats);
  auto tails = m.tails();
  if (cfg.format == "json") {
    json j = header("homology", cfg);
    j["braid"] = braid_json(w);
    j.update(io::to_json(m));
    j["tail"] = io::to_json(tails);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "closure of \"" << w.to_string() << "\" on " << w.strands << " strands, N = " << cfg.n << "\n";
    std::cout << m.to_table() << tails_text(tails);
    if (cfg.verbose)
      std::cout << "cells " << stats.cells << ", eliminated " << stats.eliminated << ", internal x <= " << stats.x_internal
                << "\n";
  }
  return kOk;
}

void print_skein(const ratfun::SkeinValue& v, const RunConfig& cfg, json* j) {
  auto series = skein::series_expand(v, cfg.alpha_max, cfg.xi_max);
  if (j) {
    (*j)["value"] = {{"tau0", v.tau_free().to_string()}, {"tau1", v.tau_part().to_string()}};
    (*j)["series"] = {{"alpha_max", cfg.alpha_max},
                      {"xi_max", cfg.xi_max},
                      {"tau0", io::to_json(series.tau0)},
                      {"tau1", io::to_json(series.tau1)}};
    return;
  }
  std::cout << "P = P0 + tau*P1 with\n  P0 = " << v.tau_free().to_string() << "\n  P1 = " << v.tau_part().to_string()
            << "\nseries up to alpha^" << cfg.alpha_max << ", xi^" << cfg.xi_max << ":\n"
            << skein::to_string(series);
}

int cmd_skein(const RunConfig& cfg) {
  auto w = word_of(cfg);
  skein::Evaluator ev(cfg.n, cfg.budget);
  auto v = ev.evaluate(w);
  if (cfg.format == "json") {
    json j = header("skein", cfg);
    j["braid"] = braid_json(w);
    print_skein(v, cfg, &j);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "closure of \"" << w.to_string() << "\" on " << w.strands << " strands, N = " << cfg.n << "\n";
    print_skein(v, cfg, nullptr);
  }
  return kOk;
}

int cmd_both(const RunConfig& cfg) {
  auto w = word_of(cfg);
  auto [m, e] = homology_with_euler(w, cfg);
  skein::Evaluator ev(cfg.n, cfg.budget);
  auto v = ev.evaluate(w);
  std::string verdict = !e.tail_verified ? "UNCONFIRMED" : (e.value == v ? "MATCH" : "MISMATCH");
  if (cfg.format == "json") {
    json j = header("both", cfg);
    j["braid"] = braid_json(w);
    j["homology"] = io::to_json(m);
    j["homology"]["tail"] = io::to_json(m.tails());
    j["euler"] = {{"tau0", e.value.tau_free().to_string()},
                  {"tau1", e.value.tau_part().to_string()},
                  {"tail_verified", e.tail_verified},
                  {"note", e.note}};
    json sk;
    print_skein(v, cfg, &sk);
    j["skein"] = sk;
    j["verdict"] = verdict;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "closure of \"" << w.to_string() << "\" on " << w.strands << " strands, N = " << cfg.n << "\n"
              << m.to_table() << tails_text(m.tails()) << "Euler characteristic: " << e.value.to_string() << "\n  ("
              << e.note << ")\nskein value:          " << v.to_string() << "\nverdict: " << verdict << "\n";
  }
  return verdict == "MATCH" ? kOk : kMismatch;
}

moy::MoyGraph load_graph(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) return moy::builtin_graph(spec.substr(prefix.size()));
  std::ifstream in(spec);
  if (!in) throw ParseError("cannot read graph file " + spec);
  std::stringstream buf;
  buf << in.rdbuf();
  return moy::MoyGraph::parse(buf.str());
}

int cmd_gdim(const RunConfig& cfg) {
  if (cfg.graph.empty()) throw ParseError("gdim needs --graph <file> or --graph builtin:<name>");
  auto g = load_graph(cfg.graph);
  auto f = moy::graph_factorization(g, cfg.n);
  auto d = mf::gdim(f.mf, cfg.xi_max);
  if (cfg.format == "json") {
    json j = header("gdim", cfg);
    j["graph"] = cfg.graph;
    j["gdim"] = io::to_json(d);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "gdim = " << d.to_string() << "\ntotal dimension " << d.total() << " (xi-degree <= " << cfg.xi_max
              << ")\n";
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  std::set<int> only(cfg.only.begin(), cfg.only.end());
  bool all = true;
  json results = json::array();
  for (const auto& c : verify::criteria()) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto r = verify::run_criterion(c, cfg.verbose ? &std::cerr : nullptr);
    all = all && r.pass();
    if (cfg.format == "json")
      results.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass()}, {"seconds", r.seconds},
                         {"limit_seconds", r.limit_seconds}, {"detail", r.detail}});
    else
      std::cout << verify::format(r) << std::endl;
  }
  if (cfg.format == "json") {
    json j = header("verify", cfg);
    j["results"] = results;
    std::cout << j.dump(2) << "\n";
  }
  return all ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transverse link homology H_N of closed braids and its decategorification P_N"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool needs_braid) {
    auto* b = sub->add_option("--braid", cfg.braid, "braid word, e.g. \"1 -2 1\" or \"s1 s2^-1 s1\"");
    if (needs_braid) b->required();
    sub->add_option("--strands", cfg.strands, "number of strands (default: largest index + 1)")->check(CLI::NonNegativeNumber);
    sub->add_option("--n", cfg.n, "N >= 1")->check(CLI::PositiveNumber);
    sub->add_option("--xwindow", cfg.xwindow, "x-degrees reported above the lowest one")->check(CLI::NonNegativeNumber);
    sub->add_option("--alpha-max", cfg.alpha_max, "series cap in alpha");
    sub->add_option("--xi-max", cfg.xi_max, "series cap in xi (also the gdim truncation)");
    sub->add_option("--budget", cfg.budget, "Markov search budget")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--graph", cfg.graph, "MOY graph file, or builtin:<name>");
    sub->add_flag("-v,--verbose", cfg.verbose, "extra statistics");
  };
  auto* homology = app.add_subcommand("homology", "graded Q[a]-module decomposition of H_N");
  auto* skein = app.add_subcommand("skein", "P_N by skein recursion");
  auto* both = app.add_subcommand("both", "both pipelines and the cross-check verdict");
  auto* gdim = app.add_subcommand("gdim", "graded dimension of an MOY graph");
  auto* verify = app.add_subcommand("verify", "run acceptance criteria");
  common(homology, true);
  common(skein, true);
  common(both, true);
  common(gdim, false);
  common(verify, false);
  verify->add_option("--only", cfg.only, "criterion numbers to run (default: all)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*homology) return cmd_homology(cfg);
    if (*skein) return cmd_skein(cfg);
    if (*both) return cmd_both(cfg);
    if (*gdim) return cmd_gdim(cfg);
    if (*verify) return cmd_verify(cfg);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}

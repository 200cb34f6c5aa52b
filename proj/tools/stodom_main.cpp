// Experiment CLI. Everything mathematical happens behind the shared
// library's C API; this binary only turns flags into a config document,
// runs it, and prints the report.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stodom/stodom.h"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct GlobalOpts {
  std::string format = "json";
  std::string out_path;
  std::string config_path;
  int jobs = 1;
  bool have_seed = false;
  uint64_t seed = 0;
};

int run_config(json config, const GlobalOpts& opts) {
  config["format"] = opts.format;
  config["jobs"] = opts.jobs;
  if (opts.have_seed) config["seed"] = opts.seed;
  if (!opts.config_path.empty()) {
    // --config provides defaults; explicit flags win.
    json base = json::parse(read_file(opts.config_path));
    base.update(config);
    config = std::move(base);
  }

  auto start = std::chrono::steady_clock::now();
  char* report = nullptr;
  stodom_status status = stodom_run(config.dump().c_str(), &report);
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();

  std::string text;
  if (report) {
    text = report;
    stodom_string_free(report);
  }
  if (status == STODOM_OK || status == STODOM_CHECK_FAILED) {
    if (opts.format == "csv") {
      // Curve commands embed their CSV in the report.
      json parsed = json::parse(text);
      if (parsed.contains("results") && parsed["results"].contains("csv"))
        text = parsed["results"]["csv"].get<std::string>();
    }
    if (opts.out_path.empty()) {
      std::cout << text << '\n';
    } else {
      std::ofstream out(opts.out_path);
      out << text << '\n';
    }
  } else {
    std::cerr << "error: " << stodom_last_error() << '\n';
  }
  // Timing goes to stderr only: reports must be byte-identical across runs.
  std::cerr << "wall time: " << elapsed << " ms\n";

  switch (status) {
    case STODOM_OK:
      return 0;
    case STODOM_CHECK_FAILED:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stodom — exact stochastic-domination certificates, lift couplings and "
               "percolation experiments"};
  app.require_subcommand(1);

  GlobalOpts opts;
  app.add_option("--format", opts.format, "Report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", opts.out_path, "Write the report to a file instead of stdout");
  app.add_option("--config", opts.config_path, "JSON file with default parameters");
  app.add_option("--jobs", opts.jobs, "Worker threads (affects wall time only)");
  auto* seed_opt =
      app.add_option("--seed", opts.seed, "Seed for randomized commands (required there)");

  json config;

  auto* verify = app.add_subcommand("verify", "Verify the pinned counterexample fixtures");
  verify->callback([&] { config["command"] = "verify"; });

  auto* coupling =
      app.add_subcommand("coupling", "Build and check a monotone coupling for an instance file");
  std::string instance_path;
  coupling->add_option("--instance", instance_path, "JSON file with mu, rho and pm")->required();
  coupling->callback([&] {
    config["command"] = "coupling";
    config["instance"] = json::parse(read_file(instance_path));
  });

  auto* lakon = app.add_subcommand(
      "lakon-sweep", "Exhaustive adversarial placement strategies for single-variable lifts");
  int max_b = 2, max_fibre = 3;
  std::vector<std::string> lakon_p;
  lakon->add_option("--max-b", max_b, "Largest column count");
  lakon->add_option("--max-fibre", max_fibre, "Largest fibre size");
  lakon->add_option("--p", lakon_p, "Parameters (rationals)");
  lakon->callback([&] {
    config["command"] = "lakon-sweep";
    config["max_b"] = max_b;
    config["max_fibre"] = max_fibre;
    if (!lakon_p.empty()) config["p"] = lakon_p;
  });

  auto* perco = app.add_subcommand("perco-compare",
                                   "Reach-probability comparison across a fibration pair");
  std::string pair = "cycle-cover-small", method = "exact", mode = "both";
  int radius = 2;
  long trials = 10000;
  std::vector<std::string> perco_p;
  int cap = 24;
  perco->add_option("--pair", pair,
                    "Fixture pair: cycle-cover[-small], two-floor[-small], box3d[-small]");
  perco->add_option("--method", method, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
  perco->add_option("--mode", mode, "bond, site or both");
  perco->add_option("--radius", radius, "Reach radius (max radius in exact mode)");
  perco->add_option("--trials", trials, "Monte Carlo trials");
  perco->add_option("--p", perco_p, "Parameter grid (rationals)");
  perco->add_option("--cap", cap, "Exact enumeration cap (free objects)");
  perco->callback([&] {
    config["command"] = "perco-compare";
    config["pair"] = pair;
    config["method"] = method;
    config["mode"] = mode;
    config["radius"] = radius;
    config["trials"] = trials;
    config["cap"] = cap;
    if (!perco_p.empty()) config["p"] = perco_p;
  });

  auto* cells = app.add_subcommand("cells", "Build a cell decomposition and audit its invariants");
  std::string cells_graph = "grid:4x4";
  int r0 = 1;
  bool dump = false;
  cells->add_option("--graph", cells_graph, "Graph spec");
  cells->add_option("--r0", r0, "Separation radius parameter");
  cells->add_flag("--dump-cells", dump, "Emit the full decomposition (per-vertex assignments)");
  cells->callback([&] {
    config["command"] = "cells";
    config["graph"] = cells_graph;
    config["r0"] = r0;
    config["dump"] = dump;
  });

  auto* delta = app.add_subcommand("delta", "Certified bump threshold per cell");
  std::string delta_graph = "cycle:8", delta_p = "1/2", delta_s = "1/2", resolution = "1/64";
  int delta_r0 = 1;
  delta->add_option("--graph", delta_graph, "Graph spec");
  delta->add_option("--r0", delta_r0, "Separation radius parameter");
  delta->add_option("--p", delta_p, "Edge parameter (rational)");
  delta->add_option("--s", delta_s, "Bonus parameter (rational)");
  delta->add_option("--resolution", resolution, "Grid step (rational)");
  delta->callback([&] {
    config["command"] = "delta";
    config["graph"] = delta_graph;
    config["r0"] = delta_r0;
    config["p"] = delta_p;
    config["s"] = delta_s;
    config["resolution"] = resolution;
  });

  auto* aug = app.add_subcommand("aug-compare",
                                 "Reach curves: plain vs augmented percolation vs double cover");
  int width = 12, height = 12, aug_r0 = 1, aug_radius = 8;
  long aug_trials = 10000;
  std::string aug_s = "1";
  std::vector<std::string> aug_p;
  aug->add_option("--width", width, "Torus width");
  aug->add_option("--height", height, "Torus height");
  aug->add_option("--r0", aug_r0, "Separation radius parameter");
  aug->add_option("--s", aug_s, "Bonus parameter (rational)");
  aug->add_option("--p", aug_p, "Parameter grid (rationals)");
  aug->add_option("--radius", aug_radius, "Reach radius in the subdivided graph");
  aug->add_option("--trials", aug_trials, "Monte Carlo trials");
  aug->callback([&] {
    config["command"] = "aug-compare";
    config["width"] = width;
    config["height"] = height;
    config["r0"] = aug_r0;
    config["s"] = aug_s;
    config["radius"] = aug_radius;
    config["trials"] = aug_trials;
    if (!aug_p.empty()) config["p"] = aug_p;
  });

  auto* bk = app.add_subcommand("bk", "Disjoint-occurrence product bounds");
  std::string variant = "single", e1, e2, pair_law = "fibre-selection", bk_graph = "grid:5x5";
  int ground = 4, bk_radius = 2, bk_vertex = -1, bk_cap = 14;
  std::vector<std::string> bk_p;
  bool exhaustive = false;
  bk->add_flag("--exhaustive", exhaustive, "Sweep all increasing-event pairs on the ground set");
  bk->add_option("--ground", ground, "Ground set size");
  bk->add_option("--e1", e1, "First event (hex bitmask or comma-separated min-terms)");
  bk->add_option("--e2", e2, "Second event");
  bk->add_option("--p", bk_p, "Parameter(s), rationals");
  bk->add_option("--variant", variant, "single, paired or two-arm");
  bk->add_option("--pair-law", pair_law, "paired variant: fibre-selection");
  bk->add_option("--graph", bk_graph, "two-arm variant: graph spec");
  bk->add_option("--radius", bk_radius, "two-arm variant: arm radius");
  bk->add_option("--vertex", bk_vertex, "two-arm variant: probe vertex");
  bk->add_option("--cap", bk_cap, "two-arm variant: edge enumeration cap");
  bk->callback([&] {
    config["command"] = "bk";
    config["ground"] = ground;
    if (exhaustive) {
      config["variant"] = "exhaustive";
      if (!bk_p.empty()) config["p"] = bk_p;
      return;
    }
    config["variant"] = variant;
    if (!bk_p.empty()) {
      if (bk_p.size() == 1) config["p"] = bk_p.front();
      else config["p_list"] = bk_p;
    }
    auto parse_event = [](const std::string& text) -> json {
      if (text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0) return text;
      json terms = json::array();
      std::stringstream ss(text);
      std::string tok;
      while (std::getline(ss, tok, ',')) terms.push_back(std::stoul(tok, nullptr, 0));
      return terms;
    };
    if (!e1.empty()) config["e1"] = parse_event(e1);
    if (!e2.empty()) config["e2"] = parse_event(e2);
    if (variant == "paired") config["pair_law"] = pair_law;
    if (variant == "two-arm") {
      config["graph"] = bk_graph;
      config["radius"] = bk_radius;
      config["cap"] = bk_cap;
      if (bk_vertex >= 0) config["vertex"] = bk_vertex;
    }
  });

  auto* cycles =
      app.add_subcommand("cycles", "Exploratory sweep: reach on base x cycle(m) across m");
  std::string base = "path:6", cyc_mode = "bond", cyc_p = "1/2";
  int m_lo = 3, m_hi = 8, cyc_radius = 4;
  long cyc_trials = 5000;
  cycles->add_option("--base", base, "Base graph spec");
  cycles->add_option("--m-lo", m_lo, "Smallest cycle length");
  cycles->add_option("--m-hi", m_hi, "Largest cycle length");
  cycles->add_option("--mode", cyc_mode, "bond or site");
  cycles->add_option("--p", cyc_p, "Parameter (rational)");
  cycles->add_option("--radius", cyc_radius, "Reach radius");
  cycles->add_option("--trials", cyc_trials, "Monte Carlo trials");
  cycles->callback([&] {
    config["command"] = "cycles";
    config["base"] = base;
    config["m_lo"] = m_lo;
    config["m_hi"] = m_hi;
    config["mode"] = cyc_mode;
    config["p"] = cyc_p;
    config["radius"] = cyc_radius;
    config["trials"] = cyc_trials;
  });

  CLI11_PARSE(app, argc, argv);
  opts.have_seed = seed_opt->count() > 0;
  try {
    return run_config(std::move(config), opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

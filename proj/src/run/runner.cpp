#include "run/runner.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

#include "aug/augmented.hpp"
#include "bk/checks.hpp"
#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "fixtures/fixtures.hpp"
#include "lift/main_coupling.hpp"
#include "perco/pairs.hpp"
#include "perco/reach.hpp"

namespace stodom::run {

namespace {

using nlohmann::json;
using perco::Graph;
using perco::Mode;

struct CheckList {
  json checks = json::array();
  bool all_ok = true;

  void add(const std::string& name, bool ok, json extra = json::object()) {
    extra["name"] = name;
    extra["ok"] = ok;
    checks.push_back(std::move(extra));
    all_ok = all_ok && ok;
  }
};

Rational get_rational(const json& j, const std::string& key, const std::string& fallback = "") {
  if (!j.contains(key)) {
    if (fallback.empty()) throw InputError("missing parameter: " + key);
    return parse_rational(fallback);
  }
  if (j.at(key).is_number_integer()) return Rational(j.at(key).get<long>());
  return parse_rational(j.at(key).get<std::string>());
}

std::vector<Rational> get_rational_list(const json& j, const std::string& key,
                                        const std::vector<std::string>& fallback) {
  std::vector<Rational> out;
  if (!j.contains(key)) {
    for (const auto& s : fallback) out.push_back(parse_rational(s));
    return out;
  }
  for (const auto& item : j.at(key)) {
    if (item.is_number_integer()) out.push_back(Rational(item.get<long>()));
    else out.push_back(parse_rational(item.get<std::string>()));
  }
  return out;
}

uint64_t require_seed(const json& config) {
  if (!config.contains("seed"))
    throw InputError("randomized commands require an explicit seed");
  return config.at("seed").get<uint64_t>();
}

int get_jobs(const json& config) {
  int jobs = config.value("jobs", 1);
  if (jobs < 1) throw InputError("jobs must be >= 1");
  return jobs;
}

Mode parse_mode(const std::string& s) {
  if (s == "bond") return Mode::bond;
  if (s == "site") return Mode::site;
  throw InputError("mode must be bond or site");
}

json mc_json(const perco::MCEstimate& est) {
  return {{"mean", est.mean},
          {"standard_error", est.standard_error},
          {"trials", est.trials},
          {"seed", est.seed}};
}

// ---------------------------------------------------------------- verify --

json cmd_verify(const json&, CheckList& checks) {
  auto three = fixtures::verify_three_column();
  checks.add("three-column/section-condition", three.section_condition_holds);
  checks.add("three-column/domination-fails", three.domination_fails);
  checks.add("three-column/two-dominating-atoms",
             three.dominating_atoms_per_nonzero_mu_atom == 2);
  checks.add("three-column/coupling-table-rows", three.table_rows_ok);
  checks.add("three-column/no-section-satisfies-both-assumptions",
             three.assumptions_never_jointly_hold);
  auto pair = fixtures::verify_bit_pair();
  checks.add("bit-pair/conditional-condition", pair.condition_a_holds_both_sections);
  checks.add("bit-pair/flattened-condition", pair.condition_b_holds_both_sections);
  checks.add("bit-pair/domination-fails", pair.domination_fails);

  json results;
  fixtures::Fixture fx = fixtures::three_column_instance();
  results["three_column"] = {{"mu", json::parse(fx.mu.to_json())},
                             {"rho", json::parse(fx.rho.to_json())},
                             {"pm", json::parse(fx.pm->to_json())}};
  fixtures::Fixture bp = fixtures::bit_pair_instance();
  results["bit_pair"] = {{"mu", json::parse(bp.mu.to_json())},
                         {"rho", json::parse(bp.rho.to_json())}};
  return results;
}

// -------------------------------------------------------------- coupling --

json cmd_coupling(const json& config, CheckList& checks) {
  if (!config.contains("instance")) throw InputError("coupling needs an instance");
  const json& inst = config.at("instance");
  FiniteMeasure mu = FiniteMeasure::from_json(inst.at("mu").dump());
  FiniteMeasure rho = FiniteMeasure::from_json(inst.at("rho").dump());
  FibreMap pm = FibreMap::from_json(inst.at("pm").dump());

  json results;
  AssumptionReport a = check_assumption_A(rho, pm);
  AssumptionReport b =
      is_pi_lift(mu, pm) ? check_assumption_B(mu, rho, pm) : AssumptionReport{false, "not a lift"};
  checks.add("is-pi-lift", is_pi_lift(mu, pm));
  checks.add("assumption-conditional", a.holds, {{"witness", a.witness}});
  checks.add("assumption-flattened", b.holds, {{"witness", b.witness}});
  if (checks.all_ok) {
    Coupling coupling = build_main_coupling(mu, rho, pm);
    bool monotone = is_monotone_coupling(coupling, mu, rho);
    checks.add("coupling-monotone", monotone);
    checks.add("domination-confirmed", dominates(mu, rho).yes);
    results["coupling"] = json::parse(coupling.to_json());
  }
  return results;
}

// ----------------------------------------------------------- lakon-sweep --

json cmd_lakon_sweep(const json& config, CheckList& checks) {
  const int max_b = config.value("max_b", 2);
  const int max_fibre = config.value("max_fibre", 3);
  std::vector<Rational> ps = get_rational_list(config, "p", {"1/4", "1/2", "3/4"});
  if (max_b < 1 || max_b > 3 || max_fibre < 1 || max_fibre > 4)
    throw InputError("sweep bounds out of supported range");

  long total = 0, dominated = 0;
  json shapes = json::array();
  std::vector<std::vector<int>> fibre_tuples;
  {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int b_left) {
      if (b_left == 0) {
        if (!cur.empty()) fibre_tuples.push_back(cur);
        return;
      }
      for (int f = 1; f <= max_fibre; ++f) {
        cur.push_back(f);
        rec(b_left - 1);
        cur.pop_back();
      }
    };
    for (int b = 1; b <= max_b; ++b) rec(b);
  }

  for (const auto& fibres : fibre_tuples) {
    int b_count = static_cast<int>(fibres.size());
    std::vector<int> pi;
    for (int b = 0; b < b_count; ++b)
      for (int i = 0; i < fibres[static_cast<size_t>(b)]; ++i) pi.push_back(b);
    FibreMap pm(static_cast<int>(pi.size()), b_count, pi);

    for (const auto& p : ps) {
      FiniteMeasure x_law = FiniteMeasure::bernoulli_product(b_count, p);
      FiniteMeasure target = FiniteMeasure::bernoulli_product(pm.a_count(), p);
      std::vector<Config> x_configs;
      for (const auto& [c, w] : x_law.weights()) {
        (void)w;
        x_configs.push_back(c);
      }
      // Odometer over one section choice per X configuration.
      std::vector<std::vector<int>> sections;
      for_each_section(pm, 1 << 20, [&](const std::vector<int>& s) {
        sections.push_back(s);
        return true;
      });
      std::vector<size_t> pick(x_configs.size(), 0);
      long shape_total = 0, shape_ok = 0;
      while (true) {
        std::map<Config, std::vector<int>> table;
        for (size_t i = 0; i < x_configs.size(); ++i) table[x_configs[i]] = sections[pick[i]];
        FiniteMeasure lifted =
            lift_distribution(LiftEnvironment::deterministic_strategy(pm, x_law, table));
        ++shape_total;
        if (is_pi_lift(lifted, pm) && dominates(lifted, target).yes) ++shape_ok;
        size_t i = 0;
        while (i < pick.size() && pick[i] + 1 == sections.size()) pick[i++] = 0;
        if (i == pick.size()) break;
        ++pick[i];
      }
      total += shape_total;
      dominated += shape_ok;
      json shape;
      shape["fibres"] = fibres;
      shape["p"] = rational_str(p);
      shape["strategies"] = shape_total;
      shape["dominated"] = shape_ok;
      shapes.push_back(std::move(shape));
    }
  }
  checks.add("all-strategies-dominated", total == dominated,
             {{"total", total}, {"dominated", dominated}});
  json results;
  results["shapes"] = std::move(shapes);
  results["total_strategies"] = total;
  return results;
}

// --------------------------------------------------------- perco-compare --

json cmd_perco_compare(const json& config, CheckList& checks) {
  const std::string pair_name = config.value("pair", "cycle-cover-small");
  perco::FixturePair pair = perco::fixture_pair_by_name(pair_name);
  const std::string method = config.value("method", "exact");
  std::vector<std::string> default_grid;
  for (int k = 1; k <= 9; ++k) default_grid.push_back(std::to_string(k) + "/10");
  std::vector<Rational> ps = get_rational_list(config, "p", default_grid);

  std::vector<Mode> modes;
  const std::string mode_str = config.value("mode", "both");
  if (mode_str == "both") modes = {Mode::bond, Mode::site};
  else modes = {parse_mode(mode_str)};

  json results;
  results["pair"] = pair_name;
  results["fibration"] = is_fibration(pair.vm).ok;
  checks.add("map-is-fibration", is_fibration(pair.vm).ok);
  int small_probe = pair.vm.map[static_cast<size_t>(pair.probe)];

  json curves = json::array();
  std::ostringstream csv;
  csv << "mode,radius,p,large,small\n";
  if (method == "exact") {
    const int max_radius = config.value("radius", 2);
    const int cap = config.value("cap", 24);
    for (Mode mode : modes) {
      for (int radius = 1; radius <= max_radius; ++radius) {
        perco::ReachCounts large =
            perco::reach_counts(pair.vm.large, mode, pair.probe, radius, cap);
        perco::ReachCounts small =
            perco::reach_counts(pair.vm.small, mode, small_probe, radius, cap);
        for (const auto& p : ps) {
          Rational pl = perco::reach_eval(large, p);
          Rational psmall = perco::reach_eval(small, p);
          checks.add("reach-order/" + std::string(mode == Mode::bond ? "bond" : "site") + "/r" +
                         std::to_string(radius) + "/p=" + rational_str(p),
                     pl >= psmall,
                     {{"large", rational_str(pl)}, {"small", rational_str(psmall)}});
          curves.push_back({{"mode", mode == Mode::bond ? "bond" : "site"},
                            {"radius", radius},
                            {"p", rational_str(p)},
                            {"large", rational_str(pl)},
                            {"small", rational_str(psmall)}});
          csv << (mode == Mode::bond ? "bond" : "site") << ',' << radius << ','
              << rational_str(p) << ',' << rational_str(pl) << ',' << rational_str(psmall)
              << '\n';
        }
      }
    }
  } else if (method == "mc") {
    const int radius = config.value("radius", 8);
    const long trials = config.value("trials", 10000L);
    uint64_t seed = require_seed(config);
    int jobs = get_jobs(config);
    for (Mode mode : modes) {
      for (const auto& p : ps) {
        double pd = rational_double(p);
        perco::MCEstimate large =
            perco::reach_mc(pair.vm.large, mode, pd, pair.probe, radius, trials, seed, jobs);
        perco::MCEstimate small =
            perco::reach_mc(pair.vm.small, mode, pd, small_probe, radius, trials, seed + 1, jobs);
        double combined = std::sqrt(large.standard_error * large.standard_error +
                                    small.standard_error * small.standard_error);
        bool ok = large.mean >= small.mean - 3 * combined;
        checks.add("reach-order-mc/" + std::string(mode == Mode::bond ? "bond" : "site") +
                       "/p=" + rational_str(p),
                   ok, {{"large", large.mean}, {"small", small.mean}, {"3se", 3 * combined}});
        curves.push_back({{"mode", mode == Mode::bond ? "bond" : "site"},
                          {"radius", radius},
                          {"p", rational_str(p)},
                          {"large", mc_json(large)},
                          {"small", mc_json(small)}});
        csv << (mode == Mode::bond ? "bond" : "site") << ',' << radius << ',' << rational_str(p)
            << ',' << large.mean << ',' << small.mean << '\n';
      }
    }
  } else {
    throw InputError("method must be exact or mc");
  }
  results["curves"] = std::move(curves);
  if (config.value("format", "json") == "csv") results["csv"] = csv.str();
  return results;
}

// ------------------------------------------------------------------ cells --

json cmd_cells(const json& config, CheckList& checks) {
  Graph g0 = perco::graph_from_spec(config.value("graph", "grid:4x4"));
  int r0 = config.value("r0", 1);
  aug::CellDecomposition cd = aug::build_cells(g0, r0);
  std::vector<std::string> violations = aug::audit_cells(cd);
  checks.add("cell-invariants", violations.empty(), {{"violations", violations}});
  json results;
  results["cells"] = static_cast<int>(cd.centres.size());
  results["centres"] = cd.centres;
  results["r"] = cd.r;
  results["R"] = cd.R;
  results["base_vertices"] = cd.base.vertex_count();
  results["base_edges"] = cd.base.edge_count();
  if (config.value("dump", false)) results["decomposition"] = json::parse(cd.to_json());
  return results;
}

// ------------------------------------------------------------------ delta --

json cmd_delta(const json& config, CheckList& checks) {
  Graph g0 = perco::graph_from_spec(config.value("graph", "cycle:8"));
  int r0 = config.value("r0", 1);
  Rational p = get_rational(config, "p", "1/2");
  Rational s = get_rational(config, "s", "1/2");
  Rational resolution = get_rational(config, "resolution", "1/64");
  aug::CellDecomposition cd = aug::build_cells(g0, r0);
  int cap_bits = config.value("cap_bits", 20);

  json results;
  json per_cell = json::array();
  for (size_t k = 0; k < cd.cells.size(); ++k) {
    aug::CellTable table(cd, static_cast<int>(k), cap_bits);
    // Singleton active sets are the hardest case: a larger active set only
    // enlarges the bonus event.
    Rational worst(-1);
    json singles = json::array();
    for (int bi = 0; bi < table.boundary_size(); ++bi) {
      Rational d = aug::max_delta(table, p, s, uint32_t(1) << bi, resolution);
      singles.push_back({{"boundary_vertex", table.boundary()[static_cast<size_t>(bi)]},
                         {"delta", rational_str(d)}});
      if (worst < 0 || d < worst) worst = d;
    }
    bool expect_positive = s > 0 && p > 0 && p < 1;
    checks.add("delta-positive/cell" + std::to_string(k), !expect_positive || worst > 0,
               {{"delta", rational_str(worst)}});
    per_cell.push_back({{"cell", k},
                        {"worst_delta", rational_str(worst)},
                        {"singleton_deltas", std::move(singles)}});
  }
  results["p"] = rational_str(p);
  results["s"] = rational_str(s);
  results["resolution"] = rational_str(resolution);
  results["cells"] = std::move(per_cell);
  return results;
}

// ------------------------------------------------------------ aug-compare --

// Subdivided double cover of the decomposition's original graph, with the
// probe midpoint lifted to its smallest preimage.
struct CoverSide {
  Graph graph;
  int probe;
};
CoverSide subdivided_cover(const Graph& g0, const perco::VertexMap& cover0, int probe_mid_edge) {
  aug::Subdivision sub = aug::subdivide(cover0.large);
  int probe = -1;
  for (int e = 0; e < cover0.large.edge_count(); ++e) {
    auto [u, v] = cover0.large.edge(e);
    int pu = cover0.map[static_cast<size_t>(u)], pv = cover0.map[static_cast<size_t>(v)];
    if (pu > pv) std::swap(pu, pv);
    if (g0.edge_id(pu, pv) == probe_mid_edge) {
      probe = cover0.large.vertex_count() + e;
      break;
    }
  }
  if (probe < 0) throw InternalError("cover has no preimage of the probe edge");
  return {sub.graph, probe};
}

json cmd_aug_compare(const json& config, CheckList& checks) {
  const int w = config.value("width", 12);
  const int h = config.value("height", 12);
  Graph g0 = Graph::grid2(w, h, true);
  int r0 = config.value("r0", 1);
  Rational s = get_rational(config, "s", "1");
  double s_d = rational_double(s);
  std::vector<Rational> ps = get_rational_list(config, "p", {"3/5", "13/20", "7/10", "3/4", "4/5"});
  const int radius = config.value("radius", 8);
  const long trials = config.value("trials", 10000L);
  uint64_t seed = require_seed(config);
  int jobs = get_jobs(config);

  aug::CellDecomposition cd = aug::build_cells(g0, r0);
  // Probe: smallest boundary vertex (a midpoint of the subdivided graph).
  int v0 = -1;
  for (int v = 0; v < cd.base.vertex_count() && v0 < 0; ++v)
    if (cd.is_boundary_vertex[static_cast<size_t>(v)]) v0 = v;
  std::vector<int> base_dist = cd.base.distances_from(v0);

  perco::FixturePair cover0 = perco::torus_cover_pair(w, h);
  CoverSide cover = subdivided_cover(g0, cover0.vm, v0 - g0.vertex_count());
  std::vector<int> cover_dist = cover.graph.distances_from(cover.probe);

  const int edge_count = cd.base.edge_count();
  json curves = json::array();
  std::ostringstream csv;
  csv << "p,plain,augmented,cover,bonus_rate\n";

  unsigned long long m_bound = 1;
  for (int i = 0; i < cd.R; ++i) m_bound *= static_cast<unsigned long long>(cd.base.max_degree());
  const unsigned long long switch_cost = config.value("switch_cost", 2 * (2 * w));

  bool coupled_ok = true;
  for (const auto& p : ps) {
    double pd = rational_double(p);
    std::vector<uint8_t> plain_hit(static_cast<size_t>(trials)), aug_hit(static_cast<size_t>(trials)),
        cover_hit(static_cast<size_t>(trials)), coupled(static_cast<size_t>(trials));
    uint64_t p_stream = seed ^ (std::hash<std::string>{}(rational_str(p)) | 1);
    parallel_for(static_cast<int>(trials), jobs, [&](int t) {
      std::vector<bool> open(static_cast<size_t>(edge_count));
      for (int e = 0; e < edge_count; ++e)
        open[static_cast<size_t>(e)] =
            perco::counter_unit(p_stream, static_cast<uint64_t>(t), static_cast<uint64_t>(e)) < pd;
      std::vector<bool> bits(cd.cells.size());
      for (size_t k = 0; k < cd.cells.size(); ++k)
        bits[k] = perco::counter_unit(p_stream, static_cast<uint64_t>(t),
                                      static_cast<uint64_t>(edge_count) + k) < s_d;

      perco::PercSample sample{Mode::bond, open, pd, p_stream, static_cast<uint64_t>(t)};
      bool plain_reach = false;
      for (int u : perco::cluster_of(cd.base, sample, v0))
        if (base_dist[static_cast<size_t>(u)] >= radius) plain_reach = true;
      bool aug_reach = false;
      for (int u : aug::augmented_cluster(cd, open, bits, {v0}))
        if (base_dist[static_cast<size_t>(u)] >= radius) aug_reach = true;

      std::vector<bool> cover_open(static_cast<size_t>(cover.graph.edge_count()));
      for (int e = 0; e < cover.graph.edge_count(); ++e)
        cover_open[static_cast<size_t>(e)] =
            perco::counter_unit(p_stream ^ 0x5bd1e995ULL, static_cast<uint64_t>(t),
                                static_cast<uint64_t>(e)) < pd;
      perco::PercSample cover_sample{Mode::bond, cover_open, pd, p_stream,
                                     static_cast<uint64_t>(t)};
      bool cover_reach = false;
      for (int u : perco::cluster_of(cover.graph, cover_sample, cover.probe))
        if (cover_dist[static_cast<size_t>(u)] >= radius) cover_reach = true;

      plain_hit[static_cast<size_t>(t)] = plain_reach;
      aug_hit[static_cast<size_t>(t)] = aug_reach;
      cover_hit[static_cast<size_t>(t)] = cover_reach;
      coupled[static_cast<size_t>(t)] = aug_reach >= plain_reach;
    });
    long plain_n = 0, aug_n = 0, cover_n = 0;
    bool all_coupled = true;
    for (long t = 0; t < trials; ++t) {
      plain_n += plain_hit[static_cast<size_t>(t)];
      aug_n += aug_hit[static_cast<size_t>(t)];
      cover_n += cover_hit[static_cast<size_t>(t)];
      all_coupled = all_coupled && coupled[static_cast<size_t>(t)];
    }
    coupled_ok = coupled_ok && all_coupled;
    double n = static_cast<double>(trials);
    auto curve_point = [&](long hits) {
      double mean = static_cast<double>(hits) / n;
      double se = std::sqrt(mean * (1 - mean) / (n - 1));
      return json{{"mean", mean}, {"standard_error", se}};
    };
    Rational bonus = aug::bonus_rate(p, m_bound, switch_cost);
    checks.add("coupled-monotonicity/p=" + rational_str(p), all_coupled,
               {{"plain", static_cast<double>(plain_n) / n},
                {"augmented", static_cast<double>(aug_n) / n}});
    curves.push_back({{"p", rational_str(p)},
                      {"plain", curve_point(plain_n)},
                      {"augmented", curve_point(aug_n)},
                      {"cover", curve_point(cover_n)},
                      {"bonus_rate", rational_str(bonus)}});
    csv << rational_str(p) << ',' << static_cast<double>(plain_n) / n << ','
        << static_cast<double>(aug_n) / n << ',' << static_cast<double>(cover_n) / n << ','
        << rational_double(bonus) << '\n';
  }

  json results;
  results["graph"] = "torus:" + std::to_string(w) + "x" + std::to_string(h);
  results["s"] = rational_str(s);
  results["radius"] = radius;
  results["trials"] = trials;
  results["spanning_bound_M"] = m_bound;
  results["switch_cost_c"] = switch_cost;
  results["curves"] = std::move(curves);
  if (config.value("format", "json") == "csv") results["csv"] = csv.str();
  (void)checks;
  return results;
}

// --------------------------------------------------------------------- bk --

std::vector<Rational> coordinate_params(const json& config, int n) {
  if (config.contains("p_list")) {
    std::vector<Rational> out = get_rational_list(config, "p_list", {});
    if (static_cast<int>(out.size()) != n)
      throw InputError("p_list must have one entry per coordinate");
    return out;
  }
  Rational p = get_rational(config, "p", "1/2");
  return std::vector<Rational>(static_cast<size_t>(n), p);
}

bk::Event parse_event(const json& spec, int n) {
  if (spec.is_string()) return bk::Event::from_hex(n, spec.get<std::string>());
  if (spec.is_array()) {
    std::vector<uint32_t> terms;
    for (const auto& t : spec) terms.push_back(t.get<uint32_t>());
    return bk::Event::from_min_terms(n, terms);
  }
  throw InputError("event must be a hex string or a min-term list");
}

json cmd_bk(const json& config, CheckList& checks) {
  json results;
  const std::string variant = config.value("variant", "single");
  if (variant == "exhaustive") {
    const int n = config.value("ground", 4);
    std::vector<Rational> ps = get_rational_list(config, "p", {"1/2"});
    std::vector<bk::Event> events = bk::enumerate_increasing(n);
    results["increasing_events"] = events.size();
    for (const auto& p : ps) {
      std::vector<Rational> coords(static_cast<size_t>(n), p);
      long pairs = 0;
      Rational max_gap(0), min_gap(2);
      bool all_hold = true, fast_matches_general = true;
      for (const auto& e1 : events) {
        for (const auto& e2 : events) {
          bk::InequalityReport rep = bk::check_product_bound(e1, e2, coords);
          ++pairs;
          all_hold = all_hold && rep.holds;
          if (rep.gap > max_gap) max_gap = rep.gap;
          if (rep.gap < min_gap) min_gap = rep.gap;
        }
      }
      // Fast path vs general witness search over the same pairs.
      for (const auto& e1 : events)
        for (const auto& e2 : events)
          if (!(bk::disjoint_occurrence_fast(e1, e2) == bk::disjoint_occurrence_general(e1, e2)))
            fast_matches_general = false;
      checks.add("product-bound/p=" + rational_str(p), all_hold, {{"pairs", pairs}});
      checks.add("fast-path-agrees/p=" + rational_str(p), fast_matches_general);
      results["sweep_p=" + rational_str(p)] = {{"pairs", pairs},
                                               {"max_gap", rational_str(max_gap)},
                                               {"min_gap", rational_str(min_gap)}};
    }
  } else if (variant == "single") {
    const int n = config.value("ground", 2);
    bk::Event e1 = parse_event(config.at("e1"), n);
    bk::Event e2 = parse_event(config.at("e2"), n);
    std::vector<Rational> coords = coordinate_params(config, n);
    bk::InequalityReport rep = bk::check_product_bound(e1, e2, coords);
    checks.add("product-bound", rep.holds);
    results["lhs"] = rational_str(rep.lhs);
    results["rhs"] = rational_str(rep.rhs);
    results["gap"] = rational_str(rep.gap);
  } else if (variant == "paired") {
    const int n = config.value("ground", 2);
    bk::Event e1 = parse_event(config.at("e1"), n);
    bk::Event e2 = parse_event(config.at("e2"), n);
    std::vector<Rational> coords = coordinate_params(config, n);
    std::vector<bk::PairLaw> laws;
    if (config.value("pair_law", "fibre-selection") == "fibre-selection") {
      laws.assign(static_cast<size_t>(n), bk::fibre_selection_pair_law());
    } else {
      for (const auto& row : config.at("pair_laws")) {
        bk::PairLaw law;
        for (int i = 0; i < 4; ++i) law[static_cast<size_t>(i)] = parse_rational(row[i]);
        laws.push_back(law);
      }
      if (static_cast<int>(laws.size()) != n)
        throw InputError("one pair law per coordinate required");
    }
    bk::InequalityReport rep = bk::check_paired_bound(e1, e2, coords, laws);
    checks.add("paired-bound", rep.holds);
    results["lhs"] = rational_str(rep.lhs);
    results["rhs"] = rational_str(rep.rhs);
  } else if (variant == "two-arm") {
    Graph g = perco::graph_from_spec(config.value("graph", "grid:5x5"));
    int v = config.value("vertex", g.vertex_count() / 2);
    int radius = config.value("radius", 2);
    Rational p = get_rational(config, "p", "1/2");
    bk::TwoArmReport rep = bk::two_arm_check(g, v, radius, p, config.value("cap", 14));
    checks.add("two-arm-product-bound", rep.product_bound_holds);
    results["one_arm"] = rational_str(rep.one_arm);
    results["two_arm"] = rational_str(rep.two_arm);
    results["one_arm_squared"] = rational_str(rep.one_arm_squared);
    results["note"] =
        "the disjoint-occurrence bound gives two_arm <= one_arm^2; the reversed "
        "direction sometimes quoted is the trivial consequence of rescaling, not "
        "what the product bound states";
  } else {
    throw InputError("bk variant must be exhaustive, single, paired or two-arm");
  }
  return results;
}

// ----------------------------------------------------------------- cycles --

json cmd_cycles(const json& config, CheckList& checks) {
  const std::string base_spec = config.value("base", "path:6");
  Graph base = perco::graph_from_spec(base_spec);
  const int m_lo = config.value("m_lo", 3);
  const int m_hi = config.value("m_hi", 8);
  Mode mode = parse_mode(config.value("mode", "bond"));
  Rational p = get_rational(config, "p", "1/2");
  const int radius = config.value("radius", 4);
  const long trials = config.value("trials", 5000L);
  uint64_t seed = require_seed(config);
  int jobs = get_jobs(config);

  json curve = json::array();
  std::ostringstream csv;
  csv << "m,mean,standard_error\n";
  for (int m = m_lo; m <= m_hi; ++m) {
    Graph g = Graph::product(base, Graph::cycle(m));
    perco::MCEstimate est = perco::reach_mc(g, mode, rational_double(p), 0, radius, trials,
                                            seed + static_cast<uint64_t>(m), jobs);
    curve.push_back({{"m", m}, {"estimate", mc_json(est)}});
    csv << m << ',' << est.mean << ',' << est.standard_error << '\n';
  }
  // Exploratory sweep only: the monotonicity question is open, so nothing is
  // asserted here.
  (void)checks;
  json results;
  results["base"] = base_spec;
  results["p"] = rational_str(p);
  results["curve"] = std::move(curve);
  if (config.value("format", "json") == "csv") results["csv"] = csv.str();
  return results;
}

}  // namespace

RunOutcome run_experiment(const std::string& config_json) {
  RunOutcome outcome;
  json config;
  try {
    config = json::parse(config_json);
  } catch (const json::exception& e) {
    outcome.status = RunStatus::input_error;
    outcome.error = std::string("malformed config JSON: ") + e.what();
    return outcome;
  }
  try {
    if (!config.contains("command")) throw InputError("config needs a command");
    const std::string command = config.at("command").get<std::string>();
    CheckList checks;
    json results;
    if (command == "verify") results = cmd_verify(config, checks);
    else if (command == "coupling") results = cmd_coupling(config, checks);
    else if (command == "lakon-sweep") results = cmd_lakon_sweep(config, checks);
    else if (command == "perco-compare") results = cmd_perco_compare(config, checks);
    else if (command == "cells") results = cmd_cells(config, checks);
    else if (command == "delta") results = cmd_delta(config, checks);
    else if (command == "aug-compare") results = cmd_aug_compare(config, checks);
    else if (command == "bk") results = cmd_bk(config, checks);
    else if (command == "cycles") results = cmd_cycles(config, checks);
    else throw InputError("unknown command: " + command);

    json report;
    report["command"] = command;
    report["params"] = config;
    report["checks"] = checks.checks;
    report["results"] = results;
    report["ok"] = checks.all_ok;
    outcome.report_json = report.dump(2);
    outcome.status = checks.all_ok ? RunStatus::ok : RunStatus::check_failed;
  } catch (const SizeError& e) {
    outcome.status = RunStatus::size_error;
    outcome.error = e.what();
  } catch (const AssumptionError& e) {
    // A named precondition failure is a mathematical verdict, not bad input.
    json report;
    report["command"] = config.value("command", "");
    report["params"] = config;
    report["checks"] = json::array({{{"name", "assumption-" + e.which},
                                     {"ok", false},
                                     {"witness", e.witness}}});
    report["ok"] = false;
    outcome.report_json = report.dump(2);
    outcome.status = RunStatus::check_failed;
  } catch (const InputError& e) {
    outcome.status = RunStatus::input_error;
    outcome.error = e.what();
  } catch (const json::exception& e) {
    outcome.status = RunStatus::input_error;
    outcome.error = std::string("config field error: ") + e.what();
  } catch (const InternalError& e) {
    outcome.status = RunStatus::internal_error;
    outcome.error = e.what();
  }
  return outcome;
}

}  // namespace stodom::run

// Copyright 2026 The dgbs-clique Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dgbs/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "dgbs/budget.hpp"
#include "dgbs/encoding.hpp"
#include "dgbs/error.hpp"
#include "dgbs/gaussian.hpp"
#include "dgbs/parallel.hpp"
#include "dgbs/probability.hpp"
#include "dgbs/random.hpp"
#include "dgbs/samplers.hpp"

namespace dgbs {

using nlohmann::json;

namespace {

std::vector<double> arange(double start, double stop, double step) {
  std::vector<double> out;
  const auto n = static_cast<int>(std::floor((stop - start) / step + 1e-9));
  for (int i = 0; i <= n; ++i) out.push_back(std::round((start + i * step) * 1e12) / 1e12);
  return out;
}

void require_increasing(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) throw ValidationError(std::string(what) + " is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ValidationError(std::string(what) + " must be strictly increasing");
    }
  }
}

void require_range(const std::vector<double>& grid, double lo, double hi, bool lo_open,
                   const char* what) {
  for (double x : grid) {
    if (!std::isfinite(x) || x > hi || x < lo || (lo_open && x == lo)) {
      throw ValidationError(std::string(what) + " entry " + format_number(x) + " out of range");
    }
  }
}

void guard_evaluations(const Scenario& s, double estimate) {
  if (estimate > s.max_evaluations) {
    throw ResourceGuardError("scenario " + s.name + " needs about " + format_number(estimate) +
                             " probability evaluations, above the budget of " +
                             format_number(s.max_evaluations));
  }
}

EncodedExperiment encode_at(const Graph& g, double lambda_max, double alpha) {
  EncodeOptions opt;
  opt.lambda_max = lambda_max;
  opt.alpha = alpha;
  return encode(g, opt);
}

// Scalar c in the B = cA sense: the Ω scalar squared.
double c_of(const EncodedExperiment& e) { return e.c * e.c; }

double clique_prob(const EncodedExperiment& e, double gamma, double eta, const NodeSubset& t) {
  GaussianState st = pure_state_from_encoding(e, {gamma});
  if (eta < 1.0) st = apply_loss(st, eta);
  return max_clique_prob(st, t);
}

std::vector<int> members(const NodeSubset& s) { return {s.begin(), s.end()}; }

json instance_json(const Instance& inst) {
  return {{"nodes", inst.graph.node_count()},
          {"edges", inst.graph.edge_count()},
          {"target", members(inst.target)},
          {"target_weight", clique_weight(inst.graph, inst.target)},
          {"c_max", 1.0 / max_singular_value(inst.graph.adjacency())}};
}

template <class T>
void read_key(const json& config, const char* key, T& into) {
  if (config.contains(key)) into = config.at(key).get<T>();
}

}  // namespace

PlantedClique generate_planted(const GraphSpec& spec) {
  if (spec.nodes < 1 || spec.clique_size < 0 || spec.clique_size > spec.nodes) {
    throw ValidationError("graph generator: need 0 <= clique_size <= nodes and nodes >= 1");
  }
  if (!(spec.edge_prob >= 0.0 && spec.edge_prob <= 1.0)) {
    throw ValidationError("graph generator: edge_prob must lie in [0, 1]");
  }
  const Graph base = erdos_renyi(spec.nodes, spec.edge_prob, spec.seed);
  return plant_clique(base, spec.clique_size, derive_seed(spec.seed, 1));
}

Graph generate_graph(const GraphSpec& spec) { return generate_planted(spec).graph; }

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "landscape", "improvement", "loss-prob", "loss-success", "success-rate", "entropy",
      "scaling"};
  return names;
}

std::string csv_name(const std::string& scenario) { return scenario + ".csv"; }

Scenario default_scenario(const std::string& name) {
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ValidationError("unknown scenario: " + name);
  }
  Scenario s;
  s.name = name;
  s.generator = GraphSpec{6, 4, 0.5, 7};
  s.gamma_grid = arange(0.0, 1.0, 0.05);
  s.lambda_grid = arange(0.05, 0.95, 0.05);
  s.lambda_grid.push_back(0.99);
  s.eta_grid = arange(0.1, 1.0, 0.1);
  s.samplers = {"dgbs", "gbs", "uniform", "oh"};
  if (name == "loss-prob") {
    s.gamma_grid = arange(0.0, 2.0, 0.05);
  } else if (name == "improvement") {
    s.gamma_grid = arange(0.0, 5.0, 0.05);
  } else if (name == "success-rate" || name == "loss-success") {
    s.generator = GraphSpec{16, 8, 0.2, 3};
    if (name == "loss-success") {
      s.eta_grid = {0.3, 0.5, 1.0};
      s.samples = 2000;
      s.samplers = {"dgbs"};
    }
  } else if (name == "entropy") {
    s.generator = GraphSpec{18, 6, 0.2, 5};
    s.gamma_grid = arange(0.0, 0.5, 0.1);
  } else if (name == "scaling") {
    s.gamma_grid = arange(0.0, 2.0, 0.1);
    s.scaling_points = {{8, 4}, {12, 6}, {16, 8}};
  }
  return s;
}

Scenario scenario_from_json(const std::string& name, const json& config) {
  Scenario s = default_scenario(name);
  if (!config.is_object()) throw ValidationError("malformed config: expected a JSON object");
  static const std::set<std::string> known = {
      "name",         "graph",        "generator",        "target",     "gamma_grid", "lambda_grid",
      "eta_grid",     "lambda_max",       "alpha",      "gamma_tol",  "n_sqz",
      "n_disp",       "samples",          "repetitions", "samplers",  "uniform_size_law",
      "oh_pairs",     "search",           "scaling_points", "graphs_per_point",
      "scaling_edge_prob", "seed",        "threads",    "max_evaluations"};
  try {
    for (const auto& [key, value] : config.items()) {
      if (!known.count(key)) throw ValidationError("malformed config: unknown key '" + key + "'");
    }
    if (config.contains("name") && config.at("name").get<std::string>() != name) {
      throw ValidationError("malformed config: name '" + config.at("name").get<std::string>() +
                            "' does not match scenario " + name);
    }
    read_key(config, "graph", s.graph_path);
    if (config.contains("generator")) {
      const auto& gen = config.at("generator");
      read_key(gen, "nodes", s.generator.nodes);
      read_key(gen, "clique_size", s.generator.clique_size);
      read_key(gen, "edge_prob", s.generator.edge_prob);
      read_key(gen, "seed", s.generator.seed);
    }
    read_key(config, "target", s.target);
    read_key(config, "gamma_grid", s.gamma_grid);
    read_key(config, "lambda_grid", s.lambda_grid);
    read_key(config, "eta_grid", s.eta_grid);
    read_key(config, "lambda_max", s.lambda_max);
    read_key(config, "alpha", s.alpha);
    read_key(config, "gamma_tol", s.gamma_tol);
    read_key(config, "n_sqz", s.n_sqz);
    read_key(config, "n_disp", s.n_disp);
    read_key(config, "samples", s.samples);
    read_key(config, "repetitions", s.repetitions);
    read_key(config, "samplers", s.samplers);
    read_key(config, "uniform_size_law", s.uniform_size_law);
    read_key(config, "oh_pairs", s.oh_pairs);
    if (config.contains("search")) {
      const auto& sc = config.at("search");
      read_key(sc, "n_iter", s.search.n_iter);
      read_key(sc, "weight_priority", s.search.weight_priority);
      read_key(sc, "weighted_swap", s.search.weighted_swap);
    }
    read_key(config, "scaling_points", s.scaling_points);
    read_key(config, "graphs_per_point", s.graphs_per_point);
    read_key(config, "scaling_edge_prob", s.scaling_edge_prob);
    read_key(config, "seed", s.seed);
    read_key(config, "threads", s.threads);
    read_key(config, "max_evaluations", s.max_evaluations);
  } catch (const json::exception& ex) {
    throw ValidationError(std::string("malformed config: ") + ex.what());
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  json j = {{"name", s.name},
            {"target", s.target},
            {"gamma_grid", s.gamma_grid},
            {"lambda_grid", s.lambda_grid},
            {"eta_grid", s.eta_grid},
            {"lambda_max", s.lambda_max},
            {"alpha", s.alpha},
            {"gamma_tol", s.gamma_tol},
            {"n_sqz", s.n_sqz},
            {"n_disp", s.n_disp},
            {"samples", s.samples},
            {"repetitions", s.repetitions},
            {"samplers", s.samplers},
            {"uniform_size_law", s.uniform_size_law},
            {"oh_pairs", s.oh_pairs},
            {"search",
             {{"n_iter", s.search.n_iter},
              {"weight_priority", s.search.weight_priority},
              {"weighted_swap", s.search.weighted_swap}}},
            {"scaling_points", s.scaling_points},
            {"graphs_per_point", s.graphs_per_point},
            {"scaling_edge_prob", s.scaling_edge_prob},
            {"seed", s.seed},
            {"threads", s.threads},
            {"max_evaluations", s.max_evaluations}};
  if (!s.graph_path.empty()) {
    j["graph"] = s.graph_path;
  } else {
    j["generator"] = {{"nodes", s.generator.nodes},
                      {"clique_size", s.generator.clique_size},
                      {"edge_prob", s.generator.edge_prob},
                      {"seed", s.generator.seed}};
  }
  return j;
}

void validate_scenario(const Scenario& s) {
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), s.name) == names.end()) {
    throw ValidationError("unknown scenario: " + s.name);
  }
  if (!s.graph_path.empty() && !std::filesystem::exists(s.graph_path)) {
    throw ValidationError("cannot open graph file: " + s.graph_path);
  }
  require_increasing(s.gamma_grid, "gamma_grid");
  require_range(s.gamma_grid, 0.0, 1e6, false, "gamma_grid");
  if (s.name == "landscape" || s.name == "improvement") {
    require_increasing(s.lambda_grid, "lambda_grid");
    require_range(s.lambda_grid, 0.0, 1.0 - 1e-12, true, "lambda_grid");
  }
  if (s.name == "loss-prob" || s.name == "loss-success") {
    require_increasing(s.eta_grid, "eta_grid");
    require_range(s.eta_grid, 0.0, 1.0, true, "eta_grid");
  }
  if (!(s.lambda_max > 0.0 && s.lambda_max < 1.0)) {
    throw ValidationError("lambda_max must lie in (0, 1)");
  }
  if (!(s.gamma_tol > 0.0)) throw ValidationError("gamma_tol must be positive");
  if (!(s.n_sqz > 0.0) || !(s.n_disp >= 0.0)) {
    throw ValidationError("need n_sqz > 0 and n_disp >= 0");
  }
  if (s.samples == 0) throw ValidationError("samples must be positive");
  if (s.repetitions < 1) throw ValidationError("repetitions must be >= 1");
  static const std::set<std::string> samplers = {"dgbs", "gbs", "uniform", "oh"};
  if (s.samplers.empty()) throw ValidationError("samplers is empty");
  for (const auto& name : s.samplers) {
    if (!samplers.count(name)) throw ValidationError("unknown sampler: " + name);
  }
  if (s.uniform_size_law != "gbs" && s.uniform_size_law != "flat") {
    throw ValidationError("uniform_size_law must be 'gbs' or 'flat'");
  }
  if (s.search.n_iter < 0) throw ValidationError("search.n_iter must be >= 0");
  if (s.name == "scaling") {
    if (s.scaling_points.empty()) throw ValidationError("scaling_points is empty");
    for (auto [m, c] : s.scaling_points) {
      if (m < 2 || m > 64 || c < 2 || c > m) {
        throw ValidationError("scaling point (" + std::to_string(m) + ", " + std::to_string(c) +
                              ") out of range");
      }
    }
    if (s.graphs_per_point < 1) throw ValidationError("graphs_per_point must be >= 1");
  }
  if (s.threads < 1) throw ValidationError("threads must be >= 1");
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::logic_error("CsvTable: row width mismatch");
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const CsvTable& t) {
  if (!t.normalization.empty()) out << "# normalization=" << t.normalization << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? ";" : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? ";" : "") << row[i];
    out << '\n';
  }
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::stringstream ss(l);
    std::string cell;
    while (std::getline(ss, cell, ';')) cells.push_back(cell);
    if (!l.empty() && l.back() == ';') cells.emplace_back();
    return cells;
  };
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!header && line.rfind("# normalization=", 0) == 0) {
      t.normalization = line.substr(16);
      continue;
    }
    if (!header) {
      t.columns = split(line);
      header = true;
      continue;
    }
    auto cells = split(line);
    if (cells.size() != t.columns.size()) {
      throw ValidationError("csv: row " + std::to_string(t.rows.size() + 1) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(t.columns.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  if (!header) throw ValidationError("csv: missing header");
  return t;
}

BinomialInterval wilson_interval(std::size_t successes, std::size_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.96;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

json SamplerReport::to_json() const {
  json rows = json::array();
  for (const auto& r : rates) {
    rows.push_back({{"sampler", r.sampler},
                    {"eta", r.eta},
                    {"repetition", r.repetition},
                    {"samples", r.samples},
                    {"successes", r.successes},
                    {"rate", r.rate},
                    {"ci_low", r.ci.low},
                    {"ci_high", r.ci.high},
                    {"n_sqz", r.n_sqz},
                    {"n_disp", r.n_disp}});
  }
  return {{"rates", rows}, {"runtime_seconds", runtime_seconds}};
}

Instance load_instance(const Scenario& s) {
  Graph g = s.graph_path.empty() ? generate_graph(s.generator) : load_graph(s.graph_path);
  if (!s.target.empty()) {
    const auto t = NodeSubset::from_unsorted(s.target);
    g.check_subset(t);
    if (!is_clique(g, t)) throw ValidationError("uncertified target: not a clique");
    if (std::abs(clique_weight(g, t) - max_clique_weight(g)) > 1e-9) {
      throw ValidationError("uncertified target: not a maximum-weight clique");
    }
    return {std::move(g), t};
  }
  auto best = maximum_weight_cliques(g);
  if (best.size() != 1) {
    throw ValidationError("uncertified target: graph has " + std::to_string(best.size()) +
                          " maximum-weight cliques; give the target explicitly");
  }
  return {std::move(g), best.front()};
}

double golden_section_max(double lo, double hi, double tol, const std::function<double(double)>& f,
                          double* best_value) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  const double x = f1 >= f2 ? x1 : x2;
  *best_value = std::max(f1, f2);
  return x;
}

ExperimentResult run_landscape(const Scenario& s) {
  validate_scenario(s);
  const Instance inst = load_instance(s);
  const std::size_t nl = s.lambda_grid.size(), ng = s.gamma_grid.size();
  guard_evaluations(s, static_cast<double>(nl * ng));
  std::vector<EncodedExperiment> enc(nl);
  parallel_for(nl, s.threads, [&](std::size_t i) {
    enc[i] = encode_at(inst.graph, s.lambda_grid[i], s.alpha);
  });
  std::vector<double> p(nl * ng);
  parallel_for(nl * ng, s.threads, [&](std::size_t i) {
    p[i] = clique_prob(enc[i / ng], s.gamma_grid[i % ng], 1.0, inst.target);
  });
  ExperimentResult r;
  r.table.columns = {"gamma", "c", "p_mc"};
  r.table.normalization = "raw";
  for (std::size_t i = 0; i < nl; ++i) {
    for (std::size_t j = 0; j < ng; ++j) {
      r.table.add_row({format_number(s.gamma_grid[j]), format_number(c_of(enc[i])),
                       format_number(p[i * ng + j])});
    }
  }
  r.details["instance"] = instance_json(inst);
  return r;
}

ExperimentResult run_improvement(const Scenario& s) {
  validate_scenario(s);
  const Instance inst = load_instance(s);
  const std::size_t nl = s.lambda_grid.size();
  guard_evaluations(s, static_cast<double>(nl * (s.gamma_grid.size() + 80)));
  struct Row {
    double c = 0, gamma_star = 0, p0 = 0, pstar = 0;
  };
  std::vector<Row> rows(nl);
  parallel_for(nl, s.threads, [&](std::size_t i) {
    const auto e = encode_at(inst.graph, s.lambda_grid[i], s.alpha);
    auto f = [&](double gamma) { return clique_prob(e, gamma, 1.0, inst.target); };
    Row& row = rows[i];
    row.c = c_of(e);
    row.p0 = f(0.0);
    std::tie(row.gamma_star, row.pstar) = maximize_on_grid(s.gamma_grid, s.gamma_tol, f);
    if (row.pstar < row.p0) {
      row.pstar = row.p0;
      row.gamma_star = 0.0;
    }
  });
  ExperimentResult r;
  r.table.columns = {"lambda_max", "c", "gamma_star", "p_mc_gbs", "p_mc_dgbs", "improvement"};
  r.table.normalization = "raw";
  json skipped = json::array();
  for (std::size_t i = 0; i < nl; ++i) {
    const Row& row = rows[i];
    // p_mc_gbs below the smallest normal double makes the ratio meaningless.
    if (!(row.p0 > 1e-300)) {
      skipped.push_back(s.lambda_grid[i]);
      continue;
    }
    r.table.add_row({format_number(s.lambda_grid[i]), format_number(row.c),
                     format_number(row.gamma_star), format_number(row.p0),
                     format_number(row.pstar), format_number(row.pstar / row.p0)});
  }
  r.details["instance"] = instance_json(inst);
  r.details["skipped_lambda"] = skipped;
  r.details["optimizer"] = {{"method", "grid + golden section"}, {"tolerance", s.gamma_tol}};
  return r;
}

ExperimentResult run_loss_prob(const Scenario& s) {
  validate_scenario(s);
  const Instance inst = load_instance(s);
  const std::size_t ne = s.eta_grid.size(), ng = s.gamma_grid.size();
  guard_evaluations(s, static_cast<double>(ne * ng));
  const auto e = encode_at(inst.graph, s.lambda_max, s.alpha);
  std::vector<double> p(ne * ng);
  parallel_for(ne * ng, s.threads, [&](std::size_t i) {
    p[i] = clique_prob(e, s.gamma_grid[i % ng], s.eta_grid[i / ng], inst.target);
  });
  ExperimentResult r;
  r.table.columns = {"eta", "gamma", "p_mc"};
  r.table.normalization = "raw";
  for (std::size_t i = 0; i < ne; ++i) {
    for (std::size_t j = 0; j < ng; ++j) {
      r.table.add_row({format_number(s.eta_grid[i]), format_number(s.gamma_grid[j]),
                       format_number(p[i * ng + j])});
    }
  }
  r.details["instance"] = instance_json(inst);
  r.details["c"] = c_of(e);
  return r;
}

namespace {

struct SamplerSetup {
  std::string name;
  double eta = 1.0;
  double n_sqz = 0.0;
  double n_disp = 0.0;
  std::optional<ExactSampler> exact;
  std::vector<double> size_law;
  std::optional<EncodedExperiment> oh_encoding;
};

double window_patterns(int m) { return std::ldexp(1.0, m); }

// Success-rate core shared by success-rate and loss-success. Every sampler in
// a repetition uses the same batch and search seeds, so two samplers with the
// same law produce identical rows.
ExperimentResult run_sampler_rates(const Scenario& s, bool lossy) {
  validate_scenario(s);
  const auto start = std::chrono::steady_clock::now();
  const Instance inst = load_instance(s);
  const Graph& g = inst.graph;
  const int m = g.node_count();
  const std::vector<double> etas = lossy ? s.eta_grid : std::vector<double>{1.0};

  std::size_t tables = 0;
  for (const auto& name : s.samplers) {
    if (name == "dgbs") tables += etas.size();
    if (name == "gbs" || (name == "uniform" && s.uniform_size_law == "gbs")) tables += 1;
  }
  guard_evaluations(s, static_cast<double>(tables) * window_patterns(m) +
                           static_cast<double>(s.samples) * s.repetitions *
                               static_cast<double>(s.samplers.size() * etas.size()));

  const EncodedExperiment dgbs_enc = encode_for_budget(g, s.n_sqz, s.n_disp, s.alpha);
  const EncodedExperiment gbs_enc =
      with_gamma(encode_at(g, lambda_for_squeezing(g, s.n_sqz, s.alpha), s.alpha), {});
  const auto dgbs_budget = mean_photon_budget(pure_state_from_encoding(dgbs_enc));
  const auto gbs_budget = mean_photon_budget(pure_state_from_encoding(gbs_enc));

  std::optional<ExactSampler> gbs_exact;
  auto gbs_sampler = [&]() -> const ExactSampler& {
    if (!gbs_exact) gbs_exact.emplace(pure_state_from_encoding(gbs_enc), 0, m);
    return *gbs_exact;
  };

  std::vector<SamplerSetup> setups;
  for (const auto& name : s.samplers) {
    for (double eta : (name == "dgbs" ? etas : std::vector<double>{1.0})) {
      SamplerSetup su;
      su.name = name;
      su.eta = eta;
      if (name == "dgbs") {
        GaussianState st = pure_state_from_encoding(dgbs_enc);
        if (eta < 1.0) st = apply_loss(st, eta);
        su.exact.emplace(st, 0, m);
        su.n_sqz = dgbs_budget.n_sqz;
        su.n_disp = dgbs_budget.n_disp;
      } else if (name == "gbs") {
        su.exact.emplace(gbs_sampler());
        su.n_sqz = gbs_budget.n_sqz;
      } else if (name == "uniform") {
        su.size_law = s.uniform_size_law == "gbs" ? gbs_sampler().size_law()
                                                  : flat_size_law(m, 0, m);
      } else {
        su.oh_encoding = gbs_enc;
        su.n_sqz = gbs_budget.n_sqz;
      }
      setups.push_back(std::move(su));
    }
  }

  SamplerReport report;
  json rejection = json::object();
  for (int rep = 0; rep < s.repetitions; ++rep) {
    const std::uint64_t rep_seed = derive_seed(s.seed, static_cast<std::uint64_t>(rep));
    SearchConfig cfg = s.search;
    cfg.seed = derive_seed(rep_seed, 1);
    const std::uint64_t batch_seed = derive_seed(rep_seed, 0);
    for (const auto& su : setups) {
      SampleBatch batch;
      if (su.exact) {
        batch = su.exact->draw(s.samples, batch_seed, s.threads);
      } else if (su.name == "uniform") {
        batch = uniform_sampler(m, su.size_law, s.samples, batch_seed, s.threads);
      } else {
        OhOptions opt;
        opt.n_pairs = s.oh_pairs;
        batch = oh_sampler(*su.oh_encoding, opt, s.samples, batch_seed, s.threads);
        rejection[std::to_string(rep)] = batch.conditioning["rejection_rate"];
      }
      const auto outcome = success_rate(g, batch.samples, inst.target, cfg, s.threads);
      SamplerRate rate;
      rate.sampler = su.name;
      rate.eta = su.eta;
      rate.repetition = rep;
      rate.samples = s.samples;
      rate.successes = static_cast<std::size_t>(std::llround(outcome.rate * s.samples));
      rate.rate = outcome.rate;
      rate.ci = wilson_interval(rate.successes, rate.samples);
      rate.n_sqz = su.n_sqz;
      rate.n_disp = su.n_disp;
      report.rates.push_back(rate);
    }
  }
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  ExperimentResult r;
  r.table.columns = {"sampler", "eta",    "repetition", "samples", "successes",
                     "rate",    "ci_low", "ci_high",    "n_sqz",   "n_disp"};
  for (const auto& x : report.rates) {
    r.table.add_row({x.sampler, format_number(x.eta), std::to_string(x.repetition),
                     std::to_string(x.samples), std::to_string(x.successes),
                     format_number(x.rate), format_number(x.ci.low), format_number(x.ci.high),
                     format_number(x.n_sqz), format_number(x.n_disp)});
  }
  r.details["instance"] = instance_json(inst);
  r.details["window"] = {{"k_min", 0}, {"k_max", m}, {"renormalized", true}};
  r.details["dgbs"] = {{"lambda_max", dgbs_enc.lambda_max},
                       {"gamma", dgbs_enc.gamma.empty() ? 0.0 : dgbs_enc.gamma.front()},
                       {"loss_applied_after_budget", lossy}};
  r.details["gbs"] = {{"lambda_max", gbs_enc.lambda_max}};
  r.details["uniform_size_law"] = s.uniform_size_law;
  r.details["oh_pairs"] = s.oh_pairs < 0 ? json("squeezed_pair_law") : json(s.oh_pairs);
  if (!rejection.empty()) r.details["oh_rejection_rate"] = rejection;
  r.details["swap"] = s.search.weighted_swap ? "weight-proportional" : "uniform";
  r.report = std::move(report);
  return r;
}

}  // namespace

ExperimentResult run_success(const Scenario& s) { return run_sampler_rates(s, false); }

ExperimentResult run_loss_success(const Scenario& s) { return run_sampler_rates(s, true); }

ExperimentResult run_entropy(const Scenario& s) {
  validate_scenario(s);
  const Instance inst = load_instance(s);
  const int m = inst.graph.node_count();
  const int k = static_cast<int>(inst.target.size());
  const std::size_t ng = s.gamma_grid.size();
  guard_evaluations(s, static_cast<double>(ng) * binomial_coefficient(m, k));
  const auto e = encode_at(inst.graph, s.lambda_max, s.alpha);
  std::vector<SubsetDistribution> dists(ng);
  parallel_for(ng, s.threads, [&](std::size_t i) {
    dists[i] = subset_distribution(pure_state_from_encoding(e, {s.gamma_grid[i]}), k, true);
  });
  ExperimentResult r;
  r.table.columns = {"gamma", "entropy", "p_mc", "uniform_entropy", "heralding_probability"};
  r.table.normalization = "conditioned";
  const double uniform_entropy = std::log2(binomial_coefficient(m, k));
  for (std::size_t i = 0; i < ng; ++i) {
    double p_mc = 0.0;
    for (const auto& [subset, p] : dists[i].entries) {
      if (subset == inst.target) p_mc = p;
    }
    r.table.add_row({format_number(s.gamma_grid[i]), format_number(shannon_entropy(dists[i])),
                     format_number(p_mc), format_number(uniform_entropy),
                     format_number(dists[i].total_raw_mass)});
    std::ostringstream dist_csv;
    write_distribution_csv(dist_csv, dists[i], inst.graph);
    r.extra_files.emplace_back("entropy_distribution_" + std::to_string(i) + ".csv",
                               dist_csv.str());
  }
  r.details["instance"] = instance_json(inst);
  r.details["c"] = c_of(e);
  r.details["subset_size"] = k;
  return r;
}

ExperimentResult run_scaling(const Scenario& s) {
  validate_scenario(s);
  const std::size_t np = s.scaling_points.size();
  const auto per = static_cast<std::size_t>(s.graphs_per_point);
  guard_evaluations(s, static_cast<double>(np * per * (s.gamma_grid.size() + 80)));
  struct GraphRow {
    double improvement = 1, gamma_star = 0, n_disp = 0, n_sqz = 0, ratio = 0;
  };
  std::vector<GraphRow> rows(np * per);
  parallel_for(np * per, s.threads, [&](std::size_t i) {
    const auto [m, c] = s.scaling_points[i / per];
    const GraphSpec spec{m, c, s.scaling_edge_prob, derive_seed(s.seed, i)};
    const auto planted = generate_planted(spec);
    const Graph& g = planted.graph;
    // The planted clique is the target whenever it is among the maxima.
    NodeSubset target = planted.clique;
    if (std::abs(clique_weight(g, target) - max_clique_weight(g)) > 1e-9) {
      target = maximum_weight_cliques(g).front();
    }
    const auto e = encode_at(g, s.lambda_max, s.alpha);
    auto f = [&](double gamma) { return clique_prob(e, gamma, 1.0, target); };
    const double p0 = f(0.0);
    auto [gamma_star, pstar] = maximize_on_grid(s.gamma_grid, s.gamma_tol, f);
    if (pstar < p0) {
      pstar = p0;
      gamma_star = 0.0;
    }
    const auto budget = mean_photon_budget(pure_state_from_encoding(e, {gamma_star}));
    rows[i] = {p0 > 0 ? pstar / p0 : 1.0, gamma_star, budget.n_disp, budget.n_sqz,
               budget.ratio};
  });
  ExperimentResult r;
  r.table.columns = {"modes", "clique_size", "graphs", "improvement", "gamma_star",
                     "n_disp",  "n_sqz",       "ratio"};
  r.table.normalization = "raw";
  CsvTable per_graph;
  per_graph.columns = {"modes", "clique_size", "graph_seed", "improvement", "gamma_star",
                       "n_disp", "n_sqz", "ratio"};
  for (std::size_t p = 0; p < np; ++p) {
    GraphRow mean;
    mean.improvement = 0;
    for (std::size_t j = 0; j < per; ++j) {
      const GraphRow& row = rows[p * per + j];
      mean.improvement += row.improvement / per;
      mean.gamma_star += row.gamma_star / per;
      mean.n_disp += row.n_disp / per;
      mean.n_sqz += row.n_sqz / per;
      mean.ratio += row.ratio / per;
      per_graph.add_row({std::to_string(s.scaling_points[p].first),
                         std::to_string(s.scaling_points[p].second),
                         std::to_string(derive_seed(s.seed, p * per + j)),
                         format_number(row.improvement), format_number(row.gamma_star),
                         format_number(row.n_disp), format_number(row.n_sqz),
                         format_number(row.ratio)});
    }
    r.table.add_row({std::to_string(s.scaling_points[p].first),
                     std::to_string(s.scaling_points[p].second), std::to_string(per),
                     format_number(mean.improvement), format_number(mean.gamma_star),
                     format_number(mean.n_disp), format_number(mean.n_sqz),
                     format_number(mean.ratio)});
  }
  std::ostringstream per_csv;
  write_csv(per_csv, per_graph);
  r.extra_files.emplace_back("scaling_graphs.csv", per_csv.str());
  r.details["optimizer"] = {{"method", "grid + golden section"}, {"tolerance", s.gamma_tol}};
  return r;
}

ExperimentResult run_scenario(const Scenario& s) {
  if (s.name == "landscape") return run_landscape(s);
  if (s.name == "improvement") return run_improvement(s);
  if (s.name == "loss-prob") return run_loss_prob(s);
  if (s.name == "loss-success") return run_loss_success(s);
  if (s.name == "success-rate") return run_success(s);
  if (s.name == "entropy") return run_entropy(s);
  if (s.name == "scaling") return run_scaling(s);
  throw ValidationError("unknown scenario: " + s.name);
}

void write_experiment(const std::filesystem::path& dir, const Scenario& s,
                      const ExperimentResult& r) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create output directory " + dir.string());
  auto write_file = [&](const std::string& name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + (dir / name).string());
    out << text;
  };
  std::ostringstream csv;
  write_csv(csv, r.table);
  write_file(csv_name(s.name), csv.str());
  std::vector<std::string> files = {csv_name(s.name)};
  for (const auto& [name, text] : r.extra_files) {
    write_file(name, text);
    files.push_back(name);
  }
  if (r.report) {
    write_file("report.json", r.report->to_json().dump(2) + "\n");
    files.push_back("report.json");
  }
  const json manifest = {{"tool", "dgbs"},
                         {"version", kVersion},
                         {"scenario", scenario_to_json(s)},
                         {"seed", s.seed},
                         {"outputs", files},
                         {"columns", r.table.columns},
                         {"normalization", r.table.normalization},
                         {"float_format", "%.17g"},
                         {"rng", "mt19937_64, streams split with SplitMix64"},
                         {"details", r.details}};
  write_file("manifest.json", manifest.dump(2) + "\n");
}

}  // namespace dgbs

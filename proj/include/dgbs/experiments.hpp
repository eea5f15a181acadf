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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dgbs/clique.hpp"
#include "dgbs/graph.hpp"

namespace dgbs {

/// "nodes, planted clique, ER p, seed": the graph is erdos_renyi(nodes, p,
/// seed) with a clique planted using derive_seed(seed, 1).
struct GraphSpec {
  int nodes = 6;
  int clique_size = 4;
  double edge_prob = 0.5;
  std::uint64_t seed = 7;
};

PlantedClique generate_planted(const GraphSpec& spec);
Graph generate_graph(const GraphSpec& spec);

struct Scenario {
  std::string name;
  std::string graph_path;  // empty: use `generator`
  GraphSpec generator;
  /// Explicit target clique; empty means the certified unique maximum.
  std::vector<int> target;

  std::vector<double> gamma_grid;
  std::vector<double> lambda_grid;
  std::vector<double> eta_grid;
  double lambda_max = 0.5;
  double alpha = 0.0;
  double gamma_tol = 1e-4;

  double n_sqz = 2.34;
  double n_disp = 10.0;
  std::size_t samples = 500;
  int repetitions = 1;
  std::vector<std::string> samplers;
  std::string uniform_size_law = "gbs";  // or "flat"
  int oh_pairs = -1;
  SearchConfig search;

  std::vector<std::pair<int, int>> scaling_points;
  int graphs_per_point = 10;
  double scaling_edge_prob = 0.2;

  std::uint64_t seed = 1;
  int threads = 1;
  /// Upper bound on pattern probabilities a scenario may evaluate.
  double max_evaluations = 2e8;
};

/// Scenario with every per-name default filled in.
Scenario default_scenario(const std::string& name);

/// Reads overrides from JSON onto default_scenario(name). Unknown keys and
/// ill-typed values are validation errors.
Scenario scenario_from_json(const std::string& name, const nlohmann::json& config);
nlohmann::json scenario_to_json(const Scenario& s);

/// Throws ValidationError on empty or non-increasing grids and bad ranges.
void validate_scenario(const Scenario& s);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  /// Written as a leading "# normalization=..." line when non-empty.
  std::string normalization;

  void add_row(std::vector<std::string> row);
};

/// %.17g
std::string format_number(double x);
void write_csv(std::ostream& out, const CsvTable& t);
CsvTable read_csv(std::istream& in);

struct BinomialInterval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval at z = 1.96.
BinomialInterval wilson_interval(std::size_t successes, std::size_t trials);

struct SamplerRate {
  std::string sampler;
  double eta = 1.0;
  int repetition = 0;
  std::size_t samples = 0;
  std::size_t successes = 0;
  double rate = 0.0;
  BinomialInterval ci;
  double n_sqz = 0.0;
  double n_disp = 0.0;
};

struct SamplerReport {
  std::vector<SamplerRate> rates;
  double runtime_seconds = 0.0;
  nlohmann::json to_json() const;
};

struct ExperimentResult {
  CsvTable table;
  nlohmann::json details = nlohmann::json::object();
  std::optional<SamplerReport> report;
  /// Extra files written beside the main CSV: (file name, contents).
  std::vector<std::pair<std::string, std::string>> extra_files;
};

/// Graph plus certified target clique for a scenario.
struct Instance {
  Graph graph;
  NodeSubset target;
};

Instance load_instance(const Scenario& s);

/// Maximizes f over the grid, then refines by golden-section search on the
/// bracket around the best grid point. Returns (argmax, max).
template <class F>
std::pair<double, double> maximize_on_grid(const std::vector<double>& grid, double tol, F&& f);

ExperimentResult run_landscape(const Scenario& s);
ExperimentResult run_improvement(const Scenario& s);
ExperimentResult run_loss_prob(const Scenario& s);
ExperimentResult run_success(const Scenario& s);
ExperimentResult run_loss_success(const Scenario& s);
ExperimentResult run_entropy(const Scenario& s);
ExperimentResult run_scaling(const Scenario& s);

ExperimentResult run_scenario(const Scenario& s);

/// Canonical CSV file name for a scenario ("landscape.csv", ...).
std::string csv_name(const std::string& scenario);

/// Writes the CSV, any extra files, report.json for sampler scenarios, and
/// manifest.json into `dir`.
void write_experiment(const std::filesystem::path& dir, const Scenario& s,
                      const ExperimentResult& r);

const std::vector<std::string>& scenario_names();

inline constexpr const char* kVersion = "0.1.0";

// Implementation of the template above.
double golden_section_max(double lo, double hi, double tol, const std::function<double(double)>& f,
                          double* best_value);

template <class F>
std::pair<double, double> maximize_on_grid(const std::vector<double>& grid, double tol, F&& f) {
  std::vector<double> values(grid.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = f(grid[i]);
    if (values[i] > values[best]) best = i;
  }
  double x = grid[best], fx = values[best];
  if (grid.size() > 1) {
    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[best + 1 == grid.size() ? best : best + 1];
    double fr = 0.0;
    const double xr = golden_section_max(lo, hi, tol, f, &fr);
    if (fr > fx) {
      x = xr;
      fx = fr;
    }
  }
  return {x, fx};
}

}  // namespace dgbs

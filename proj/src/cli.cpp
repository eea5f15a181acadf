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

#include "dgbs/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "dgbs/budget.hpp"
#include "dgbs/clique.hpp"
#include "dgbs/encoding.hpp"
#include "dgbs/error.hpp"
#include "dgbs/experiments.hpp"
#include "dgbs/gaussian.hpp"
#include "dgbs/parallel.hpp"
#include "dgbs/probability.hpp"
#include "dgbs/samplers.hpp"

namespace dgbs {

using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  int threads = 0;
  std::string graph;
};

Graph require_graph(const Globals& g) {
  if (g.graph.empty()) throw ValidationError("--graph is required for this command");
  return load_graph(g.graph);
}

int thread_count(const Globals& g) { return g.threads > 0 ? g.threads : default_thread_count(); }

std::vector<int> parse_indices(const std::string& text, char sep) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, sep)) {
    if (cell.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw ValidationError("cannot parse '" + cell + "' as an integer");
    }
  }
  return out;
}

EncodedExperiment encode_from(const Graph& g, double lambda_max, double alpha, double gamma) {
  EncodeOptions opt;
  opt.lambda_max = lambda_max;
  opt.alpha = alpha;
  if (gamma != 0.0) opt.gamma = {gamma};
  return encode(g, opt);
}

GaussianState state_from(const EncodedExperiment& e, double eta) {
  GaussianState s = pure_state_from_encoding(e);
  return eta < 1.0 ? apply_loss(s, eta) : s;
}

// Text goes to --out when given (with a manifest beside it), stdout otherwise.
void emit(const Globals& g, std::ostream& out, const std::string& text, const json& config) {
  if (g.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw ValidationError("cannot write " + g.out);
  file << text;
  std::ofstream manifest(g.out + ".manifest.json");
  if (!manifest) throw ValidationError("cannot write " + g.out + ".manifest.json");
  manifest << json{{"tool", "dgbs"}, {"version", kVersion}, {"seed", g.seed}, {"config", config}}
                  .dump(2)
           << '\n';
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Displaced Gaussian boson sampling for maximum-weight clique search", "dgbs"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Base RNG seed");
  app.add_option("--out", g.out, "Output file, or directory for experiments");
  app.add_option("--threads", g.threads, "Worker threads (default: $DGBS_THREADS or 1)");
  app.add_option("--graph", g.graph, "Graph file (.json or CSV adjacency)");

  double lambda_max = 0.5, alpha = 0.0, gamma = 0.0, eta = 1.0;
  auto add_device = [&](CLI::App* sub) {
    sub->add_option("--lambda-max", lambda_max, "Largest tanh r after rescaling");
    sub->add_option("--alpha", alpha, "Node-weight rescaling strength");
    sub->add_option("--gamma", gamma, "Uniform loop strength");
  };

  auto* encode_cmd = app.add_subcommand("encode", "Encode a graph and report the device");
  encode_cmd->fallthrough();
  add_device(encode_cmd);

  auto* prob_cmd = app.add_subcommand("prob", "Probability of a pattern or a size-k table");
  prob_cmd->fallthrough();
  add_device(prob_cmd);
  std::string subset_text, pattern_text;
  int prob_k = -1;
  prob_cmd->add_option("--eta", eta, "Transmission per mode");
  prob_cmd->add_option("--subset", subset_text, "Dash-joined node subset, e.g. 0-2-3");
  prob_cmd->add_option("--pattern", pattern_text, "Comma-separated photon counts");
  prob_cmd->add_option("--k", prob_k, "Write the renormalized size-k subset distribution");

  auto* sample_cmd = app.add_subcommand("sample", "Draw a batch of subgraph samples");
  sample_cmd->fallthrough();
  add_device(sample_cmd);
  std::string sampler = "exact", size_law = "gbs";
  std::size_t count = 500;
  int k_min = 0, k_max = -1, n_pairs = -1;
  sample_cmd->add_option("--sampler", sampler, "exact, uniform or oh")
      ->check(CLI::IsMember({"exact", "uniform", "oh"}));
  sample_cmd->add_option("--eta", eta, "Transmission per mode (exact sampler)");
  sample_cmd->add_option("--count", count, "Number of samples");
  sample_cmd->add_option("--k-min", k_min, "Smallest photon number in the window");
  sample_cmd->add_option("--k-max", k_max, "Largest photon number in the window (default M)");
  sample_cmd->add_option("--size-law", size_law, "Uniform sampler size law: gbs or flat")
      ->check(CLI::IsMember({"gbs", "flat"}));
  sample_cmd->add_option("--n-pairs", n_pairs, "Pairs per sample for oh (default: drawn)");

  auto* clique_cmd = app.add_subcommand("clique", "Run the clique search on a sample batch");
  clique_cmd->fallthrough();
  std::string samples_path;
  std::string target_text;
  SearchConfig search;
  bool certify = false;
  clique_cmd->add_option("--samples", samples_path, "Batch file written by `sample`");
  clique_cmd->add_option("--n-iter", search.n_iter, "Local-search iterations");
  clique_cmd->add_option("--target", target_text, "Dash-joined target clique");
  clique_cmd->add_flag("--weighted-swap", search.weighted_swap, "Weight-proportional swaps");
  clique_cmd->add_flag("--certify", certify, "Only print the maximum-weight cliques");

  auto* exp_cmd = app.add_subcommand("experiment", "Run a named scenario");
  exp_cmd->fallthrough();
  std::string scenario_name, config_path;
  exp_cmd->add_option("name", scenario_name, "Scenario name")->required();
  exp_cmd->add_option("--config", config_path, "JSON overrides for the scenario");

  auto* gen_cmd = app.add_subcommand("generate", "Write a seeded planted-clique graph");
  gen_cmd->fallthrough();
  GraphSpec spec;
  gen_cmd->add_option("--nodes", spec.nodes, "Number of nodes");
  gen_cmd->add_option("--clique", spec.clique_size, "Planted clique size");
  gen_cmd->add_option("--edge-prob", spec.edge_prob, "Erdős–Rényi edge probability");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? 0 : 2;
    }

    if (*encode_cmd) {
      const Graph graph = require_graph(g);
      const auto e = encode_from(graph, lambda_max, alpha, gamma);
      const auto sq = squeezing_report(e);
      const auto budget = mean_photon_budget(pure_state_from_encoding(e));
      const json doc = {{"B", matrix_json(e.B)},
                        {"c", e.c * e.c},
                        {"omega", e.omega_diag},
                        {"tanh_r", e.tanh_r},
                        {"r", sq.r},
                        {"n_sqz", budget.n_sqz},
                        {"n_disp", budget.n_disp},
                        {"collision_free", budget.collision_free},
                        {"gamma_rescaled", e.gamma_rescaled}};
      emit(g, out, doc.dump(2) + "\n",
           {{"command", "encode"}, {"graph", g.graph}, {"lambda_max", lambda_max},
            {"alpha", alpha}, {"gamma", gamma}});
      return 0;
    }

    if (*prob_cmd) {
      const Graph graph = require_graph(g);
      const auto st = state_from(encode_from(graph, lambda_max, alpha, gamma), eta);
      const json config = {{"command", "prob"}, {"graph", g.graph}, {"lambda_max", lambda_max},
                           {"alpha", alpha}, {"gamma", gamma}, {"eta", eta}};
      if (prob_k >= 0) {
        std::ostringstream csv;
        write_distribution_csv(csv, subset_distribution(st, prob_k, true), graph);
        emit(g, out, csv.str(), config);
        return 0;
      }
      PhotonPattern pattern;
      if (!subset_text.empty()) {
        const auto s = NodeSubset::from_unsorted(parse_indices(subset_text, '-'));
        graph.check_subset(s);
        pattern = PhotonPattern::from_subset(graph.node_count(), s);
      } else if (!pattern_text.empty()) {
        pattern.counts = parse_indices(pattern_text, ',');
      } else {
        throw ValidationError("prob: give --subset, --pattern or --k");
      }
      emit(g, out, format_number(pattern_prob_dgbs(st, pattern)) + "\n", config);
      return 0;
    }

    if (*sample_cmd) {
      const Graph graph = require_graph(g);
      const int m = graph.node_count();
      const int hi = k_max < 0 ? m : k_max;
      const auto e = encode_from(graph, lambda_max, alpha, gamma);
      SampleBatch batch;
      if (sampler == "exact") {
        batch = ExactSampler(state_from(e, eta), k_min, hi).draw(count, g.seed, thread_count(g));
      } else if (sampler == "uniform") {
        const auto law = size_law == "flat"
                             ? flat_size_law(m, k_min, hi)
                             : ExactSampler(pure_state_from_encoding(with_gamma(e, {})), k_min, hi)
                                   .size_law();
        batch = uniform_sampler(m, law, count, g.seed, thread_count(g));
      } else {
        OhOptions opt;
        opt.n_pairs = n_pairs;
        batch = oh_sampler(e, opt, count, g.seed, thread_count(g));
      }
      batch.parameters["graph"] = g.graph;
      batch.parameters["lambda_max"] = lambda_max;
      batch.parameters["alpha"] = alpha;
      batch.parameters["gamma"] = gamma;
      batch.parameters["eta"] = eta;
      std::ostringstream text;
      write_batch_jsonl(text, batch);
      emit(g, out, text.str(), {{"command", "sample"}, {"parameters", batch.parameters}});
      return 0;
    }

    if (*clique_cmd) {
      const Graph graph = require_graph(g);
      if (certify) {
        json doc = json::array();
        for (const auto& c : maximum_weight_cliques(graph)) doc.push_back(c.to_string());
        emit(g, out, json{{"maximum_weight_cliques", doc}}.dump() + "\n",
             {{"command", "clique"}, {"graph", g.graph}, {"certify", true}});
        return 0;
      }
      if (samples_path.empty()) throw ValidationError("clique: --samples is required");
      std::ifstream in(samples_path);
      if (!in) throw ValidationError("cannot open samples file: " + samples_path);
      const SampleBatch batch = read_batch_jsonl(in);
      if (batch.modes != graph.node_count()) {
        throw ValidationError("clique: batch was drawn for " + std::to_string(batch.modes) +
                              " nodes, graph has " + std::to_string(graph.node_count()));
      }
      NodeSubset target;
      if (target_text.empty()) {
        target = maximum_weight_cliques(graph).front();
      } else {
        target = NodeSubset::from_unsorted(parse_indices(target_text, '-'));
        graph.check_subset(target);
      }
      search.seed = g.seed;
      const auto report = success_rate(graph, batch.samples, target, search, thread_count(g));
      std::ostringstream csv;
      write_outcomes_csv(csv, report.per_sample);
      emit(g, out, csv.str(),
           {{"command", "clique"}, {"graph", g.graph}, {"samples", samples_path},
            {"target", target.to_string()}, {"n_iter", search.n_iter},
            {"weighted_swap", search.weighted_swap}, {"rate", report.rate}});
      err << "success rate " << format_number(report.rate) << '\n';
      return 0;
    }

    if (*exp_cmd) {
      json config = json::object();
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ValidationError("cannot open config file: " + config_path);
        try {
          config = json::parse(in);
        } catch (const json::exception& ex) {
          throw ValidationError("malformed config " + config_path + ": " + ex.what());
        }
      }
      Scenario s = scenario_from_json(scenario_name, config);
      if (!g.graph.empty()) {
        s.graph_path = g.graph;
        if (!std::filesystem::exists(g.graph)) {
          throw ValidationError("cannot open graph file: " + g.graph);
        }
      }
      if (app.count("--seed")) s.seed = g.seed;
      if (g.threads > 0) {
        s.threads = g.threads;
      } else if (!config.contains("threads")) {
        s.threads = default_thread_count();
      }
      const auto result = run_scenario(s);
      const std::string dir = g.out.empty() ? "." : g.out;
      write_experiment(dir, s, result);
      out << "wrote " << (std::filesystem::path(dir) / csv_name(s.name)).string() << '\n';
      return 0;
    }

    if (*gen_cmd) {
      spec.seed = g.seed;
      const auto planted = generate_planted(spec);
      const auto best = maximum_weight_cliques(planted.graph);
      if (g.out.empty()) {
        out << graph_to_json(planted.graph);
      } else {
        save_graph(planted.graph, g.out);
      }
      json cliques = json::array();
      for (const auto& c : best) cliques.push_back(c.to_string());
      err << json{{"planted", planted.clique.to_string()}, {"maximum_weight_cliques", cliques}}
                 .dump()
          << '\n';
      return 0;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceGuardError& e) {
    err << "resource guard: " << e.what() << '\n';
    return 3;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace dgbs

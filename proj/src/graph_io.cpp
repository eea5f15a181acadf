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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dgbs/error.hpp"
#include "dgbs/graph.hpp"

namespace dgbs {

namespace {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double parse_cell(const std::string& cell, int row, int col) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  auto rest = cell.substr(used);
  if (used == 0 || rest.find_first_not_of(" \t\r") != std::string::npos) {
    throw ValidationError("graph CSV: row " + std::to_string(row) + ", column " +
                          std::to_string(col) + ": cannot parse '" + cell + "'");
  }
  return value;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

// Field checks happen here so errors carry node/edge positions; the Graph
// constructor repeats them for every other construction path.
Graph from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw ValidationError("graph JSON: missing 'nodes' array");
  }
  const auto& nodes = doc["nodes"];
  const int m = static_cast<int>(nodes.size());
  if (m == 0) throw ValidationError("graph JSON: 'nodes' is empty");
  std::vector<double> weights(static_cast<std::size_t>(m), 0.0);
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto& n = nodes[k];
    if (!n.contains("id") || !n["id"].is_number_integer()) {
      throw ValidationError("graph JSON: node entry " + std::to_string(k) + " lacks integer 'id'");
    }
    const int id = n["id"].get<int>();
    if (id < 0 || id >= m || seen[static_cast<std::size_t>(id)]) {
      throw ValidationError("graph JSON: node entry " + std::to_string(k) +
                            " has invalid or duplicate id " + std::to_string(id));
    }
    seen[static_cast<std::size_t>(id)] = true;
    const double w = n.contains("weight") ? n["weight"].get<double>() : 1.0;
    if (!std::isfinite(w) || w < 0.0) {
      throw ValidationError("graph JSON: node " + std::to_string(id) + " has negative weight");
    }
    weights[static_cast<std::size_t>(id)] = w;
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  if (doc.contains("edges")) {
    const auto& edges = doc["edges"];
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto& e = edges[k];
      const int u = e.at("u").get<int>();
      const int v = e.at("v").get<int>();
      const double w = e.contains("weight") ? e["weight"].get<double>() : 1.0;
      const std::string where = "graph JSON: edge entry " + std::to_string(k) + " (row " +
                                std::to_string(u) + ", column " + std::to_string(v) + ")";
      if (u < 0 || v < 0 || u >= m || v >= m) throw ValidationError(where + ": index out of range");
      if (u == v) throw ValidationError(where + ": self loop");
      if (!std::isfinite(w) || w < 0.0) throw ValidationError(where + ": negative weight");
      if (a(u, v) != 0.0) throw ValidationError(where + ": duplicate edge");
      a(u, v) = a(v, u) = w;
    }
  }
  return Graph(std::move(weights), std::move(a));
}

}  // namespace

Graph parse_graph_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("graph JSON: ") + e.what());
  }
  try {
    return from_json(doc);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("graph JSON: ") + e.what());
  }
}

Graph parse_graph_csv(std::string_view text) {
  std::stringstream in{std::string(text)};
  std::string line;
  std::vector<double> weights;
  std::vector<std::vector<double>> rows;
  int line_no = 0;
  bool have_weights = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto cells = split_commas(line);
    if (rows.empty() && !have_weights && cells.front() == "weights") {
      for (std::size_t j = 1; j < cells.size(); ++j) {
        weights.push_back(parse_cell(cells[j], line_no, static_cast<int>(j)));
      }
      have_weights = true;
      continue;
    }
    std::vector<double> row;
    const int r = static_cast<int>(rows.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      row.push_back(parse_cell(cells[j], r, static_cast<int>(j)));
    }
    rows.push_back(std::move(row));
  }
  const int m = static_cast<int>(rows.size());
  if (m == 0) throw ValidationError("graph CSV: no adjacency rows");
  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(rows[i].size()) != m) {
      throw ValidationError("graph CSV: row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(m));
    }
    for (int j = 0; j < m; ++j) {
      const double x = rows[i][j];
      if (!std::isfinite(x) || x < 0.0) {
        throw ValidationError("graph CSV: negative or non-finite entry at row " +
                              std::to_string(i) + ", column " + std::to_string(j));
      }
      a(i, j) = x;
    }
  }
  for (int i = 0; i < m; ++i) {
    if (a(i, i) != 0.0) {
      throw ValidationError("graph CSV: nonzero diagonal at row " + std::to_string(i) +
                            ", column " + std::to_string(i));
    }
    for (int j = i + 1; j < m; ++j) {
      if (a(i, j) != a(j, i)) {
        throw ValidationError("graph CSV: asymmetric entry at row " + std::to_string(i) +
                              ", column " + std::to_string(j));
      }
    }
  }
  if (!have_weights) weights.assign(static_cast<std::size_t>(m), 1.0);
  if (static_cast<int>(weights.size()) != m) {
    throw ValidationError("graph CSV: weights header has " + std::to_string(weights.size()) +
                          " entries, expected " + std::to_string(m));
  }
  for (int i = 0; i < m; ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw ValidationError("graph CSV: negative weight in header, column " + std::to_string(i + 1));
    }
  }
  return Graph(std::move(weights), std::move(a));
}

std::string graph_to_json(const Graph& g) {
  // Numbers are written by hand: the library's default float format does not
  // promise 17 significant digits.
  std::string out = "{\n  \"nodes\": [";
  for (int i = 0; i < g.node_count(); ++i) {
    out += i ? ",\n    " : "\n    ";
    out += "{\"id\": " + std::to_string(i) + ", \"weight\": " + format_double(g.weight(i)) + "}";
  }
  out += "\n  ],\n  \"edges\": [";
  bool first = true;
  for (int i = 0; i < g.node_count(); ++i) {
    for (int j = i + 1; j < g.node_count(); ++j) {
      if (g.adjacency()(i, j) == 0.0) continue;
      out += first ? "\n    " : ",\n    ";
      first = false;
      out += "{\"u\": " + std::to_string(i) + ", \"v\": " + std::to_string(j) +
             ", \"weight\": " + format_double(g.adjacency()(i, j)) + "}";
    }
  }
  out += first ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

std::string graph_to_csv(const Graph& g) {
  std::string out = "weights";
  for (double w : g.node_weights()) out += "," + format_double(w);
  out += '\n';
  for (int i = 0; i < g.node_count(); ++i) {
    for (int j = 0; j < g.node_count(); ++j) {
      if (j) out += ',';
      out += format_double(g.adjacency()(i, j));
    }
    out += '\n';
  }
  return out;
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open graph file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return path.extension() == ".json" ? parse_graph_json(buf.str()) : parse_graph_csv(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void save_graph(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write graph file: " + path.string());
  out << (path.extension() == ".json" ? graph_to_json(g) : graph_to_csv(g));
}

}  // namespace dgbs

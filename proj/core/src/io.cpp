#include "netfuse/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "netfuse/errors.hpp"

namespace netfuse {

namespace {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

EdgeListData read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open edge list " + path.string());
  }
  std::vector<Edge> edges;
  std::vector<double> weights;
  bool any_weight = false;
  int max_id = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(strip_comment(line));
    int i = 0, j = 0;
    if (!(fields >> i)) continue;  // blank or comment-only line
    if (!(fields >> j)) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 'i j [weight]'");
    }
    double weight = 0.0;
    if (fields >> weight) {
      any_weight = true;
    } else {
      weight = 0.0;
    }
    if (i < 0 || j < 0) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": node ids must be nonnegative");
    }
    edges.push_back({i, j});
    weights.push_back(weight);
    max_id = std::max({max_id, i, j});
  }
  if (edges.empty()) {
    throw ConfigError(path.string() + ": no edges found");
  }

  // Re-sort weights into the canonical (s, e) edge order the graph uses.
  std::vector<std::pair<Edge, double>> pairs;
  pairs.reserve(edges.size());
  for (std::size_t idx = 0; idx < edges.size(); ++idx) {
    Edge edge = edges[idx];
    if (edge.s > edge.e) std::swap(edge.s, edge.e);
    pairs.emplace_back(edge, weights[idx]);
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<Edge> sorted_edges;
  EdgeWeights sorted_weights;
  for (const auto& [edge, weight] : pairs) {
    sorted_edges.push_back(edge);
    sorted_weights.values.push_back(weight);
  }

  EdgeListData data{NetworkGraph(max_id + 1, std::move(sorted_edges)),
                    std::nullopt};
  if (any_weight) data.weights = std::move(sorted_weights);
  return data;
}

void write_edge_list(const std::filesystem::path& path,
                     const NetworkGraph& graph, const EdgeWeights* weights) {
  if (weights != nullptr &&
      weights->values.size() != graph.edges().size()) {
    throw ConfigError("weight count does not match edge count");
  }
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write edge list " + path.string());
  }
  for (std::size_t l = 0; l < graph.edges().size(); ++l) {
    out << graph.edges()[l].s << ' ' << graph.edges()[l].e;
    if (weights != nullptr) {
      out << ' ' << format_double(weights->values[l]);
    }
    out << '\n';
  }
}

NodeDataset read_node_dataset(const std::filesystem::path& path,
                              int node_id) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open dataset " + path.string());
  }
  int d = 0, n = 0;
  if (!(in >> d >> n) || d < 1 || n < 1) {
    throw ConfigError(path.string() + ": expected header 'd n'");
  }
  NodeDataset data;
  data.node_id = node_id;
  data.design.resize(n, d);
  data.responses.resize(n);
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < d; ++col) {
      if (!(in >> data.design(row, col))) {
        throw ConfigError(path.string() + ": truncated row " +
                          std::to_string(row));
      }
    }
    if (!(in >> data.responses[row])) {
      throw ConfigError(path.string() + ": missing response in row " +
                        std::to_string(row));
    }
  }
  data.validate();
  return data;
}

void write_node_dataset(const std::filesystem::path& path,
                        const NodeDataset& data) {
  data.validate();
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write dataset " + path.string());
  }
  out << data.dim() << ' ' << data.sample_count() << '\n';
  for (Eigen::Index row = 0; row < data.sample_count(); ++row) {
    for (Eigen::Index col = 0; col < data.dim(); ++col) {
      out << format_double(data.design(row, col)) << ' ';
    }
    out << format_double(data.responses[row]) << '\n';
  }
}

std::string node_dataset_filename(int node_id) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "node_%04d.txt", node_id);
  return buffer;
}

}  // namespace netfuse

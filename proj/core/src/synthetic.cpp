#include "netfuse/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <string>

#include "netfuse/errors.hpp"
#include "netfuse/rng.hpp"

namespace netfuse {

std::vector<std::vector<int>> ClusterModel::members() const {
  std::vector<std::vector<int>> groups(cluster_count);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    groups[assignment[i]].push_back(static_cast<int>(i));
  }
  return groups;
}

bool clusters_connected(int node_count, const std::vector<Edge>& edges,
                        const std::vector<int>& assignment) {
  if (assignment.size() != static_cast<std::size_t>(node_count)) return false;
  std::vector<std::vector<int>> adjacency(node_count);
  for (const Edge& edge : edges) {
    // Only same-cluster edges matter for the audit.
    if (assignment[edge.s] == assignment[edge.e]) {
      adjacency[edge.s].push_back(edge.e);
      adjacency[edge.e].push_back(edge.s);
    }
  }
  std::vector<bool> seen(node_count, false);
  for (int start = 0; start < node_count; ++start) {
    if (seen[start]) continue;
    // BFS over the same-cluster subgraph from the first unseen member.
    std::deque<int> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adjacency[u]) {
        if (!seen[v]) {
          seen[v] = true;
          queue.push_back(v);
        }
      }
    }
    // Any later unseen node of the same cluster means a second component.
    for (int other = start + 1; other < node_count; ++other) {
      if (!seen[other] && assignment[other] == assignment[start]) {
        return false;
      }
    }
  }
  return true;
}

NetworkGraph generate_geometric_graph(int node_count, double radius,
                                      std::uint64_t seed, int max_retries) {
  if (node_count < 2) {
    throw GenerationError("geometric graph needs at least two nodes");
  }
  if (radius <= 0.0 || radius > std::numbers::sqrt2) {
    throw GenerationError("radius must lie in (0, sqrt(2)]");
  }
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    CounterRng rng(child_seed(seed, "geometric-graph", attempt));
    std::vector<std::array<double, 2>> positions(node_count);
    for (auto& p : positions) {
      p[0] = rng.next_uniform();
      p[1] = rng.next_uniform();
    }
    std::vector<Edge> edges;
    const double r2 = radius * radius;
    for (int i = 0; i < node_count; ++i) {
      for (int j = i + 1; j < node_count; ++j) {
        const double dx = positions[i][0] - positions[j][0];
        const double dy = positions[i][1] - positions[j][1];
        if (dx * dx + dy * dy <= r2) edges.push_back({i, j});
      }
    }
    if (is_connected(node_count, edges)) {
      return NetworkGraph(node_count, std::move(edges), std::move(positions));
    }
  }
  throw GenerationError(
      "no connected geometric graph after " + std::to_string(max_retries) +
      " attempts; increase the connection radius (r = " +
      std::to_string(radius) + ")");
}

std::vector<Eigen::VectorXd> default_coefficient_table(int cluster_count,
                                                       int dim) {
  const double base[3][2] = {{1.0, 1.0}, {-1.0, 2.0}, {3.0, -1.0}};
  std::vector<Eigen::VectorXd> table(cluster_count);
  for (int s = 0; s < cluster_count; ++s) {
    // Shift of 6 per block of three keeps every coordinate's pairwise gap
    // at least 1 for any dimension.
    const double shift = 6.0 * (s / 3);
    Eigen::VectorXd row(dim);
    for (int p = 0; p < dim; ++p) {
      row[p] = base[s % 3][p % 2] + shift;
    }
    table[s] = row;
  }
  return table;
}

namespace {

/// Hop distances from `source` over the graph.
std::vector<int> hop_distances(const NetworkGraph& graph, int source) {
  std::vector<int> dist(graph.node_count(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : graph.neighbors()[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

ClusterModel generate_cluster_model(const NetworkGraph& graph,
                                    int cluster_count, int dim,
                                    const std::vector<Eigen::VectorXd>& table,
                                    double noise_sd, std::uint64_t seed) {
  const int k = graph.node_count();
  if (cluster_count < 1 || cluster_count > k) {
    throw GenerationError("cluster count must lie in [1, node_count]");
  }
  if (noise_sd < 0.0) {
    throw GenerationError("noise standard deviation must be nonnegative");
  }

  std::vector<Eigen::VectorXd> coefficients =
      table.empty() ? default_coefficient_table(cluster_count, dim) : table;
  if (coefficients.size() != static_cast<std::size_t>(cluster_count)) {
    throw GenerationError("coefficient table must have one row per cluster");
  }
  for (const auto& row : coefficients) {
    if (row.size() != dim) {
      throw GenerationError("coefficient table row dimension mismatch");
    }
  }
  for (int a = 0; a < cluster_count; ++a) {
    for (int b = a + 1; b < cluster_count; ++b) {
      const double gap =
          (coefficients[a] - coefficients[b]).cwiseAbs().maxCoeff();
      if (gap <= 0.0) {
        throw GenerationError("clusters " + std::to_string(a) + " and " +
                              std::to_string(b) +
                              " have identical coefficients");
      }
    }
  }

  // Far-apart seeds: first drawn from the stream, the rest by farthest-point
  // hop distance (ties to the smallest id).
  CounterRng rng(seed, "cluster-seeds");
  std::vector<int> seeds{
      static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k)))};
  std::vector<int> min_dist = hop_distances(graph, seeds[0]);
  while (static_cast<int>(seeds.size()) < cluster_count) {
    int best = -1;
    for (int v = 0; v < k; ++v) {
      if (min_dist[v] > 0 && (best < 0 || min_dist[v] > min_dist[best])) {
        best = v;
      }
    }
    if (best < 0) {
      throw GenerationError("cannot place " + std::to_string(cluster_count) +
                            " cluster seeds on this graph");
    }
    seeds.push_back(best);
    const std::vector<int> dist = hop_distances(graph, best);
    for (int v = 0; v < k; ++v) min_dist[v] = std::min(min_dist[v], dist[v]);
  }

  // Multi-source BFS growth, one hop per cluster per round: each claimed
  // node attaches through an edge to its own cluster, so every cluster's
  // induced subgraph is connected by construction.
  std::vector<int> assignment(k, -1);
  std::vector<std::deque<int>> frontier(cluster_count);
  for (int s = 0; s < cluster_count; ++s) {
    assignment[seeds[s]] = s;
    frontier[s].push_back(seeds[s]);
  }
  int assigned = cluster_count;
  while (assigned < k) {
    bool progressed = false;
    for (int s = 0; s < cluster_count && assigned < k; ++s) {
      const std::size_t wave = frontier[s].size();
      for (std::size_t step = 0; step < wave; ++step) {
        const int u = frontier[s].front();
        frontier[s].pop_front();
        for (int v : graph.neighbors()[u]) {
          if (assignment[v] < 0) {
            assignment[v] = s;
            frontier[s].push_back(v);
            ++assigned;
            progressed = true;
          }
        }
      }
    }
    if (!progressed) {
      bool any_frontier = false;
      for (const auto& f : frontier) any_frontier |= !f.empty();
      if (!any_frontier) {
        throw GenerationError("cluster growth stalled before covering graph");
      }
    }
  }

  ClusterModel model;
  model.cluster_count = cluster_count;
  model.coefficients = std::move(coefficients);
  model.assignment = std::move(assignment);
  model.noise_sd = noise_sd;

  if (!clusters_connected(k, graph.edges(), model.assignment)) {
    throw GenerationError("generated clusters violate connectivity");
  }
  return model;
}

std::vector<NodeDataset> generate_datasets(const NetworkGraph& graph,
                                           const ClusterModel& model,
                                           int sample_count,
                                           std::uint64_t seed) {
  const int k = graph.node_count();
  const int d = model.dim();
  if (static_cast<int>(model.assignment.size()) != k) {
    throw GenerationError("cluster model does not cover the graph");
  }
  if (sample_count < 1) {
    throw GenerationError("sample count must be positive");
  }
  if (sample_count < d) {
    std::fprintf(stderr,
                 "warning: %d samples per node is below the dimension %d; "
                 "local OLS will need a ridge\n",
                 sample_count, d);
  }

  std::vector<NodeDataset> datasets(k);
  for (int i = 0; i < k; ++i) {
    CounterRng covariates(seed, "covariates", static_cast<std::uint64_t>(i));
    CounterRng noise(seed, "noise", static_cast<std::uint64_t>(i));
    NodeDataset& node = datasets[i];
    node.node_id = i;
    node.design.resize(sample_count, d);
    node.responses.resize(sample_count);
    const Eigen::VectorXd& truth = model.node_coefficients(i);
    for (int row = 0; row < sample_count; ++row) {
      for (int col = 0; col < d; ++col) {
        node.design(row, col) = covariates.next_normal();
      }
      node.responses[row] = node.design.row(row).dot(truth) +
                            model.noise_sd * noise.next_normal();
    }
  }
  return datasets;
}

}  // namespace netfuse

#include "netfuse/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "netfuse/errors.hpp"

namespace netfuse {

namespace {

/// Union-find over node ids with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns false if x and y were already in the same set.
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent_[y] = x;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

bool is_connected(int node_count, const std::vector<Edge>& edges) {
  if (node_count <= 0) return false;
  DisjointSets ds(node_count);
  int components = node_count;
  for (const Edge& edge : edges) {
    if (ds.unite(edge.s, edge.e)) --components;
  }
  return components == 1;
}

PenaltySupport PenaltySupport::from_edges(int node_count,
                                          std::vector<Edge> edges) {
  if (node_count < 1) {
    throw ConfigError("penalty support requires at least one node");
  }
  for (Edge& edge : edges) {
    if (edge.s > edge.e) std::swap(edge.s, edge.e);
    if (edge.s == edge.e) {
      throw ConfigError("self-loop at node " + std::to_string(edge.s));
    }
    if (edge.s < 0 || edge.e >= node_count) {
      throw ConfigError("edge (" + std::to_string(edge.s) + ", " +
                        std::to_string(edge.e) + ") out of range for " +
                        std::to_string(node_count) + " nodes");
    }
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw ConfigError("duplicate edge in edge list");
  }

  PenaltySupport support;
  support.node_count = node_count;
  support.edges = std::move(edges);
  support.neighbors.assign(node_count, {});
  for (const Edge& edge : support.edges) {
    support.neighbors[edge.s].push_back(edge.e);
    support.neighbors[edge.e].push_back(edge.s);
  }
  for (auto& list : support.neighbors) std::sort(list.begin(), list.end());
  support.degree.resize(node_count);
  for (int i = 0; i < node_count; ++i) {
    support.degree[i] = static_cast<int>(support.neighbors[i].size());
  }
  return support;
}

bool PenaltySupport::is_spanning_tree() const {
  return edge_count() == node_count - 1 && is_connected(node_count, edges);
}

NetworkGraph::NetworkGraph(int node_count, std::vector<Edge> edges)
    : NetworkGraph(node_count, std::move(edges), {}) {}

NetworkGraph::NetworkGraph(int node_count, std::vector<Edge> edges,
                           std::vector<std::array<double, 2>> positions)
    : support_(PenaltySupport::from_edges(node_count, std::move(edges))),
      positions_(std::move(positions)) {
  if (!positions_.empty() &&
      positions_.size() != static_cast<std::size_t>(node_count)) {
    throw ConfigError("positions must cover every node");
  }
  if (!is_connected(node_count, support_.edges)) {
    throw TopologyError("graph with " + std::to_string(node_count) +
                        " nodes is not connected");
  }
}

SpanningTree SpanningTree::from_support(PenaltySupport support) {
  if (!support.is_spanning_tree()) {
    throw TopologyError("edge set is not a spanning tree of " +
                        std::to_string(support.node_count) + " nodes");
  }
  SpanningTree tree;
  static_cast<PenaltySupport&>(tree) = std::move(support);
  return tree;
}

EdgeWeights similarity_weights(const NetworkGraph& graph,
                               const std::vector<Eigen::VectorXd>& ols) {
  if (ols.size() != static_cast<std::size_t>(graph.node_count())) {
    throw ConfigError("need one OLS estimate per node");
  }
  const Eigen::Index d = ols.empty() ? 0 : ols.front().size();
  for (const auto& estimate : ols) {
    if (estimate.size() != d) {
      throw ConfigError("OLS estimates disagree in dimension");
    }
  }
  EdgeWeights weights;
  weights.values.reserve(graph.edges().size());
  for (const Edge& edge : graph.edges()) {
    weights.values.push_back((ols[edge.s] - ols[edge.e]).norm());
  }
  return weights;
}

SpanningTree build_mst(const NetworkGraph& graph, const EdgeWeights& weights) {
  if (weights.values.size() != graph.edges().size()) {
    throw ConfigError("need one weight per graph edge");
  }
  // Candidates sorted by (weight, s, e): the edge list is already sorted by
  // (s, e), and the sort below is stable, so ties fall back to edge order.
  std::vector<int> order(graph.edges().size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return weights.values[a] < weights.values[b];
  });

  DisjointSets ds(graph.node_count());
  std::vector<Edge> chosen;
  chosen.reserve(graph.node_count() - 1);
  for (int idx : order) {
    const Edge& edge = graph.edges()[idx];
    if (ds.unite(edge.s, edge.e)) {
      chosen.push_back(edge);
      if (static_cast<int>(chosen.size()) == graph.node_count() - 1) break;
    }
  }
  if (static_cast<int>(chosen.size()) != graph.node_count() - 1) {
    throw TopologyError("graph is not connected; no spanning tree exists");
  }
  return SpanningTree::from_support(
      PenaltySupport::from_edges(graph.node_count(), std::move(chosen)));
}

Eigen::SparseMatrix<double> incidence_matrix(const PenaltySupport& support) {
  Eigen::SparseMatrix<double> h(support.edge_count(), support.node_count);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(2 * support.edges.size());
  for (int l = 0; l < support.edge_count(); ++l) {
    entries.emplace_back(l, support.edges[l].s, 1.0);
    entries.emplace_back(l, support.edges[l].e, -1.0);
  }
  h.setFromTriplets(entries.begin(), entries.end());
  return h;
}

Eigen::MatrixXd augment_incidence(const Eigen::SparseMatrix<double>& h) {
  const Eigen::Index k = h.cols();
  if (h.rows() != k - 1) {
    throw ConfigError("augmentation needs a (K-1) x K tree incidence matrix");
  }
  Eigen::MatrixXd augmented(k, k);
  augmented.topRows(k - 1) = Eigen::MatrixXd(h);
  augmented.row(k - 1).setConstant(1.0 / std::sqrt(static_cast<double>(k)));
  return augmented;
}

Eigen::SparseMatrix<double> laplacian(const PenaltySupport& support) {
  Eigen::SparseMatrix<double> lap(support.node_count, support.node_count);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(support.node_count + 2 * support.edges.size());
  for (int i = 0; i < support.node_count; ++i) {
    entries.emplace_back(i, i, static_cast<double>(support.degree[i]));
  }
  for (const Edge& edge : support.edges) {
    entries.emplace_back(edge.s, edge.e, -1.0);
    entries.emplace_back(edge.e, edge.s, -1.0);
  }
  lap.setFromTriplets(entries.begin(), entries.end());
  return lap;
}

}  // namespace netfuse

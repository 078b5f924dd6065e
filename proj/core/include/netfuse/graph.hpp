#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <array>
#include <compare>
#include <vector>

namespace netfuse {

/// Oriented edge with the convention s < e. The orientation fixes the sign
/// of per-edge difference variables: the edge carries beta_s - beta_e.
struct Edge {
  int s = 0;
  int e = 0;

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Set of penalty edges the solver operates on, either a spanning tree or a
/// whole graph's edge set. Edges are sorted by (s, e); neighbor lists are
/// sorted ascending; degree(i) == neighbors[i].size().
struct PenaltySupport {
  int node_count = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> neighbors;
  std::vector<int> degree;

  /// Sorts, validates (range, self-loops, duplicates) and builds adjacency.
  static PenaltySupport from_edges(int node_count, std::vector<Edge> edges);

  int edge_count() const { return static_cast<int>(edges.size()); }
  bool is_spanning_tree() const;
};

/// Communication network G = (V, E). Connected by construction.
class NetworkGraph {
 public:
  NetworkGraph(int node_count, std::vector<Edge> edges);
  NetworkGraph(int node_count, std::vector<Edge> edges,
               std::vector<std::array<double, 2>> positions);

  int node_count() const { return support_.node_count; }
  const std::vector<Edge>& edges() const { return support_.edges; }
  int edge_count() const { return support_.edge_count(); }
  const std::vector<std::vector<int>>& neighbors() const {
    return support_.neighbors;
  }
  int degree(int node) const { return support_.degree[node]; }

  bool has_positions() const { return !positions_.empty(); }
  const std::vector<std::array<double, 2>>& positions() const {
    return positions_;
  }

  /// The whole edge set as a penalty support (pairwise-l1 baseline).
  const PenaltySupport& penalty_support() const { return support_; }

 private:
  PenaltySupport support_;
  std::vector<std::array<double, 2>> positions_;
};

/// One nonnegative weight per graph edge, parallel to NetworkGraph::edges().
/// Non-edges carry no entry (conceptually infinite).
struct EdgeWeights {
  std::vector<double> values;
};

/// Spanning tree over the K nodes: exactly K-1 edges, acyclic, spanning.
struct SpanningTree : PenaltySupport {
  /// Validates tree-ness; throws TopologyError otherwise.
  static SpanningTree from_support(PenaltySupport support);
};

/// Model-similarity weights: weight(i,j) = ||ols_i - ols_j||_2 per edge.
EdgeWeights similarity_weights(const NetworkGraph& graph,
                               const std::vector<Eigen::VectorXd>& ols);

/// Kruskal with union-find; candidates sorted by (weight, s, e) ascending,
/// which makes ties deterministic.
SpanningTree build_mst(const NetworkGraph& graph, const EdgeWeights& weights);

/// L x K incidence matrix: row l has +1 at s(l), -1 at e(l).
Eigen::SparseMatrix<double> incidence_matrix(const PenaltySupport& support);

/// Appends the row (1/sqrt(K)) * 1^T to a tree incidence matrix, producing a
/// square invertible K x K matrix.
Eigen::MatrixXd augment_incidence(const Eigen::SparseMatrix<double>& h);

/// Graph Laplacian L = H^T H of the support.
Eigen::SparseMatrix<double> laplacian(const PenaltySupport& support);

/// True iff the node set is connected through `edges`.
bool is_connected(int node_count, const std::vector<Edge>& edges);

}  // namespace netfuse

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "netfuse/graph.hpp"
#include "netfuse/local_ols.hpp"

namespace netfuse {

/// Ground truth for a synthetic instance: S cluster coefficient vectors,
/// a node -> cluster map, and the noise level.
struct ClusterModel {
  int cluster_count = 0;
  std::vector<Eigen::VectorXd> coefficients;  // one per cluster
  std::vector<int> assignment;                // node -> cluster
  double noise_sd = 0.0;

  const Eigen::VectorXd& node_coefficients(int node) const {
    return coefficients[assignment[node]];
  }
  int dim() const {
    return coefficients.empty() ? 0 : static_cast<int>(coefficients[0].size());
  }
  std::vector<std::vector<int>> members() const;
};

/// Random geometric graph: K points uniform in the unit square, edge iff
/// distance <= radius. Re-draws with a derived seed until connected, up to
/// `max_retries`; exhaustion raises GenerationError suggesting a larger
/// radius.
NetworkGraph generate_geometric_graph(int node_count, double radius,
                                      std::uint64_t seed,
                                      int max_retries = 100);

/// Built-in coefficient table: rows [1,1], [-1,2], [3,-1] tiled to dimension
/// d; rows beyond the third repeat the pattern shifted by +6 per block of
/// three, keeping pairwise inf-distance >= 1.
std::vector<Eigen::VectorXd> default_coefficient_table(int cluster_count,
                                                       int dim);

/// Partitions the graph into S spatially contiguous clusters by multi-source
/// breadth-first growth from far-apart seed nodes, assigns coefficients from
/// `table` (empty = default table), and validates that every cluster with
/// >= 2 members induces a connected subgraph and that coefficient vectors
/// are pairwise distinct.
ClusterModel generate_cluster_model(const NetworkGraph& graph,
                                    int cluster_count, int dim,
                                    const std::vector<Eigen::VectorXd>& table,
                                    double noise_sd, std::uint64_t seed);

/// Per-node datasets from the linear model: covariates i.i.d. standard
/// normal, y = beta_cluster(i)^T x + eps with eps ~ N(0, noise_sd^2).
/// Streams are keyed by (seed, node), so generation is bit-reproducible and
/// parallelizable.
std::vector<NodeDataset> generate_datasets(const NetworkGraph& graph,
                                           const ClusterModel& model,
                                           int sample_count,
                                           std::uint64_t seed);

/// Audit of the cluster-connectivity requirement: every cluster with >= 2
/// members induces a connected subgraph of `edges`.
bool clusters_connected(int node_count, const std::vector<Edge>& edges,
                        const std::vector<int>& assignment);

}  // namespace netfuse

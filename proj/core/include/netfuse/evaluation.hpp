#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "netfuse/graph.hpp"
#include "netfuse/synthetic.hpp"

namespace netfuse {

/// Node partition induced by the fused edges of a solver output.
struct ClusterPartition {
  std::vector<int> cluster_of;  // node -> label, labels 0..S-1 in order of
                                // first appearance by node id
  int cluster_count = 0;
  std::vector<int> fused_edges;  // indices into the support's edge list
  /// Set when a support edge joins two nodes of the same fused component but
  /// is itself not fused. Impossible on a tree; can occur on cyclic
  /// supports, where fusion need not be transitive.
  bool intransitive_fusion = false;
};

/// Edge l is fused iff max_p |delta_{l,p}| <= zero_tol; the partition is the
/// connected components of the fused-edge subgraph. On a tree this gives
/// cluster_count == node_count - fused_edges.size().
ClusterPartition extract_clusters(const Eigen::VectorXd& delta,
                                  const PenaltySupport& support,
                                  double zero_tol = 1e-8);

/// Per-coordinate mean squared error:
/// (1/(K*d)) * sum_i ||beta_i - beta_truth(i)||^2.
double coefficient_mse(const Eigen::VectorXd& beta, const ClusterModel& truth);

struct SelectionAccuracy {
  bool exact_recovery = false;
  double rand_index = 0.0;
  int s_hat = 0;
};

/// Compares a partition against the true assignment: exact recovery as set
/// families (label-permutation invariant) plus the Rand index over node
/// pairs.
SelectionAccuracy selection_accuracy(const ClusterPartition& partition,
                                     const std::vector<int>& truth);

/// Monte-Carlo check that the similarity-weight MST preserves cluster
/// connectivity: over `replications` fresh datasets of size n, the fraction
/// of runs in which every cluster with >= 2 members induces a connected
/// subtree of the MST.
double lemma1_trial(const NetworkGraph& graph, const ClusterModel& truth,
                    int sample_count, int replications, std::uint64_t seed);

struct NormalityDiagnostic {
  double ks_statistic = 0.0;
  double critical_value = 0.0;
  std::size_t sample_count = 0;
  bool pass = false;
};

/// Tests sqrt(N) * (delta_hat - delta_star) restricted to the active set
/// against N(0, sigma^2 * C_active^-1): standardizes every replication by
/// the theoretical covariance and applies a Kolmogorov-Smirnov test of the
/// pooled coordinates against the standard normal. Throws DiagnosticError
/// (with the condition number) when C_active is numerically singular.
NormalityDiagnostic normality_diagnostic(
    const std::vector<Eigen::VectorXd>& replicated_delta_active,
    const Eigen::VectorXd& delta_star_active, double total_samples,
    double sigma, const Eigen::MatrixXd& c_active, double alpha = 0.01);

struct RateFit {
  double slope = 0.0;
  double r_squared = 0.0;
  double geometric_ratio = 0.0;
};

/// Least-squares fit of log(distance) vs. iteration over the tail of a
/// trajectory (entries below `floor` are discarded; the first
/// `burn_in_fraction` of the rest is skipped). geometric_ratio = exp(slope).
/// Requires >= 10 usable points.
RateFit convergence_rate_fit(const std::vector<double>& distances,
                             double floor = 1e-12,
                             double burn_in_fraction = 0.25);

/// Dense augmented difference operator H-tilde (x) I_d mapping stacked beta
/// to stacked differences (edge blocks first, mean block last).
Eigen::MatrixXd augmented_difference_operator(const SpanningTree& tree,
                                              int dim);

/// Empirical second-moment matrix (1/N) (X M^-1)^T (X M^-1) for the
/// block-diagonal design X and an augmented difference operator M.
Eigen::MatrixXd empirical_c_matrix(const std::vector<NodeDataset>& data,
                                   const Eigen::MatrixXd& h_tilde_kron);

/// Standard normal CDF.
double standard_normal_cdf(double x);

}  // namespace netfuse

#include "netfuse/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "netfuse/errors.hpp"
#include "netfuse/local_ols.hpp"
#include "netfuse/rng.hpp"

namespace netfuse {

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

ClusterPartition extract_clusters(const Eigen::VectorXd& delta,
                                  const PenaltySupport& support,
                                  double zero_tol) {
  const int k = support.node_count;
  const int edge_count = support.edge_count();
  int d = 0;
  if (edge_count > 0) {
    if (delta.size() % edge_count != 0) {
      throw ConfigError("delta length is not a multiple of the edge count");
    }
    d = static_cast<int>(delta.size()) / edge_count;
  }

  ClusterPartition partition;
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  for (int l = 0; l < edge_count; ++l) {
    const double magnitude =
        d == 0 ? 0.0
               : delta.segment(static_cast<Eigen::Index>(l) * d, d)
                     .cwiseAbs()
                     .maxCoeff();
    if (magnitude <= zero_tol) {
      partition.fused_edges.push_back(l);
      const int a = find(support.edges[l].s);
      const int b = find(support.edges[l].e);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }

  partition.cluster_of.assign(k, -1);
  int next_label = 0;
  for (int i = 0; i < k; ++i) {
    const int root = find(i);
    if (partition.cluster_of[root] < 0) {
      partition.cluster_of[root] = next_label++;
    }
    partition.cluster_of[i] = partition.cluster_of[root];
  }
  partition.cluster_count = next_label;

  // On cyclic supports an unfused edge may still join nodes that other
  // fused edges connect; the partition is then not a clean fusion pattern.
  for (int l = 0; l < edge_count; ++l) {
    const double magnitude =
        d == 0 ? 0.0
               : delta.segment(static_cast<Eigen::Index>(l) * d, d)
                     .cwiseAbs()
                     .maxCoeff();
    if (magnitude > zero_tol &&
        find(support.edges[l].s) == find(support.edges[l].e)) {
      partition.intransitive_fusion = true;
      break;
    }
  }
  return partition;
}

double coefficient_mse(const Eigen::VectorXd& beta,
                       const ClusterModel& truth) {
  const int k = static_cast<int>(truth.assignment.size());
  const int d = truth.dim();
  if (beta.size() != static_cast<Eigen::Index>(k) * d) {
    throw ConfigError("beta length does not match K*d of the truth");
  }
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    total += (beta.segment(static_cast<Eigen::Index>(i) * d, d) -
              truth.node_coefficients(i))
                 .squaredNorm();
  }
  return total / (static_cast<double>(k) * d);
}

SelectionAccuracy selection_accuracy(const ClusterPartition& partition,
                                     const std::vector<int>& truth) {
  const std::size_t k = truth.size();
  if (partition.cluster_of.size() != k) {
    throw ConfigError("partition and truth cover different node sets");
  }
  SelectionAccuracy accuracy;
  accuracy.s_hat = partition.cluster_count;
  std::size_t agreements = 0;
  std::size_t pairs = 0;
  bool exact = true;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      ++pairs;
      const bool together_hat =
          partition.cluster_of[i] == partition.cluster_of[j];
      const bool together_true = truth[i] == truth[j];
      if (together_hat == together_true) {
        ++agreements;
      } else {
        exact = false;
      }
    }
  }
  accuracy.exact_recovery = exact;
  accuracy.rand_index =
      pairs == 0 ? 1.0 : static_cast<double>(agreements) / pairs;
  return accuracy;
}

double lemma1_trial(const NetworkGraph& graph, const ClusterModel& truth,
                    int sample_count, int replications, std::uint64_t seed) {
  if (replications < 1) {
    throw ConfigError("lemma1_trial needs at least one replication");
  }
  int successes = 0;
  for (int rep = 0; rep < replications; ++rep) {
    const std::uint64_t rep_seed = child_seed(seed, "lemma1-rep", rep);
    const std::vector<NodeDataset> data =
        generate_datasets(graph, truth, sample_count, rep_seed);
    std::vector<Eigen::VectorXd> ols(data.size());
    bool fit_ok = true;
    for (std::size_t i = 0; i < data.size(); ++i) {
      try {
        ols[i] = fit_local_ols(data[i]).coefficients;
      } catch (const EstimationError&) {
        fit_ok = false;
        break;
      }
    }
    if (!fit_ok) continue;
    const SpanningTree tree =
        build_mst(graph, similarity_weights(graph, ols));
    if (clusters_connected(graph.node_count(), tree.edges,
                           truth.assignment)) {
      ++successes;
    }
  }
  return static_cast<double>(successes) / replications;
}

NormalityDiagnostic normality_diagnostic(
    const std::vector<Eigen::VectorXd>& replicated_delta_active,
    const Eigen::VectorXd& delta_star_active, double total_samples,
    double sigma, const Eigen::MatrixXd& c_active, double alpha) {
  const Eigen::Index m = delta_star_active.size();
  if (m == 0 || replicated_delta_active.empty()) {
    throw DiagnosticError("normality diagnostic needs a nonempty active set");
  }
  if (sigma <= 0.0 || total_samples <= 0.0 || alpha <= 0.0 || alpha >= 1.0) {
    throw DiagnosticError("invalid sigma, sample count, or alpha");
  }
  if (c_active.rows() != m || c_active.cols() != m) {
    throw DiagnosticError("covariance block does not match the active set");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(c_active);
  const double smallest = eigen.eigenvalues().minCoeff();
  const double largest = eigen.eigenvalues().maxCoeff();
  if (smallest <= 0.0 || largest / smallest > 1e12) {
    throw DiagnosticError(
        "active-set covariance is numerically singular (condition number " +
        std::to_string(largest / std::max(smallest, 1e-300)) + ")");
  }
  const Eigen::MatrixXd chol = c_active.llt().matrixL();

  // v_r ~ N(0, sigma^2 C^-1)  =>  L^T v_r / sigma ~ N(0, I).
  const double scale = std::sqrt(total_samples) / sigma;
  std::vector<double> pooled;
  pooled.reserve(replicated_delta_active.size() * m);
  for (const Eigen::VectorXd& delta : replicated_delta_active) {
    if (delta.size() != m) {
      throw DiagnosticError("replication dimension mismatch");
    }
    const Eigen::VectorXd standardized =
        chol.transpose() * (delta - delta_star_active) * scale;
    for (Eigen::Index p = 0; p < m; ++p) pooled.push_back(standardized[p]);
  }

  std::sort(pooled.begin(), pooled.end());
  const double count = static_cast<double>(pooled.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    const double cdf = standard_normal_cdf(pooled[i]);
    ks = std::max(ks, cdf - static_cast<double>(i) / count);
    ks = std::max(ks, static_cast<double>(i + 1) / count - cdf);
  }

  NormalityDiagnostic diagnostic;
  diagnostic.ks_statistic = ks;
  diagnostic.sample_count = pooled.size();
  diagnostic.critical_value = std::sqrt(-0.5 * std::log(alpha / 2.0)) /
                              std::sqrt(count);
  diagnostic.pass = ks < diagnostic.critical_value;
  return diagnostic;
}

RateFit convergence_rate_fit(const std::vector<double>& distances,
                             double floor, double burn_in_fraction) {
  // Contiguous prefix above the numerical floor.
  std::vector<double> usable;
  for (double value : distances) {
    if (value <= floor) break;
    usable.push_back(value);
  }
  const std::size_t burn_in =
      static_cast<std::size_t>(burn_in_fraction * usable.size());
  if (usable.size() < 10 || usable.size() - burn_in < 10) {
    throw DiagnosticError("trajectory too short for a rate fit (" +
                          std::to_string(usable.size()) + " usable points)");
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  const std::size_t count = usable.size() - burn_in;
  for (std::size_t idx = burn_in; idx < usable.size(); ++idx) {
    const double x = static_cast<double>(idx);
    const double y = std::log(usable[idx]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double n = static_cast<double>(count);
  const double var_x = sxx - sx * sx / n;
  const double cov_xy = sxy - sx * sy / n;
  const double var_y = syy - sy * sy / n;

  RateFit fit;
  fit.slope = cov_xy / var_x;
  fit.r_squared =
      var_y <= 0.0 ? 1.0 : (cov_xy * cov_xy) / (var_x * var_y);
  fit.geometric_ratio = std::exp(fit.slope);
  return fit;
}

Eigen::MatrixXd augmented_difference_operator(const SpanningTree& tree,
                                              int dim) {
  const int k = tree.node_count;
  const Eigen::Index kd = static_cast<Eigen::Index>(k) * dim;
  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(kd, kd);
  for (int l = 0; l < tree.edge_count(); ++l) {
    const Edge& edge = tree.edges[l];
    for (int p = 0; p < dim; ++p) {
      op(static_cast<Eigen::Index>(l) * dim + p,
         static_cast<Eigen::Index>(edge.s) * dim + p) = 1.0;
      op(static_cast<Eigen::Index>(l) * dim + p,
         static_cast<Eigen::Index>(edge.e) * dim + p) = -1.0;
    }
  }
  const double mean_scale = 1.0 / std::sqrt(static_cast<double>(k));
  for (int i = 0; i < k; ++i) {
    for (int p = 0; p < dim; ++p) {
      op(static_cast<Eigen::Index>(k - 1) * dim + p,
         static_cast<Eigen::Index>(i) * dim + p) = mean_scale;
    }
  }
  return op;
}

Eigen::MatrixXd empirical_c_matrix(const std::vector<NodeDataset>& data,
                                   const Eigen::MatrixXd& h_tilde_kron) {
  if (data.empty()) throw ConfigError("empirical C needs data");
  const int d = static_cast<int>(data.front().dim());
  const int k = static_cast<int>(data.size());
  const Eigen::Index kd = static_cast<Eigen::Index>(k) * d;
  if (h_tilde_kron.rows() != kd || h_tilde_kron.cols() != kd) {
    throw ConfigError("difference operator does not match K*d");
  }
  const Eigen::MatrixXd inverse =
      h_tilde_kron.partialPivLu().inverse();

  Eigen::Index total = 0;
  for (const NodeDataset& node : data) total += node.sample_count();
  Eigen::MatrixXd design_mapped(total, kd);
  Eigen::Index row = 0;
  for (int i = 0; i < k; ++i) {
    design_mapped.middleRows(row, data[i].sample_count()) =
        data[i].design * inverse.middleRows(static_cast<Eigen::Index>(i) * d, d);
    row += data[i].sample_count();
  }
  return design_mapped.transpose() * design_mapped /
         static_cast<double>(total);
}

}  // namespace netfuse

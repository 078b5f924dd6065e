#pragma once

#include <Eigen/Dense>

#include <vector>

#include "netfuse/graph.hpp"

namespace netfuse {

/// One node's regression data: n x d design matrix and n responses.
struct NodeDataset {
  int node_id = 0;
  Eigen::MatrixXd design;
  Eigen::VectorXd responses;

  Eigen::Index sample_count() const { return design.rows(); }
  Eigen::Index dim() const { return design.cols(); }

  /// Checks shape agreement and finiteness of all entries.
  void validate() const;
};

struct OlsEstimate {
  Eigen::VectorXd coefficients;
  Eigen::Index gram_rank = 0;
};

inline constexpr double kDefaultWeightCap = 1e12;
inline constexpr double kDefaultGamma = 1.0;

/// Solves (X^T X + ridge I) beta = X^T y. With ridge = 0 this is exact OLS
/// via column-pivoted QR; a singular Gram matrix raises EstimationError
/// naming the node. With ridge > 0 the regularized normal equations are
/// solved by Cholesky.
OlsEstimate fit_local_ols(const NodeDataset& data, double ridge = 0.0);

/// Coordinate-wise adaptive weight 1/|ols_i - ols_j|^gamma, clamped to cap.
/// Symmetric in its two arguments.
Eigen::VectorXd adaptive_weights(const Eigen::VectorXd& ols_i,
                                 const Eigen::VectorXd& ols_j, double gamma,
                                 double cap = kDefaultWeightCap);

/// Adaptive weight vectors for every edge of a penalty support.
struct AdaptiveWeights {
  std::vector<Eigen::VectorXd> per_edge;
  double gamma = kDefaultGamma;
  double cap = kDefaultWeightCap;
};

AdaptiveWeights edge_adaptive_weights(const PenaltySupport& support,
                                      const std::vector<OlsEstimate>& ols,
                                      double gamma = kDefaultGamma,
                                      double cap = kDefaultWeightCap);

}  // namespace netfuse

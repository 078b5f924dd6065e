#include "netfuse/local_ols.hpp"

#include <cmath>
#include <string>

#include "netfuse/errors.hpp"

namespace netfuse {

void NodeDataset::validate() const {
  if (design.rows() != responses.size()) {
    throw ConfigError("node " + std::to_string(node_id) + ": design has " +
                      std::to_string(design.rows()) + " rows but " +
                      std::to_string(responses.size()) + " responses");
  }
  if (design.rows() < 1 || design.cols() < 1) {
    throw ConfigError("node " + std::to_string(node_id) + ": empty dataset");
  }
  if (!design.allFinite() || !responses.allFinite()) {
    throw ConfigError("node " + std::to_string(node_id) +
                      ": non-finite entry in dataset");
  }
}

OlsEstimate fit_local_ols(const NodeDataset& data, double ridge) {
  data.validate();
  if (ridge < 0.0) {
    throw ConfigError("ridge must be nonnegative");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(data.design);
  OlsEstimate estimate;
  estimate.gram_rank = qr.rank();
  if (ridge == 0.0) {
    if (estimate.gram_rank < data.dim()) {
      throw EstimationError("node " + std::to_string(data.node_id) +
                            ": singular Gram matrix (rank " +
                            std::to_string(estimate.gram_rank) + " of " +
                            std::to_string(data.dim()) + ")");
    }
    estimate.coefficients = qr.solve(data.responses);
  } else {
    const Eigen::MatrixXd gram =
        data.design.transpose() * data.design +
        ridge * Eigen::MatrixXd::Identity(data.dim(), data.dim());
    estimate.coefficients =
        gram.llt().solve(data.design.transpose() * data.responses);
  }
  return estimate;
}

Eigen::VectorXd adaptive_weights(const Eigen::VectorXd& ols_i,
                                 const Eigen::VectorXd& ols_j, double gamma,
                                 double cap) {
  if (ols_i.size() != ols_j.size()) {
    throw ConfigError("adaptive weights need estimates of equal dimension");
  }
  if (gamma <= 0.0 || cap <= 0.0) {
    throw ConfigError("adaptive weights need gamma > 0 and cap > 0");
  }
  Eigen::VectorXd weights(ols_i.size());
  for (Eigen::Index p = 0; p < ols_i.size(); ++p) {
    const double diff = std::abs(ols_i[p] - ols_j[p]);
    // |diff|^-gamma overflows at exact ties; the cap stands in for infinity.
    const double raw =
        diff > 0.0 ? 1.0 / std::pow(diff, gamma) : cap;
    weights[p] = std::min(raw, cap);
  }
  return weights;
}

AdaptiveWeights edge_adaptive_weights(const PenaltySupport& support,
                                      const std::vector<OlsEstimate>& ols,
                                      double gamma, double cap) {
  if (ols.size() != static_cast<std::size_t>(support.node_count)) {
    throw ConfigError("need one OLS estimate per node");
  }
  AdaptiveWeights result;
  result.gamma = gamma;
  result.cap = cap;
  result.per_edge.reserve(support.edges.size());
  for (const Edge& edge : support.edges) {
    result.per_edge.push_back(adaptive_weights(
        ols[edge.s].coefficients, ols[edge.e].coefficients, gamma, cap));
  }
  return result;
}

}  // namespace netfuse

#pragma once

#include <Eigen/Dense>

#include <vector>

#include "netfuse/graph.hpp"
#include "netfuse/local_ols.hpp"
#include "netfuse/transport.hpp"

namespace netfuse {

enum class PenaltySupportKind { mst, full_graph };

struct AdmmConfig {
  double lambda = 0.0;
  double tau = 1.0;
  /// Slack epsilon in D_i = 2*tau*deg(i) + epsilon; <= 0 means "use tau".
  double d_margin = 0.0;
  int max_iters = 10000;
  double primal_tol = 1e-6;
  double dual_tol = 1e-7;
  /// Ridge used for the local OLS initialization (0 = exact OLS).
  double init_ridge = 0.0;
  PenaltySupportKind penalty_support = PenaltySupportKind::mst;

  double margin() const { return d_margin > 0.0 ? d_margin : tau; }
  void validate() const;
};

/// Coordinate-wise soft-thresholding: sign(v_p) * max(|v_p| - t_p, 0).
/// Thresholded coordinates come out as exact +0.0.
Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v,
                               const Eigen::VectorXd& thresholds);
double soft_threshold(double v, double threshold);

/// Gershgorin choice D_i = 2*tau*deg(i) + margin, which makes
/// P = D - tau * L (x) I_d strictly positive definite.
std::vector<double> choose_penalty_diagonal(const std::vector<int>& degrees,
                                            double tau, double margin);

struct TrajectoryPoint {
  int iteration = 0;
  double objective = 0.0;
  double primal_residual = 0.0;
  /// Max-norm change of beta versus the previous iterate (NaN at t = 0).
  double iterate_change = 0.0;
  /// G-norm distance to the supplied reference point (NaN when none given).
  double gnorm_distance = 0.0;
};

/// A full primal/dual iterate: node-major stacked beta (K*d), edge-major
/// stacked delta and dual (L*d, canonical s(l)-side sign).
struct SolverPoint {
  Eigen::VectorXd beta;
  Eigen::VectorXd delta;
  Eigen::VectorXd dual;
};

struct SolverResult {
  Eigen::VectorXd beta;   // K*d stacked
  Eigen::VectorXd delta;  // L*d stacked, edge-major
  Eigen::VectorXd dual;   // L*d stacked, edge-major
  int iterations = 0;
  bool converged = false;
  std::vector<TrajectoryPoint> trajectory;
  /// Largest observed violation of the antisymmetry invariant
  /// delta_{s(l)} = -delta_{e(l)}, z_{s(l)} = -z_{e(l)} across all rounds.
  /// The node-based updates preserve it exactly, so this should be 0.
  double antisymmetry_violation = 0.0;
  /// Snapshot of the transport's ledger at termination.
  CommLedger ledger;

  SolverPoint point() const { return {beta, delta, dual}; }
  Eigen::VectorXd node_beta(int node, int d) const {
    return beta.segment(static_cast<Eigen::Index>(node) * d, d);
  }
  Eigen::VectorXd edge_delta(int edge, int d) const {
    return delta.segment(static_cast<Eigen::Index>(edge) * d, d);
  }
};

/// Decentralized generalized ADMM. Every node holds only its own data,
/// its iterate, and antisymmetric local copies of the delta/dual variables
/// of incident edges; neighbor betas arrive exclusively through `transport`
/// (one broadcast per node per iteration). Initialization: beta^0 = local
/// OLS, z^0 = 0, delta^0 = beta_s^0 - beta_e^0. Stops when both the primal
/// residual max_l ||beta_s - beta_e - delta_l||_inf <= primal_tol and the
/// iterate change ||beta^t - beta^{t-1}||_inf <= dual_tol, or at max_iters
/// (flagged, not thrown).
///
/// Within one iteration the delta, beta, and dual phases are barriers; the
/// per-node (per-edge) updates inside a phase depend only on the previous
/// phase's state, so they may run concurrently. This implementation runs
/// them sequentially, which any concurrent schedule must match bit-exactly
/// (no cross-node accumulation exists inside a phase).
SolverResult run_solver(const std::vector<NodeDataset>& data,
                        const PenaltySupport& support,
                        const AdaptiveWeights& weights,
                        const AdmmConfig& config, RoundTransport& transport,
                        const SolverPoint* gnorm_ref = nullptr);

/// Single-machine classical-ADMM oracle: the beta update solves the coupled
/// system (X^T X + tau L (x) I_d) beta = X^T y + H^T (tau delta + z) exactly.
/// Used as the reference implementation the decentralized path is checked
/// against; not suitable for large instances.
SolverResult centralized_reference_solve(const std::vector<NodeDataset>& data,
                                         const PenaltySupport& support,
                                         const AdaptiveWeights& weights,
                                         const AdmmConfig& config);

/// 0.5 * sum_i ||y_i - X_i beta_i||^2
///   + lambda * sum_l sum_p pi_{l,p} |beta_{s(l),p} - beta_{e(l),p}|.
double objective_value(const std::vector<NodeDataset>& data,
                       const Eigen::VectorXd& beta,
                       const PenaltySupport& support,
                       const AdaptiveWeights& weights, double lambda);

/// Max-norm KKT residual of a candidate primal/dual point: stationarity
/// per node, feasibility of delta = H beta, and dual admissibility
/// |z_{l,p}| <= lambda*pi_{l,p} with z_{l,p} = -lambda*pi_{l,p}*sign(delta)
/// on the active set (the sign convention matches the dual update the
/// solver performs).
double kkt_residual(const Eigen::VectorXd& beta, const Eigen::VectorXd& delta,
                    const Eigen::VectorXd& dual,
                    const std::vector<NodeDataset>& data,
                    const PenaltySupport& support,
                    const AdaptiveWeights& weights, double lambda);

/// Semi-norm distance sqrt((b-b')^T diag(D (x) I_d) (b-b') + ||z-z'||^2/tau).
/// The delta block carries zero weight.
double gnorm_distance(const SolverPoint& u, const SolverPoint& ref,
                      const std::vector<double>& penalty_diagonal, int d,
                      double tau);

/// Pooled OLS over all nodes: argmin_b sum_i ||y_i - X_i b||^2.
Eigen::VectorXd pooled_ols(const std::vector<NodeDataset>& data);

}  // namespace netfuse

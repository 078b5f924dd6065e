#include "netfuse/admm.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "netfuse/errors.hpp"

namespace netfuse {

namespace {

struct IncidentEdge {
  int edge = 0;   // index into support.edges
  int side = 0;   // 0 at s(l), 1 at e(l)
  int other = 0;  // opposite endpoint
};

int check_common_dim(const std::vector<NodeDataset>& data) {
  if (data.empty()) throw ConfigError("solver needs at least one dataset");
  const int d = static_cast<int>(data.front().dim());
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i].validate();
    if (data[i].dim() != d) {
      throw ConfigError("datasets disagree in dimension at node " +
                        std::to_string(i));
    }
    if (data[i].node_id != static_cast<int>(i)) {
      throw ConfigError("dataset order does not match node ids");
    }
  }
  return d;
}

void check_solver_inputs(const std::vector<NodeDataset>& data,
                         const PenaltySupport& support,
                         const AdaptiveWeights& weights,
                         const AdmmConfig& config) {
  config.validate();
  if (static_cast<int>(data.size()) != support.node_count) {
    throw ConfigError("dataset count does not match support node count");
  }
  if (weights.per_edge.size() != support.edges.size()) {
    throw ConfigError("need one adaptive weight vector per support edge");
  }
}

std::vector<std::vector<IncidentEdge>> incident_edges(
    const PenaltySupport& support) {
  std::vector<std::vector<IncidentEdge>> incident(support.node_count);
  for (int l = 0; l < support.edge_count(); ++l) {
    const Edge& edge = support.edges[l];
    incident[edge.s].push_back({l, 0, edge.e});
    incident[edge.e].push_back({l, 1, edge.s});
  }
  return incident;
}

double penalty_term(const std::vector<Eigen::VectorXd>& beta,
                    const PenaltySupport& support,
                    const AdaptiveWeights& weights, double lambda) {
  if (lambda == 0.0) return 0.0;
  double total = 0.0;
  for (int l = 0; l < support.edge_count(); ++l) {
    const Edge& edge = support.edges[l];
    total += weights.per_edge[l]
                 .cwiseProduct((beta[edge.s] - beta[edge.e]).cwiseAbs())
                 .sum();
  }
  return lambda * total;
}

}  // namespace

void AdmmConfig::validate() const {
  if (lambda < 0.0) throw ConfigError("lambda must be nonnegative");
  if (tau <= 0.0) throw ConfigError("tau must be positive");
  if (max_iters < 1) throw ConfigError("max_iters must be positive");
  if (primal_tol <= 0.0 || dual_tol <= 0.0) {
    throw ConfigError("tolerances must be positive");
  }
  if (init_ridge < 0.0) throw ConfigError("init_ridge must be nonnegative");
}

double soft_threshold(double v, double threshold) {
  const double magnitude = std::abs(v) - threshold;
  if (magnitude <= 0.0) return 0.0;
  return v < 0.0 ? -magnitude : magnitude;
}

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v,
                               const Eigen::VectorXd& thresholds) {
  if (v.size() != thresholds.size()) {
    throw ConfigError("soft threshold needs conformable vectors");
  }
  Eigen::VectorXd out(v.size());
  for (Eigen::Index p = 0; p < v.size(); ++p) {
    if (thresholds[p] < 0.0) {
      throw ConfigError("soft threshold needs nonnegative thresholds");
    }
    out[p] = soft_threshold(v[p], thresholds[p]);
  }
  return out;
}

std::vector<double> choose_penalty_diagonal(const std::vector<int>& degrees,
                                            double tau, double margin) {
  if (tau <= 0.0 || margin <= 0.0) {
    throw ConfigError("penalty diagonal needs tau > 0 and margin > 0");
  }
  std::vector<double> diagonal(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    diagonal[i] = 2.0 * tau * degrees[i] + margin;
  }
  return diagonal;
}

double gnorm_distance(const SolverPoint& u, const SolverPoint& ref,
                      const std::vector<double>& penalty_diagonal, int d,
                      double tau) {
  if (u.beta.size() != ref.beta.size() || u.dual.size() != ref.dual.size()) {
    throw ConfigError("G-norm needs conformable points");
  }
  if (u.beta.size() != static_cast<Eigen::Index>(penalty_diagonal.size()) * d) {
    throw ConfigError("G-norm diagonal does not match beta dimension");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < penalty_diagonal.size(); ++i) {
    total += penalty_diagonal[i] *
             (u.beta.segment(static_cast<Eigen::Index>(i) * d, d) -
              ref.beta.segment(static_cast<Eigen::Index>(i) * d, d))
                 .squaredNorm();
  }
  total += (u.dual - ref.dual).squaredNorm() / tau;
  return std::sqrt(total);
}

double objective_value(const std::vector<NodeDataset>& data,
                       const Eigen::VectorXd& beta,
                       const PenaltySupport& support,
                       const AdaptiveWeights& weights, double lambda) {
  const int d = check_common_dim(data);
  if (beta.size() != static_cast<Eigen::Index>(data.size()) * d) {
    throw ConfigError("beta length does not match K*d");
  }
  double residuals = 0.0;
  std::vector<Eigen::VectorXd> per_node(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    per_node[i] = beta.segment(static_cast<Eigen::Index>(i) * d, d);
    residuals +=
        (data[i].responses - data[i].design * per_node[i]).squaredNorm();
  }
  return 0.5 * residuals + penalty_term(per_node, support, weights, lambda);
}

Eigen::VectorXd pooled_ols(const std::vector<NodeDataset>& data) {
  const int d = check_common_dim(data);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd xty = Eigen::VectorXd::Zero(d);
  for (const NodeDataset& node : data) {
    gram += node.design.transpose() * node.design;
    xty += node.design.transpose() * node.responses;
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw EstimationError("pooled Gram matrix is singular");
  }
  return ldlt.solve(xty);
}

SolverResult run_solver(const std::vector<NodeDataset>& data,
                        const PenaltySupport& support,
                        const AdaptiveWeights& weights,
                        const AdmmConfig& config, RoundTransport& transport,
                        const SolverPoint* gnorm_ref) {
  check_solver_inputs(data, support, weights, config);
  if (transport.neighbors() != support.neighbors) {
    throw ConfigError("transport topology does not match penalty support");
  }
  const int k = support.node_count;
  const int d = check_common_dim(data);
  const int edge_count = support.edge_count();
  const double tau = config.tau;
  const double lambda = config.lambda;
  const Eigen::Index kd = static_cast<Eigen::Index>(k) * d;
  const Eigen::Index ld = static_cast<Eigen::Index>(edge_count) * d;

  // Per-node cached pieces: Gram, X^T y, y^T y, and the factorization of
  // (X_i^T X_i + D_i I), which does not change across iterations.
  const std::vector<double> diag =
      choose_penalty_diagonal(support.degree, tau, config.margin());
  std::vector<Eigen::MatrixXd> gram(k);
  std::vector<Eigen::VectorXd> xty(k);
  std::vector<double> yty(k);
  std::vector<Eigen::LLT<Eigen::MatrixXd>> solve(k);
  Eigen::VectorXd beta(kd);
  for (int i = 0; i < k; ++i) {
    gram[i] = data[i].design.transpose() * data[i].design;
    xty[i] = data[i].design.transpose() * data[i].responses;
    yty[i] = data[i].responses.squaredNorm();
    solve[i].compute(gram[i] +
                     diag[i] * Eigen::MatrixXd::Identity(d, d));
    if (solve[i].info() != Eigen::Success) {
      throw ConfigError("node " + std::to_string(i) +
                        ": local system factorization failed");
    }
    beta.segment(static_cast<Eigen::Index>(i) * d, d) =
        fit_local_ols(data[i], config.init_ridge).coefficients;
  }

  const auto incident = incident_edges(support);
  Eigen::VectorXd thresholds(ld);
  Eigen::VectorXd weights_flat(ld);
  for (int l = 0; l < edge_count; ++l) {
    thresholds.segment(static_cast<Eigen::Index>(l) * d, d) =
        (lambda / tau) * weights.per_edge[l];
    weights_flat.segment(static_cast<Eigen::Index>(l) * d, d) =
        weights.per_edge[l];
  }

  // Node-local beliefs about neighbor betas, stored flat per node in
  // neighbor-list order. Seeded from the bootstrap OLS exchange (ledgered by
  // the caller in the setup bucket); afterwards only transport deliveries
  // update them.
  std::vector<Eigen::Index> nb_offset(k + 1, 0);
  for (int i = 0; i < k; ++i) {
    nb_offset[i + 1] = nb_offset[i] + support.degree[i] * d;
  }
  Eigen::VectorXd neighbor_vals(nb_offset[k]);
  for (int i = 0; i < k; ++i) {
    for (std::size_t idx = 0; idx < support.neighbors[i].size(); ++idx) {
      const int j = support.neighbors[i][idx];
      neighbor_vals.segment(nb_offset[i] + static_cast<Eigen::Index>(idx) * d,
                            d) = beta.segment(static_cast<Eigen::Index>(j) * d,
                                              d);
    }
  }
  // For edge l: flat offsets of each endpoint's belief about the other.
  std::vector<Eigen::Index> peer_at_s(edge_count), peer_at_e(edge_count);
  for (int l = 0; l < edge_count; ++l) {
    const Edge& edge = support.edges[l];
    const auto& s_list = support.neighbors[edge.s];
    const auto& e_list = support.neighbors[edge.e];
    const auto s_pos =
        std::lower_bound(s_list.begin(), s_list.end(), edge.e) -
        s_list.begin();
    const auto e_pos =
        std::lower_bound(e_list.begin(), e_list.end(), edge.s) -
        e_list.begin();
    peer_at_s[l] = nb_offset[edge.s] + static_cast<Eigen::Index>(s_pos) * d;
    peer_at_e[l] = nb_offset[edge.e] + static_cast<Eigen::Index>(e_pos) * d;
  }

  // Antisymmetric local copies: delta_s/dual_s live at s(l), delta_e/dual_e
  // at e(l). Each endpoint computes its own copy from its own inputs; the
  // updates preserve exact negation, which record_antisym verifies.
  Eigen::VectorXd delta_s(ld), delta_e(ld), dual_s(ld), dual_e(ld);
  dual_s.setZero();
  dual_e.setZero();
  for (int l = 0; l < edge_count; ++l) {
    const Edge& edge = support.edges[l];
    for (int p = 0; p < d; ++p) {
      const Eigen::Index lp = static_cast<Eigen::Index>(l) * d + p;
      delta_s[lp] = beta[edge.s * d + p] - neighbor_vals[peer_at_s[l] + p];
      delta_e[lp] = beta[edge.e * d + p] - neighbor_vals[peer_at_e[l] + p];
    }
  }

  SolverResult result;
  double antisym = 0.0;
  const auto record_antisym = [&]() {
    if (ld == 0) return;
    antisym = std::max(antisym, (delta_s + delta_e).cwiseAbs().maxCoeff());
    antisym = std::max(antisym, (dual_s + dual_e).cwiseAbs().maxCoeff());
  };
  Eigen::VectorXd gram_beta(d);
  const auto objective_now = [&]() {
    double residuals = 0.0;
    for (int i = 0; i < k; ++i) {
      const auto beta_i = beta.segment(static_cast<Eigen::Index>(i) * d, d);
      gram_beta.noalias() = gram[i] * beta_i;
      residuals += beta_i.dot(gram_beta) - 2.0 * beta_i.dot(xty[i]) + yty[i];
    }
    double penalty = 0.0;
    if (lambda != 0.0) {
      for (int l = 0; l < edge_count; ++l) {
        const Edge& edge = support.edges[l];
        for (int p = 0; p < d; ++p) {
          penalty += weights_flat[static_cast<Eigen::Index>(l) * d + p] *
                     std::abs(beta[edge.s * d + p] - beta[edge.e * d + p]);
        }
      }
    }
    return 0.5 * residuals + lambda * penalty;
  };
  const auto gnorm_now = [&]() {
    if (gnorm_ref == nullptr) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    const SolverPoint u{beta, delta_s, dual_s};
    return gnorm_distance(u, *gnorm_ref, diag, d, tau);
  };

  result.trajectory.push_back({0, objective_now(), 0.0,
                               std::numeric_limits<double>::quiet_NaN(),
                               gnorm_now()});

  Eigen::VectorXd previous(kd);
  Eigen::VectorXd rhs(d);
  Eigen::VectorXd payload(d);
  int t = 0;
  for (t = 1; t <= config.max_iters; ++t) {
    // Delta phase: each endpoint thresholds its own signed difference.
    for (int l = 0; l < edge_count; ++l) {
      const Edge& edge = support.edges[l];
      for (int p = 0; p < d; ++p) {
        const Eigen::Index lp = static_cast<Eigen::Index>(l) * d + p;
        delta_s[lp] = soft_threshold(
            beta[edge.s * d + p] - neighbor_vals[peer_at_s[l] + p] -
                dual_s[lp] / tau,
            thresholds[lp]);
        delta_e[lp] = soft_threshold(
            beta[edge.e * d + p] - neighbor_vals[peer_at_e[l] + p] -
                dual_e[lp] / tau,
            thresholds[lp]);
      }
    }

    // Beta phase: local linear solve from cached factorization.
    previous = beta;
    for (int i = 0; i < k; ++i) {
      rhs = xty[i];
      for (const IncidentEdge& inc : incident[i]) {
        const Eigen::VectorXd& delta_own = inc.side == 0 ? delta_s : delta_e;
        const Eigen::VectorXd& dual_own = inc.side == 0 ? dual_s : dual_e;
        for (int p = 0; p < d; ++p) {
          const Eigen::Index lp =
              static_cast<Eigen::Index>(inc.edge) * d + p;
          rhs[p] += tau * delta_own[lp] + dual_own[lp];
        }
      }
      const double damping = diag[i] - tau * support.degree[i];
      for (int p = 0; p < d; ++p) {
        rhs[p] += damping * previous[i * d + p];
      }
      for (std::size_t idx = 0; idx < support.neighbors[i].size(); ++idx) {
        const Eigen::Index off =
            nb_offset[i] + static_cast<Eigen::Index>(idx) * d;
        for (int p = 0; p < d; ++p) rhs[p] += tau * neighbor_vals[off + p];
      }
      solve[i].solveInPlace(rhs);
      beta.segment(static_cast<Eigen::Index>(i) * d, d) = rhs;
    }

    // The only communication of the iteration: every node sends its new
    // beta along the active topology.
    for (int i = 0; i < k; ++i) {
      payload = beta.segment(static_cast<Eigen::Index>(i) * d, d);
      transport.broadcast_to_neighbors(i, payload);
    }
    transport.close_round();
    for (int i = 0; i < k; ++i) {
      const auto messages = transport.inbox(i);
      if (messages.size() != support.neighbors[i].size()) {
        throw ConfigError("node " + std::to_string(i) +
                          ": expected one message per neighbor");
      }
      for (std::size_t idx = 0; idx < messages.size(); ++idx) {
        if (messages[idx].sender != support.neighbors[i][idx]) {
          throw ConfigError("unexpected sender in round inbox");
        }
        neighbor_vals.segment(
            nb_offset[i] + static_cast<Eigen::Index>(idx) * d, d) =
            messages[idx].payload;
      }
    }

    // Dual phase: uses the freshly received neighbor betas.
    for (int l = 0; l < edge_count; ++l) {
      const Edge& edge = support.edges[l];
      for (int p = 0; p < d; ++p) {
        const Eigen::Index lp = static_cast<Eigen::Index>(l) * d + p;
        dual_s[lp] -= tau * (beta[edge.s * d + p] -
                             neighbor_vals[peer_at_s[l] + p] - delta_s[lp]);
        dual_e[lp] -= tau * (beta[edge.e * d + p] -
                             neighbor_vals[peer_at_e[l] + p] - delta_e[lp]);
      }
    }
    record_antisym();

    double primal = 0.0;
    for (int l = 0; l < edge_count; ++l) {
      const Edge& edge = support.edges[l];
      for (int p = 0; p < d; ++p) {
        const Eigen::Index lp = static_cast<Eigen::Index>(l) * d + p;
        primal = std::max(primal,
                          std::abs(beta[edge.s * d + p] -
                                   neighbor_vals[peer_at_s[l] + p] -
                                   delta_s[lp]));
      }
    }
    const double change =
        kd == 0 ? 0.0 : (beta - previous).cwiseAbs().maxCoeff();

    result.trajectory.push_back({t, objective_now(), primal, change,
                                 gnorm_now()});
    if (primal <= config.primal_tol && change <= config.dual_tol) {
      result.converged = true;
      break;
    }
  }

  result.iterations = std::min(t, config.max_iters);
  result.beta = std::move(beta);
  result.delta = std::move(delta_s);
  result.dual = std::move(dual_s);
  result.antisymmetry_violation = antisym;
  result.ledger = transport.ledger();
  return result;
}

SolverResult centralized_reference_solve(const std::vector<NodeDataset>& data,
                                         const PenaltySupport& support,
                                         const AdaptiveWeights& weights,
                                         const AdmmConfig& config) {
  check_solver_inputs(data, support, weights, config);
  const int k = support.node_count;
  const int d = check_common_dim(data);
  const int edge_count = support.edge_count();
  const double tau = config.tau;
  const Eigen::Index kd = static_cast<Eigen::Index>(k) * d;
  const Eigen::Index ld = static_cast<Eigen::Index>(edge_count) * d;

  // Coupled system matrix X^T X + tau * L (x) I_d, factored once.
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(kd, kd);
  Eigen::VectorXd xty(kd);
  double yty = 0.0;
  for (int i = 0; i < k; ++i) {
    system.block(static_cast<Eigen::Index>(i) * d,
                 static_cast<Eigen::Index>(i) * d, d, d) =
        data[i].design.transpose() * data[i].design +
        tau * support.degree[i] * Eigen::MatrixXd::Identity(d, d);
    xty.segment(static_cast<Eigen::Index>(i) * d, d) =
        data[i].design.transpose() * data[i].responses;
    yty += data[i].responses.squaredNorm();
  }
  for (const Edge& edge : support.edges) {
    system.block(static_cast<Eigen::Index>(edge.s) * d,
                 static_cast<Eigen::Index>(edge.e) * d, d, d) -=
        tau * Eigen::MatrixXd::Identity(d, d);
    system.block(static_cast<Eigen::Index>(edge.e) * d,
                 static_cast<Eigen::Index>(edge.s) * d, d, d) -=
        tau * Eigen::MatrixXd::Identity(d, d);
  }
  const Eigen::LDLT<Eigen::MatrixXd> factor(system);
  if (factor.info() != Eigen::Success) {
    throw ConfigError("centralized system factorization failed");
  }

  const auto apply_difference = [&](const Eigen::VectorXd& b) {
    Eigen::VectorXd out(ld);
    for (int l = 0; l < edge_count; ++l) {
      const Edge& edge = support.edges[l];
      out.segment(static_cast<Eigen::Index>(l) * d, d) =
          b.segment(static_cast<Eigen::Index>(edge.s) * d, d) -
          b.segment(static_cast<Eigen::Index>(edge.e) * d, d);
    }
    return out;
  };
  const auto apply_difference_transpose = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(kd);
    for (int l = 0; l < edge_count; ++l) {
      const Edge& edge = support.edges[l];
      out.segment(static_cast<Eigen::Index>(edge.s) * d, d) +=
          v.segment(static_cast<Eigen::Index>(l) * d, d);
      out.segment(static_cast<Eigen::Index>(edge.e) * d, d) -=
          v.segment(static_cast<Eigen::Index>(l) * d, d);
    }
    return out;
  };

  Eigen::VectorXd thresholds(ld);
  for (int l = 0; l < edge_count; ++l) {
    thresholds.segment(static_cast<Eigen::Index>(l) * d, d) =
        (config.lambda / tau) * weights.per_edge[l];
  }

  Eigen::VectorXd beta(kd);
  for (int i = 0; i < k; ++i) {
    beta.segment(static_cast<Eigen::Index>(i) * d, d) =
        fit_local_ols(data[i], config.init_ridge).coefficients;
  }
  Eigen::VectorXd dual = Eigen::VectorXd::Zero(ld);
  Eigen::VectorXd delta = apply_difference(beta);

  const auto objective_now = [&](const Eigen::VectorXd& b) {
    double residuals = 0.0;
    for (int i = 0; i < k; ++i) {
      residuals += (data[i].responses -
                    data[i].design *
                        b.segment(static_cast<Eigen::Index>(i) * d, d))
                       .squaredNorm();
    }
    double penalty = 0.0;
    const Eigen::VectorXd diffs = apply_difference(b);
    for (int l = 0; l < edge_count; ++l) {
      penalty +=
          weights.per_edge[l]
              .cwiseProduct(
                  diffs.segment(static_cast<Eigen::Index>(l) * d, d)
                      .cwiseAbs())
              .sum();
    }
    return 0.5 * residuals + config.lambda * penalty;
  };

  SolverResult result;
  result.trajectory.push_back({0, objective_now(beta), 0.0,
                               std::numeric_limits<double>::quiet_NaN(),
                               std::numeric_limits<double>::quiet_NaN()});

  int t = 0;
  for (t = 1; t <= config.max_iters; ++t) {
    delta = soft_threshold(apply_difference(beta) - dual / tau, thresholds);
    const Eigen::VectorXd previous = beta;
    beta = factor.solve(xty + apply_difference_transpose(tau * delta + dual));
    const Eigen::VectorXd residual = apply_difference(beta) - delta;
    dual -= tau * residual;

    const double primal = residual.cwiseAbs().maxCoeff();
    const double change = (beta - previous).cwiseAbs().maxCoeff();
    result.trajectory.push_back({t, objective_now(beta), primal, change,
                                 std::numeric_limits<double>::quiet_NaN()});
    if (primal <= config.primal_tol && change <= config.dual_tol) {
      result.converged = true;
      break;
    }
  }

  result.iterations = std::min(t, config.max_iters);
  result.beta = std::move(beta);
  result.delta = std::move(delta);
  result.dual = std::move(dual);
  return result;
}

double kkt_residual(const Eigen::VectorXd& beta, const Eigen::VectorXd& delta,
                    const Eigen::VectorXd& dual,
                    const std::vector<NodeDataset>& data,
                    const PenaltySupport& support,
                    const AdaptiveWeights& weights, double lambda) {
  const int d = check_common_dim(data);
  const int k = support.node_count;
  const int edge_count = support.edge_count();
  if (beta.size() != static_cast<Eigen::Index>(k) * d ||
      delta.size() != static_cast<Eigen::Index>(edge_count) * d ||
      dual.size() != delta.size()) {
    throw ConfigError("KKT point has inconsistent dimensions");
  }

  double residual = 0.0;

  // Stationarity: X_i^T X_i b_i - X_i^T y_i - sum_l sign_i(l) z_l = 0.
  std::vector<Eigen::VectorXd> stationarity(k);
  for (int i = 0; i < k; ++i) {
    const Eigen::VectorXd bi = beta.segment(static_cast<Eigen::Index>(i) * d, d);
    stationarity[i] = data[i].design.transpose() * (data[i].design * bi) -
                      data[i].design.transpose() * data[i].responses;
  }
  for (int l = 0; l < edge_count; ++l) {
    const Edge& edge = support.edges[l];
    const Eigen::VectorXd zl = dual.segment(static_cast<Eigen::Index>(l) * d, d);
    stationarity[edge.s] -= zl;
    stationarity[edge.e] += zl;
  }
  for (int i = 0; i < k; ++i) {
    residual = std::max(residual, stationarity[i].cwiseAbs().maxCoeff());
  }

  for (int l = 0; l < edge_count; ++l) {
    const Edge& edge = support.edges[l];
    const Eigen::VectorXd diff =
        beta.segment(static_cast<Eigen::Index>(edge.s) * d, d) -
        beta.segment(static_cast<Eigen::Index>(edge.e) * d, d);
    for (int p = 0; p < d; ++p) {
      const Eigen::Index idx = static_cast<Eigen::Index>(l) * d + p;
      // Feasibility of the reparameterization.
      residual = std::max(residual, std::abs(diff[p] - delta[idx]));
      // Dual admissibility: z in -lambda*pi*subgradient(|delta|).
      const double bound = lambda * weights.per_edge[l][p];
      if (delta[idx] != 0.0) {
        const double sign = delta[idx] > 0.0 ? 1.0 : -1.0;
        residual = std::max(residual, std::abs(dual[idx] + bound * sign));
      } else {
        residual = std::max(residual, std::abs(dual[idx]) - bound);
      }
    }
  }
  return residual;
}

}  // namespace netfuse

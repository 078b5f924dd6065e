#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netfuse/admm.hpp"
#include "netfuse/evaluation.hpp"
#include "netfuse/synthetic.hpp"

namespace netfuse {

enum class Arm { mst_l1, graph_l1 };

std::string arm_name(Arm arm);
Arm parse_arm(const std::string& name);

enum class LambdaCriterion { bic };

/// Either a fixed lambda or a grid searched under an information criterion.
struct LambdaSelection {
  std::optional<double> fixed;
  std::vector<double> grid;  // ignored when fixed is set; empty = default
  LambdaCriterion criterion = LambdaCriterion::bic;

  /// Default grid: 20 log-spaced points on [1e-3, 1e2] * sqrt(N).
  static std::vector<double> default_grid(double total_samples);
};

struct ExperimentConfig {
  int nodes = 50;
  int samples = 50;
  int dim = 2;
  int clusters = 3;
  double radius = 0.5;
  double sigma = 0.5;
  double gamma = kDefaultGamma;
  double tau = 1.0;
  double ridge = 0.0;
  double zero_tol = 1e-8;
  double weight_cap = kDefaultWeightCap;
  double primal_tol = 1e-6;
  double dual_tol = 1e-7;
  int max_iters = 10000;
  LambdaSelection lambda;
  int replications = 1;
  std::uint64_t seed = 1;
  std::vector<Arm> arms = {Arm::mst_l1, Arm::graph_l1};
  Arm baseline_arm = Arm::mst_l1;
  int workers = 1;
  std::string out_dir;
  std::string graph_file;   // optional: fixed topology instead of geometric
  std::string data_dir;     // optional: external node datasets
  std::string trace_file;   // optional: round-trace dump
  bool dump_graph = false;  // write each replication's graph to out_dir
  bool dump_data = false;   // write each replication's datasets to out_dir
  std::optional<std::vector<Eigen::VectorXd>> coef_table;

  void validate() const;

  /// Canonical "key = value" rendering of every field; the config hash is
  /// the FNV-1a of this string, so it is stable across machines.
  std::string canonical_string() const;
  std::string config_hash() const;

  static ExperimentConfig from_file(const std::filesystem::path& path);
  static ExperimentConfig from_key_values(
      const std::map<std::string, std::string>& kv);
};

struct ReplicationReport {
  int replication = 0;
  Arm arm = Arm::mst_l1;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  double mse = 0.0;
  int s_hat = 0;
  bool exact_recovery = false;
  double rand_index = 0.0;
  int iterations = 0;
  bool converged = false;
  double wall_time_ms = 0.0;
  std::uint64_t scalars_setup = 0;
  std::uint64_t scalars_iterate = 0;
  std::uint64_t messages_total = 0;
  /// Generated edge count of the replication's graph (for cost ratios).
  int graph_edges = 0;
};

/// One solvable instance: data plus the penalty support and weights of an
/// arm, with the base solver settings (lambda overridden per grid point).
struct SolveInstance {
  const std::vector<NodeDataset>* data = nullptr;
  const PenaltySupport* support = nullptr;
  const AdaptiveWeights* weights = nullptr;
  AdmmConfig base;
  double zero_tol = 1e-8;
};

/// Solves each grid point and returns the lambda minimizing
/// BIC = N log(RSS/N) + log(N) * d * S_hat, restricted to converged runs;
/// ties resolve to the smaller lambda. Throws SelectionError when no grid
/// point converges. Tuning solves use a throwaway ledger.
double select_lambda(const SolveInstance& instance,
                     const std::vector<double>& grid,
                     LambdaCriterion criterion);

struct ExperimentResult {
  std::vector<ReplicationReport> reports;  // sorted by (replication, arm)
  int attempted = 0;
  int failed = 0;
  std::vector<std::string> failures;  // "replication k: reason"
};

/// Runs the configured number of replications (each: generate or load the
/// instance, run every arm on identical data, measure accuracy and costs).
/// Replication failures are logged and skipped; the experiment continues.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// CSV with the fixed column set, one row per (replication, arm).
void write_reports_csv(const std::filesystem::path& path,
                       const std::vector<ReplicationReport>& reports);
std::string reports_csv_string(const std::vector<ReplicationReport>& reports);

/// JSON summary: per-arm quantiles (p10/p25/p50/p75/p90) of mse, s_hat,
/// wall_time_ms and scalar totals, a ratio block against the baseline arm,
/// attrition, and an environment stanza (version, config hash).
std::string summary_json(const ExperimentConfig& config,
                         const ExperimentResult& result);

}  // namespace netfuse

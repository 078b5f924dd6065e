#include "netfuse/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "netfuse/errors.hpp"
#include "netfuse/io.hpp"
#include "netfuse/rng.hpp"
#include "netfuse/version.hpp"

namespace netfuse {

namespace {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + value +
                      "' as a number");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long parsed = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + value +
                      "' as an integer");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("key '" + key + "': cannot parse '" + value +
                    "' as a boolean");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream in(text);
  while (std::getline(in, current, sep)) parts.push_back(current);
  return parts;
}

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

std::vector<Eigen::VectorXd> parse_coef_table(const std::string& text) {
  std::vector<Eigen::VectorXd> table;
  for (const std::string& row_text : split(text, ';')) {
    const std::vector<std::string> entries = split(row_text, ',');
    Eigen::VectorXd row(entries.size());
    for (std::size_t p = 0; p < entries.size(); ++p) {
      row[p] = parse_double("coef_table", trim(entries[p]));
    }
    table.push_back(std::move(row));
  }
  return table;
}

std::string coef_table_string(const std::vector<Eigen::VectorXd>& table) {
  std::string out;
  for (std::size_t s = 0; s < table.size(); ++s) {
    if (s > 0) out += ';';
    for (Eigen::Index p = 0; p < table[s].size(); ++p) {
      if (p > 0) out += ',';
      out += format_double(table[s][p]);
    }
  }
  return out;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double position = p * (static_cast<double>(values.size()) - 1.0);
  const std::size_t lower = static_cast<std::size_t>(position);
  const std::size_t upper = std::min(lower + 1, values.size() - 1);
  const double frac = position - static_cast<double>(lower);
  return values[lower] * (1.0 - frac) + values[upper] * frac;
}

nlohmann::json quantile_block(const std::vector<double>& values) {
  nlohmann::json block;
  block["p10"] = quantile(values, 0.10);
  block["p25"] = quantile(values, 0.25);
  block["p50"] = quantile(values, 0.50);
  block["p75"] = quantile(values, 0.75);
  block["p90"] = quantile(values, 0.90);
  return block;
}

struct ArmRun {
  ReplicationReport report;
};

}  // namespace

std::string arm_name(Arm arm) {
  return arm == Arm::mst_l1 ? "mst_l1" : "graph_l1";
}

Arm parse_arm(const std::string& name) {
  if (name == "mst_l1") return Arm::mst_l1;
  if (name == "graph_l1") return Arm::graph_l1;
  throw ConfigError("unknown arm '" + name +
                    "' (expected mst_l1 or graph_l1)");
}

std::vector<double> LambdaSelection::default_grid(double total_samples) {
  const double scale = std::sqrt(total_samples);
  const double low = std::log(1e-3 * scale);
  const double high = std::log(1e2 * scale);
  std::vector<double> grid(20);
  for (int i = 0; i < 20; ++i) {
    grid[i] = std::exp(low + (high - low) * i / 19.0);
  }
  return grid;
}

void ExperimentConfig::validate() const {
  if (nodes < 2) throw ConfigError("nodes must be >= 2");
  if (samples < 1) throw ConfigError("samples must be >= 1");
  if (dim < 1) throw ConfigError("dim must be >= 1");
  if (clusters < 1 || clusters > nodes) {
    throw ConfigError("clusters must lie in [1, nodes]");
  }
  if (radius <= 0.0) throw ConfigError("radius must be positive");
  if (sigma < 0.0) throw ConfigError("sigma must be nonnegative");
  if (gamma <= 0.0) throw ConfigError("gamma must be positive");
  if (tau <= 0.0) throw ConfigError("tau must be positive");
  if (ridge < 0.0) throw ConfigError("ridge must be nonnegative");
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (arms.empty()) throw ConfigError("at least one arm required");
  if (lambda.fixed.has_value() && *lambda.fixed < 0.0) {
    throw ConfigError("lambda must be nonnegative");
  }
  if (!lambda.grid.empty()) {
    if (!std::is_sorted(lambda.grid.begin(), lambda.grid.end())) {
      throw ConfigError("lambda_grid must be sorted ascending");
    }
    for (double value : lambda.grid) {
      if (value <= 0.0) throw ConfigError("lambda_grid values must be > 0");
    }
  }
  if (std::find(arms.begin(), arms.end(), baseline_arm) == arms.end()) {
    throw ConfigError("baseline arm must be one of the configured arms");
  }
}

std::string ExperimentConfig::canonical_string() const {
  std::ostringstream out;
  out << "arms = ";
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (i > 0) out << ',';
    out << arm_name(arms[i]);
  }
  out << '\n';
  out << "baseline_arm = " << arm_name(baseline_arm) << '\n';
  out << "clusters = " << clusters << '\n';
  out << "coef_table = "
      << (coef_table.has_value() ? coef_table_string(*coef_table) : "default")
      << '\n';
  out << "data_dir = " << data_dir << '\n';
  out << "dim = " << dim << '\n';
  out << "dual_tol = " << format_double(dual_tol) << '\n';
  out << "dump_data = " << (dump_data ? "true" : "false") << '\n';
  out << "dump_graph = " << (dump_graph ? "true" : "false") << '\n';
  out << "gamma = " << format_double(gamma) << '\n';
  out << "graph_file = " << graph_file << '\n';
  out << "lambda = "
      << (lambda.fixed.has_value() ? format_double(*lambda.fixed) : "grid")
      << '\n';
  out << "lambda_criterion = bic\n";
  out << "lambda_grid = ";
  if (lambda.fixed.has_value()) {
    out << "unused";
  } else if (lambda.grid.empty()) {
    out << "auto";
  } else {
    for (std::size_t i = 0; i < lambda.grid.size(); ++i) {
      if (i > 0) out << ',';
      out << format_double(lambda.grid[i]);
    }
  }
  out << '\n';
  out << "max_iters = " << max_iters << '\n';
  out << "nodes = " << nodes << '\n';
  out << "out_dir = " << out_dir << '\n';
  out << "primal_tol = " << format_double(primal_tol) << '\n';
  out << "radius = " << format_double(radius) << '\n';
  out << "replications = " << replications << '\n';
  out << "ridge = " << format_double(ridge) << '\n';
  out << "samples = " << samples << '\n';
  out << "seed = " << seed << '\n';
  out << "sigma = " << format_double(sigma) << '\n';
  out << "tau = " << format_double(tau) << '\n';
  out << "trace_file = " << trace_file << '\n';
  out << "weight_cap = " << format_double(weight_cap) << '\n';
  out << "workers = " << workers << '\n';
  out << "zero_tol = " << format_double(zero_tol) << '\n';
  return out.str();
}

std::string ExperimentConfig::config_hash() const {
  const std::uint64_t hash = fnv1a(canonical_string());
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

ExperimentConfig ExperimentConfig::from_key_values(
    const std::map<std::string, std::string>& kv) {
  ExperimentConfig config;
  for (const auto& [key, value] : kv) {
    if (key == "nodes") {
      config.nodes = static_cast<int>(parse_int(key, value));
    } else if (key == "samples") {
      config.samples = static_cast<int>(parse_int(key, value));
    } else if (key == "dim") {
      config.dim = static_cast<int>(parse_int(key, value));
    } else if (key == "clusters") {
      config.clusters = static_cast<int>(parse_int(key, value));
    } else if (key == "radius") {
      config.radius = parse_double(key, value);
    } else if (key == "sigma") {
      config.sigma = parse_double(key, value);
    } else if (key == "gamma") {
      config.gamma = parse_double(key, value);
    } else if (key == "tau") {
      config.tau = parse_double(key, value);
    } else if (key == "ridge") {
      config.ridge = parse_double(key, value);
    } else if (key == "zero_tol") {
      config.zero_tol = parse_double(key, value);
    } else if (key == "weight_cap") {
      config.weight_cap = parse_double(key, value);
    } else if (key == "primal_tol") {
      config.primal_tol = parse_double(key, value);
    } else if (key == "dual_tol") {
      config.dual_tol = parse_double(key, value);
    } else if (key == "max_iters") {
      config.max_iters = static_cast<int>(parse_int(key, value));
    } else if (key == "lambda") {
      config.lambda.fixed = parse_double(key, value);
    } else if (key == "lambda_grid") {
      config.lambda.fixed.reset();
      config.lambda.grid.clear();
      if (value != "auto") {
        for (const std::string& entry : split(value, ',')) {
          config.lambda.grid.push_back(parse_double(key, trim(entry)));
        }
      }
    } else if (key == "lambda_criterion") {
      if (value != "bic") {
        throw ConfigError("unsupported lambda_criterion '" + value + "'");
      }
    } else if (key == "replications") {
      config.replications = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "arms") {
      config.arms.clear();
      for (const std::string& entry : split(value, ',')) {
        config.arms.push_back(parse_arm(trim(entry)));
      }
    } else if (key == "baseline_arm") {
      config.baseline_arm = parse_arm(value);
    } else if (key == "workers") {
      config.workers = static_cast<int>(parse_int(key, value));
    } else if (key == "out_dir") {
      config.out_dir = value;
    } else if (key == "graph_file") {
      config.graph_file = value;
    } else if (key == "data_dir") {
      config.data_dir = value;
    } else if (key == "trace_file") {
      config.trace_file = value;
    } else if (key == "dump_graph") {
      config.dump_graph = parse_bool(key, value);
    } else if (key == "dump_data") {
      config.dump_data = parse_bool(key, value);
    } else if (key == "coef_table") {
      config.coef_table = parse_coef_table(value);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return config;
}

ExperimentConfig ExperimentConfig::from_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (kv.count(key) != 0) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": duplicate key '" + key + "'");
    }
    kv[key] = value;
  }
  return from_key_values(kv);
}

double select_lambda(const SolveInstance& instance,
                     const std::vector<double>& grid,
                     LambdaCriterion criterion) {
  if (criterion != LambdaCriterion::bic) {
    throw SelectionError("unsupported selection criterion");
  }
  if (grid.empty()) throw SelectionError("lambda grid is empty");
  std::vector<double> sorted_grid = grid;
  std::sort(sorted_grid.begin(), sorted_grid.end());

  double total_samples = 0.0;
  for (const NodeDataset& node : *instance.data) {
    total_samples += static_cast<double>(node.sample_count());
  }
  const int d = static_cast<int>(instance.data->front().dim());

  bool any_converged = false;
  double best_bic = std::numeric_limits<double>::infinity();
  double best_lambda = sorted_grid.front();
  for (double candidate : sorted_grid) {
    AdmmConfig config = instance.base;
    config.lambda = candidate;
    CommLedger scratch;
    RoundTransport transport(instance.support->neighbors, scratch,
                             CommBucket::iterate);
    const SolverResult result = run_solver(*instance.data, *instance.support,
                                           *instance.weights, config,
                                           transport);
    if (!result.converged) continue;
    any_converged = true;
    double rss = 0.0;
    for (std::size_t i = 0; i < instance.data->size(); ++i) {
      const auto& node = (*instance.data)[i];
      rss += (node.responses -
              node.design * result.node_beta(static_cast<int>(i), d))
                 .squaredNorm();
    }
    rss = std::max(rss, 1e-300);
    const ClusterPartition partition =
        extract_clusters(result.delta, *instance.support, instance.zero_tol);
    const double bic = total_samples * std::log(rss / total_samples) +
                       std::log(total_samples) * d * partition.cluster_count;
    // Strict improvement keeps the smaller lambda on ties.
    if (bic < best_bic) {
      best_bic = bic;
      best_lambda = candidate;
    }
  }
  if (!any_converged) {
    throw SelectionError("no lambda grid point produced a converged run");
  }
  return best_lambda;
}

namespace {

struct Instance {
  NetworkGraph graph;
  std::vector<NodeDataset> data;
  std::optional<ClusterModel> truth;
  std::vector<OlsEstimate> ols;
};

Instance build_instance(const ExperimentConfig& config, int replication,
                        const std::optional<NetworkGraph>& fixed_graph,
                        const std::optional<std::vector<NodeDataset>>&
                            fixed_data) {
  const std::uint64_t rep_seed =
      child_seed(config.seed, "replication", replication);
  NetworkGraph graph =
      fixed_graph.has_value()
          ? *fixed_graph
          : generate_geometric_graph(config.nodes, config.radius, rep_seed);

  std::optional<ClusterModel> truth;
  std::vector<NodeDataset> data;
  if (fixed_data.has_value()) {
    data = *fixed_data;
  } else {
    truth = generate_cluster_model(
        graph, config.clusters, config.dim,
        config.coef_table.value_or(std::vector<Eigen::VectorXd>{}),
        config.sigma, rep_seed);
    data = generate_datasets(graph, *truth, config.samples, rep_seed);
  }

  std::vector<OlsEstimate> ols(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    ols[i] = fit_local_ols(data[i], config.ridge);
  }
  return {std::move(graph), std::move(data), std::move(truth),
          std::move(ols)};
}

ReplicationReport run_arm(const ExperimentConfig& config, int replication,
                          Arm arm, const Instance& instance) {
  const std::uint64_t rep_seed =
      child_seed(config.seed, "replication", replication);
  const NetworkGraph& graph = instance.graph;

  std::vector<Eigen::VectorXd> ols_coefficients(instance.ols.size());
  for (std::size_t i = 0; i < instance.ols.size(); ++i) {
    ols_coefficients[i] = instance.ols[i].coefficients;
  }

  PenaltySupport support =
      arm == Arm::mst_l1
          ? static_cast<PenaltySupport>(build_mst(
                graph, similarity_weights(graph, ols_coefficients)))
          : graph.penalty_support();
  const AdaptiveWeights weights = edge_adaptive_weights(
      support, instance.ols, config.gamma, config.weight_cap);

  CommLedger ledger;
  {
    // Bootstrap: every node shares its OLS estimate with all graph
    // neighbors; both arms pay the identical setup cost.
    RoundTransport setup(graph.neighbors(), ledger, CommBucket::setup);
    for (int i = 0; i < graph.node_count(); ++i) {
      setup.broadcast_to_neighbors(i, ols_coefficients[i]);
    }
    setup.close_round();
    setup.shutdown();
  }

  AdmmConfig base;
  base.tau = config.tau;
  base.max_iters = config.max_iters;
  base.primal_tol = config.primal_tol;
  base.dual_tol = config.dual_tol;
  base.init_ridge = config.ridge;
  base.penalty_support = arm == Arm::mst_l1 ? PenaltySupportKind::mst
                                            : PenaltySupportKind::full_graph;

  double lambda = 0.0;
  if (config.lambda.fixed.has_value()) {
    lambda = *config.lambda.fixed;
  } else {
    double total_samples = 0.0;
    for (const NodeDataset& node : instance.data) {
      total_samples += static_cast<double>(node.sample_count());
    }
    const std::vector<double> grid =
        config.lambda.grid.empty()
            ? LambdaSelection::default_grid(total_samples)
            : config.lambda.grid;
    SolveInstance solve{&instance.data, &support, &weights, base,
                        config.zero_tol};
    lambda = select_lambda(solve, grid, config.lambda.criterion);
  }

  AdmmConfig final_config = base;
  final_config.lambda = lambda;

  std::ofstream trace_stream;
  std::ostream* trace = nullptr;
  if (!config.trace_file.empty()) {
    const std::string path = config.trace_file + ".rep" +
                             std::to_string(replication) + "." +
                             arm_name(arm) + ".txt";
    trace_stream.open(path);
    if (!trace_stream) {
      throw ConfigError("cannot write trace file " + path);
    }
    trace = &trace_stream;
  }
  RoundTransport transport(support.neighbors, ledger, CommBucket::iterate,
                           trace);

  const auto start = std::chrono::steady_clock::now();
  const SolverResult result = run_solver(instance.data, support, weights,
                                         final_config, transport);
  const auto stop = std::chrono::steady_clock::now();

  const ClusterPartition partition =
      extract_clusters(result.delta, support, config.zero_tol);

  ReplicationReport report;
  report.replication = replication;
  report.arm = arm;
  report.seed = rep_seed;
  report.lambda = lambda;
  report.s_hat = partition.cluster_count;
  report.iterations = result.iterations;
  report.converged = result.converged;
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  report.scalars_setup = ledger.scalars(CommBucket::setup);
  report.scalars_iterate = ledger.scalars(CommBucket::iterate);
  report.messages_total = ledger.messages_sent();
  report.graph_edges = graph.edge_count();
  if (instance.truth.has_value()) {
    report.mse = coefficient_mse(result.beta, *instance.truth);
    const SelectionAccuracy accuracy =
        selection_accuracy(partition, instance.truth->assignment);
    report.exact_recovery = accuracy.exact_recovery;
    report.rand_index = accuracy.rand_index;
  } else {
    // External data carries no ground truth; sentinel values keep every
    // numeric field finite.
    report.mse = -1.0;
    report.rand_index = -1.0;
    report.exact_recovery = false;
  }
  return report;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();

  std::optional<NetworkGraph> fixed_graph;
  if (!config.graph_file.empty()) {
    fixed_graph = read_edge_list(config.graph_file).graph;
    if (fixed_graph->node_count() != config.nodes) {
      throw ConfigError("graph file has " +
                        std::to_string(fixed_graph->node_count()) +
                        " nodes but config expects " +
                        std::to_string(config.nodes));
    }
  }
  std::optional<std::vector<NodeDataset>> fixed_data;
  if (!config.data_dir.empty()) {
    std::vector<NodeDataset> data;
    data.reserve(config.nodes);
    for (int i = 0; i < config.nodes; ++i) {
      data.push_back(read_node_dataset(
          std::filesystem::path(config.data_dir) / node_dataset_filename(i),
          i));
    }
    for (const NodeDataset& node : data) {
      if (node.dim() != data.front().dim()) {
        throw ConfigError("external datasets disagree in dimension");
      }
    }
    fixed_data = std::move(data);
  }

  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
  }

  ExperimentResult result;
  result.attempted = config.replications;
  std::vector<std::vector<ReplicationReport>> per_rep(config.replications);
  std::vector<std::string> failures(config.replications);
  std::atomic<int> next{0};
  std::mutex io_mutex;

  const auto worker = [&]() {
    while (true) {
      const int rep = next.fetch_add(1);
      if (rep >= config.replications) break;
      try {
        const Instance instance =
            build_instance(config, rep, fixed_graph, fixed_data);
        if (config.dump_graph && !config.out_dir.empty()) {
          write_edge_list(std::filesystem::path(config.out_dir) /
                              ("graph_rep" + std::to_string(rep) + ".txt"),
                          instance.graph);
        }
        if (config.dump_data && !config.out_dir.empty()) {
          const std::filesystem::path dir =
              std::filesystem::path(config.out_dir) /
              ("data_rep" + std::to_string(rep));
          std::filesystem::create_directories(dir);
          for (const NodeDataset& node : instance.data) {
            write_node_dataset(dir / node_dataset_filename(node.node_id),
                               node);
          }
        }
        std::vector<ReplicationReport> rows;
        for (Arm arm : config.arms) {
          rows.push_back(run_arm(config, rep, arm, instance));
        }
        per_rep[rep] = std::move(rows);
      } catch (const std::exception& error) {
        failures[rep] = error.what();
        std::lock_guard<std::mutex> lock(io_mutex);
        std::fprintf(stderr, "replication %d failed: %s\n", rep,
                     error.what());
      }
    }
  };

  const int thread_count = std::min(config.workers, config.replications);
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (std::thread& thread : pool) thread.join();
  }

  for (int rep = 0; rep < config.replications; ++rep) {
    if (!failures[rep].empty()) {
      ++result.failed;
      result.failures.push_back("replication " + std::to_string(rep) + ": " +
                                failures[rep]);
      continue;
    }
    for (ReplicationReport& report : per_rep[rep]) {
      result.reports.push_back(std::move(report));
    }
  }
  return result;
}

std::string reports_csv_string(const std::vector<ReplicationReport>& reports) {
  std::ostringstream out;
  out << "replication,arm,seed,lambda,mse,s_hat,exact_recovery,rand_index,"
         "iterations,converged,wall_time_ms,scalars_setup,scalars_iterate,"
         "messages_total\n";
  for (const ReplicationReport& report : reports) {
    char wall[32];
    std::snprintf(wall, sizeof(wall), "%.3f", report.wall_time_ms);
    out << report.replication << ',' << arm_name(report.arm) << ','
        << report.seed << ',' << format_double(report.lambda) << ','
        << format_double(report.mse) << ',' << report.s_hat << ','
        << (report.exact_recovery ? 1 : 0) << ','
        << format_double(report.rand_index) << ',' << report.iterations << ','
        << (report.converged ? 1 : 0) << ',' << wall << ','
        << report.scalars_setup << ',' << report.scalars_iterate << ','
        << report.messages_total << '\n';
  }
  return out.str();
}

void write_reports_csv(const std::filesystem::path& path,
                       const std::vector<ReplicationReport>& reports) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write CSV " + path.string());
  }
  out << reports_csv_string(reports);
}

std::string summary_json(const ExperimentConfig& config,
                         const ExperimentResult& result) {
  nlohmann::json summary;
  summary["environment"] = {{"version", std::string(kVersion)},
                            {"config_hash", config.config_hash()}};
  summary["attrition"] = {{"attempted", result.attempted},
                          {"failed", result.failed},
                          {"failures", result.failures}};

  const auto arm_rows = [&](Arm arm) {
    std::vector<const ReplicationReport*> rows;
    for (const ReplicationReport& report : result.reports) {
      if (report.arm == arm) rows.push_back(&report);
    }
    return rows;
  };
  const auto collect = [](const std::vector<const ReplicationReport*>& rows,
                          auto getter) {
    std::vector<double> values;
    values.reserve(rows.size());
    for (const ReplicationReport* row : rows) values.push_back(getter(*row));
    return values;
  };

  nlohmann::json arms_block;
  std::map<Arm, std::vector<double>> scalars_by_arm;
  std::map<Arm, std::vector<double>> mse_by_arm;
  std::map<Arm, std::vector<double>> wall_by_arm;
  for (Arm arm : config.arms) {
    const auto rows = arm_rows(arm);
    if (rows.empty()) continue;
    nlohmann::json block;
    const auto mse = collect(rows, [](const auto& r) { return r.mse; });
    const auto s_hat = collect(
        rows, [](const auto& r) { return static_cast<double>(r.s_hat); });
    const auto wall =
        collect(rows, [](const auto& r) { return r.wall_time_ms; });
    const auto scalars = collect(rows, [](const auto& r) {
      return static_cast<double>(r.scalars_setup + r.scalars_iterate);
    });
    block["mse"] = quantile_block(mse);
    block["s_hat"] = quantile_block(s_hat);
    block["wall_time_ms"] = quantile_block(wall);
    block["scalars_total"] = quantile_block(scalars);
    block["replications"] = rows.size();
    arms_block[arm_name(arm)] = block;
    scalars_by_arm[arm] = scalars;
    mse_by_arm[arm] = mse;
    wall_by_arm[arm] = wall;
  }
  summary["arms"] = arms_block;

  nlohmann::json ratios;
  ratios["baseline_arm"] = arm_name(config.baseline_arm);
  if (scalars_by_arm.count(config.baseline_arm) != 0) {
    const double base_mse = quantile(mse_by_arm[config.baseline_arm], 0.5);
    const double base_wall = quantile(wall_by_arm[config.baseline_arm], 0.5);
    const double base_scalars =
        quantile(scalars_by_arm[config.baseline_arm], 0.5);
    for (Arm arm : config.arms) {
      if (arm == config.baseline_arm || scalars_by_arm.count(arm) == 0) {
        continue;
      }
      nlohmann::json entry;
      const double arm_mse = quantile(mse_by_arm[arm], 0.5);
      const double arm_wall = quantile(wall_by_arm[arm], 0.5);
      const double arm_scalars = quantile(scalars_by_arm[arm], 0.5);
      entry["mse_median_ratio_vs_baseline"] =
          base_mse == 0.0 ? 0.0 : arm_mse / base_mse;
      entry["wall_time_median_ratio_vs_baseline"] =
          base_wall == 0.0 ? 0.0 : arm_wall / base_wall;
      entry["scalars_total_median_ratio_vs_baseline"] =
          base_scalars == 0.0 ? 0.0 : arm_scalars / base_scalars;
      if (arm_mse > 0.0) {
        entry["baseline_mse_improvement_percent"] =
            100.0 * (arm_mse - base_mse) / arm_mse;
      }
      ratios[arm_name(arm)] = entry;
    }
  }
  summary["ratios"] = ratios;
  return summary.dump(2) + "\n";
}

}  // namespace netfuse

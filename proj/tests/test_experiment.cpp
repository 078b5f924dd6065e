#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "netfuse/errors.hpp"
#include "netfuse/experiment.hpp"
#include "netfuse/io.hpp"
#include "netfuse/synthetic.hpp"

using namespace netfuse;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig config;
  config.nodes = 8;
  config.samples = 20;
  config.dim = 2;
  config.clusters = 2;
  config.radius = 0.8;
  config.sigma = 0.5;
  config.replications = 2;
  config.seed = 2024;
  config.lambda.grid = {0.5, 2.0, 8.0};
  return config;
}

/// CSV rows with the wall_time_ms column blanked (the one field allowed to
/// differ between reruns).
std::string strip_wall_time(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string field;
    int index = 0;
    while (std::getline(fields, field, ',')) {
      if (index > 0) out << ',';
      out << (index == 10 ? std::string("-") : field);
      ++index;
    }
    out << '\n';
  }
  return out.str();
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name)
      : path(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("lambda selection") {
  const NetworkGraph graph = generate_geometric_graph(8, 0.8, 5);
  const ClusterModel truth = generate_cluster_model(graph, 2, 2, {}, 0.0, 5);
  const auto data = generate_datasets(graph, truth, 30, 5);
  std::vector<OlsEstimate> ols(data.size());
  std::vector<Eigen::VectorXd> coefficients(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    ols[i] = fit_local_ols(data[i]);
    coefficients[i] = ols[i].coefficients;
  }
  const SpanningTree tree =
      build_mst(graph, similarity_weights(graph, coefficients));
  const AdaptiveWeights weights = edge_adaptive_weights(tree, ols);
  SolveInstance instance{&data, &tree, &weights, AdmmConfig{}, 1e-8};

  SUBCASE("single-point grid returns that point") {
    CHECK(select_lambda(instance, {0.37}, LambdaCriterion::bic) == 0.37);
  }
  SUBCASE("grid order does not change the selection") {
    const std::vector<double> ascending{0.01, 0.1, 1.0, 10.0, 100.0};
    const std::vector<double> shuffled{10.0, 0.01, 100.0, 1.0, 0.1};
    CHECK(select_lambda(instance, ascending, LambdaCriterion::bic) ==
          select_lambda(instance, shuffled, LambdaCriterion::bic));
  }
  SUBCASE("noiseless two-cluster instance recovers S by BIC") {
    const double lambda = select_lambda(
        instance, {1e-4, 1e-2, 0.3, 3.0, 30.0, 3000.0, 3e5},
        LambdaCriterion::bic);
    AdmmConfig config;
    config.lambda = lambda;
    CommLedger ledger;
    RoundTransport transport(tree.neighbors, ledger, CommBucket::iterate);
    const SolverResult result =
        run_solver(data, tree, weights, config, transport);
    const ClusterPartition partition =
        extract_clusters(result.delta, tree, 1e-8);
    CHECK(partition.cluster_count == 2);
  }
}

TEST_CASE("experiment produces paired arm rows") {
  ExperimentConfig config = tiny_config();
  config.replications = 1;
  const ExperimentResult result = run_experiment(config);
  REQUIRE(result.reports.size() == 2);
  CHECK(result.reports[0].arm == Arm::mst_l1);
  CHECK(result.reports[1].arm == Arm::graph_l1);
  CHECK(result.reports[0].seed == result.reports[1].seed);
  CHECK(result.reports[0].scalars_setup == result.reports[1].scalars_setup);
  CHECK(result.reports[0].converged);
  CHECK(result.reports[1].converged);
  CHECK(result.failed == 0);
}

TEST_CASE("reports are byte-identical across reruns except wall time") {
  const ExperimentConfig config = tiny_config();
  const ExperimentResult a = run_experiment(config);
  const ExperimentResult b = run_experiment(config);
  CHECK(strip_wall_time(reports_csv_string(a.reports)) ==
        strip_wall_time(reports_csv_string(b.reports)));

  ExperimentConfig parallel = config;
  parallel.workers = 4;
  const ExperimentResult c = run_experiment(parallel);
  CHECK(strip_wall_time(reports_csv_string(a.reports)) ==
        strip_wall_time(reports_csv_string(c.reports)));
}

TEST_CASE("per-iteration communication follows the edge counts") {
  ExperimentConfig config = tiny_config();
  config.replications = 1;
  config.lambda.fixed = 1.0;
  config.lambda.grid.clear();
  const ExperimentResult result = run_experiment(config);
  REQUIRE(result.reports.size() == 2);
  const ReplicationReport& mst = result.reports[0];
  const ReplicationReport& graph = result.reports[1];
  const int k = config.nodes;
  const int edges = mst.graph_edges;
  // Setup exchanges cover every graph edge in both directions.
  CHECK(mst.scalars_setup ==
        static_cast<std::uint64_t>(2 * edges * config.dim));
  // Per-iteration cost ratio is exactly (K-1)/|E| (cross-multiplied to stay
  // in integers).
  CHECK(mst.scalars_iterate * graph.iterations * edges ==
        graph.scalars_iterate * mst.iterations * (k - 1));
}

TEST_CASE("csv header and field order are pinned") {
  const std::string csv = reports_csv_string({});
  CHECK(csv ==
        "replication,arm,seed,lambda,mse,s_hat,exact_recovery,rand_index,"
        "iterations,converged,wall_time_ms,scalars_setup,scalars_iterate,"
        "messages_total\n");
}

TEST_CASE("config parsing") {
  TempDir dir("netfuse_config_test");
  SUBCASE("round trip with comments and overrides") {
    const auto path = dir.path / "run.cfg";
    std::ofstream out(path);
    out << "# experiment\n"
        << "nodes = 12\n"
        << "samples = 25\n"
        << "dim = 3\n"
        << "clusters = 2\n"
        << "radius = 0.7\n"
        << "arms = mst_l1\n"
        << "lambda = 2.5\n"
        << "seed = 99\n"
        << "baseline_arm = mst_l1\n";
    out.close();
    const ExperimentConfig config = ExperimentConfig::from_file(path);
    CHECK(config.nodes == 12);
    CHECK(config.dim == 3);
    CHECK(config.arms == std::vector<Arm>{Arm::mst_l1});
    CHECK(config.lambda.fixed == 2.5);
    CHECK(config.seed == 99);
    config.validate();
  }
  SUBCASE("unknown keys are rejected") {
    const auto path = dir.path / "bad.cfg";
    std::ofstream(path) << "nodez = 12\n";
    CHECK_THROWS_AS(ExperimentConfig::from_file(path), ConfigError);
  }
  SUBCASE("duplicate keys are rejected") {
    const auto path = dir.path / "dup.cfg";
    std::ofstream(path) << "nodes = 12\nnodes = 13\n";
    CHECK_THROWS_AS(ExperimentConfig::from_file(path), ConfigError);
  }
  SUBCASE("coefficient tables parse") {
    const ExperimentConfig config = ExperimentConfig::from_key_values(
        {{"coef_table", "1,1;-1,2;3,-1"}, {"dim", "2"}, {"clusters", "3"}});
    REQUIRE(config.coef_table.has_value());
    CHECK(config.coef_table->size() == 3);
    CHECK((*config.coef_table)[2][0] == 3.0);
  }
  SUBCASE("validation catches bad values") {
    ExperimentConfig config = tiny_config();
    config.clusters = 100;
    CHECK_THROWS_AS(config.validate(), ConfigError);
    config = tiny_config();
    config.arms = {Arm::graph_l1};  // baseline defaults to mst_l1
    CHECK_THROWS_AS(config.validate(), ConfigError);
  }
}

TEST_CASE("config hash is stable and sensitive") {
  const ExperimentConfig a = tiny_config();
  const ExperimentConfig b = tiny_config();
  CHECK(a.config_hash() == b.config_hash());
  ExperimentConfig c = tiny_config();
  c.sigma = 0.51;
  CHECK(a.config_hash() != c.config_hash());
}

TEST_CASE("edge list round trip") {
  TempDir dir("netfuse_io_test");
  const NetworkGraph graph = generate_geometric_graph(9, 0.7, 3);
  const auto path = dir.path / "graph.txt";
  write_edge_list(path, graph);
  const EdgeListData loaded = read_edge_list(path);
  CHECK(loaded.graph.node_count() == 9);
  CHECK(loaded.graph.edges() == graph.edges());
  CHECK(!loaded.weights.has_value());

  EdgeWeights weights;
  for (int l = 0; l < graph.edge_count(); ++l) {
    weights.values.push_back(0.25 * l + 0.125);
  }
  write_edge_list(path, graph, &weights);
  const EdgeListData weighted = read_edge_list(path);
  REQUIRE(weighted.weights.has_value());
  CHECK(weighted.weights->values == weights.values);
}

TEST_CASE("node dataset round trip is exact") {
  TempDir dir("netfuse_dataset_test");
  const NetworkGraph graph = generate_geometric_graph(3, 1.0, 11);
  const ClusterModel truth = generate_cluster_model(graph, 1, 2, {}, 0.5, 11);
  const auto data = generate_datasets(graph, truth, 15, 11);
  const auto path = dir.path / node_dataset_filename(1);
  write_node_dataset(path, data[1]);
  const NodeDataset loaded = read_node_dataset(path, 1);
  CHECK(loaded.design == data[1].design);
  CHECK(loaded.responses == data[1].responses);
}

TEST_CASE("experiment can run from files") {
  TempDir dir("netfuse_files_test");
  const NetworkGraph graph = generate_geometric_graph(6, 0.8, 13);
  const ClusterModel truth = generate_cluster_model(graph, 2, 2, {}, 0.5, 13);
  const auto data = generate_datasets(graph, truth, 25, 13);
  write_edge_list(dir.path / "graph.txt", graph);
  for (const NodeDataset& node : data) {
    write_node_dataset(dir.path / node_dataset_filename(node.node_id), node);
  }

  ExperimentConfig config;
  config.nodes = 6;
  config.samples = 25;
  config.dim = 2;
  config.clusters = 2;
  config.replications = 1;
  config.seed = 13;
  config.lambda.fixed = 1.0;
  config.graph_file = (dir.path / "graph.txt").string();
  config.data_dir = dir.path.string();
  const ExperimentResult result = run_experiment(config);
  REQUIRE(result.reports.size() == 2);
  // External data carries no ground truth: accuracy fields are sentinels.
  CHECK(result.reports[0].mse == -1.0);
  CHECK(result.reports[0].rand_index == -1.0);
  CHECK(result.reports[0].converged);
}

TEST_CASE("summary json carries quantiles, ratios, and environment") {
  ExperimentConfig config = tiny_config();
  const ExperimentResult result = run_experiment(config);
  const std::string json = summary_json(config, result);
  CHECK(json.find("\"p50\"") != std::string::npos);
  CHECK(json.find("\"config_hash\"") != std::string::npos);
  CHECK(json.find("\"graph_l1\"") != std::string::npos);
  CHECK(json.find("\"scalars_total_median_ratio_vs_baseline\"") !=
        std::string::npos);
}

TEST_CASE("failed replications are reported as attrition") {
  ExperimentConfig config = tiny_config();
  // A radius this small cannot produce a connected graph in few retries.
  config.radius = 0.05;
  config.nodes = 30;
  config.replications = 2;
  const ExperimentResult result = run_experiment(config);
  CHECK(result.failed == 2);
  CHECK(result.reports.empty());
  CHECK(result.failures.size() == 2);
}

}  // TEST_SUITE

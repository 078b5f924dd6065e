#include <benchmark/benchmark.h>

#include "netfuse/admm.hpp"
#include "netfuse/local_ols.hpp"
#include "netfuse/synthetic.hpp"
#include "netfuse/transport.hpp"

namespace {

struct Instance {
  netfuse::NetworkGraph graph;
  std::vector<netfuse::NodeDataset> data;
  netfuse::SpanningTree tree;
  netfuse::AdaptiveWeights weights;
};

Instance make_instance(int k, int n) {
  netfuse::NetworkGraph graph = netfuse::generate_geometric_graph(k, 0.5, 3);
  const netfuse::ClusterModel truth =
      netfuse::generate_cluster_model(graph, 3, 2, {}, 0.5, 3);
  std::vector<netfuse::NodeDataset> data =
      netfuse::generate_datasets(graph, truth, n, 3);
  std::vector<netfuse::OlsEstimate> ols(data.size());
  std::vector<Eigen::VectorXd> coefficients(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    ols[i] = netfuse::fit_local_ols(data[i]);
    coefficients[i] = ols[i].coefficients;
  }
  netfuse::SpanningTree tree = netfuse::build_mst(
      graph, netfuse::similarity_weights(graph, coefficients));
  netfuse::AdaptiveWeights weights = netfuse::edge_adaptive_weights(tree, ols);
  return {std::move(graph), std::move(data), std::move(tree),
          std::move(weights)};
}

/// Cost of a fixed number of decentralized iterations (tolerances disabled).
void BM_SolverIterations(benchmark::State& state) {
  const Instance instance = make_instance(static_cast<int>(state.range(0)),
                                          50);
  netfuse::AdmmConfig config;
  config.lambda = 1.0;
  config.max_iters = 100;
  config.primal_tol = 1e-300;
  config.dual_tol = 1e-300;
  for (auto _ : state) {
    netfuse::CommLedger ledger;
    netfuse::RoundTransport transport(instance.tree.neighbors, ledger,
                                      netfuse::CommBucket::iterate);
    benchmark::DoNotOptimize(netfuse::run_solver(
        instance.data, instance.tree, instance.weights, config, transport));
  }
  state.SetItemsProcessed(state.iterations() * config.max_iters);
}

void BM_CentralizedIterations(benchmark::State& state) {
  const Instance instance = make_instance(static_cast<int>(state.range(0)),
                                          50);
  netfuse::AdmmConfig config;
  config.lambda = 1.0;
  config.max_iters = 100;
  config.primal_tol = 1e-300;
  config.dual_tol = 1e-300;
  for (auto _ : state) {
    benchmark::DoNotOptimize(netfuse::centralized_reference_solve(
        instance.data, instance.tree, instance.weights, config));
  }
  state.SetItemsProcessed(state.iterations() * config.max_iters);
}

}  // namespace

BENCHMARK(BM_SolverIterations)->Arg(10)->Arg(50);
BENCHMARK(BM_CentralizedIterations)->Arg(10)->Arg(50);

BENCHMARK_MAIN();

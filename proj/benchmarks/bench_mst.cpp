#include <benchmark/benchmark.h>

#include "netfuse/graph.hpp"
#include "netfuse/rng.hpp"
#include "netfuse/synthetic.hpp"

namespace {

void BM_BuildMst(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const netfuse::NetworkGraph graph =
      netfuse::generate_geometric_graph(k, 0.4, 7);
  netfuse::CounterRng rng(7, "bench-weights");
  netfuse::EdgeWeights weights;
  for (int l = 0; l < graph.edge_count(); ++l) {
    weights.values.push_back(rng.next_uniform());
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(netfuse::build_mst(graph, weights));
  }
  state.counters["edges"] = static_cast<double>(graph.edge_count());
}

void BM_Laplacian(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const netfuse::NetworkGraph graph =
      netfuse::generate_geometric_graph(k, 0.4, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(netfuse::laplacian(graph.penalty_support()));
  }
}

}  // namespace

BENCHMARK(BM_BuildMst)->Arg(50)->Arg(200)->Arg(800);
BENCHMARK(BM_Laplacian)->Arg(50)->Arg(200)->Arg(800);

BENCHMARK_MAIN();

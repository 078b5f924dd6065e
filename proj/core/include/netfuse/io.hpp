#pragma once

#include <filesystem>
#include <optional>

#include "netfuse/graph.hpp"
#include "netfuse/local_ols.hpp"

namespace netfuse {

/// Edge-list text format: one "i j" or "i j weight" line per edge, 0-based
/// node ids, '#' starts a comment. Node count is inferred as max id + 1.
struct EdgeListData {
  NetworkGraph graph;
  std::optional<EdgeWeights> weights;
};

EdgeListData read_edge_list(const std::filesystem::path& path);
void write_edge_list(const std::filesystem::path& path,
                     const NetworkGraph& graph,
                     const EdgeWeights* weights = nullptr);

/// Per-node dataset text format: header line "d n", then n rows of
/// "x_1 ... x_d y".
NodeDataset read_node_dataset(const std::filesystem::path& path, int node_id);
void write_node_dataset(const std::filesystem::path& path,
                        const NodeDataset& data);

/// Conventional file name for node `i` inside a dataset directory.
std::string node_dataset_filename(int node_id);

}  // namespace netfuse

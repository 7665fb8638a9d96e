#pragma once

#include <filesystem>

#include "motifscan/graph.hpp"

namespace motifscan {

/// Normalized on-disk form of a graph: a directory holding
///   nodes.csv  - header "id,name,role,type_name,layer"; role is E/I/O,
///                layer empty when unknown; ids dense 0..n-1 in row order
///   edges.csv  - header "src,dst", one directed edge per line
inline constexpr const char* kNodesFile = "nodes.csv";
inline constexpr const char* kEdgesFile = "edges.csv";

TypedDigraph load_graph_dir(const std::filesystem::path& dir);

/// Raw file rows in file order (slicing depends on source edge order, which
/// TypedDigraph's sorted adjacency discards). Headers are validated.
std::vector<NodeMeta> load_nodes_csv(const std::filesystem::path& path);
std::vector<std::pair<NodeId, NodeId>> load_edges_csv(const std::filesystem::path& path);

std::string render_edges_csv(const std::vector<std::pair<NodeId, NodeId>>& edges);

/// Writes both files atomically (temp + rename).
void save_graph_dir(const TypedDigraph& g, const std::filesystem::path& dir);

std::string render_nodes_csv(const std::vector<NodeMeta>& nodes);

} // namespace motifscan

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace motifscan {

using NodeId = std::uint32_t;

enum class NodeRole : std::uint8_t { Excitatory = 0, Inhibitory = 1, Other = 2 };

char role_letter(NodeRole r);

/// Accepts E/I/O (any case). Throws std::runtime_error on anything else.
NodeRole role_from_letter(char c);

struct NodeMeta {
    NodeId id = 0;
    std::string name;
    NodeRole role = NodeRole::Other;
    std::string type_name;
    std::string layer; // "L1","L23","L4","L5","L6" or empty when unknown
};

enum class Direction { Out, In };

/// Immutable simple directed graph with per-node metadata and sorted CSR
/// adjacency in both directions. Duplicate edges are collapsed at build time;
/// self-loops are kept in storage and counted separately. Read access is
/// thread-safe once construction returns.
class TypedDigraph {
public:
    TypedDigraph() = default;

    /// Node ids must be dense 0..n-1 in vector order and names unique.
    /// Edge endpoints are checked against n. Throws std::runtime_error
    /// on any violation.
    static TypedDigraph build(std::vector<NodeMeta> nodes,
                              std::vector<std::pair<NodeId, NodeId>> edges);

    std::size_t node_count() const { return nodes_.size(); }
    std::uint64_t edge_count() const { return edge_count_; }
    std::uint64_t self_loop_count() const { return self_loops_; }
    std::uint64_t duplicate_edges_collapsed() const { return duplicates_collapsed_; }

    const NodeMeta& node(NodeId u) const;
    const std::vector<NodeMeta>& nodes() const { return nodes_; }

    /// Count of nodes with in-degree + out-degree >= 1.
    std::uint64_t connected_node_count() const;

    /// O(log deg(u)) membership test. Throws std::out_of_range on bad ids.
    bool has_edge(NodeId u, NodeId v) const;

    /// Ascending neighbor ids in the requested direction.
    std::span<const NodeId> neighbors(NodeId u, Direction d) const;

    std::uint32_t degree(NodeId u, Direction d) const {
        return static_cast<std::uint32_t>(neighbors(u, d).size());
    }

private:
    void check_node(NodeId u) const;

    std::vector<NodeMeta> nodes_;
    std::vector<std::uint64_t> out_offsets_{0};
    std::vector<std::uint64_t> in_offsets_{0};
    std::vector<NodeId> out_targets_;
    std::vector<NodeId> in_targets_;
    std::uint64_t edge_count_ = 0;
    std::uint64_t self_loops_ = 0;
    std::uint64_t duplicates_collapsed_ = 0;
};

} // namespace motifscan

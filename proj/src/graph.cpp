#include "motifscan/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace motifscan {

char role_letter(NodeRole r) {
    switch (r) {
        case NodeRole::Excitatory: return 'E';
        case NodeRole::Inhibitory: return 'I';
        case NodeRole::Other: return 'O';
    }
    return '?';
}

NodeRole role_from_letter(char c) {
    switch (c) {
        case 'E': case 'e': return NodeRole::Excitatory;
        case 'I': case 'i': return NodeRole::Inhibitory;
        case 'O': case 'o': return NodeRole::Other;
        default:
            throw std::runtime_error(std::string("unknown role letter '") + c + "'");
    }
}

TypedDigraph TypedDigraph::build(std::vector<NodeMeta> nodes,
                                 std::vector<std::pair<NodeId, NodeId>> edges) {
    const std::size_t n = nodes.size();

    for (std::size_t i = 0; i < n; ++i) {
        if (nodes[i].id != i)
            throw std::runtime_error("node ids must be dense 0..n-1 in order; position " +
                                     std::to_string(i) + " has id " + std::to_string(nodes[i].id));
    }
    {
        std::unordered_set<std::string_view> seen;
        seen.reserve(n);
        for (const auto& node : nodes)
            if (!seen.insert(node.name).second)
                throw std::runtime_error("duplicate node name '" + node.name + "'");
    }
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n)
            throw std::runtime_error("edge endpoint out of range: (" + std::to_string(u) + "," +
                                     std::to_string(v) + ") with n=" + std::to_string(n));
    }

    const std::size_t raw = edges.size();
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    TypedDigraph g;
    g.nodes_ = std::move(nodes);
    g.duplicates_collapsed_ = raw - edges.size();
    g.edge_count_ = edges.size();

    g.out_offsets_.assign(n + 1, 0);
    g.in_offsets_.assign(n + 1, 0);
    for (const auto& [u, v] : edges) {
        ++g.out_offsets_[u + 1];
        ++g.in_offsets_[v + 1];
        if (u == v) ++g.self_loops_;
    }
    for (std::size_t i = 0; i < n; ++i) {
        g.out_offsets_[i + 1] += g.out_offsets_[i];
        g.in_offsets_[i + 1] += g.in_offsets_[i];
    }

    g.out_targets_.resize(edges.size());
    g.in_targets_.resize(edges.size());
    std::vector<std::uint64_t> out_fill(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
    std::vector<std::uint64_t> in_fill(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
    // edges are sorted by (src,dst), so out lists come out ascending; in lists
    // are filled in src order, which is also ascending per destination.
    for (const auto& [u, v] : edges) {
        g.out_targets_[out_fill[u]++] = v;
        g.in_targets_[in_fill[v]++] = u;
    }
    return g;
}

void TypedDigraph::check_node(NodeId u) const {
    if (u >= nodes_.size())
        throw std::out_of_range("node id " + std::to_string(u) + " out of range (n=" +
                                std::to_string(nodes_.size()) + ")");
}

const NodeMeta& TypedDigraph::node(NodeId u) const {
    check_node(u);
    return nodes_[u];
}

std::uint64_t TypedDigraph::connected_node_count() const {
    std::uint64_t c = 0;
    for (std::size_t u = 0; u < nodes_.size(); ++u) {
        const bool any = out_offsets_[u + 1] > out_offsets_[u] || in_offsets_[u + 1] > in_offsets_[u];
        c += any ? 1 : 0;
    }
    return c;
}

bool TypedDigraph::has_edge(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    const auto begin = out_targets_.begin() + static_cast<std::ptrdiff_t>(out_offsets_[u]);
    const auto end = out_targets_.begin() + static_cast<std::ptrdiff_t>(out_offsets_[u + 1]);
    return std::binary_search(begin, end, v);
}

std::span<const NodeId> TypedDigraph::neighbors(NodeId u, Direction d) const {
    check_node(u);
    const auto& offsets = d == Direction::Out ? out_offsets_ : in_offsets_;
    const auto& targets = d == Direction::Out ? out_targets_ : in_targets_;
    return {targets.data() + offsets[u], targets.data() + offsets[u + 1]};
}

} // namespace motifscan

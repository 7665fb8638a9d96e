#include "motifscan/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace motifscan {

namespace {

struct BruteState {
    const TypedDigraph& g;
    const MotifPattern& p;
    MatchAssignment current;
    std::vector<bool> used;
    OracleResult result;

    // A prefix of depth d is accepted iff slot d's node has an allowed role
    // and every ordered pair against slots 0..d-1 satisfies the mode's edge
    // rule. Induced demands exact agreement with the pattern in both
    // directions; monomorphic only demands presence of pattern edges.
    bool prefix_ok(SlotIndex depth, NodeId node) const {
        if (!p.slot_roles(depth).contains(g.node(node).role)) return false;
        const bool induced = p.mode() == MatchMode::Induced;
        for (SlotIndex j = 0; j < depth; ++j) {
            const NodeId other = current.ids[j];
            const bool fwd = g.has_edge(other, node);
            const bool bwd = g.has_edge(node, other);
            if (induced) {
                if (fwd != p.has_edge(j, depth)) return false;
                if (bwd != p.has_edge(depth, j)) return false;
            } else {
                if (p.has_edge(j, depth) && !fwd) return false;
                if (p.has_edge(depth, j) && !bwd) return false;
            }
        }
        return true;
    }

    void descend(SlotIndex depth) {
        const auto k = static_cast<SlotIndex>(p.slot_count());
        if (depth == k) {
            ++result.raw;
            if (canonical_form(p, current) == current) {
                ++result.deduped;
                result.assignments.push_back(current);
            }
            return;
        }
        for (NodeId v = 0; v < g.node_count(); ++v) {
            if (used[v]) continue;
            if (!prefix_ok(depth, v)) continue;
            used[v] = true;
            current.ids[depth] = v;
            descend(static_cast<SlotIndex>(depth + 1));
            used[v] = false;
        }
    }
};

} // namespace

OracleResult brute_force(const TypedDigraph& g, const MotifPattern& p) {
    if (g.node_count() > kOracleMaxNodes)
        throw std::runtime_error("oracle is capped at " + std::to_string(kOracleMaxNodes) +
                                 " nodes, graph has " + std::to_string(g.node_count()));

    BruteState state{g, p, {}, std::vector<bool>(g.node_count(), false), {}};
    state.current.count = static_cast<std::uint8_t>(p.slot_count());
    state.descend(0);
    std::sort(state.result.assignments.begin(), state.result.assignments.end());
    return state.result;
}

} // namespace motifscan

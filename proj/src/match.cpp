#include "motifscan/match.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <thread>

namespace motifscan {

MatchAssignment canonical_form(const MotifPattern& p, const MatchAssignment& m) {
    MatchAssignment best = m;
    MatchAssignment image;
    image.count = m.count;
    for (const auto& sigma : p.automorphisms()) {
        for (std::uint8_t i = 0; i < m.count; ++i) image.ids[i] = m.ids[sigma[i]];
        if (image < best) best = image;
    }
    return best;
}

namespace {

// Static search plan built once per (graph, pattern) scan.
//
// The anchor (position 0) is the most selective slot: fewest graph nodes
// passing its role and pattern-degree filters. Later positions maximize
// pattern edges into already-placed slots, ties broken by the same
// selectivity estimate. Candidates for a position are read from the
// smallest adjacency list of an already-bound pattern neighbor; a position
// with no placed neighbor (disconnected pattern prefix) falls back to
// scanning all nodes.
struct PlanPosition {
    SlotIndex slot = 0;
    RoleSet roles;
    std::uint32_t min_out_deg = 0;
    std::uint32_t min_in_deg = 0;

    struct Source {
        std::uint8_t pos;
        Direction dir; // candidates = neighbors(bound[pos], dir)
    };
    std::vector<Source> sources;

    // fwd: pattern edge placed->this, bwd: this->placed. Induced mode lists
    // every earlier position and both flags are exact requirements (absence
    // included); monomorphic mode lists only positions with a pattern edge.
    struct Check {
        std::uint8_t pos;
        bool fwd;
        bool bwd;
    };
    std::vector<Check> checks;
};

struct SearchPlan {
    std::vector<PlanPosition> positions;
    std::vector<NodeId> anchor_candidates;
    std::vector<NodeRole> role_of; // compact per-node role copy
};

bool node_passes_slot(const TypedDigraph& g, NodeRole role, NodeId v, const MotifPattern& p,
                      SlotIndex slot) {
    return p.slot_roles(slot).contains(role) &&
           g.degree(v, Direction::Out) >= static_cast<std::uint32_t>(p.out_degree(slot)) &&
           g.degree(v, Direction::In) >= static_cast<std::uint32_t>(p.in_degree(slot));
}

SearchPlan build_plan(const TypedDigraph& g, const MotifPattern& p) {
    const int k = p.slot_count();
    SearchPlan plan;

    plan.role_of.reserve(g.node_count());
    for (const auto& meta : g.nodes()) plan.role_of.push_back(meta.role);

    // Exact per-slot candidate counts in one pass over the nodes.
    std::vector<std::uint64_t> slot_candidates(k, 0);
    for (NodeId v = 0; v < g.node_count(); ++v)
        for (int s = 0; s < k; ++s)
            if (node_passes_slot(g, plan.role_of[v], v, p, static_cast<SlotIndex>(s)))
                ++slot_candidates[s];

    SlotIndex anchor = 0;
    for (int s = 1; s < k; ++s)
        if (slot_candidates[s] < slot_candidates[anchor]) anchor = static_cast<SlotIndex>(s);

    std::vector<SlotIndex> order = {anchor};
    std::uint16_t placed_mask = static_cast<std::uint16_t>(1u << anchor);
    while (static_cast<int>(order.size()) < k) {
        int best = -1;
        int best_links = -1;
        for (int s = 0; s < k; ++s) {
            if (placed_mask >> s & 1u) continue;
            const int links = std::popcount(static_cast<std::uint16_t>(
                (p.out_mask(static_cast<SlotIndex>(s)) | p.in_mask(static_cast<SlotIndex>(s))) &
                placed_mask));
            if (links > best_links ||
                (links == best_links && slot_candidates[s] < slot_candidates[best])) {
                best = s;
                best_links = links;
            }
        }
        order.push_back(static_cast<SlotIndex>(best));
        placed_mask |= static_cast<std::uint16_t>(1u << best);
    }

    plan.positions.resize(k);
    for (int i = 0; i < k; ++i) {
        PlanPosition& pp = plan.positions[i];
        pp.slot = order[i];
        pp.roles = p.slot_roles(pp.slot);
        pp.min_out_deg = static_cast<std::uint32_t>(p.out_degree(pp.slot));
        pp.min_in_deg = static_cast<std::uint32_t>(p.in_degree(pp.slot));
        for (int j = 0; j < i; ++j) {
            const SlotIndex prev = order[j];
            const bool fwd = p.has_edge(prev, pp.slot);
            const bool bwd = p.has_edge(pp.slot, prev);
            if (fwd)
                pp.sources.push_back({static_cast<std::uint8_t>(j), Direction::Out});
            else if (bwd)
                pp.sources.push_back({static_cast<std::uint8_t>(j), Direction::In});
            if (p.mode() == MatchMode::Induced || fwd || bwd)
                pp.checks.push_back({static_cast<std::uint8_t>(j), fwd, bwd});
        }
    }

    for (NodeId v = 0; v < g.node_count(); ++v)
        if (node_passes_slot(g, plan.role_of[v], v, p, anchor)) plan.anchor_candidates.push_back(v);

    return plan;
}

struct Worker {
    const TypedDigraph& g;
    const MotifPattern& p;
    const SearchPlan& plan;
    MatchSink* sink = nullptr;
    MatchCounts counts;

    std::array<NodeId, kMaxSlots> bound{}; // by search position
    MatchAssignment assignment;            // by slot index

    bool is_canonical() const {
        for (const auto& sigma : p.automorphisms()) {
            for (std::uint8_t i = 0; i < assignment.count; ++i) {
                const NodeId image = assignment.ids[sigma[i]];
                const NodeId own = assignment.ids[i];
                if (image < own) return false;
                if (image > own) break;
            }
        }
        return true;
    }

    bool accepts(const PlanPosition& pp, int depth, NodeId v) const {
        if (!pp.roles.contains(plan.role_of[v])) return false;
        if (g.degree(v, Direction::Out) < pp.min_out_deg) return false;
        if (g.degree(v, Direction::In) < pp.min_in_deg) return false;
        for (int j = 0; j < depth; ++j)
            if (bound[j] == v) return false;
        if (p.mode() == MatchMode::Induced) {
            for (const auto& c : pp.checks) {
                if (g.has_edge(bound[c.pos], v) != c.fwd) return false;
                if (g.has_edge(v, bound[c.pos]) != c.bwd) return false;
            }
        } else {
            for (const auto& c : pp.checks) {
                if (c.fwd && !g.has_edge(bound[c.pos], v)) return false;
                if (c.bwd && !g.has_edge(v, bound[c.pos])) return false;
            }
        }
        return true;
    }

    void descend(int depth) {
        if (depth == p.slot_count()) {
            ++counts.raw;
            if (is_canonical()) {
                ++counts.deduped;
                if (sink) sink->on_match(assignment);
            }
            return;
        }
        const PlanPosition& pp = plan.positions[depth];
        if (pp.sources.empty()) {
            for (NodeId v = 0; v < g.node_count(); ++v) try_bind(pp, depth, v);
            return;
        }
        std::span<const NodeId> candidates = g.neighbors(bound[pp.sources[0].pos], pp.sources[0].dir);
        for (std::size_t s = 1; s < pp.sources.size(); ++s) {
            const auto alt = g.neighbors(bound[pp.sources[s].pos], pp.sources[s].dir);
            if (alt.size() < candidates.size()) candidates = alt;
        }
        for (NodeId v : candidates) try_bind(pp, depth, v);
    }

    void try_bind(const PlanPosition& pp, int depth, NodeId v) {
        if (!accepts(pp, depth, v)) return;
        bound[depth] = v;
        assignment.ids[pp.slot] = v;
        descend(depth + 1);
    }

    void run_anchor(NodeId a) {
        const PlanPosition& pp = plan.positions[0];
        bound[0] = a;
        assignment.count = static_cast<std::uint8_t>(p.slot_count());
        assignment.ids[pp.slot] = a;
        descend(1);
    }
};

} // namespace

MatchCounts enumerate_matches(const TypedDigraph& g, const MotifPattern& p,
                              const ScanOptions& options) {
    if (options.threads < 1) throw std::invalid_argument("threads must be >= 1");

    const SearchPlan plan = build_plan(g, p);
    if (options.progress) {
        options.progress->anchors_total.store(plan.anchor_candidates.size());
        options.progress->anchors_completed.store(0);
    }

    const std::size_t n_workers = std::max<std::size_t>(
        1, std::min<std::size_t>(options.threads, plan.anchor_candidates.size()));

    std::vector<Worker> workers;
    workers.reserve(n_workers);
    std::vector<std::unique_ptr<MatchSink>> worker_sinks(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
        if (options.sink) worker_sinks[w] = options.sink->make_worker();
        workers.push_back(Worker{g, p, plan, worker_sinks[w].get(), {}, {}, {}});
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> cancelled{false};
    std::vector<std::exception_ptr> errors(n_workers);

    auto drive = [&](std::size_t w) {
        Worker& worker = workers[w];
        while (!cancelled.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= plan.anchor_candidates.size()) break;
            try {
                worker.run_anchor(plan.anchor_candidates[i]);
            } catch (...) {
                errors[w] = std::current_exception();
                cancelled.store(true);
                break;
            }
            if (options.progress)
                options.progress->anchors_completed.fetch_add(1, std::memory_order_relaxed);
        }
    };

    if (n_workers == 1) {
        drive(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w) threads.emplace_back(drive, w);
        for (auto& t : threads) t.join();
    }

    for (const auto& error : errors)
        if (error) std::rethrow_exception(error);

    MatchCounts total;
    for (std::size_t w = 0; w < n_workers; ++w) {
        total += workers[w].counts;
        if (options.sink) options.sink->absorb(*worker_sinks[w]);
    }
    return total;
}

MatchCounts count_matches(const TypedDigraph& g, const MotifPattern& p, int threads) {
    ScanOptions options;
    options.threads = threads;
    return enumerate_matches(g, p, options);
}

std::unique_ptr<MatchSink> BoundedMatchCollector::make_worker() {
    return std::make_unique<BoundedMatchCollector>(limit_);
}

void BoundedMatchCollector::on_match(const MatchAssignment& m) {
    if (limit_ == 0) {
        truncated_ = true;
        return;
    }
    if (heap_.size() < limit_) {
        heap_.push_back(m);
        std::push_heap(heap_.begin(), heap_.end());
        return;
    }
    if (m < heap_.front()) {
        std::pop_heap(heap_.begin(), heap_.end());
        heap_.back() = m;
        std::push_heap(heap_.begin(), heap_.end());
    }
    truncated_ = true;
}

void BoundedMatchCollector::absorb(MatchSink& worker) {
    auto& other = dynamic_cast<BoundedMatchCollector&>(worker);
    truncated_ = truncated_ || other.truncated_;
    for (const auto& m : other.heap_) on_match(m);
    // on_match may have set truncated_ for drops caused purely by the merge;
    // that is correct, those matches exceeded the global limit too.
}

std::vector<MatchAssignment> BoundedMatchCollector::take_sorted() {
    std::vector<MatchAssignment> out = std::move(heap_);
    heap_.clear();
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace motifscan

#pragma once

#include <array>
#include <atomic>
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "motifscan/graph.hpp"
#include "motifscan/pattern.hpp"

namespace motifscan {

/// Injective slot -> node assignment, stored in pattern slot order.
struct MatchAssignment {
    std::array<NodeId, kMaxSlots> ids{};
    std::uint8_t count = 0;

    std::span<const NodeId> span() const { return {ids.data(), count}; }
    NodeId operator[](SlotIndex s) const { return ids[s]; }

    friend std::strong_ordering operator<=>(const MatchAssignment& a, const MatchAssignment& b) {
        for (std::uint8_t i = 0; i < a.count && i < b.count; ++i)
            if (auto c = a.ids[i] <=> b.ids[i]; c != 0) return c;
        return a.count <=> b.count;
    }
    friend bool operator==(const MatchAssignment& a, const MatchAssignment& b) {
        return (a <=> b) == 0;
    }
};

/// Lexicographically smallest image of m under the pattern's automorphism
/// group. Idempotent; the canonical representative of m's orbit.
MatchAssignment canonical_form(const MotifPattern& p, const MatchAssignment& m);

struct MatchCounts {
    std::uint64_t raw = 0;     // all valid assignments
    std::uint64_t deduped = 0; // automorphism orbits (canonical representatives)

    MatchCounts& operator+=(const MatchCounts& o) {
        raw += o.raw;
        deduped += o.deduped;
        return *this;
    }
};

/// Streaming consumer of canonical matches. The engine calls make_worker()
/// once per worker thread, feeds each worker from that thread only, then
/// folds results back with absorb() on the root (single-threaded).
/// Sinks that want a single serialized stream may instead return a
/// self-locking proxy from make_worker().
class MatchSink {
public:
    virtual ~MatchSink() = default;
    virtual std::unique_ptr<MatchSink> make_worker() = 0;
    virtual void on_match(const MatchAssignment& m) = 0;
    virtual void absorb(MatchSink& worker) = 0;
};

/// Engine progress, readable while a scan runs and after a sink failure.
/// One anchor candidate = one unit of work.
struct ScanProgress {
    std::atomic<std::uint64_t> anchors_total{0};
    std::atomic<std::uint64_t> anchors_completed{0};
};

struct ScanOptions {
    int threads = 1;
    MatchSink* sink = nullptr;       // optional
    ScanProgress* progress = nullptr; // optional
};

/// Enumerates every valid assignment of p in g, streaming one canonical
/// representative per automorphism orbit into the sink. Totals are identical
/// for any thread count. Work is partitioned across threads by candidate
/// nodes of the anchor slot (the most selective slot); per-worker memory is
/// O(pattern depth) plus sink state. A sink exception cancels the scan and
/// propagates after workers drain; progress then holds the partial anchor
/// count.
MatchCounts enumerate_matches(const TypedDigraph& g, const MotifPattern& p,
                              const ScanOptions& options = {});

/// Counting-only convenience wrapper.
MatchCounts count_matches(const TypedDigraph& g, const MotifPattern& p, int threads = 1);

/// Keeps the N lexicographically smallest canonical matches (deterministic
/// under any thread count, bounded memory). Used by --emit-matches.
class BoundedMatchCollector : public MatchSink {
public:
    explicit BoundedMatchCollector(std::size_t limit) : limit_(limit) {}

    std::unique_ptr<MatchSink> make_worker() override;
    void on_match(const MatchAssignment& m) override;
    void absorb(MatchSink& worker) override;

    /// Sorted ascending. Call after the scan completes.
    std::vector<MatchAssignment> take_sorted();
    bool truncated() const { return truncated_; }
    std::size_t limit() const { return limit_; }

private:
    std::size_t limit_;
    std::vector<MatchAssignment> heap_; // max-heap of the smallest `limit_` seen
    bool truncated_ = false;
};

} // namespace motifscan

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "motifscan/graph.hpp"
#include "motifscan/match.hpp"
#include "motifscan/pattern.hpp"

namespace motifscan {

/// A named set of pattern slots whose table columns are merged, e.g. the two
/// interchangeable input slots of a symmetric pattern ("inputs=E1+E3").
struct SlotGroup {
    std::string name;
    std::vector<SlotIndex> slots;
};

/// Parses "NAME=S1+S2+..." or "S1+S2+..." (the name then defaults to the
/// joined slot list). Slot names must exist in the pattern.
/// Throws std::runtime_error on unknown slots, duplicates, or empty input.
SlotGroup parse_slot_group(std::string_view text, const MotifPattern& p);

struct AggregateSpec {
    /// Drives both the type-frequency and the participation tables.
    std::vector<SlotGroup> groups;
    bool layer_signatures = false;

    /// One single-slot group per pattern slot, named after it.
    static AggregateSpec per_slot(const MotifPattern& p);
};

/// Streaming aggregation over canonical matches, built in one pass:
///   - type-frequency table: per group, how often each node type_name fills
///     a slot of the group. Column sum = |group| x deduped matches.
///   - participation table: per group, how often each individual node fills
///     a slot of the group. Same sum rule.
///   - layer-signature table: count per tuple of node layers in slot order.
///     Sum over signatures = deduped matches.
///
/// Worker sinks share an immutable context (interned type and layer ids) and
/// own private counters; absorb() is an elementwise add, so aggregation is
/// merge-associative and results are independent of thread count.
class AggregateSink : public MatchSink {
public:
    /// Validates the spec against the graph and pattern. Throws
    /// std::runtime_error on out-of-range slots, empty or duplicate groups,
    /// or a layer-signature request when no node carries a layer.
    AggregateSink(const TypedDigraph& g, const MotifPattern& p, AggregateSpec spec);

    std::unique_ptr<MatchSink> make_worker() override;
    void on_match(const MatchAssignment& m) override;
    void absorb(MatchSink& worker) override;

    /// Canonical matches seen (equals the scan's deduped count).
    std::uint64_t matches() const { return matches_; }

    /// CSV `group,type_name,count`: group blocks in spec order, rows within
    /// a block sorted by count descending then name ascending, zero rows
    /// omitted. Empty names render as '-'.
    std::string render_type_table() const;
    /// CSV `group,node,count`, same ordering rules (node = node name).
    std::string render_participation_table() const;
    /// CSV `signature,count`: layers in slot order joined with '/' ('-' for
    /// an empty layer), sorted by count descending then signature ascending.
    std::string render_layer_table() const;

private:
    struct Context;
    explicit AggregateSink(std::shared_ptr<const Context> ctx);
    static std::shared_ptr<const Context> build_context(const TypedDigraph& g,
                                                        const MotifPattern& p, AggregateSpec spec);

    std::shared_ptr<const Context> ctx_;
    std::uint64_t matches_ = 0;
    std::vector<std::vector<std::uint64_t>> type_counts_; // [group][type id]
    std::vector<std::vector<std::uint64_t>> node_counts_; // [group][node id]
    std::map<std::uint64_t, std::uint64_t> layer_counts_; // packed layer key
};

/// One scanned graph in a batch run.
struct BatchSummaryRow {
    std::string label;
    std::uint64_t nodes = 0;
    std::uint64_t connected_nodes = 0; // degree >= 1
    std::uint64_t edges = 0;
    MatchCounts counts;
    double wall_ms = 0.0;
    bool failed = false;
    std::string error;
};

/// Scans every graph directory with the same pattern. A graph that fails to
/// load or scan yields a row with failed=true and the batch continues.
std::vector<BatchSummaryRow> batch_scan(const std::vector<std::filesystem::path>& graph_dirs,
                                        const MotifPattern& p, int threads);

/// CSV `label,nodes,connected_nodes,edges,raw,motifs,status` in input order;
/// status is `ok` or `failed: <reason>` (commas in reasons replaced by ';').
std::string render_batch_summary(const std::vector<BatchSummaryRow>& rows);

/// CSV `label,connections,motifs` in input order; failed rows omitted.
/// Feed for motifs-vs-connections scatter plots.
std::string render_batch_scatter(const std::vector<BatchSummaryRow>& rows);

} // namespace motifscan

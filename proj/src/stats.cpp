#include "motifscan/stats.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>
#include <stdexcept>

#include "motifscan/graph_io.hpp"
#include "motifscan/util.hpp"

namespace motifscan {

SlotGroup parse_slot_group(std::string_view text, const MotifPattern& p) {
    SlotGroup group;
    std::string_view slots_part = text;
    if (auto eq = text.find('='); eq != std::string_view::npos) {
        group.name = std::string(trim(text.substr(0, eq)));
        slots_part = text.substr(eq + 1);
        if (group.name.empty()) throw std::runtime_error("slot group: empty name in '" + std::string(text) + "'");
    }
    std::string joined;
    for (std::string_view token_view : split_on(slots_part, '+')) {
        const std::string token(trim(token_view));
        const int slot = p.find_slot(token);
        if (slot < 0) throw std::runtime_error("slot group: unknown slot '" + token + "'");
        if (std::find(group.slots.begin(), group.slots.end(), static_cast<SlotIndex>(slot)) !=
            group.slots.end())
            throw std::runtime_error("slot group: duplicate slot '" + token + "'");
        group.slots.push_back(static_cast<SlotIndex>(slot));
        if (!joined.empty()) joined += '+';
        joined += token;
    }
    if (group.slots.empty()) throw std::runtime_error("slot group: no slots in '" + std::string(text) + "'");
    if (group.name.empty()) group.name = joined;
    return group;
}

AggregateSpec AggregateSpec::per_slot(const MotifPattern& p) {
    AggregateSpec spec;
    for (int s = 0; s < p.slot_count(); ++s)
        spec.groups.push_back({p.slot_name(static_cast<SlotIndex>(s)), {static_cast<SlotIndex>(s)}});
    return spec;
}

struct AggregateSink::Context {
    const TypedDigraph* g = nullptr;
    int slot_count = 0;
    AggregateSpec spec;
    std::vector<std::string> type_names;  // sorted distinct type_name values
    std::vector<std::uint32_t> type_of;   // node id -> index into type_names
    std::vector<std::string> layer_names; // sorted distinct layer values
    std::vector<std::uint8_t> layer_of;   // node id -> index into layer_names
};

namespace {

// Builds a sorted dictionary of the distinct values of `field` and the
// per-node index into it.
template <typename Field, typename Index>
void intern(const TypedDigraph& g, Field field, std::vector<std::string>& names,
            std::vector<Index>& of) {
    names.clear();
    for (const auto& meta : g.nodes()) names.push_back(field(meta));
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    of.reserve(g.node_count());
    for (const auto& meta : g.nodes()) {
        const auto it = std::lower_bound(names.begin(), names.end(), field(meta));
        of.push_back(static_cast<Index>(it - names.begin()));
    }
}

std::string display_name(const std::string& s) { return s.empty() ? "-" : s; }

// Emits one table block: rows with nonzero counts, sorted by count
// descending then name ascending.
void emit_block(std::ostringstream& out, const std::string& group,
                std::vector<std::pair<std::string, std::uint64_t>> rows) {
    rows.erase(std::remove_if(rows.begin(), rows.end(), [](const auto& r) { return r.second == 0; }),
               rows.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    for (const auto& [name, count] : rows) out << group << ',' << name << ',' << count << '\n';
}

} // namespace

std::shared_ptr<const AggregateSink::Context> AggregateSink::build_context(const TypedDigraph& g,
                                                                           const MotifPattern& p,
                                                                           AggregateSpec spec) {
    auto ctx = std::make_shared<Context>();
    ctx->g = &g;
    ctx->slot_count = p.slot_count();

    if (spec.groups.empty()) spec.groups = AggregateSpec::per_slot(p).groups;
    std::set<std::string_view> group_names;
    for (const auto& group : spec.groups) {
        if (group.slots.empty())
            throw std::runtime_error("aggregate: empty slot group '" + group.name + "'");
        if (!group_names.insert(group.name).second)
            throw std::runtime_error("aggregate: duplicate slot group '" + group.name + "'");
        for (SlotIndex s : group.slots)
            if (s >= p.slot_count())
                throw std::runtime_error("aggregate: slot index out of range in group '" +
                                         group.name + "'");
    }
    ctx->spec = std::move(spec);

    intern(g, [](const NodeMeta& m) { return m.type_name; }, ctx->type_names, ctx->type_of);
    if (ctx->spec.layer_signatures) {
        intern(g, [](const NodeMeta& m) { return m.layer; }, ctx->layer_names, ctx->layer_of);
        if (ctx->layer_names.size() == 1 && ctx->layer_names[0].empty())
            throw std::runtime_error("aggregate: layer signatures requested but no node has a layer");
        if (ctx->layer_names.size() > 255)
            throw std::runtime_error("aggregate: too many distinct layers");
    }
    return ctx;
}

AggregateSink::AggregateSink(const TypedDigraph& g, const MotifPattern& p, AggregateSpec spec)
    : AggregateSink(build_context(g, p, std::move(spec))) {}

AggregateSink::AggregateSink(std::shared_ptr<const Context> ctx) : ctx_(std::move(ctx)) {
    type_counts_.assign(ctx_->spec.groups.size(),
                        std::vector<std::uint64_t>(ctx_->type_names.size(), 0));
    node_counts_.assign(ctx_->spec.groups.size(),
                        std::vector<std::uint64_t>(ctx_->g->node_count(), 0));
}

std::unique_ptr<MatchSink> AggregateSink::make_worker() {
    return std::unique_ptr<MatchSink>(new AggregateSink(ctx_));
}

void AggregateSink::on_match(const MatchAssignment& m) {
    ++matches_;
    for (std::size_t gi = 0; gi < ctx_->spec.groups.size(); ++gi) {
        for (SlotIndex s : ctx_->spec.groups[gi].slots) {
            const NodeId v = m[s];
            ++type_counts_[gi][ctx_->type_of[v]];
            ++node_counts_[gi][v];
        }
    }
    if (ctx_->spec.layer_signatures) {
        std::uint64_t key = 0;
        for (int s = 0; s < ctx_->slot_count; ++s)
            key = key << 8 | ctx_->layer_of[m.ids[s]];
        ++layer_counts_[key];
    }
}

void AggregateSink::absorb(MatchSink& worker) {
    auto& other = dynamic_cast<AggregateSink&>(worker);
    matches_ += other.matches_;
    for (std::size_t gi = 0; gi < type_counts_.size(); ++gi) {
        for (std::size_t i = 0; i < type_counts_[gi].size(); ++i)
            type_counts_[gi][i] += other.type_counts_[gi][i];
        for (std::size_t i = 0; i < node_counts_[gi].size(); ++i)
            node_counts_[gi][i] += other.node_counts_[gi][i];
    }
    for (const auto& [key, count] : other.layer_counts_) layer_counts_[key] += count;
}

std::string AggregateSink::render_type_table() const {
    std::ostringstream out;
    out << "group,type_name,count\n";
    for (std::size_t gi = 0; gi < ctx_->spec.groups.size(); ++gi) {
        std::vector<std::pair<std::string, std::uint64_t>> rows;
        for (std::size_t t = 0; t < ctx_->type_names.size(); ++t)
            rows.emplace_back(display_name(ctx_->type_names[t]), type_counts_[gi][t]);
        emit_block(out, ctx_->spec.groups[gi].name, std::move(rows));
    }
    return out.str();
}

std::string AggregateSink::render_participation_table() const {
    std::ostringstream out;
    out << "group,node,count\n";
    for (std::size_t gi = 0; gi < ctx_->spec.groups.size(); ++gi) {
        std::vector<std::pair<std::string, std::uint64_t>> rows;
        for (NodeId v = 0; v < ctx_->g->node_count(); ++v)
            rows.emplace_back(display_name(ctx_->g->node(v).name), node_counts_[gi][v]);
        emit_block(out, ctx_->spec.groups[gi].name, std::move(rows));
    }
    return out.str();
}

std::string AggregateSink::render_layer_table() const {
    std::vector<std::pair<std::string, std::uint64_t>> rows;
    for (const auto& [key, count] : layer_counts_) {
        std::string sig;
        for (int s = 0; s < ctx_->slot_count; ++s) {
            if (s) sig += '/';
            const auto id = static_cast<std::uint8_t>(key >> (8 * (ctx_->slot_count - 1 - s)));
            sig += display_name(ctx_->layer_names[id]);
        }
        rows.emplace_back(std::move(sig), count);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::ostringstream out;
    out << "signature,count\n";
    for (const auto& [sig, count] : rows) out << sig << ',' << count << '\n';
    return out.str();
}

std::vector<BatchSummaryRow> batch_scan(const std::vector<std::filesystem::path>& graph_dirs,
                                        const MotifPattern& p, int threads) {
    std::vector<BatchSummaryRow> rows;
    rows.reserve(graph_dirs.size());
    for (const auto& dir : graph_dirs) {
        BatchSummaryRow row;
        row.label = dir.filename().empty() ? dir.string() : dir.filename().string();
        const auto start = std::chrono::steady_clock::now();
        try {
            const TypedDigraph g = load_graph_dir(dir);
            row.nodes = g.node_count();
            row.connected_nodes = g.connected_node_count();
            row.edges = g.edge_count();
            row.counts = count_matches(g, p, threads);
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
        row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                start)
                          .count();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_batch_summary(const std::vector<BatchSummaryRow>& rows) {
    std::ostringstream out;
    out << "label,nodes,connected_nodes,edges,raw,motifs,status\n";
    for (const auto& row : rows) {
        std::string status = "ok";
        if (row.failed) {
            status = "failed: " + row.error;
            std::replace(status.begin(), status.end(), ',', ';');
            std::replace(status.begin(), status.end(), '\n', ' ');
        }
        out << row.label << ',' << row.nodes << ',' << row.connected_nodes << ',' << row.edges
            << ',' << row.counts.raw << ',' << row.counts.deduped << ',' << status << '\n';
    }
    return out.str();
}

std::string render_batch_scatter(const std::vector<BatchSummaryRow>& rows) {
    std::ostringstream out;
    out << "label,connections,motifs\n";
    for (const auto& row : rows) {
        if (row.failed) continue;
        out << row.label << ',' << row.edges << ',' << row.counts.deduped << '\n';
    }
    return out.str();
}

} // namespace motifscan

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <stdexcept>

#include "motifscan/match.hpp"
#include "motifscan/oracle.hpp"
#include "motifscan/pattern.hpp"
#include "support/random_graph.hpp"

using namespace motifscan;
using testsupport::random_graph;

namespace {

MatchAssignment assignment(std::initializer_list<NodeId> ids) {
    MatchAssignment m;
    for (NodeId v : ids) m.ids[m.count++] = v;
    return m;
}

/// A graph whose nodes and edges mirror the pattern one-to-one, with each
/// node given some role its slot accepts.
TypedDigraph graph_of_pattern(const MotifPattern& p) {
    std::vector<NodeMeta> nodes;
    for (int s = 0; s < p.slot_count(); ++s) {
        const RoleSet roles = p.slot_roles(static_cast<SlotIndex>(s));
        NodeRole role = NodeRole::Excitatory;
        for (NodeRole r : {NodeRole::Excitatory, NodeRole::Inhibitory, NodeRole::Other})
            if (roles.contains(r)) {
                role = r;
                break;
            }
        nodes.push_back({static_cast<NodeId>(s), p.slot_name(static_cast<SlotIndex>(s)), role,
                         "", ""});
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto& e : p.edges()) edges.emplace_back(e.first, e.second);
    return TypedDigraph::build(std::move(nodes), std::move(edges));
}

const std::vector<BuiltinPattern> kAllLayouts = {BuiltinPattern::StrictXor,
                                                 BuiltinPattern::ExtendedFullFeedback,
                                                 BuiltinPattern::ExtendedAsymFeedback};
const std::vector<RoleProfile> kAllProfiles = {RoleProfile::Unconstrained, RoleProfile::True,
                                               RoleProfile::TrueWithOther};

/// Sink that fails after a fixed number of matches, for cancellation tests.
class ExplodingSink : public MatchSink {
public:
    explicit ExplodingSink(std::uint64_t budget) : budget_(budget) {}
    std::unique_ptr<MatchSink> make_worker() override {
        return std::make_unique<ExplodingSink>(budget_);
    }
    void on_match(const MatchAssignment&) override {
        if (seen_++ >= budget_) throw std::runtime_error("sink full");
    }
    void absorb(MatchSink&) override {}

private:
    std::uint64_t budget_;
    std::uint64_t seen_ = 0;
};

} // namespace

TEST_CASE("canonical form picks the smallest orbit member") {
    const auto p = builtin_pattern(BuiltinPattern::StrictXor, RoleProfile::Unconstrained);
    REQUIRE(p.automorphisms().size() == 2);
    const auto m = assignment({5, 2, 3, 1, 9, 7});
    const auto canon = canonical_form(p, m);
    CHECK(canon == assignment({3, 1, 5, 2, 9, 7}));
    CHECK(canonical_form(p, canon) == canon); // idempotent
    CHECK(canonical_form(p, assignment({3, 1, 5, 2, 9, 7})) == canon); // orbit-invariant
}

TEST_CASE("canonical form is identity for a trivial group") {
    const auto p = builtin_pattern(BuiltinPattern::ExtendedAsymFeedback, RoleProfile::True);
    REQUIRE(p.automorphisms().size() == 1);
    const auto m = assignment({9, 4, 1, 0, 8, 3});
    CHECK(canonical_form(p, m) == m);
}

TEST_CASE("the pattern matches itself exactly once per orbit") {
    for (auto id : kAllLayouts) {
        const auto p = builtin_pattern(id, RoleProfile::True);
        const auto g = graph_of_pattern(p);
        const auto counts = count_matches(g, p);
        CHECK(counts.raw == p.automorphisms().size());
        CHECK(counts.deduped == 1);
    }
}

TEST_CASE("an extra edge breaks induced but not monomorphic matching") {
    const auto p = builtin_pattern(BuiltinPattern::StrictXor, RoleProfile::Unconstrained);
    auto nodes = graph_of_pattern(p).nodes();
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto& e : p.edges()) edges.emplace_back(e.first, e.second);
    const int e1 = p.find_slot("E1");
    const int e4 = p.find_slot("E4");
    REQUIRE(!p.has_edge(static_cast<SlotIndex>(e1), static_cast<SlotIndex>(e4)));
    edges.emplace_back(static_cast<NodeId>(e1), static_cast<NodeId>(e4));
    const auto g = TypedDigraph::build(std::move(nodes), std::move(edges));

    CHECK(count_matches(g, p).deduped == 0);
    CHECK(count_matches(g, p.with_mode(MatchMode::Monomorphic)).deduped == 1);
}

TEST_CASE("no matches in an empty or too-small graph") {
    const auto p = builtin_pattern(BuiltinPattern::StrictXor, RoleProfile::Unconstrained);
    const auto tiny = random_graph(4, 0.5, 3);
    CHECK(count_matches(tiny, p).raw == 0);
    const auto empty = TypedDigraph::build(
        {{0, "a", NodeRole::Excitatory, "", ""}, {1, "b", NodeRole::Excitatory, "", ""}}, {});
    CHECK(count_matches(empty, p).raw == 0);
}

TEST_CASE("engine agrees with the brute-force reference") {
    for (std::uint64_t seed : {11u, 12u}) {
        const auto g = random_graph(14, 0.25, seed);
        for (auto id : kAllLayouts)
            for (auto profile : kAllProfiles)
                for (auto mode : {MatchMode::Induced, MatchMode::Monomorphic}) {
                    const auto p = builtin_pattern(id, profile, mode);
                    const auto expected = brute_force(g, p);
                    const auto counts = count_matches(g, p);
                    CHECK(counts.raw == expected.raw);
                    CHECK(counts.deduped == expected.deduped);
                }
    }
}

TEST_CASE("emitted matches equal the brute-force assignment list") {
    const auto g = random_graph(14, 0.3, 21);
    const auto p = builtin_pattern(BuiltinPattern::StrictXor, RoleProfile::Unconstrained,
                                   MatchMode::Monomorphic);
    const auto expected = brute_force(g, p);
    BoundedMatchCollector sink(1u << 20);
    ScanOptions options;
    options.sink = &sink;
    enumerate_matches(g, p, options);
    CHECK(sink.take_sorted() == expected.assignments);
}

TEST_CASE("raw count is deduped times the automorphism group order") {
    const auto g = random_graph(18, 0.25, 5);
    for (auto id : kAllLayouts) {
        const auto p = builtin_pattern(id, RoleProfile::Unconstrained);
        const auto counts = count_matches(g, p);
        CHECK(counts.raw == counts.deduped * p.automorphisms().size());
    }
}

TEST_CASE("monomorphic matches are a superset of induced matches") {
    const auto g = random_graph(16, 0.3, 9);
    for (auto id : kAllLayouts) {
        const auto induced = count_matches(g, builtin_pattern(id, RoleProfile::Unconstrained,
                                                              MatchMode::Induced));
        const auto mono = count_matches(g, builtin_pattern(id, RoleProfile::Unconstrained,
                                                           MatchMode::Monomorphic));
        CHECK(mono.deduped >= induced.deduped);
    }
}

TEST_CASE("widening role constraints never loses matches") {
    const auto g = random_graph(20, 0.3, 13);
    for (auto id : kAllLayouts) {
        const auto narrow = count_matches(g, builtin_pattern(id, RoleProfile::True));
        const auto wide = count_matches(g, builtin_pattern(id, RoleProfile::TrueWithOther));
        const auto open = count_matches(g, builtin_pattern(id, RoleProfile::Unconstrained));
        CHECK(narrow.deduped <= wide.deduped);
        CHECK(wide.deduped <= open.deduped);
    }
}

TEST_CASE("adding an edge never loses monomorphic matches") {
    const auto base = random_graph(15, 0.25, 17);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < base.node_count(); ++u)
        for (NodeId v : base.neighbors(u, Direction::Out)) edges.emplace_back(u, v);
    auto grown_edges = edges;
    for (NodeId u = 0; u < base.node_count() && grown_edges.size() < edges.size() + 5; ++u)
        for (NodeId v = 0; v < base.node_count(); ++v)
            if (u != v && !base.has_edge(u, v) && grown_edges.size() < edges.size() + 5)
                grown_edges.emplace_back(u, v);
    const auto grown = TypedDigraph::build(base.nodes(), std::move(grown_edges));
    for (auto id : kAllLayouts) {
        const auto p = builtin_pattern(id, RoleProfile::Unconstrained, MatchMode::Monomorphic);
        CHECK(count_matches(grown, p).deduped >= count_matches(base, p).deduped);
    }
}

TEST_CASE("counts and emitted matches are thread-count independent") {
    const auto g = random_graph(60, 0.2, 31);
    for (auto id : kAllLayouts) {
        const auto p = builtin_pattern(id, RoleProfile::Unconstrained);
        const auto baseline = count_matches(g, p, 1);
        BoundedMatchCollector baseline_sink(500);
        {
            ScanOptions options;
            options.sink = &baseline_sink;
            enumerate_matches(g, p, options);
        }
        const auto baseline_matches = baseline_sink.take_sorted();
        for (int threads : {2, 8}) {
            const auto counts = count_matches(g, p, threads);
            CHECK(counts.raw == baseline.raw);
            CHECK(counts.deduped == baseline.deduped);
            BoundedMatchCollector sink(500);
            ScanOptions options;
            options.threads = threads;
            options.sink = &sink;
            enumerate_matches(g, p, options);
            CHECK(sink.take_sorted() == baseline_matches);
        }
    }
}

TEST_CASE("bounded collector keeps the smallest matches") {
    const auto g = random_graph(30, 0.3, 41);
    const auto p = builtin_pattern(BuiltinPattern::StrictXor, RoleProfile::Unconstrained,
                                   MatchMode::Monomorphic);
    BoundedMatchCollector full(1u << 22);
    {
        ScanOptions options;
        options.sink = &full;
        enumerate_matches(g, p, options);
    }
    const auto all = full.take_sorted();
    REQUIRE(all.size() > 40);
    CHECK_FALSE(full.truncated());

    for (int threads : {1, 4}) {
        BoundedMatchCollector bounded(40);
        ScanOptions options;
        options.threads = threads;
        options.sink = &bounded;
        enumerate_matches(g, p, options);
        CHECK(bounded.truncated());
        const auto kept = bounded.take_sorted();
        REQUIRE(kept.size() == 40);
        CHECK(std::equal(kept.begin(), kept.end(), all.begin()));
    }

    BoundedMatchCollector none(0);
    ScanOptions options;
    options.sink = &none;
    enumerate_matches(g, p, options);
    CHECK(none.take_sorted().empty());
    CHECK(none.truncated());
}

TEST_CASE("a failing sink cancels the scan and reports progress") {
    const auto g = random_graph(30, 0.3, 41);
    const auto p = builtin_pattern(BuiltinPattern::StrictXor, RoleProfile::Unconstrained,
                                   MatchMode::Monomorphic);
    for (int threads : {1, 4}) {
        ExplodingSink sink(5);
        ScanProgress progress;
        ScanOptions options;
        options.threads = threads;
        options.sink = &sink;
        options.progress = &progress;
        CHECK_THROWS_WITH_AS(enumerate_matches(g, p, options), "sink full", std::runtime_error);
        CHECK(progress.anchors_total.load() > 0);
        CHECK(progress.anchors_completed.load() <= progress.anchors_total.load());
    }
}

TEST_CASE("invalid thread counts are rejected") {
    const auto g = random_graph(8, 0.3, 2);
    const auto p = builtin_pattern(BuiltinPattern::StrictXor, RoleProfile::Unconstrained);
    CHECK_THROWS_AS(count_matches(g, p, 0), std::invalid_argument);
    CHECK_THROWS_AS(count_matches(g, p, -3), std::invalid_argument);
}

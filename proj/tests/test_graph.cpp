#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <stdexcept>

#include "motifscan/graph.hpp"
#include "support/random_graph.hpp"

using namespace motifscan;
using testsupport::random_graph;

namespace {

std::vector<NodeMeta> three_nodes() {
    return {{0, "a", NodeRole::Excitatory, "e4Rorb", "L4"},
            {1, "b", NodeRole::Inhibitory, "i5Pvalb", "L5"},
            {2, "c", NodeRole::Other, "glia", ""}};
}

} // namespace

TEST_CASE("roles round-trip through letters") {
    for (NodeRole r : {NodeRole::Excitatory, NodeRole::Inhibitory, NodeRole::Other})
        CHECK(role_from_letter(role_letter(r)) == r);
    CHECK(role_from_letter('e') == NodeRole::Excitatory);
    CHECK(role_from_letter('I') == NodeRole::Inhibitory);
    CHECK_THROWS_AS(role_from_letter('x'), std::runtime_error);
}

TEST_CASE("build keeps counts and sorted adjacency") {
    auto g = TypedDigraph::build(three_nodes(), {{0, 1}, {1, 2}, {2, 0}, {0, 2}});
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 4);
    CHECK(g.self_loop_count() == 0);
    CHECK(g.duplicate_edges_collapsed() == 0);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(0, 2));
    CHECK_FALSE(g.has_edge(1, 0));
    const auto out0 = g.neighbors(0, Direction::Out);
    CHECK(std::vector<NodeId>(out0.begin(), out0.end()) == std::vector<NodeId>{1, 2});
    const auto in2 = g.neighbors(2, Direction::In);
    CHECK(std::vector<NodeId>(in2.begin(), in2.end()) == std::vector<NodeId>{0, 1});
    CHECK(g.node(1).name == "b");
    CHECK(g.node(1).role == NodeRole::Inhibitory);
}

TEST_CASE("duplicate edges collapse and self-loops are counted") {
    auto g = TypedDigraph::build(three_nodes(), {{0, 1}, {0, 1}, {0, 1}, {1, 1}, {2, 2}});
    CHECK(g.edge_count() == 3); // 0->1, 1->1, 2->2
    CHECK(g.duplicate_edges_collapsed() == 2);
    CHECK(g.self_loop_count() == 2);
    CHECK(g.has_edge(1, 1));
}

TEST_CASE("connected node count ignores isolated nodes") {
    auto g = TypedDigraph::build(three_nodes(), {{0, 1}});
    CHECK(g.connected_node_count() == 2);
    auto empty = TypedDigraph::build(three_nodes(), {});
    CHECK(empty.connected_node_count() == 0);
}

TEST_CASE("build rejects malformed input") {
    CHECK_THROWS_AS(TypedDigraph::build({{1, "a", NodeRole::Other, "", ""}}, {}),
                    std::runtime_error); // ids must start at 0
    CHECK_THROWS_AS(TypedDigraph::build({{0, "a", NodeRole::Other, "", ""},
                                         {1, "a", NodeRole::Other, "", ""}},
                                        {}),
                    std::runtime_error); // duplicate name
    CHECK_THROWS_AS(TypedDigraph::build(three_nodes(), {{0, 3}}), std::runtime_error);
}

TEST_CASE("accessors reject out-of-range ids") {
    auto g = TypedDigraph::build(three_nodes(), {{0, 1}});
    CHECK_THROWS_AS(g.node(3), std::out_of_range);
    CHECK_THROWS_AS(g.has_edge(0, 3), std::out_of_range);
    CHECK_THROWS_AS(g.neighbors(3, Direction::Out), std::out_of_range);
}

TEST_CASE("out and in adjacency describe the same edge set") {
    auto g = random_graph(40, 0.15, 7);
    std::uint64_t out_total = 0, in_total = 0;
    for (NodeId u = 0; u < 40; ++u) {
        const auto out = g.neighbors(u, Direction::Out);
        CHECK(std::is_sorted(out.begin(), out.end()));
        out_total += out.size();
        for (NodeId v : out) {
            CHECK(g.has_edge(u, v));
            const auto in = g.neighbors(v, Direction::In);
            CHECK(std::binary_search(in.begin(), in.end(), u));
        }
        in_total += g.neighbors(u, Direction::In).size();
    }
    CHECK(out_total == g.edge_count());
    CHECK(in_total == g.edge_count());
}

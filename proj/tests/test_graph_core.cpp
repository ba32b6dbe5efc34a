#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "fairim/errors.hpp"
#include "fairim/generators.hpp"
#include "fairim/graph.hpp"
#include "fairim/io.hpp"
#include "fairim/rng.hpp"

using namespace fairim;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/fairim_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("graph invariants") {
    DirectedWeightedGraph g(3, {{0, 1, 0.5}, {1, 2, 1.0}, {2, 0, 0.0}});
    CHECK(g.num_nodes() == 3);
    CHECK(g.num_arcs() == 3);
    CHECK(g.out_degree(0) == 1);
    CHECK(g.in_degree(0) == 1);

    CHECK_THROWS_AS(DirectedWeightedGraph(2, {{0, 1, 1.5}}), ParameterError);
    CHECK_THROWS_AS(DirectedWeightedGraph(2, {{0, 1, -0.1}}), ParameterError);
    CHECK_THROWS_AS(DirectedWeightedGraph(2, {{0, 3, 0.5}}), ParameterError);
    CHECK_THROWS_AS(DirectedWeightedGraph(2, {{0, 1, 0.5}, {0, 1, 0.5}}), ParameterError);
    // self-loops are not rejected
    CHECK_NOTHROW(DirectedWeightedGraph(2, {{0, 0, 0.5}}));
}

TEST_CASE("adjacency round-trips through the arc list") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::BarabasiAlbert;
    spec.n = 30;
    spec.attachment = 2;
    spec.weights = WeightRule::uniform(0.0, 0.4);
    spec.rng_seed = 7;
    DirectedWeightedGraph g = generate_graph(spec);

    DirectedWeightedGraph rebuilt(g.num_nodes(), g.arcs());
    REQUIRE(rebuilt.num_arcs() == g.num_arcs());
    for (int v = 0; v < g.num_nodes(); ++v) {
        CHECK(rebuilt.out_arcs(v) == g.out_arcs(v));
        CHECK(rebuilt.in_arcs(v) == g.in_arcs(v));
    }
    for (const Arc& a : g.arcs()) {
        CHECK(a.weight >= 0.0);
        CHECK(a.weight <= 0.4);
    }
}

TEST_CASE("community structure invariants") {
    CHECK_THROWS_AS(CommunityStructure({}, 3), ParameterError);
    CHECK_THROWS_AS(CommunityStructure({{}}, 3), ParameterError);
    CHECK_THROWS_AS(CommunityStructure({{3}}, 3), ParameterError);
    CommunityStructure cs({{0, 1}, {1, 2}}, 3);
    CHECK(cs.size() == 2);
    CHECK(cs.member_union() == std::vector<int>{0, 1, 2});
}

TEST_CASE("core-periphery generator matches the motivating parameters") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::CorePeriphery;
    spec.core_size = 50;
    spec.periphery_size = 150;
    spec.core_p = 0.5;
    spec.periphery_p = 0.1;
    spec.inter_q = 0.1;
    spec.weights = WeightRule::constant(0.05);
    spec.rng_seed = 11;
    DirectedWeightedGraph g = generate_graph(spec);
    CHECK(g.num_nodes() == 200);
    for (const Arc& a : g.arcs()) CHECK(a.weight == 0.05);
    // arcs come in opposing pairs
    std::set<std::pair<int, int>> arcs;
    for (const Arc& a : g.arcs()) arcs.insert({a.src, a.dst});
    for (const Arc& a : g.arcs()) CHECK(arcs.count({a.dst, a.src}) == 1);
}

TEST_CASE("block-stochastic with p=1 yields a complete directed block") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::BlockStochastic;
    spec.block_sizes = {3};
    spec.intra_p = 1.0;
    spec.inter_q = 0.0;
    spec.weights = WeightRule::constant(1.0);
    spec.rng_seed = 1;
    DirectedWeightedGraph g = generate_graph(spec);
    CHECK(g.num_nodes() == 3);
    CHECK(g.num_arcs() == 6);
}

TEST_CASE("generators are reproducible for a fixed seed") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::BarabasiAlbert;
    spec.n = 40;
    spec.attachment = 2;
    spec.weights = WeightRule::uniform(0.0, 0.4);
    spec.rng_seed = 99;
    DirectedWeightedGraph a = generate_graph(spec);
    DirectedWeightedGraph b = generate_graph(spec);
    REQUIRE(a.num_arcs() == b.num_arcs());
    for (int i = 0; i < a.num_arcs(); ++i) {
        CHECK(a.arc(i).src == b.arc(i).src);
        CHECK(a.arc(i).dst == b.arc(i).dst);
        CHECK(a.arc(i).weight == b.arc(i).weight);
    }
    // every new node adds `attachment` undirected edges
    CHECK(a.num_arcs() == 2 * 2 * (40 - 2));

    spec.rng_seed = 100;
    DirectedWeightedGraph c = generate_graph(spec);
    bool differs = c.num_arcs() != a.num_arcs();
    for (int i = 0; !differs && i < a.num_arcs(); ++i)
        differs = a.arc(i).src != c.arc(i).src || a.arc(i).dst != c.arc(i).dst;
    CHECK(differs);
}

TEST_CASE("invalid generator parameters are rejected") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::BlockStochastic;
    spec.block_sizes = {4};
    spec.intra_p = 1.2;
    CHECK_THROWS_AS(generate_graph(spec), ParameterError);
    CHECK_THROWS_AS(WeightRule::uniform(-0.1, 0.5), ParameterError);
    CHECK_THROWS_AS(WeightRule::uniform(0.5, 0.2), ParameterError);
}

TEST_CASE("singleton communities") {
    DirectedWeightedGraph g(5, {});
    CommunityRule rule;
    rule.kind = CommunityRule::Kind::Singleton;
    CommunityStructure cs = generate_communities(g, rule, 0);
    REQUIRE(cs.size() == 5);
    for (int c = 0; c < 5; ++c) CHECK(cs.community(c) == std::vector<int>{c});
}

TEST_CASE("bfs community structure partitions into m blocks of size n/m") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::BarabasiAlbert;
    spec.n = 50;
    spec.attachment = 2;
    spec.weights = WeightRule::constant(0.2);
    spec.rng_seed = 3;
    DirectedWeightedGraph g = generate_graph(spec);

    CommunityRule rule;
    rule.kind = CommunityRule::Kind::Bfs;
    rule.m = 7;
    CommunityStructure cs = generate_communities(g, rule, 17);
    REQUIRE(cs.size() == 7);
    std::set<int> seen;
    for (int c = 0; c < cs.size(); ++c) {
        CHECK(static_cast<int>(cs.community(c).size()) == 50 / 7);
        for (int v : cs.community(c)) CHECK(seen.insert(v).second); // disjoint
    }

    // m = 1 on a connected graph covers everything
    rule.m = 1;
    CommunityStructure whole = generate_communities(g, rule, 17);
    REQUIRE(whole.size() == 1);
    CHECK(static_cast<int>(whole.community(0).size()) == 50);

    rule.m = 51;
    CHECK_THROWS_AS(generate_communities(g, rule, 17), ParameterError);
}

TEST_CASE("random imbalanced communities use the given sizes") {
    DirectedWeightedGraph g(200, {});
    CommunityRule rule;
    rule.kind = CommunityRule::Kind::RandomImbalanced;
    rule.sizes = {80, 60, 40, 20};
    CommunityStructure cs = generate_communities(g, rule, 5);
    REQUIRE(cs.size() == 4);
    CHECK(cs.community(0).size() == 80);
    CHECK(cs.community(1).size() == 60);
    CHECK(cs.community(2).size() == 40);
    CHECK(cs.community(3).size() == 20);

    rule.sizes = {150, 100};
    CHECK_THROWS_AS(generate_communities(g, rule, 5), ParameterError);
}

TEST_CASE("edge list loading") {
    SUBCASE("undirected with constant weights") {
        std::string path = write_temp("edges_a.txt", "0 1\n1 2\n");
        EdgeListOptions opts;
        opts.undirected = true;
        opts.missing_weights = WeightRule::constant(0.2);
        LoadedGraph lg = load_edge_list(path, opts);
        CHECK(lg.graph.num_nodes() == 3);
        CHECK(lg.graph.num_arcs() == 4);
        for (const Arc& a : lg.graph.arcs()) CHECK(a.weight == 0.2);
    }
    SUBCASE("comments and dense remapping") {
        std::string path = write_temp("edges_b.txt", "# comment\n5 9\n");
        LoadedGraph lg = load_edge_list(path, {});
        CHECK(lg.graph.num_nodes() == 2);
        CHECK(lg.original_ids == std::vector<std::int64_t>{5, 9});
        CHECK(lg.graph.arc(0).src == 0);
        CHECK(lg.graph.arc(0).dst == 1);
    }
    SUBCASE("explicit weights and malformed lines") {
        std::string path = write_temp("edges_c.txt", "0 1 0.7\n");
        LoadedGraph lg = load_edge_list(path, {});
        CHECK(lg.graph.arc(0).weight == 0.7);

        std::string bad = write_temp("edges_d.txt", "0 1\nnot numbers\n");
        CHECK_THROWS_WITH_AS(load_edge_list(bad, {}), doctest::Contains(":2:"), ParseError);
        CHECK_THROWS_AS(load_edge_list("/tmp/fairim_does_not_exist.txt", {}), IoError);
    }
    SUBCASE("largest weakly connected component") {
        std::string path = write_temp("edges_e.txt", "0 1\n1 2\n5 6\n");
        EdgeListOptions opts;
        opts.largest_weakly_connected_component = true;
        LoadedGraph lg = load_edge_list(path, opts);
        CHECK(lg.graph.num_nodes() == 3);
        CHECK(lg.graph.num_arcs() == 2);
        CHECK(lg.original_ids == std::vector<std::int64_t>{0, 1, 2});
    }
}

TEST_CASE("community file loading") {
    std::string edges = write_temp("edges_f.txt", "0 1\n1 2\n");
    LoadedGraph lg = load_edge_list(edges, {});

    SUBCASE("community-first order") {
        std::string path = write_temp("comm_a.txt", "0 0\n0 1\n1 2\n");
        CommunityStructure cs =
            load_communities(path, lg, CommunityColumnOrder::CommunityFirst);
        REQUIRE(cs.size() == 2);
        CHECK(cs.community(0) == std::vector<int>{0, 1});
        CHECK(cs.community(1) == std::vector<int>{2});
    }
    SUBCASE("all nodes in one community id") {
        std::string path = write_temp("comm_b.txt", "0 7\n1 7\n2 7\n");
        CommunityStructure cs = load_communities(path, lg, CommunityColumnOrder::NodeFirst);
        CHECK(cs.size() == 1);
        CHECK(cs.community(0).size() == 3);
    }
    SUBCASE("out-of-range node id") {
        std::string path = write_temp("comm_c.txt", "0 1\n0 12\n");
        CHECK_THROWS_AS(load_communities(path, lg, CommunityColumnOrder::CommunityFirst),
                        ParseError);
        CommunityStructure cs =
            load_communities(path, lg, CommunityColumnOrder::CommunityFirst, true);
        CHECK(cs.size() == 1); // the unknown id is skipped, its community kept non-empty
        CHECK(cs.community(0) == std::vector<int>{1});
    }
}

TEST_CASE("instance JSON round-trip") {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::BarabasiAlbert;
    spec.n = 20;
    spec.attachment = 2;
    spec.weights = WeightRule::uniform(0.1, 0.3);
    spec.rng_seed = 21;
    DirectedWeightedGraph g = generate_graph(spec);
    CommunityRule rule;
    rule.kind = CommunityRule::Kind::RandomImbalanced;
    rule.sizes = {8, 6, 4, 2};
    CommunityStructure cs = generate_communities(g, rule, 5);

    std::string text = instance_to_json(g, &cs);
    DirectedWeightedGraph g2 = graph_from_json(text);
    auto cs2 = communities_from_json(text, g2.num_nodes());
    REQUIRE(cs2.has_value());
    REQUIRE(g2.num_arcs() == g.num_arcs());
    for (int i = 0; i < g.num_arcs(); ++i) {
        CHECK(g2.arc(i).src == g.arc(i).src);
        CHECK(g2.arc(i).dst == g.arc(i).dst);
        CHECK(g2.arc(i).weight == g.arc(i).weight);
    }
    REQUIRE(cs2->size() == cs.size());
    for (int c = 0; c < cs.size(); ++c) CHECK(cs2->community(c) == cs.community(c));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <set>

#include "fairim/brute_force.hpp"
#include "fairim/diffusion.hpp"
#include "fairim/errors.hpp"
#include "fairim/rng.hpp"
#include "fairim/strategies.hpp"
#include "test_helpers.hpp"

using namespace fairim;
using testutil::random_graph;
using testutil::random_subset;

namespace {

DirectedWeightedGraph two_node(double w) {
    return DirectedWeightedGraph(2, {{0, 1, w}, {1, 0, w}});
}

double weighted_value(const LiveEdgeSample& sample, const std::vector<double>& weights,
                      const std::vector<int>& set) {
    SigmaVector sv = sigma_set(sample, set);
    double val = 0.0;
    for (int v = 0; v < sample.num_nodes(); ++v) val += weights[v] * sv.per_node[v];
    return val;
}

} // namespace

TEST_CASE("required_samples evaluates the sampling lemma formula") {
    CHECK(required_samples({0.1, 0.1}, 100) == 10691);
    CHECK(required_samples({0.5, 0.25}, 1) == 10);
    CHECK(required_samples({0.1, 0.1, 1.0, 500}, 100) == 500); // explicit override

    CHECK_THROWS_AS(required_samples({1.0, 0.1}, 10), ParameterError);
    CHECK_THROWS_AS(required_samples({0.0, 0.1}, 10), ParameterError);
    CHECK_THROWS_AS(required_samples({0.1, 0.5}, 10), ParameterError);
    CHECK_THROWS_AS(required_samples({0.1, 0.1}, 0), ParameterError);
}

TEST_CASE("probability-one arcs make every live-edge graph the full graph") {
    DirectedWeightedGraph g(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    LiveEdgeSample sample = sample_live_edges(g, DiffusionModel::ic(), 5, 42);
    for (int t = 0; t < 5; ++t) {
        CHECK(sample.num_live_arcs(t) == 2);
        auto r = sample.sources_reaching(t, 2);
        CHECK(std::vector<int>(r.begin(), r.end()) == std::vector<int>{0, 1, 2});
    }
}

TEST_CASE("zero weights leave every node reaching only itself") {
    DirectedWeightedGraph g(4, {{0, 1, 0.0}, {2, 3, 0.0}});
    LiveEdgeSample sample = sample_live_edges(g, DiffusionModel::ic(), 8, 1);
    for (int t = 0; t < 8; ++t)
        for (int v = 0; v < 4; ++v) {
            auto r = sample.sources_reaching(t, v);
            CHECK(std::vector<int>(r.begin(), r.end()) == std::vector<int>{v});
        }
}

TEST_CASE("live-arc frequency concentrates at the arc weight") {
    LiveEdgeSample sample = sample_live_edges(two_node(0.5), DiffusionModel::ic(), 10000, 7);
    int live = 0;
    for (int t = 0; t < 10000; ++t)
        if (sample.sources_reaching(t, 1).size() == 2) ++live; // u reaches v
    CHECK(std::abs(live / 10000.0 - 0.5) < 0.02);
}

TEST_CASE("reachability index agrees with a direct graph search") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 4 + static_cast<int>(rng.next_below(5));
        DirectedWeightedGraph g = random_graph(rng, n, 3 * n);
        LiveEdgeSample sample = sample_live_edges(g, DiffusionModel::ic(), 4, trial);
        for (int t = 0; t < 4; ++t) {
            // forward reachability recomputed independently per source
            for (int src = 0; src < n; ++src) {
                std::vector<char> reached(n, 0);
                std::vector<int> stack{src};
                reached[src] = 1;
                while (!stack.empty()) {
                    int u = stack.back();
                    stack.pop_back();
                    for (int w : sample.live_out(t, u))
                        if (!reached[w]) {
                            reached[w] = 1;
                            stack.push_back(w);
                        }
                }
                for (int v = 0; v < n; ++v) {
                    auto sources = sample.sources_reaching(t, v);
                    bool in_index =
                        std::find(sources.begin(), sources.end(), src) != sources.end();
                    CHECK(in_index == static_cast<bool>(reached[v]));
                }
            }
            for (int v = 0; v < n; ++v) {
                auto sources = sample.sources_reaching(t, v);
                CHECK(std::find(sources.begin(), sources.end(), v) != sources.end());
                CHECK(std::is_sorted(sources.begin(), sources.end()));
            }
        }
    }
}

TEST_CASE("linear threshold keeps at most one in-arc per node") {
    Rng rng(5);
    DirectedWeightedGraph g = random_graph(rng, 8, 24, 0.05, 0.12); // in-sums stay below 1
    LiveEdgeSample sample = sample_live_edges(g, DiffusionModel::lt(), 200, 3);
    for (int t = 0; t < 200; ++t) {
        std::vector<int> in_deg(8, 0);
        for (int u = 0; u < 8; ++u)
            for (int v : sample.live_out(t, u)) ++in_deg[v];
        for (int v = 0; v < 8; ++v) CHECK(in_deg[v] <= 1);
    }
}

TEST_CASE("linear threshold rejects overloaded nodes by name") {
    DirectedWeightedGraph g(3, {{0, 2, 0.7}, {1, 2, 0.6}});
    CHECK_THROWS_WITH_AS(sample_live_edges(g, DiffusionModel::lt(), 10, 1),
                         doctest::Contains("node 2"), ModelError);
}

TEST_CASE("linear threshold sampling matches its exact enumeration") {
    DirectedWeightedGraph g(3, {{0, 1, 0.5}, {2, 1, 0.3}, {1, 2, 0.6}, {0, 2, 0.2}});
    std::vector<double> exact = exact_sigma_set(g, DiffusionModel::lt(), {0});
    LiveEdgeSample sample = sample_live_edges(g, DiffusionModel::lt(), 40000, 11);
    SigmaVector est = sigma_set(sample, {0});
    for (int v = 0; v < 3; ++v)
        CHECK(std::abs(est.per_node[v] - exact[v]) < 0.01);
}

TEST_CASE("sigma_set boundary cases") {
    Rng rng(2);
    DirectedWeightedGraph g = random_graph(rng, 6, 12);
    LiveEdgeSample sample = sample_live_edges(g, DiffusionModel::ic(), 50, 9);

    SigmaVector empty = sigma_set(sample, {});
    for (double v : empty.per_node) CHECK(v == 0.0);
    CHECK(empty.total == 0.0);

    SigmaVector all = sigma_set(sample, {0, 1, 2, 3, 4, 5});
    for (double v : all.per_node) CHECK(v == 1.0);
    CHECK(all.total == 6.0);
}

TEST_CASE("single seed in the two-node gadget reaches the other node half the time") {
    LiveEdgeSample sample = sample_live_edges(two_node(0.5), DiffusionModel::ic(), 20000, 3);
    SigmaVector sv = sigma_set(sample, {0});
    CHECK(sv.per_node[0] == 1.0);
    CHECK(std::abs(sv.per_node[1] - 0.5) < 0.02);
}

TEST_CASE("sigma_node_strategy") {
    Rng rng(17);
    DirectedWeightedGraph g = random_graph(rng, 7, 16);
    LiveEdgeSample sample = sample_live_edges(g, DiffusionModel::ic(), 60, 27);

    SUBCASE("indicator input reproduces sigma_set bit for bit") {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<int> set = random_subset(rng, 7, 1 + rng.next_below(4));
            std::vector<double> x(7, 0.0);
            for (int v : set) x[v] = 1.0;
            SigmaVector a = sigma_set(sample, set);
            SigmaVector b = sigma_node_strategy(sample, x);
            for (int v = 0; v < 7; ++v) CHECK(a.per_node[v] == b.per_node[v]);
        }
    }
    SUBCASE("zero strategy yields zeros") {
        SigmaVector sv = sigma_node_strategy(sample, std::vector<double>(7, 0.0));
        for (double v : sv.per_node) CHECK(v == 0.0);
    }
    SUBCASE("two-node analytic value 0.625") {
        std::vector<double> exact =
            exact_sigma_node_strategy(two_node(0.5), DiffusionModel::ic(), {0.5, 0.5});
        CHECK(exact[0] == doctest::Approx(0.625).epsilon(1e-12));
        CHECK(exact[1] == doctest::Approx(0.625).epsilon(1e-12));

        LiveEdgeSample big = sample_live_edges(two_node(0.5), DiffusionModel::ic(), 40000, 5);
        SigmaVector est = sigma_node_strategy(big, {0.5, 0.5});
        CHECK(std::abs(est.per_node[0] - 0.625) < 0.01);
        CHECK(std::abs(est.per_node[1] - 0.625) < 0.01);
    }
}

TEST_CASE("sigma_set_strategy") {
    SUBCASE("single-support strategy equals sigma_set") {
        Rng rng(23);
        DirectedWeightedGraph g = random_graph(rng, 6, 14);
        LiveEdgeSample sample = sample_live_edges(g, DiffusionModel::ic(), 80, 4);
        SetStrategy p;
        p.k = 2;
        p.support.push_back({{1, 4}, 1.0});
        SigmaVector a = sigma_set_strategy(sample, p);
        SigmaVector b = sigma_set(sample, {1, 4});
        for (int v = 0; v < 6; ++v) CHECK(a.per_node[v] == b.per_node[v]);
    }
    SUBCASE("uniform singleton mixture on the two-node gadget reaches 3/4") {
        LiveEdgeSample sample =
            sample_live_edges(two_node(0.5), DiffusionModel::ic(), 40000, 77);
        SetStrategy p;
        p.k = 1;
        p.support.push_back({{0}, 0.5});
        p.support.push_back({{1}, 0.5});
        SigmaVector sv = sigma_set_strategy(sample, p);
        CHECK(std::abs(sv.per_node[0] - 0.75) < 0.01);
        CHECK(std::abs(sv.per_node[1] - 0.75) < 0.01);
    }
    SUBCASE("disjoint singletons in a zero-weight graph") {
        DirectedWeightedGraph g(4, {{0, 1, 0.0}});
        LiveEdgeSample sample = sample_live_edges(g, DiffusionModel::ic(), 10, 1);
        SetStrategy p;
        p.k = 1;
        p.support.push_back({{0}, 0.5});
        p.support.push_back({{2}, 0.5});
        SigmaVector sv = sigma_set_strategy(sample, p);
        CHECK(sv.per_node[0] == 0.5);
        CHECK(sv.per_node[1] == 0.0);
        CHECK(sv.per_node[2] == 0.5);
        CHECK(sv.per_node[3] == 0.0);
    }
}

TEST_CASE("community_value") {
    std::vector<double> per_node{1.0, 0.0, 0.5, 0.25};
    SUBCASE("singletons are the identity") {
        CommunityStructure cs({{0}, {1}, {2}, {3}}, 4);
        CHECK(community_value(per_node, cs) == per_node);
    }
    SUBCASE("whole-graph community averages") {
        CommunityStructure cs({{0, 1, 2, 3}}, 4);
        std::vector<double> constant{0.3, 0.3, 0.3, 0.3};
        CHECK(community_value(constant, cs)[0] == doctest::Approx(0.3));
    }
    SUBCASE("two-member mean") {
        CommunityStructure cs({{0, 1}}, 4);
        CHECK(community_value(per_node, cs)[0] == doctest::Approx(0.5));
    }
}

TEST_CASE("exact brute-force oracle") {
    SUBCASE("two-node gadget, single seed") {
        std::vector<double> sigma = exact_sigma_set(two_node(0.5), DiffusionModel::ic(), {0});
        CHECK(sigma[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(sigma[1] == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("uniform singleton mixture at weight 2/3 achieves 5/6") {
        SetStrategy p;
        p.k = 1;
        p.support.push_back({{0}, 0.5});
        p.support.push_back({{1}, 0.5});
        std::vector<double> sigma =
            exact_sigma_set_strategy(two_node(2.0 / 3.0), DiffusionModel::ic(), p);
        CHECK(sigma[0] == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
        CHECK(sigma[1] == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    }
    SUBCASE("deterministic path") {
        DirectedWeightedGraph g(3, {{0, 1, 1.0}, {1, 2, 1.0}});
        std::vector<double> sigma = exact_sigma_set(g, DiffusionModel::ic(), {0});
        CHECK(sigma == std::vector<double>{1.0, 1.0, 1.0});
    }
    SUBCASE("instance too large") {
        Rng rng(3);
        DirectedWeightedGraph g = random_graph(rng, 10, 40);
        CHECK_THROWS_AS(exact_sigma_set(g, DiffusionModel::ic(), {0}), SizeError);
        DirectedWeightedGraph g13 = random_graph(rng, 13, 20);
        CHECK_THROWS_AS(
            exact_sigma_node_strategy(g13, DiffusionModel::ic(), std::vector<double>(13, 0.1)),
            SizeError);
    }
    SUBCASE("estimator agrees on a sampled instance") {
        Rng rng(31);
        DirectedWeightedGraph g = random_graph(rng, 6, 12);
        std::vector<int> set = {0, 3};
        std::vector<double> exact = exact_sigma_set(g, DiffusionModel::ic(), set);
        LiveEdgeSample sample = sample_live_edges(g, DiffusionModel::ic(), 30000, 8);
        SigmaVector est = sigma_set(sample, set);
        for (int v = 0; v < 6; ++v) CHECK(std::abs(est.per_node[v] - exact[v]) < 0.015);
    }
}

TEST_CASE("monotonicity and submodularity of the sampled objective") {
    Rng rng(41);
    for (int trial = 0; trial < 15; ++trial) {
        int n = 5 + static_cast<int>(rng.next_below(4));
        DirectedWeightedGraph g = random_graph(rng, n, 3 * n);
        LiveEdgeSample sample = sample_live_edges(g, DiffusionModel::ic(), 40, trial);

        std::vector<double> weights(n);
        for (double& w : weights) w = rng.next_double();

        std::vector<int> small = random_subset(rng, n, 1 + rng.next_below(n - 2));
        std::vector<int> extra = random_subset(rng, n, n);
        std::vector<int> large = small;
        for (int v : extra)
            if (std::find(large.begin(), large.end(), v) == large.end() &&
                static_cast<int>(large.size()) < n - 1)
                large.push_back(v);
        std::sort(large.begin(), large.end());
        int e = -1;
        for (int v = 0; v < n; ++v)
            if (std::find(large.begin(), large.end(), v) == large.end()) e = v;
        REQUIRE(e >= 0);

        // monotone per node
        SigmaVector lo = sigma_set(sample, small), hi = sigma_set(sample, large);
        for (int v = 0; v < n; ++v) CHECK(lo.per_node[v] <= hi.per_node[v] + 1e-12);

        // non-increasing marginal gains of the weighted objective
        auto with = [&](std::vector<int> s, int v) {
            s.push_back(v);
            std::sort(s.begin(), s.end());
            return s;
        };
        double gain_small = weighted_value(sample, weights, with(small, e)) -
                            weighted_value(sample, weights, small);
        double gain_large = weighted_value(sample, weights, with(large, e)) -
                            weighted_value(sample, weights, large);
        CHECK(gain_small >= gain_large - 1e-9);
    }
}

TEST_CASE("estimator calibration at reduced scale") {
    Rng rng(53);
    int ok = 0;
    const int trials = 5;
    for (int trial = 0; trial < trials; ++trial) {
        int n = 5 + static_cast<int>(rng.next_below(3));
        DirectedWeightedGraph g = random_graph(rng, n, std::min(14, n * (n - 1)));
        EstimatorParams params;
        params.epsilon = 0.2;
        params.delta = 0.1;
        std::int64_t T = required_samples(params, n);
        LiveEdgeSample sample =
            sample_live_edges(g, DiffusionModel::ic(), static_cast<int>(T), 1000 + trial);

        std::vector<std::pair<int, std::vector<int>>> pairs;
        for (int q = 0; q < 50; ++q)
            pairs.emplace_back(static_cast<int>(rng.next_below(n)),
                               random_subset(rng, n, 1 + rng.next_below(n)));
        std::vector<double> exact = exact_sigma_pairs(g, DiffusionModel::ic(), pairs);

        double max_err = 0.0;
        for (std::size_t q = 0; q < pairs.size(); ++q) {
            SigmaVector est = sigma_set(sample, pairs[q].second);
            max_err = std::max(max_err, std::abs(est.per_node[pairs[q].first] - exact[q]));
        }
        if (max_err <= params.epsilon) ++ok;
    }
    CHECK(ok >= trials - 1);
}

TEST_CASE("sampling is deterministic across thread counts") {
    Rng rng(61);
    DirectedWeightedGraph g = random_graph(rng, 12, 40);
    auto snapshot = [&](const LiveEdgeSample& s) {
        std::vector<std::vector<int>> rows;
        for (int t = 0; t < s.num_samples(); ++t)
            for (int v = 0; v < s.num_nodes(); ++v) {
                auto r = s.sources_reaching(t, v);
                rows.emplace_back(r.begin(), r.end());
            }
        return rows;
    };
#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    LiveEdgeSample one = sample_live_edges(g, DiffusionModel::ic(), 64, 2024);
#ifdef _OPENMP
    omp_set_num_threads(4);
#endif
    LiveEdgeSample four = sample_live_edges(g, DiffusionModel::ic(), 64, 2024);
#ifdef _OPENMP
    omp_set_num_threads(2);
#endif
    CHECK(snapshot(one) == snapshot(four));
}

TEST_CASE("live-edge sample JSON fixture round-trip") {
    Rng rng(71);
    DirectedWeightedGraph g = random_graph(rng, 6, 15);
    LiveEdgeSample sample = sample_live_edges(g, DiffusionModel::ic(), 12, 5);
    LiveEdgeSample back = LiveEdgeSample::from_json(sample.to_json());
    REQUIRE(back.num_samples() == 12);
    REQUIRE(back.num_nodes() == 6);
    CHECK(back.seed() == sample.seed());
    for (int t = 0; t < 12; ++t)
        for (int v = 0; v < 6; ++v) {
            auto a = sample.sources_reaching(t, v);
            auto b = back.sources_reaching(t, v);
            CHECK(std::vector<int>(a.begin(), a.end()) == std::vector<int>(b.begin(), b.end()));
        }
}

TEST_CASE("restricted index serves community queries and guards full-vector ops") {
    Rng rng(83);
    DirectedWeightedGraph g = random_graph(rng, 9, 24);
    std::vector<int> interest{1, 3, 5};
    LiveEdgeSample restricted = sample_live_edges(g, DiffusionModel::ic(), 32, 7, &interest);
    LiveEdgeSample full = sample_live_edges(g, DiffusionModel::ic(), 32, 7);
    CHECK_FALSE(restricted.full_index());
    for (int t = 0; t < 32; ++t)
        for (int v : interest) {
            auto a = restricted.sources_reaching(t, v);
            auto b = full.sources_reaching(t, v);
            CHECK(std::vector<int>(a.begin(), a.end()) == std::vector<int>(b.begin(), b.end()));
        }
    CHECK_THROWS_AS(sigma_node_strategy(restricted, std::vector<double>(9, 0.1)), ModelError);
}

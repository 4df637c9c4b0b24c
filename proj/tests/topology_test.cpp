// SPDX-License-Identifier: Apache-2.0
#include "tl6g/topology.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace tl6g;
using test::error_code_of;

namespace {

Node node(const std::string& id, Tier tier = Tier::RadioAccess) { return {id, tier, "z"}; }

Link link(const std::string& id, const std::string& a, const std::string& b, double bw,
          double delay) {
    return {id, a, b, bw, delay, std::nullopt};
}

} // namespace

TEST(PathBetween, SingleLink) {
    Topology t({node("a"), node("b")}, {link("l", "a", "b", 10e6, 0.005)});
    auto p = t.path_between("a", "b");
    EXPECT_EQ(p.e2e_bandwidth, 10e6);
    EXPECT_EQ(p.e2e_delay, 0.005);
    EXPECT_EQ(p.nodes, (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(p.links, std::vector<std::string>{"l"});
}

TEST(PathBetween, TwoHopTakesBottleneckAndSum) {
    Topology t({node("a"), node("m"), node("b")},
               {link("l1", "a", "m", 10e6, 0.005), link("l2", "m", "b", 4e6, 0.002)});
    auto p = t.path_between("a", "b");
    EXPECT_EQ(p.e2e_bandwidth, 4e6);
    EXPECT_NEAR(p.e2e_delay, 0.007, 1e-15);
}

TEST(PathBetween, DisjointComponentsHaveNoPath) {
    Topology t({node("a"), node("b"), node("c"), node("d")},
               {link("l1", "a", "c", 1e6, 0.001), link("l2", "b", "d", 1e6, 0.001)});
    EXPECT_EQ(error_code_of([&] { (void)t.path_between("a", "b"); }), ErrorCode::NoPath);
}

TEST(PathBetween, UnknownNode) {
    Topology t({node("a")}, {});
    EXPECT_EQ(error_code_of([&] { (void)t.path_between("a", "zz"); }), ErrorCode::UnknownNode);
}

TEST(PathBetween, SameNodeIsEmptyPath) {
    Topology t({node("a")}, {});
    auto p = t.path_between("a", "a");
    EXPECT_TRUE(p.links.empty());
    EXPECT_TRUE(std::isinf(p.e2e_bandwidth));
    EXPECT_EQ(p.e2e_delay, 0.0);
}

TEST(PathBetween, PrefersLowerDelayOverFewerHops) {
    Topology t({node("a"), node("m"), node("b")},
               {link("direct", "a", "b", 1e9, 0.010), link("h1", "a", "m", 1e6, 0.002),
                link("h2", "m", "b", 1e6, 0.002)});
    auto p = t.path_between("a", "b");
    EXPECT_EQ(p.links, (std::vector<std::string>{"h1", "h2"}));
}

TEST(PathBetween, EqualDelayTieBreaksOnLinkIds) {
    Topology t({node("a"), node("b")},
               {link("z", "a", "b", 1e6, 0.001), link("k", "a", "b", 2e6, 0.001)});
    EXPECT_EQ(t.path_between("a", "b").links, std::vector<std::string>{"k"});
    EXPECT_EQ(t.path_between("b", "a").links, std::vector<std::string>{"k"});
}

TEST(PathBetween, RandomGraphsRespectBottleneckAndSymmetry) {
    test::Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = static_cast<int>(rng.integer(2, 8));
        std::vector<Node> nodes;
        for (int i = 0; i < n; ++i) nodes.push_back(node("n" + std::to_string(i)));
        std::vector<Link> links;
        // Spanning chain keeps the graph connected; extra random edges add choice.
        for (int i = 1; i < n; ++i) {
            links.push_back(link("c" + std::to_string(i), "n" + std::to_string(i - 1),
                                 "n" + std::to_string(i), rng.log_uniform(1e6, 1e10),
                                 rng.uniform(0.0, 0.05)));
        }
        const int extra = static_cast<int>(rng.integer(0, n));
        for (int e = 0; e < extra; ++e) {
            const auto a = rng.integer(0, n - 1);
            const auto b = rng.integer(0, n - 1);
            if (a == b) continue;
            links.push_back(link("x" + std::to_string(e), "n" + std::to_string(a),
                                 "n" + std::to_string(b), rng.log_uniform(1e6, 1e10),
                                 rng.uniform(0.0, 0.05)));
        }
        Topology t(nodes, links);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const auto a = "n" + std::to_string(i);
                const auto b = "n" + std::to_string(j);
                auto p = t.path_between(a, b);
                auto q = t.path_between(b, a);
                EXPECT_EQ(p.e2e_bandwidth, q.e2e_bandwidth);
                EXPECT_NEAR(p.e2e_delay, q.e2e_delay, 1e-12);
                double sum = 0.0;
                for (const auto& id : p.links) {
                    EXPECT_LE(p.e2e_bandwidth, t.link(id).bandwidth);
                    sum += t.link(id).delay;
                }
                EXPECT_NEAR(p.e2e_delay, sum, 1e-12);
                if (i != j) {
                    EXPECT_EQ(p.nodes.front(), a);
                    EXPECT_EQ(p.nodes.back(), b);
                }
            }
        }
    }
}

TEST(Topology, RejectsBadLinks) {
    EXPECT_EQ(error_code_of([] { Topology({node("a")}, {link("l", "a", "b", 1e6, 0.0)}); }),
              ErrorCode::UnknownNode);
    EXPECT_EQ(error_code_of([] {
                  Topology({node("a"), node("b")}, {link("l", "a", "b", 0.0, 0.0)});
              }),
              ErrorCode::InvalidParams);
    EXPECT_EQ(error_code_of([] {
                  Topology({node("a"), node("b")}, {link("l", "a", "b", 1.0, -1.0)});
              }),
              ErrorCode::InvalidParams);
    EXPECT_EQ(error_code_of([] { Topology({node("a"), node("a")}, {}); }),
              ErrorCode::InvalidParams);
}

TEST(Topology, PathLoadIsPointwiseMaxAndDefaultsToZero) {
    std::array<double, 24> s1{};
    std::array<double, 24> s2{};
    s1[3] = 0.7;
    s2[3] = 0.2;
    s2[5] = 0.9;
    auto l1 = link("l1", "a", "m", 1e6, 0.001);
    l1.load_profile = RushProfile::hourly(s1);
    auto l2 = link("l2", "m", "b", 1e6, 0.001);
    l2.load_profile = RushProfile::hourly(s2);
    auto l3 = link("l3", "b", "c", 1e6, 0.001);
    Topology t({node("a"), node("m"), node("b"), node("c")}, {l1, l2, l3});
    auto load = t.path_load(t.path_between("a", "b"));
    EXPECT_EQ(load.value_at(3 * 3600.0), 0.7);
    EXPECT_EQ(load.value_at(5 * 3600.0), 0.9);
    EXPECT_EQ(load.value_at(0.0), 0.0);
    EXPECT_EQ(t.path_load(t.path_between("b", "c")).max_value(), 0.0);
}

TEST(GeneratePairs, CascadeNeighbourChain) {
    auto pairs = generate_pairs(InteractionModel::Cascade, {"A", "B", "C"});
    EXPECT_EQ(pairs, (std::vector<AgentPair>{{"A", "B"}, {"B", "A"}, {"B", "C"}, {"C", "B"}}));
}

TEST(GeneratePairs, DirectedCascadeIsForwardOnly) {
    PairOptions opts;
    opts.directed_cascade = true;
    auto pairs = generate_pairs(InteractionModel::Cascade, {"A", "B", "C"}, std::nullopt, opts);
    EXPECT_EQ(pairs, (std::vector<AgentPair>{{"A", "B"}, {"B", "C"}}));
}

TEST(GeneratePairs, HierarchicalChildParent) {
    ParentMap parents{{"A", "R"}, {"B", "R"}};
    auto pairs = generate_pairs(InteractionModel::Hierarchical, {"A", "B", "R"}, parents);
    EXPECT_EQ(pairs, (std::vector<AgentPair>{{"A", "R"}, {"R", "A"}, {"B", "R"}, {"R", "B"}}));
}

TEST(GeneratePairs, ParallelSinglePeerPair) {
    EXPECT_EQ(generate_pairs(InteractionModel::Parallel, {"A", "B"}),
              (std::vector<AgentPair>{{"A", "B"}, {"B", "A"}}));
}

TEST(GeneratePairs, ParallelCountAndNoSelfPairs) {
    for (std::size_t n = 1; n <= 12; ++n) {
        std::vector<std::string> agents;
        for (std::size_t i = 0; i < n; ++i) agents.push_back("a" + std::to_string(i));
        auto pairs = generate_pairs(InteractionModel::Parallel, agents);
        EXPECT_EQ(pairs.size(), n * (n - 1));
        std::set<AgentPair> unique(pairs.begin(), pairs.end());
        EXPECT_EQ(unique.size(), pairs.size());
        for (const auto& [s, t] : pairs) EXPECT_NE(s, t);
    }
}

TEST(GeneratePairs, ParallelGroupsByTier) {
    PairOptions opts;
    opts.tier_of = [](const std::string& id) { return id[0] == 'c' ? Tier::Core : Tier::RadioAccess; };
    auto pairs = generate_pairs(InteractionModel::Parallel, {"r1", "r2", "c1"}, std::nullopt, opts);
    EXPECT_EQ(pairs, (std::vector<AgentPair>{{"r1", "r2"}, {"r2", "r1"}}));
}

TEST(GeneratePairs, Errors) {
    EXPECT_EQ(error_code_of([] { (void)generate_pairs(InteractionModel::Cascade, {}); }),
              ErrorCode::EmptyAgentList);
    EXPECT_EQ(error_code_of([] { (void)generate_pairs(InteractionModel::Hierarchical, {"A"}); }),
              ErrorCode::MissingHierarchy);
}

TEST(Tier, RoundTripsThroughStrings) {
    for (auto t : {Tier::EndUser, Tier::RadioAccess, Tier::Core, Tier::OttService,
                   Tier::Management}) {
        EXPECT_EQ(tier_from_string(to_string(t)), t);
    }
    EXPECT_FALSE(tier_from_string("Backhaul").has_value());
}

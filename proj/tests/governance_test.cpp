// SPDX-License-Identifier: Apache-2.0
#include "tl6g/governance.hpp"

#include <algorithm>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace tl6g;
using test::error_code_of;
using test::make_agent;

namespace {

struct Fixture {
    Topology topology;
    std::map<std::string, LearningAgent> agents;
    std::map<std::string, SlaPolicy> slas;
};

/// s on node a, t on node b, one 1 Gb/s link with the given delay.
Fixture trusting_pair(double link_delay = 0.005) {
    Fixture f;
    f.topology = Topology({{"a", Tier::RadioAccess, "z"}, {"b", Tier::RadioAccess, "z"}},
                          {{"l", "a", "b", 1e9, link_delay, std::nullopt}});
    f.agents["s"] = make_agent("s", "a", true);
    f.agents["t"] = make_agent("t", "b", true);
    SlaPolicy s;
    s.agent = "s";
    s.trusted_targets = {"t"};
    s.shareable_kinds = {{KnowledgeKind::Parameter, 1.0}};
    s.max_e2e_delay = 0.1;
    s.required_bandwidth = 1e6;
    SlaPolicy t;
    t.agent = "t";
    t.trusted_sources = {"s"};
    t.max_e2e_delay = 0.1;
    t.required_bandwidth = 1e6;
    f.slas["s"] = s;
    f.slas["t"] = t;
    return f;
}

PipelineRequest request(KnowledgeKind kind = KnowledgeKind::Parameter) {
    PipelineRequest r;
    r.source = "s";
    r.target = "t";
    r.kind = kind;
    return r;
}

AuthorizationDecision decide(const Fixture& f, const PipelineRequest& r = request(),
                             AuthorizationOptions opts = {}) {
    return authorize(r, f.agents, f.slas, f.topology, opts);
}

} // namespace

TEST(Authorize, GrantsWithPathProperties) {
    auto f = trusting_pair();
    auto d = decide(f);
    ASSERT_TRUE(d.granted);
    ASSERT_TRUE(d.pipeline.has_value());
    EXPECT_FALSE(d.denial_reason.has_value());
    EXPECT_EQ(d.pipeline->bandwidth, 1e9);
    EXPECT_EQ(d.pipeline->delay, 0.005);
    EXPECT_EQ(d.pipeline->required_bandwidth, 1e6);
    EXPECT_EQ(d.pipeline->required_delay, 0.1);
    EXPECT_EQ(d.pipeline->path.links, std::vector<std::string>{"l"});
}

TEST(Authorize, DenialsInCheckOrder) {
    {
        auto f = trusting_pair();
        f.slas["s"].trusted_targets.clear();
        f.slas["t"].trusted_sources.clear();
        EXPECT_EQ(decide(f).denial_reason, DenialReason::NotTrustedTarget);
    }
    {
        auto f = trusting_pair();
        f.slas["t"].trusted_sources.clear();
        EXPECT_EQ(decide(f).denial_reason, DenialReason::NotTrustedSource);
    }
    {
        auto f = trusting_pair();
        EXPECT_EQ(decide(f, request(KnowledgeKind::Instance)).denial_reason,
                  DenialReason::KindNotShareable);
    }
    {
        auto f = trusting_pair(0.050);
        f.slas["s"].max_e2e_delay = 0.010;
        f.slas["t"].max_e2e_delay = 0.010;
        EXPECT_EQ(decide(f).denial_reason, DenialReason::DelayBoundViolated);
    }
    {
        auto f = trusting_pair();
        f.slas["t"].required_bandwidth = 2e9;
        EXPECT_EQ(decide(f).denial_reason, DenialReason::BandwidthInsufficient);
    }
    {
        auto f = trusting_pair();
        f.slas["t"].security_level = 2;
        EXPECT_EQ(decide(f).denial_reason, DenialReason::SecurityMismatch);
        EXPECT_TRUE(decide(f, request(), {2}).granted);
        EXPECT_EQ(decide(f, request(), {2}).pipeline->security_level, 2);
    }
    {
        Fixture f = trusting_pair();
        f.topology = Topology({{"a", Tier::RadioAccess, "z"}, {"b", Tier::RadioAccess, "z"}}, {});
        EXPECT_EQ(decide(f).denial_reason, DenialReason::NoPath);
    }
}

TEST(Authorize, UnknownAgent) {
    auto f = trusting_pair();
    auto r = request();
    r.target = "ghost";
    EXPECT_EQ(error_code_of([&] { (void)decide(f, r); }), ErrorCode::UnknownAgent);
}

TEST(Authorize, DeterministicAndMonotoneInTrust) {
    test::Rng rng(17);
    const std::vector<std::string> ids{"s", "t", "u", "v"};
    for (int trial = 0; trial < 200; ++trial) {
        auto f = trusting_pair(rng.uniform(0.0, 0.02));
        f.slas["s"].trusted_targets.clear();
        f.slas["t"].trusted_sources.clear();
        for (const auto& id : ids) {
            if (rng.coin()) f.slas["s"].trusted_targets.insert(id);
            if (rng.coin()) f.slas["t"].trusted_sources.insert(id);
        }
        f.slas["s"].max_e2e_delay = rng.uniform(0.001, 0.03);
        f.slas["t"].security_level = static_cast<int>(rng.integer(0, 1));
        auto first = decide(f);
        auto second = decide(f);
        EXPECT_EQ(first.granted, second.granted);
        EXPECT_EQ(first.denial_reason, second.denial_reason);
        if (!first.granted) continue;
        auto widened = f;
        widened.slas["s"].trusted_targets.insert(ids[rng.integer(0, 3)]);
        widened.slas["t"].trusted_sources.insert(ids[rng.integer(0, 3)]);
        EXPECT_TRUE(decide(widened).granted);
    }
}

TEST(Conflicts, RaVersusEe) {
    auto out = detect_conflicts({{"RA", "N", "prb", 5.0, 10.0}, {"EE", "N", "prb", -3.0, 12.0}},
                                5.0);
    ASSERT_EQ(out.size(), 1U);
    EXPECT_EQ(out[0].node, "N");
    EXPECT_EQ(out[0].agents, (std::set<std::string>{"EE", "RA"}));
    EXPECT_EQ(out[0].net_opposition, 3.0);
}

TEST(Conflicts, NoneWithoutOppositionInWindow) {
    EXPECT_TRUE(detect_conflicts({{"RA", "N", "prb", 5.0, 10.0}, {"EE", "N", "prb", 3.0, 11.0}},
                                 5.0)
                    .empty());
    EXPECT_TRUE(detect_conflicts({{"RA", "N", "prb", 5.0, 10.0}, {"EE", "N", "prb", -3.0, 110.0}},
                                 5.0)
                    .empty());
    EXPECT_TRUE(detect_conflicts({{"RA", "N", "prb", 5.0, 10.0}, {"RA", "N", "prb", -3.0, 11.0}},
                                 5.0)
                    .empty());
    EXPECT_TRUE(detect_conflicts({{"RA", "N", "prb", 5.0, 10.0}, {"EE", "M", "prb", -3.0, 11.0}},
                                 5.0)
                    .empty());
}

TEST(Conflicts, WindowIsClosed) {
    EXPECT_EQ(detect_conflicts({{"RA", "N", "prb", 5.0, 10.0}, {"EE", "N", "prb", -3.0, 15.0}},
                               5.0)
                  .size(),
              1U);
}

TEST(Conflicts, RejectsNonPositiveWindow) {
    EXPECT_EQ(error_code_of([] { (void)detect_conflicts({}, 0.0); }), ErrorCode::InvalidParams);
}

TEST(Conflicts, OrderIndependent) {
    test::Rng rng(23);
    const std::vector<std::string> agents{"RA", "EE", "AC"};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ResourceAction> actions;
        const auto n = rng.integer(0, 12);
        for (std::int64_t i = 0; i < n; ++i) {
            actions.push_back({agents[rng.integer(0, 2)], rng.coin() ? "N1" : "N2", "prb",
                               static_cast<double>(rng.integer(-5, 5)),
                               static_cast<double>(rng.integer(0, 30))});
        }
        auto reference = detect_conflicts(actions, 3.0);
        for (int shuffle = 0; shuffle < 3; ++shuffle) {
            for (std::size_t i = actions.size(); i > 1; --i) {
                std::swap(actions[i - 1], actions[rng.integer(0, static_cast<std::int64_t>(i) - 1)]);
            }
            auto again = detect_conflicts(actions, 3.0);
            ASSERT_EQ(again.size(), reference.size());
            for (std::size_t k = 0; k < again.size(); ++k) {
                EXPECT_EQ(again[k].node, reference[k].node);
                EXPECT_EQ(again[k].agents, reference[k].agents);
                EXPECT_EQ(again[k].net_opposition, reference[k].net_opposition);
            }
        }
    }
}

TEST(Initiation, ModeRules) {
    InitiationMode central{InitiationMode::Base::Centralized, false};
    InitiationMode decentral{InitiationMode::Base::Decentralized, false};
    InitiationMode ott{InitiationMode::Base::Decentralized, true};
    EXPECT_FALSE(initiation_allowed(Initiator::NetworkElement, central));
    EXPECT_TRUE(initiation_allowed(Initiator::Orchestrator, central));
    EXPECT_TRUE(initiation_allowed(Initiator::NetworkElement, decentral));
    EXPECT_FALSE(initiation_allowed(Initiator::OttApplication, decentral));
    EXPECT_TRUE(initiation_allowed(Initiator::OttApplication, ott));
}

TEST(SlaPolicy, ClassAndShareLookups) {
    SlaPolicy p;
    p.default_class = InteractionClass::NonRealTime;
    p.granularity["x"] = InteractionClass::OnDemand;
    p.shareable_kinds[KnowledgeKind::Instance] = 0.25;
    EXPECT_EQ(p.class_for("x"), InteractionClass::OnDemand);
    EXPECT_EQ(p.class_for("y"), InteractionClass::NonRealTime);
    EXPECT_EQ(p.share_fraction(KnowledgeKind::Instance), 0.25);
    EXPECT_EQ(p.share_fraction(KnowledgeKind::Feature), 0.0);
    EXPECT_TRUE(p.validate().empty());
    p.shareable_kinds[KnowledgeKind::Feature] = 1.5;
    EXPECT_FALSE(p.validate().empty());
}

// SPDX-License-Identifier: Apache-2.0
#include "tl6g/repository.hpp"

#include <algorithm>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace tl6g;
using test::error_code_of;

namespace {

KnowledgeArtifact artifact(const std::string& id, double t, int security = 0,
                           const std::string& tag = "mobility_pattern",
                           Tier level = Tier::RadioAccess, std::uint64_t bits = 100) {
    KnowledgeArtifact a;
    a.id = id;
    a.kind = KnowledgeKind::Feature;
    a.level = level;
    a.content_tag = tag;
    a.payload_bits = bits;
    a.security_level = security;
    a.source_agent = "RA1";
    a.timestamp = t;
    return a;
}

constexpr TimeRange kAll{-1e18, 1e18};

} // namespace

TEST(Repository, StoreThenRetrieve) {
    Repository repo;
    auto a = artifact("a", 10.0);
    EXPECT_EQ(repo.store(a), "a");
    auto got = repo.retrieve(Tier::RadioAccess, "mobility_pattern", kAll, 0);
    ASSERT_EQ(got.size(), 1U);
    EXPECT_EQ(got[0], a);
    EXPECT_TRUE(repo.retrieve(Tier::Core, "mobility_pattern", kAll, 0).empty());
    EXPECT_TRUE(repo.retrieve(Tier::RadioAccess, "traffic", kAll, 0).empty());
    EXPECT_TRUE(repo.has_from_source("RA1"));
    EXPECT_FALSE(repo.has_from_source("EE1"));
}

TEST(Repository, TimeRangeFilter) {
    Repository repo;
    repo.store(artifact("a", 100.0));
    repo.store(artifact("b", 200.0));
    auto got = repo.retrieve(Tier::RadioAccess, "mobility_pattern", {150.0, 250.0}, 0);
    ASSERT_EQ(got.size(), 1U);
    EXPECT_EQ(got[0].id, "b");
    EXPECT_EQ(error_code_of([&] {
                  (void)repo.retrieve(Tier::RadioAccess, "mobility_pattern", {5.0, 1.0}, 0);
              }),
              ErrorCode::InvalidParams);
}

TEST(Repository, IdempotentStoreAndConflictingDuplicate) {
    Repository repo;
    auto a = artifact("a", 1.0);
    repo.store(a);
    EXPECT_EQ(repo.store(a), "a");
    EXPECT_EQ(repo.size(), 1U);
    auto changed = a;
    changed.payload_bits = 7;
    EXPECT_EQ(error_code_of([&] { repo.store(changed); }),
              ErrorCode::DuplicateIdWithDifferentContent);
}

TEST(Repository, SecurityGate) {
    Repository repo;
    EXPECT_TRUE(repo.retrieve(Tier::RadioAccess, "mobility_pattern", kAll, 0).empty());
    repo.store(artifact("a", 1.0, 3));
    EXPECT_TRUE(repo.retrieve(Tier::RadioAccess, "mobility_pattern", kAll, 0).empty());
    EXPECT_EQ(repo.retrieve(Tier::RadioAccess, "mobility_pattern", kAll, 3).size(), 1U);
}

TEST(Repository, RoundTripAndOrderingProperties) {
    test::Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        Repository repo;
        std::vector<KnowledgeArtifact> stored;
        const auto n = rng.integer(0, 30);
        for (std::int64_t i = 0; i < n; ++i) {
            auto a = artifact("id" + std::to_string(i), static_cast<double>(rng.integer(0, 10)),
                              static_cast<int>(rng.integer(0, 3)), rng.coin() ? "x" : "y");
            repo.store(a);
            stored.push_back(a);
        }
        const int clearance = static_cast<int>(rng.integer(0, 3));
        auto got = repo.retrieve(Tier::RadioAccess, "x", {0.0, 10.0}, clearance);
        std::vector<KnowledgeArtifact> expected;
        for (const auto& a : stored) {
            if (a.content_tag == "x" && a.security_level <= clearance) expected.push_back(a);
        }
        std::stable_sort(expected.begin(), expected.end(),
                         [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
        EXPECT_EQ(got, expected);
    }
}

TEST(Repository, SaveLoadRoundTrip) {
    auto dir = test::fresh_dir("repo");
    Repository repo;
    repo.store(artifact("a", 1.5, 2));
    repo.store(artifact("b", 3.0, 0, "traffic", Tier::Core, 123456789012ULL));
    repo.save(dir / "repo.jsonl");
    auto loaded = Repository::load(dir / "repo.jsonl");
    EXPECT_EQ(loaded.artifacts(), repo.artifacts());
    EXPECT_EQ(error_code_of([&] { (void)Repository::load(dir / "missing.jsonl"); }),
              ErrorCode::FileNotFound);
}

TEST(Extract, PayloadSizes) {
    auto agent = test::make_agent("RA1", "n", true, std::vector<double>(16, 1.0 / 16));
    agent.task.parameter_count = 1'000'000;
    agent.domain.sample_count = 1000;
    agent.domain.bits_per_sample = 512;
    ExtractionContext ctx;
    ctx.artifact_id = "x";
    ctx.scheme = QuantScheme::Float32;
    EXPECT_EQ(extract_knowledge(agent, KnowledgeKind::Parameter, 1.0, ctx).payload_bits,
              32'000'000U);
    EXPECT_EQ(extract_knowledge(agent, KnowledgeKind::Instance, 0.5, ctx).payload_bits, 256'000U);
    EXPECT_EQ(extract_knowledge(agent, KnowledgeKind::Feature, 1.0, ctx).payload_bits, 1024U);
    ctx.relational_bits = 777;
    EXPECT_EQ(extract_knowledge(agent, KnowledgeKind::Relational, 1.0, ctx).payload_bits, 777U);
    ctx.scheme = QuantScheme::Qat8;
    EXPECT_EQ(extract_knowledge(agent, KnowledgeKind::Parameter, 1.0, ctx).payload_bits,
              8'000'000U);
}

TEST(Extract, Errors) {
    auto agent = test::make_agent("RA1", "n", true);
    ExtractionContext ctx;
    EXPECT_EQ(error_code_of([&] { (void)extract_knowledge(agent, KnowledgeKind::Feature, 0.0, ctx); }),
              ErrorCode::InvalidParams);
    agent.domain.sample_count = 0;
    EXPECT_EQ(error_code_of([&] { (void)extract_knowledge(agent, KnowledgeKind::Instance, 1.0, ctx); }),
              ErrorCode::EmptyDomain);
}

TEST(Pattern, DailyBinning) {
    std::vector<KnowledgeArtifact> list;
    for (int day = 0; day < 5; ++day) {
        list.push_back(artifact("d" + std::to_string(day), day * kSecondsPerDay + 3 * 3600.0 + 60.0,
                                0, "x", Tier::RadioAccess, 100 + day));
    }
    auto p = aggregate_pattern(list, PatternPeriod::Daily);
    ASSERT_EQ(p.bins.size(), 24U);
    for (std::size_t b = 0; b < 24; ++b) {
        if (b == 3) {
            EXPECT_EQ(p.bins[b], 102.0);
        } else {
            EXPECT_EQ(p.bins[b], 0.0);
        }
    }
}

TEST(Pattern, EmptyAndSingle) {
    auto empty = aggregate_pattern({}, PatternPeriod::Weekly);
    EXPECT_EQ(empty.bins, std::vector<double>(7, 0.0));
    auto single = aggregate_pattern({artifact("a", 0.0)}, PatternPeriod::Daily);
    EXPECT_EQ(single.bins[0], 100.0);
    EXPECT_EQ(std::count(single.bins.begin(), single.bins.end(), 0.0), 23);
}

TEST(Pattern, SeasonalNeedsPeriod) {
    EXPECT_EQ(error_code_of([] { (void)aggregate_pattern({}, PatternPeriod::Seasonal); }),
              ErrorCode::InvalidParams);
    auto p = aggregate_pattern({artifact("a", 95.0)}, PatternPeriod::Seasonal, 4, 100.0);
    EXPECT_EQ(p.bins, (std::vector<double>{0, 0, 0, 100}));
}

TEST(Pattern, PermutationInvariant) {
    test::Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<KnowledgeArtifact> list;
        const auto n = rng.integer(0, 40);
        for (std::int64_t i = 0; i < n; ++i) {
            list.push_back(artifact("a" + std::to_string(i), rng.uniform(0.0, 30 * kSecondsPerDay),
                                    0, "x", Tier::RadioAccess,
                                    static_cast<std::uint64_t>(rng.integer(1, 1'000'000))));
        }
        auto reference = aggregate_pattern(list, PatternPeriod::Daily);
        std::reverse(list.begin(), list.end());
        EXPECT_EQ(aggregate_pattern(list, PatternPeriod::Daily).bins, reference.bins);
    }
}

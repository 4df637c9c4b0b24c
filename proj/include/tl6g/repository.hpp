// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tl6g/agents.hpp"
#include "tl6g/quantization.hpp"
#include "tl6g/topology.hpp"

namespace tl6g {

/// One transferable unit of knowledge held by the training-plane repository.
struct KnowledgeArtifact {
    std::string id;
    KnowledgeKind kind = KnowledgeKind::Parameter;
    Tier level = Tier::RadioAccess;
    std::string content_tag;
    std::uint64_t payload_bits = 1;
    int security_level = 0;
    std::string source_agent;
    double timestamp = 0.0;

    bool operator==(const KnowledgeArtifact&) const = default;
};

struct TimeRange {
    double start = 0.0;
    double end = 0.0;  ///< inclusive
};

/// In-memory artifact store, single writer.
class Repository {
public:
    /// Idempotent for an identical artifact. Throws
    /// DuplicateIdWithDifferentContent or InvalidParams.
    std::string store(const KnowledgeArtifact& artifact);

    [[nodiscard]] std::optional<KnowledgeArtifact> get(const std::string& id) const;

    /// Matches whose security level does not exceed the requester's
    /// clearance, ordered by timestamp then insertion.
    [[nodiscard]] std::vector<KnowledgeArtifact> retrieve(Tier level, const std::string& content_tag,
                                                          TimeRange range,
                                                          int requester_security_level) const;

    [[nodiscard]] bool has_from_source(const std::string& agent) const;
    [[nodiscard]] const std::vector<KnowledgeArtifact>& artifacts() const noexcept { return items_; }
    [[nodiscard]] std::size_t size() const noexcept { return items_.size(); }

    /// One JSON record per line, insertion order.
    void save(const std::filesystem::path& path) const;
    static Repository load(const std::filesystem::path& path);

private:
    std::vector<KnowledgeArtifact> items_;
    std::map<std::string, std::size_t> by_id_;
};

struct ExtractionContext {
    std::string artifact_id;
    Tier level = Tier::RadioAccess;  ///< tier of the source's host node
    std::string content_tag;
    double timestamp = 0.0;
    int security_level = 0;
    QuantScheme scheme = QuantScheme::Float32;
    std::uint64_t relational_bits = 65536;
};

inline constexpr std::uint64_t kFeatureBitsPerBin = 64;

/// Packages an agent's knowledge of the given kind. Payload size:
///   Instance   ceil(share_fraction * sample_count) * bits_per_sample
///   Parameter  parameter_count * bits per weight of the scheme
///   Feature    signature length * 64
///   Relational the configured constant
KnowledgeArtifact extract_knowledge(const LearningAgent& agent, KnowledgeKind kind,
                                    double share_fraction, const ExtractionContext& context);

enum class PatternPeriod { Daily, Weekly, Seasonal };

inline constexpr double kSecondsPerWeek = 604800.0;

struct PeriodicProfile {
    PatternPeriod period = PatternPeriod::Daily;
    double period_seconds = 86400.0;
    std::vector<double> bins;  ///< mean payload bits per bin
};

/// Bin b holds the mean payload of artifacts whose (timestamp mod period)
/// falls in it; empty bins are 0. Seasonal needs an explicit period length.
PeriodicProfile aggregate_pattern(const std::vector<KnowledgeArtifact>& artifacts,
                                  PatternPeriod period, std::size_t bin_count = 0,
                                  double seasonal_period_seconds = 0.0);

} // namespace tl6g

// SPDX-License-Identifier: Apache-2.0
#include "tl6g/repository.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

#include "tl6g/error.hpp"

namespace tl6g {

namespace {

nlohmann::ordered_json to_json(const KnowledgeArtifact& a) {
    nlohmann::ordered_json j;
    j["id"] = a.id;
    j["kind"] = to_string(a.kind);
    j["level"] = to_string(a.level);
    j["content_tag"] = a.content_tag;
    j["payload_bits"] = a.payload_bits;
    j["security_level"] = a.security_level;
    j["source_agent"] = a.source_agent;
    j["timestamp"] = a.timestamp;
    return j;
}

KnowledgeArtifact from_json(const nlohmann::json& j) {
    KnowledgeArtifact a;
    a.id = j.at("id").get<std::string>();
    auto kind = knowledge_kind_from_string(j.at("kind").get<std::string>());
    auto level = tier_from_string(j.at("level").get<std::string>());
    if (!kind || !level) throw Error(ErrorCode::ParseError, "artifact '" + a.id + "' enum field");
    a.kind = *kind;
    a.level = *level;
    a.content_tag = j.at("content_tag").get<std::string>();
    a.payload_bits = j.at("payload_bits").get<std::uint64_t>();
    a.security_level = j.at("security_level").get<int>();
    a.source_agent = j.at("source_agent").get<std::string>();
    a.timestamp = j.at("timestamp").get<double>();
    return a;
}

} // namespace

std::string Repository::store(const KnowledgeArtifact& artifact) {
    if (artifact.payload_bits == 0) {
        throw Error(ErrorCode::InvalidParams, "artifact '" + artifact.id + "' has no payload");
    }
    if (auto it = by_id_.find(artifact.id); it != by_id_.end()) {
        if (items_[it->second] == artifact) return artifact.id;
        throw Error(ErrorCode::DuplicateIdWithDifferentContent, "artifact '" + artifact.id + "'");
    }
    by_id_.emplace(artifact.id, items_.size());
    items_.push_back(artifact);
    return artifact.id;
}

std::optional<KnowledgeArtifact> Repository::get(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return items_[it->second];
}

std::vector<KnowledgeArtifact> Repository::retrieve(Tier level, const std::string& content_tag,
                                                    TimeRange range,
                                                    int requester_security_level) const {
    if (range.start > range.end) {
        throw Error(ErrorCode::InvalidParams, "time range start exceeds end");
    }
    std::vector<KnowledgeArtifact> out;
    for (const auto& a : items_) {
        if (a.level == level && a.content_tag == content_tag && a.timestamp >= range.start &&
            a.timestamp <= range.end && a.security_level <= requester_security_level) {
            out.push_back(a);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return x.timestamp < y.timestamp;
    });
    return out;
}

bool Repository::has_from_source(const std::string& agent) const {
    return std::any_of(items_.begin(), items_.end(),
                       [&](const auto& a) { return a.source_agent == agent; });
}

void Repository::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    for (const auto& a : items_) out << to_json(a).dump() << '\n';
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

Repository Repository::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, path.string());
    Repository repo;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            repo.store(from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::ParseError,
                        path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return repo;
}

KnowledgeArtifact extract_knowledge(const LearningAgent& agent, KnowledgeKind kind,
                                    double share_fraction, const ExtractionContext& context) {
    if (!(share_fraction > 0.0 && share_fraction <= 1.0)) {
        throw Error(ErrorCode::InvalidParams, "share_fraction must lie in (0,1]");
    }
    KnowledgeArtifact a;
    a.id = context.artifact_id;
    a.kind = kind;
    a.level = context.level;
    a.content_tag = context.content_tag;
    a.security_level = context.security_level;
    a.source_agent = agent.id;
    a.timestamp = context.timestamp;

    switch (kind) {
    case KnowledgeKind::Instance: {
        if (agent.domain.sample_count == 0) {
            throw Error(ErrorCode::EmptyDomain, "agent '" + agent.id + "' has no samples");
        }
        const auto shared = static_cast<std::uint64_t>(
            std::ceil(share_fraction * static_cast<double>(agent.domain.sample_count)));
        a.payload_bits = shared * agent.domain.bits_per_sample;
        break;
    }
    case KnowledgeKind::Parameter:
        a.payload_bits = payload_bits(agent.task.parameter_count, context.scheme);
        break;
    case KnowledgeKind::Feature:
        a.payload_bits = agent.domain.distribution_signature.size() * kFeatureBitsPerBin;
        break;
    case KnowledgeKind::Relational:
        a.payload_bits = context.relational_bits;
        break;
    }
    if (a.payload_bits == 0) {
        throw Error(ErrorCode::InvalidParams,
                    "agent '" + agent.id + "' yields an empty " + std::string(to_string(kind)) +
                        " payload");
    }
    return a;
}

PeriodicProfile aggregate_pattern(const std::vector<KnowledgeArtifact>& artifacts,
                                  PatternPeriod period, std::size_t bin_count,
                                  double seasonal_period_seconds) {
    PeriodicProfile profile;
    profile.period = period;
    switch (period) {
    case PatternPeriod::Daily:
        profile.period_seconds = kSecondsPerDay;
        if (bin_count == 0) bin_count = 24;
        break;
    case PatternPeriod::Weekly:
        profile.period_seconds = kSecondsPerWeek;
        if (bin_count == 0) bin_count = 7;
        break;
    case PatternPeriod::Seasonal:
        if (!(seasonal_period_seconds > 0.0) || bin_count == 0) {
            throw Error(ErrorCode::InvalidParams, "seasonal pattern needs a period and bin count");
        }
        profile.period_seconds = seasonal_period_seconds;
        break;
    }

    // Integer sums keep the mean independent of input order.
    std::vector<std::uint64_t> sums(bin_count, 0);
    std::vector<std::uint64_t> counts(bin_count, 0);
    const double width = profile.period_seconds / static_cast<double>(bin_count);
    for (const auto& a : artifacts) {
        double phase = std::fmod(a.timestamp, profile.period_seconds);
        if (phase < 0.0) phase += profile.period_seconds;
        auto bin = static_cast<std::size_t>(std::floor(phase / width));
        bin = std::min(bin, bin_count - 1);
        sums[bin] += a.payload_bits;
        counts[bin] += 1;
    }
    profile.bins.assign(bin_count, 0.0);
    for (std::size_t b = 0; b < bin_count; ++b) {
        if (counts[b] > 0) {
            profile.bins[b] = static_cast<double>(sums[b]) / static_cast<double>(counts[b]);
        }
    }
    return profile;
}

} // namespace tl6g

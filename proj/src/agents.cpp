// SPDX-License-Identifier: Apache-2.0
#include "tl6g/agents.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tl6g/error.hpp"

namespace tl6g {

std::string_view to_string(LabelAxis v) noexcept {
    switch (v) {
    case LabelAxis::Transductive: return "Transductive";
    case LabelAxis::Inductive: return "Inductive";
    case LabelAxis::Unsupervised: return "Unsupervised";
    }
    return "?";
}

std::string_view to_string(DomainAxis v) noexcept {
    return v == DomainAxis::Homogeneous ? "Homogeneous" : "Heterogeneous";
}

std::string_view to_string(KnowledgeKind v) noexcept {
    switch (v) {
    case KnowledgeKind::Instance: return "Instance";
    case KnowledgeKind::Feature: return "Feature";
    case KnowledgeKind::Parameter: return "Parameter";
    case KnowledgeKind::Relational: return "Relational";
    }
    return "?";
}

std::optional<KnowledgeKind> knowledge_kind_from_string(std::string_view s) noexcept {
    for (auto k : {KnowledgeKind::Instance, KnowledgeKind::Feature, KnowledgeKind::Parameter,
                   KnowledgeKind::Relational}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

std::vector<std::string> validate_domain(const DomainDescriptor& d) {
    std::vector<std::string> problems;
    if (d.bits_per_sample == 0) problems.emplace_back("bits_per_sample must be > 0");
    double sum = 0.0;
    for (double x : d.distribution_signature) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            problems.emplace_back("distribution_signature entries must be finite and >= 0");
            return problems;
        }
        sum += x;
    }
    if (d.sample_count > 0 && std::abs(sum - 1.0) > kSignatureSumTolerance) {
        problems.emplace_back("distribution_signature must sum to 1");
    }
    return problems;
}

std::vector<std::string> validate_agent(const LearningAgent& a) {
    auto problems = validate_domain(a.domain);
    if (!(a.baseline_performance >= 0.0 && a.baseline_performance <= 1.0)) {
        problems.emplace_back("baseline_performance must lie in [0,1]");
    }
    if (!(a.baseline_training_time > 0.0) || !std::isfinite(a.baseline_training_time)) {
        problems.emplace_back("baseline_training_time must be > 0");
    }
    return problems;
}

LabelAxis classify_label_axis(const LearningAgent& source, const LearningAgent& target) {
    const bool s = source.domain.has_labels;
    const bool t = target.domain.has_labels;
    if (s && !t) return LabelAxis::Transductive;
    if (s && t) return LabelAxis::Inductive;
    if (!s && !t) return LabelAxis::Unsupervised;
    throw Error(ErrorCode::UnclassifiablePair,
                "only the target '" + target.id + "' has labels (source '" + source.id + "')");
}

double domain_similarity(const DomainDescriptor& a, const DomainDescriptor& b) {
    if (a.distribution_signature.size() != b.distribution_signature.size()) {
        throw Error(ErrorCode::SignatureLengthMismatch,
                    std::to_string(a.distribution_signature.size()) + " vs " +
                        std::to_string(b.distribution_signature.size()));
    }
    if (a.sample_count == 0 || b.sample_count == 0) {
        throw Error(ErrorCode::EmptyDomain, "similarity needs samples on both sides");
    }
    double overlap = 0.0;
    for (std::size_t i = 0; i < a.distribution_signature.size(); ++i) {
        overlap += std::min(a.distribution_signature[i], b.distribution_signature[i]);
    }
    return std::clamp(overlap, 0.0, 1.0);
}

DomainAxis classify_domain_axis(const LearningAgent& source, const LearningAgent& target,
                                double homogeneity_threshold) {
    if (source.domain.feature_space_id != target.domain.feature_space_id) {
        return DomainAxis::Heterogeneous;
    }
    return effective_similarity(source.domain, target.domain) >= homogeneity_threshold
               ? DomainAxis::Homogeneous
               : DomainAxis::Heterogeneous;
}

double effective_similarity(const DomainDescriptor& a, const DomainDescriptor& b) noexcept {
    if (a.feature_space_id != b.feature_space_id) return 0.0;
    if (a.distribution_signature == b.distribution_signature) return 1.0;
    if (a.distribution_signature.size() != b.distribution_signature.size() ||
        a.sample_count == 0 || b.sample_count == 0) {
        return 0.0;
    }
    return domain_similarity(a, b);
}

std::set<KnowledgeKind> admissible_knowledge_kinds(const TlCategory& category) {
    if (category.domain_axis == DomainAxis::Homogeneous) {
        return {KnowledgeKind::Instance, KnowledgeKind::Feature, KnowledgeKind::Parameter,
                KnowledgeKind::Relational};
    }
    return {KnowledgeKind::Feature, KnowledgeKind::Parameter, KnowledgeKind::Relational};
}

TlCategory classify(const LearningAgent& source, const LearningAgent& target, KnowledgeKind kind,
                    double homogeneity_threshold) {
    return TlCategory{classify_label_axis(source, target),
                      classify_domain_axis(source, target, homogeneity_threshold), kind};
}

} // namespace tl6g

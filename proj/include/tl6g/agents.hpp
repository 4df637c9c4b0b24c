// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tl6g {

/// Feature space and data distribution of one learning algorithm.
struct DomainDescriptor {
    std::string feature_space_id;
    /// Normalized histogram over a reference binning shared by all agents.
    std::vector<double> distribution_signature;
    std::uint64_t sample_count = 0;
    bool has_labels = false;
    std::uint64_t bits_per_sample = 1;
};

struct TaskDescriptor {
    std::string label_space_id;
    std::string function_signature;
    std::uint64_t parameter_count = 0;
    std::map<std::string, double> hyperparams;
};

/// The analysis algorithm of one MAPE-K loop.
struct LearningAgent {
    std::string id;
    std::string node;
    std::string purpose;
    DomainDescriptor domain;
    TaskDescriptor task;
    double baseline_performance = 0.0;    ///< in [0,1]
    double baseline_training_time = 0.0;  ///< seconds, > 0
};

enum class LabelAxis { Transductive, Inductive, Unsupervised };
enum class DomainAxis { Homogeneous, Heterogeneous };
enum class KnowledgeKind { Instance, Feature, Parameter, Relational };

std::string_view to_string(LabelAxis v) noexcept;
std::string_view to_string(DomainAxis v) noexcept;
std::string_view to_string(KnowledgeKind v) noexcept;
std::optional<KnowledgeKind> knowledge_kind_from_string(std::string_view s) noexcept;

struct TlCategory {
    LabelAxis label_axis = LabelAxis::Inductive;
    DomainAxis domain_axis = DomainAxis::Homogeneous;
    KnowledgeKind solution_axis = KnowledgeKind::Parameter;
    bool operator==(const TlCategory&) const = default;
};

inline constexpr double kDefaultHomogeneityThreshold = 0.9;
inline constexpr double kSignatureSumTolerance = 1e-9;

/// Checks descriptor invariants; returns a list of problems (empty when valid).
std::vector<std::string> validate_domain(const DomainDescriptor& d);
std::vector<std::string> validate_agent(const LearningAgent& a);

/// Throws UnclassifiablePair when only the target has labels.
LabelAxis classify_label_axis(const LearningAgent& source, const LearningAgent& target);

/// Histogram overlap: sum of element-wise minima.
/// Throws SignatureLengthMismatch or EmptyDomain.
double domain_similarity(const DomainDescriptor& a, const DomainDescriptor& b);

DomainAxis classify_domain_axis(const LearningAgent& source, const LearningAgent& target,
                                double homogeneity_threshold = kDefaultHomogeneityThreshold);

/// Similarity used by the effect model: 0 when feature spaces differ or the
/// signatures cannot be compared.
double effective_similarity(const DomainDescriptor& a, const DomainDescriptor& b) noexcept;

std::set<KnowledgeKind> admissible_knowledge_kinds(const TlCategory& category);

TlCategory classify(const LearningAgent& source, const LearningAgent& target, KnowledgeKind kind,
                    double homogeneity_threshold = kDefaultHomogeneityThreshold);

} // namespace tl6g

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tl6g/agents.hpp"
#include "tl6g/costmodel.hpp"
#include "tl6g/error.hpp"
#include "tl6g/governance.hpp"
#include "tl6g/quantization.hpp"
#include "tl6g/repository.hpp"
#include "tl6g/scheduler.hpp"
#include "tl6g/topology.hpp"

namespace tl6g {

/// Fields shared by explicit pipelines and interaction-model defaults.
struct PipelineTemplate {
    KnowledgeKind kind = KnowledgeKind::Parameter;
    /// Falls back to the source SLA's granularity for the target.
    std::optional<InteractionClass> cls;
    Initiator initiator = Initiator::Orchestrator;
    QuantScheme scheme = QuantScheme::Float32;
    Schedule schedule;
    std::string content_tag;
};

struct PipelineConfig {
    std::string source;
    std::string target;
    PipelineTemplate spec;
    std::string origin;  ///< config path the pair came from, for diagnostics
};

struct InteractionModelConfig {
    InteractionModel model = InteractionModel::Cascade;
    std::vector<std::string> agents;
    std::optional<ParentMap> hierarchy;
    bool directed_cascade = false;
    PipelineTemplate defaults;
};

struct QuantizationConfig {
    AccuracyModel accuracy{100.0, -1.0, -1.0};
    RetuneModel retune{1.0, 1.0, true};
    std::optional<std::uint64_t> parameter_count;
};

/// How received knowledge changes the target's performance and training time.
struct EffectModelConfig {
    double negative_transfer_factor = 0.9;
    bool retune = true;
};

enum class EventKind { WindowOpen, KnowledgeUpdate, DemandRequest, JobDispatch, ResourceAction };

std::string_view to_string(EventKind k) noexcept;

/// A trace entry from the scenario file.
struct TraceEvent {
    double time = 0.0;
    EventKind kind = EventKind::KnowledgeUpdate;
    std::string agent;               ///< updating source, requesting target, or acting agent
    std::optional<std::string> source;  ///< demand requests: restrict to one source
    std::string node;                ///< resource actions
    std::string resource;
    double delta = 0.0;
};

/// Periodic updates (and demand requests) with seeded jitter.
struct SyntheticTrace {
    double update_period = 0.0;
    double update_jitter = 0.0;
    double demand_period = 0.0;
    double demand_jitter = 0.0;
};

struct Scenario {
    std::string name;
    Topology topology;
    std::map<std::string, LearningAgent> agents;
    std::map<std::string, SlaPolicy> slas;
    std::vector<PipelineConfig> pipelines;
    std::vector<InteractionModelConfig> interaction_models;
    OverheadParams overhead;
    std::optional<QuantizationConfig> quantization;
    EffectModelConfig effect;
    InitiationMode initiation;
    double homogeneity_threshold = kDefaultHomogeneityThreshold;
    int security_tolerance = 0;
    double conflict_window = kDefaultConflictWindow;
    double utilization_bin = kSecondsPerHour;
    bool non_rush_policy = false;
    std::uint64_t relational_bits = 65536;
    std::vector<TraceEvent> events;
    std::optional<SyntheticTrace> synthetic;
    double horizon = kSecondsPerDay;
    std::uint64_t seed = 0;
};

struct ValidationIssue {
    std::string path;  ///< e.g. "overhead.m_costs", "pipelines[1].schedule"
    std::string message;
    bool operator==(const ValidationIssue&) const = default;
};

class ValidationFailure : public Error {
public:
    explicit ValidationFailure(std::vector<ValidationIssue> issues);
    [[nodiscard]] const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ValidationIssue> issues_;
};

/// Every invariant violation in the scenario, in a stable order.
std::vector<ValidationIssue> validate_scenario(const Scenario& scenario);

struct PairRecord {
    std::string source;
    std::string target;
    KnowledgeKind kind = KnowledgeKind::Parameter;
    InteractionClass cls = InteractionClass::RealTime;
    TlCategory category;
    double similarity = 0.0;
    std::size_t jobs = 0;
    std::uint64_t bits = 0;
    double total_theta = 0.0;
    double p_tl = 0.0;
    double t_tl = 0.0;
    double eta = 1.0;
    double tau = 1.0;
    bool positive = false;
};

struct DenialRecord {
    std::string source;
    std::string target;
    KnowledgeKind kind = KnowledgeKind::Parameter;
    DenialReason reason = DenialReason::NotTrustedTarget;
};

/// Bits injected into the network per link and time bin. A job is charged
/// once, to the first link of its path ("local:<node>" for same-node pairs).
struct UtilizationCell {
    std::string link;
    double bin_start = 0.0;
    std::uint64_t bits = 0;
};

struct ReportTotals {
    double total_theta = 0.0;
    std::uint64_t total_bits = 0;
    std::size_t jobs = 0;
    std::size_t positive_pairs = 0;
};

struct SimReport {
    std::string scenario;
    std::uint64_t seed = 0;
    std::vector<PairRecord> pairs;
    std::vector<DenialRecord> denials;
    std::vector<Conflict> conflicts;
    std::vector<UtilizationCell> utilization;
    std::vector<TransferJob> dispatched;
    ReportTotals totals;
    std::size_t unscheduled = 0;  ///< jobs with no window left or past the horizon
    std::size_t events_processed = 0;
    Repository repository;  ///< artifacts published during the run
};

struct EffectOutcome {
    double p_tl = 0.0;
    double t_tl = 0.0;
};

/// Default effect of received knowledge on a target.
///
/// Nothing received leaves the baselines. A retuned parameter transfer takes
/// the retrain time. Performance follows the accuracy model when the domains
/// are similar enough, and degrades by the negative-transfer factor otherwise.
EffectOutcome effect_model(const LearningAgent& target,
                           const std::vector<KnowledgeArtifact>& received, QuantScheme scheme,
                           const std::optional<QuantizationConfig>& quantization,
                           double similarity, double homogeneity_threshold,
                           const EffectModelConfig& config);

/// Source-target pairs requested by a scenario: explicit pipelines first, then
/// interaction-model pairs not already present.
std::vector<PipelineConfig> expand_pipelines(const Scenario& scenario);

/// Throws ValidationFailure before processing any event.
SimReport run(const Scenario& scenario);

} // namespace tl6g

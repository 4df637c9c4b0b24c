// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tl6g/agents.hpp"
#include "tl6g/costmodel.hpp"
#include "tl6g/topology.hpp"

namespace tl6g {

/// Application-plane agreement for one agent.
struct SlaPolicy {
    std::string agent;
    std::set<std::string> trusted_sources;
    std::set<std::string> trusted_targets;
    /// Kinds this agent will share, each with a share fraction in (0,1].
    std::map<KnowledgeKind, double> shareable_kinds;
    int security_level = 0;
    InteractionClass default_class = InteractionClass::RealTime;
    std::map<std::string, InteractionClass> granularity;
    double max_e2e_delay = 1.0;        ///< seconds
    double required_bandwidth = 1e6;   ///< bits/s

    [[nodiscard]] InteractionClass class_for(const std::string& counterpart) const;
    [[nodiscard]] double share_fraction(KnowledgeKind kind) const;
    /// Problems keyed by field name.
    [[nodiscard]] std::vector<std::pair<std::string, std::string>> validate() const;
};

enum class Initiator { NetworkElement, Orchestrator, OttApplication };

std::string_view to_string(Initiator v) noexcept;
std::optional<Initiator> initiator_from_string(std::string_view s) noexcept;

struct PipelineRequest {
    std::string source;
    std::string target;
    KnowledgeKind kind = KnowledgeKind::Parameter;
    InteractionClass cls = InteractionClass::RealTime;
    Initiator initiator = Initiator::Orchestrator;
    std::uint64_t payload_bits = 1;
};

enum class DenialReason {
    NotTrustedTarget,
    NotTrustedSource,
    KindNotShareable,
    NoPath,
    DelayBoundViolated,
    BandwidthInsufficient,
    SecurityMismatch,
    // Raised before authorization by the simulation engine.
    InitiationNotAllowed,
    UnclassifiablePair,
    KindNotAdmissible,
};

std::string_view to_string(DenialReason v) noexcept;

/// A granted source-target knowledge pipe.
struct AuthorizedPipeline {
    std::string source;
    std::string target;
    KnowledgeKind kind = KnowledgeKind::Parameter;
    InteractionClass cls = InteractionClass::RealTime;
    Path path;
    double bandwidth = 0.0;           ///< path bottleneck, bits/s
    double delay = 0.0;               ///< path delay, s
    double required_bandwidth = 0.0;  ///< max of both SLAs
    double required_delay = 0.0;      ///< min of both SLAs
    int security_level = 0;           ///< max of both SLAs
    std::uint64_t payload_bits = 1;
};

struct AuthorizationDecision {
    bool granted = false;
    std::optional<AuthorizedPipeline> pipeline;
    std::optional<DenialReason> denial_reason;

    static AuthorizationDecision grant(AuthorizedPipeline p) { return {true, std::move(p), {}}; }
    static AuthorizationDecision deny(DenialReason r) { return {false, {}, r}; }
};

struct AuthorizationOptions {
    int security_tolerance = 0;
};

/// Checks, in order: source trusts target, target trusts source, kind is
/// shareable, a path exists, delay bound, bandwidth, security levels. The
/// first failing check is reported. Throws UnknownAgent when an agent or SLA
/// does not match the request.
AuthorizationDecision authorize(const PipelineRequest& request, const LearningAgent& source_agent,
                                const SlaPolicy& source_sla, const LearningAgent& target_agent,
                                const SlaPolicy& target_sla, const Topology& topology,
                                const AuthorizationOptions& options = {});

AuthorizationDecision authorize(const PipelineRequest& request,
                                const std::map<std::string, LearningAgent>& agents,
                                const std::map<std::string, SlaPolicy>& slas,
                                const Topology& topology, const AuthorizationOptions& options = {});

struct ResourceAction {
    std::string agent;
    std::string node;
    std::string resource;
    double delta = 0.0;
    double time = 0.0;
};

struct Conflict {
    std::string node;
    std::string resource;
    std::set<std::string> agents;
    double net_opposition = 0.0;
};

inline constexpr double kDefaultConflictWindow = 1.0;

/// Opposite-sign deltas from distinct agents on one (node, resource) within
/// a closed window [t, t + window]. One Conflict per (node, resource), sorted.
std::vector<Conflict> detect_conflicts(std::vector<ResourceAction> actions,
                                       double window = kDefaultConflictWindow);

struct InitiationMode {
    enum class Base { Centralized, Decentralized };
    Base base = Base::Decentralized;
    bool ott_enabled = false;
};

bool initiation_allowed(Initiator initiator, const InitiationMode& mode) noexcept;

} // namespace tl6g

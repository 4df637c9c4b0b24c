// SPDX-License-Identifier: Apache-2.0
#include "tl6g/governance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <tuple>

#include "tl6g/error.hpp"

namespace tl6g {

std::string_view to_string(Initiator v) noexcept {
    switch (v) {
    case Initiator::NetworkElement: return "NetworkElement";
    case Initiator::Orchestrator: return "Orchestrator";
    case Initiator::OttApplication: return "OttApplication";
    }
    return "?";
}

std::optional<Initiator> initiator_from_string(std::string_view s) noexcept {
    for (auto i : {Initiator::NetworkElement, Initiator::Orchestrator, Initiator::OttApplication}) {
        if (to_string(i) == s) return i;
    }
    return std::nullopt;
}

std::string_view to_string(DenialReason v) noexcept {
    switch (v) {
    case DenialReason::NotTrustedTarget: return "NotTrustedTarget";
    case DenialReason::NotTrustedSource: return "NotTrustedSource";
    case DenialReason::KindNotShareable: return "KindNotShareable";
    case DenialReason::NoPath: return "NoPath";
    case DenialReason::DelayBoundViolated: return "DelayBoundViolated";
    case DenialReason::BandwidthInsufficient: return "BandwidthInsufficient";
    case DenialReason::SecurityMismatch: return "SecurityMismatch";
    case DenialReason::InitiationNotAllowed: return "InitiationNotAllowed";
    case DenialReason::UnclassifiablePair: return "UnclassifiablePair";
    case DenialReason::KindNotAdmissible: return "KindNotAdmissible";
    }
    return "?";
}

InteractionClass SlaPolicy::class_for(const std::string& counterpart) const {
    auto it = granularity.find(counterpart);
    return it == granularity.end() ? default_class : it->second;
}

double SlaPolicy::share_fraction(KnowledgeKind kind) const {
    auto it = shareable_kinds.find(kind);
    return it == shareable_kinds.end() ? 0.0 : it->second;
}

std::vector<std::pair<std::string, std::string>> SlaPolicy::validate() const {
    std::vector<std::pair<std::string, std::string>> problems;
    for (const auto& [kind, fraction] : shareable_kinds) {
        if (!(fraction > 0.0 && fraction <= 1.0)) {
            problems.emplace_back("shareable_kinds." + std::string(to_string(kind)),
                                  "share fraction must lie in (0,1]");
        }
    }
    if (security_level < 0) problems.emplace_back("security_level", "must be >= 0");
    if (!(max_e2e_delay > 0.0) || !std::isfinite(max_e2e_delay)) {
        problems.emplace_back("max_e2e_delay", "must be > 0");
    }
    if (!(required_bandwidth > 0.0) || !std::isfinite(required_bandwidth)) {
        problems.emplace_back("required_bandwidth", "must be > 0");
    }
    return problems;
}

AuthorizationDecision authorize(const PipelineRequest& request, const LearningAgent& source_agent,
                                const SlaPolicy& source_sla, const LearningAgent& target_agent,
                                const SlaPolicy& target_sla, const Topology& topology,
                                const AuthorizationOptions& options) {
    if (source_agent.id != request.source || source_sla.agent != request.source) {
        throw Error(ErrorCode::UnknownAgent, "source '" + request.source + "'");
    }
    if (target_agent.id != request.target || target_sla.agent != request.target) {
        throw Error(ErrorCode::UnknownAgent, "target '" + request.target + "'");
    }

    if (!source_sla.trusted_targets.contains(request.target)) {
        return AuthorizationDecision::deny(DenialReason::NotTrustedTarget);
    }
    if (!target_sla.trusted_sources.contains(request.source)) {
        return AuthorizationDecision::deny(DenialReason::NotTrustedSource);
    }
    if (!source_sla.shareable_kinds.contains(request.kind)) {
        return AuthorizationDecision::deny(DenialReason::KindNotShareable);
    }
    Path path;
    try {
        path = topology.path_between(source_agent.node, target_agent.node);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoPath) throw;
        return AuthorizationDecision::deny(DenialReason::NoPath);
    }
    const double delay_bound = std::min(source_sla.max_e2e_delay, target_sla.max_e2e_delay);
    if (path.e2e_delay > delay_bound) {
        return AuthorizationDecision::deny(DenialReason::DelayBoundViolated);
    }
    const double bandwidth_need =
        std::max(source_sla.required_bandwidth, target_sla.required_bandwidth);
    if (path.e2e_bandwidth < bandwidth_need) {
        return AuthorizationDecision::deny(DenialReason::BandwidthInsufficient);
    }
    if (std::abs(source_sla.security_level - target_sla.security_level) >
        options.security_tolerance) {
        return AuthorizationDecision::deny(DenialReason::SecurityMismatch);
    }

    AuthorizedPipeline p;
    p.source = request.source;
    p.target = request.target;
    p.kind = request.kind;
    p.cls = request.cls;
    p.bandwidth = path.e2e_bandwidth;
    p.delay = path.e2e_delay;
    p.path = std::move(path);
    p.required_bandwidth = bandwidth_need;
    p.required_delay = delay_bound;
    p.security_level = std::max(source_sla.security_level, target_sla.security_level);
    p.payload_bits = request.payload_bits;
    return AuthorizationDecision::grant(std::move(p));
}

AuthorizationDecision authorize(const PipelineRequest& request,
                                const std::map<std::string, LearningAgent>& agents,
                                const std::map<std::string, SlaPolicy>& slas,
                                const Topology& topology, const AuthorizationOptions& options) {
    auto lookup = [](const auto& map, const std::string& id) -> const auto& {
        auto it = map.find(id);
        if (it == map.end()) throw Error(ErrorCode::UnknownAgent, "agent '" + id + "'");
        return it->second;
    };
    return authorize(request, lookup(agents, request.source), lookup(slas, request.source),
                     lookup(agents, request.target), lookup(slas, request.target), topology,
                     options);
}

std::vector<Conflict> detect_conflicts(std::vector<ResourceAction> actions, double window) {
    if (!(window > 0.0) || !std::isfinite(window)) {
        throw Error(ErrorCode::InvalidParams, "conflict window must be > 0");
    }
    // Canonical order makes the result independent of input order.
    std::sort(actions.begin(), actions.end(), [](const ResourceAction& x, const ResourceAction& y) {
        return std::tie(x.node, x.resource, x.time, x.agent, x.delta) <
               std::tie(y.node, y.resource, y.time, y.agent, y.delta);
    });

    std::vector<Conflict> out;
    std::size_t begin = 0;
    while (begin < actions.size()) {
        std::size_t end = begin;
        while (end < actions.size() && actions[end].node == actions[begin].node &&
               actions[end].resource == actions[begin].resource) {
            ++end;
        }

        Conflict conflict{actions[begin].node, actions[begin].resource, {}, 0.0};
        bool found = false;
        for (std::size_t i = begin; i < end; ++i) {
            const double horizon = actions[i].time + window;
            double positive = 0.0;
            double negative = 0.0;
            std::set<std::string> pos_agents;
            std::set<std::string> neg_agents;
            for (std::size_t j = i; j < end && actions[j].time <= horizon; ++j) {
                const auto& a = actions[j];
                if (a.delta > 0.0) {
                    positive += a.delta;
                    pos_agents.insert(a.agent);
                } else if (a.delta < 0.0) {
                    negative += a.delta;
                    neg_agents.insert(a.agent);
                }
            }
            const bool opposed =
                !pos_agents.empty() && !neg_agents.empty() &&
                !(pos_agents.size() == 1 && neg_agents.size() == 1 && pos_agents == neg_agents);
            if (!opposed) continue;
            found = true;
            conflict.agents.insert(pos_agents.begin(), pos_agents.end());
            conflict.agents.insert(neg_agents.begin(), neg_agents.end());
            conflict.net_opposition =
                std::max(conflict.net_opposition, std::min(positive, -negative));
        }
        if (found) out.push_back(std::move(conflict));
        begin = end;
    }
    return out;
}

bool initiation_allowed(Initiator initiator, const InitiationMode& mode) noexcept {
    switch (initiator) {
    case Initiator::Orchestrator: return true;
    case Initiator::NetworkElement: return mode.base == InitiationMode::Base::Decentralized;
    case Initiator::OttApplication: return mode.ott_enabled;
    }
    return false;
}

} // namespace tl6g

// SPDX-License-Identifier: Apache-2.0
#include "tl6g/simengine.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <set>
#include <tuple>

namespace tl6g {

std::string_view to_string(EventKind k) noexcept {
    switch (k) {
    case EventKind::WindowOpen: return "WindowOpen";
    case EventKind::KnowledgeUpdate: return "KnowledgeUpdate";
    case EventKind::DemandRequest: return "DemandRequest";
    case EventKind::JobDispatch: return "JobDispatch";
    case EventKind::ResourceAction: return "ResourceAction";
    }
    return "?";
}

ValidationFailure::ValidationFailure(std::vector<ValidationIssue> issues)
    : Error(ErrorCode::ValidationError,
            issues.empty() ? std::string("invalid scenario")
                           : issues.front().path + ": " + issues.front().message),
      issues_(std::move(issues)) {}

std::vector<PipelineConfig> expand_pipelines(const Scenario& scenario) {
    std::vector<PipelineConfig> out;
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 0; i < scenario.pipelines.size(); ++i) {
        PipelineConfig p = scenario.pipelines[i];
        if (p.origin.empty()) p.origin = "pipelines[" + std::to_string(i) + "]";
        seen.emplace(p.source, p.target);
        out.push_back(std::move(p));
    }
    for (std::size_t m = 0; m < scenario.interaction_models.size(); ++m) {
        const auto& model = scenario.interaction_models[m];
        PairOptions options;
        options.directed_cascade = model.directed_cascade;
        options.tier_of = [&scenario](const std::string& agent) {
            auto it = scenario.agents.find(agent);
            if (it == scenario.agents.end() || !scenario.topology.has_node(it->second.node)) {
                return Tier::EndUser;
            }
            return scenario.topology.node(it->second.node).tier;
        };
        for (auto& [source, target] :
             generate_pairs(model.model, model.agents, model.hierarchy, options)) {
            if (!seen.emplace(source, target).second) continue;
            out.push_back(PipelineConfig{source, target, model.defaults,
                                         "interaction_model[" + std::to_string(m) + "]"});
        }
    }
    return out;
}

namespace {

void add_issue(std::vector<ValidationIssue>& issues, std::string path, std::string message) {
    issues.push_back({std::move(path), std::move(message)});
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

void validate_template(const PipelineTemplate& spec, const std::string& path,
                       std::vector<ValidationIssue>& issues) {
    for (const auto& problem : validate_schedule(spec.schedule)) {
        add_issue(issues, path + ".schedule", problem);
    }
    if (spec.cls == InteractionClass::NonRealTime && spec.schedule.empty()) {
        add_issue(issues, path + ".schedule", "NonRealTime pipelines need at least one window");
    }
}

} // namespace

std::vector<ValidationIssue> validate_scenario(const Scenario& s) {
    std::vector<ValidationIssue> issues;

    if (!(s.horizon > 0.0) || !std::isfinite(s.horizon)) add_issue(issues, "horizon", "must be > 0");
    if (!(s.homogeneity_threshold >= 0.0 && s.homogeneity_threshold <= 1.0)) {
        add_issue(issues, "settings.homogeneity_threshold", "must lie in [0,1]");
    }
    if (s.security_tolerance < 0) add_issue(issues, "settings.security_tolerance", "must be >= 0");
    if (!(s.conflict_window > 0.0)) add_issue(issues, "settings.conflict_window", "must be > 0");
    if (!(s.utilization_bin > 0.0)) add_issue(issues, "settings.utilization_bin", "must be > 0");
    if (s.relational_bits == 0) add_issue(issues, "settings.relational_bits", "must be > 0");
    if (!(s.effect.negative_transfer_factor >= 0.0 && s.effect.negative_transfer_factor < 1.0)) {
        add_issue(issues, "settings.negative_transfer_factor", "must lie in [0,1)");
    }

    for (const auto& [field, message] : s.overhead.validate()) {
        add_issue(issues, "overhead." + field, message);
    }

    for (const auto& [id, agent] : s.agents) {
        const std::string path = "agents." + id;
        if (agent.id != id) add_issue(issues, path + ".id", "does not match its key");
        if (!s.topology.has_node(agent.node)) add_issue(issues, path + ".node", "unknown node '" + agent.node + "'");
        for (const auto& problem : validate_agent(agent)) add_issue(issues, path, problem);
    }

    for (const auto& [id, sla] : s.slas) {
        const std::string path = "slas." + id;
        if (!s.agents.contains(id)) add_issue(issues, path, "SLA for unknown agent");
        for (const auto& [field, message] : sla.validate()) add_issue(issues, path + "." + field, message);
        for (const auto& a : sla.trusted_sources) {
            if (!s.agents.contains(a)) add_issue(issues, path + ".trusted_sources", "unknown agent '" + a + "'");
        }
        for (const auto& a : sla.trusted_targets) {
            if (!s.agents.contains(a)) add_issue(issues, path + ".trusted_targets", "unknown agent '" + a + "'");
        }
    }

    if (s.quantization) {
        const auto& r = s.quantization->retune;
        if (!(r.retrain_time > 0.0)) add_issue(issues, "quantization.retrain_time", "must be > 0");
        if (!(r.full_train_time > 0.0)) add_issue(issues, "quantization.full_train_time", "must be > 0");
        if (r.retrain_time > r.full_train_time) {
            add_issue(issues, "quantization.retrain_time", "must not exceed full_train_time");
        }
        if (s.quantization->parameter_count && *s.quantization->parameter_count == 0) {
            add_issue(issues, "quantization.parameter_count", "must be > 0");
        }
    }

    std::set<std::pair<std::string, std::string>> explicit_pairs;
    for (std::size_t i = 0; i < s.pipelines.size(); ++i) {
        const auto& p = s.pipelines[i];
        const std::string path = "pipelines[" + std::to_string(i) + "]";
        if (!s.agents.contains(p.source)) add_issue(issues, path + ".source", "unknown agent '" + p.source + "'");
        if (!s.agents.contains(p.target)) add_issue(issues, path + ".target", "unknown agent '" + p.target + "'");
        if (p.source == p.target) add_issue(issues, path, "source and target must differ");
        if (!explicit_pairs.emplace(p.source, p.target).second) {
            add_issue(issues, path, "duplicate source-target pair");
        }
        validate_template(p.spec, path, issues);
    }

    for (std::size_t m = 0; m < s.interaction_models.size(); ++m) {
        const auto& model = s.interaction_models[m];
        const std::string path = "interaction_model[" + std::to_string(m) + "]";
        if (model.agents.empty()) add_issue(issues, path + ".agents", "must not be empty");
        for (const auto& a : model.agents) {
            if (!s.agents.contains(a)) add_issue(issues, path + ".agents", "unknown agent '" + a + "'");
        }
        if (model.model == InteractionModel::Hierarchical) {
            if (!model.hierarchy) {
                add_issue(issues, path + ".hierarchy", "required for Hierarchical models");
            } else {
                for (const auto& [child, parent] : *model.hierarchy) {
                    if (!s.agents.contains(child) || !s.agents.contains(parent)) {
                        add_issue(issues, path + ".hierarchy", "unknown agent in '" + child + "' -> '" + parent + "'");
                    }
                }
            }
        }
        validate_template(model.defaults, path + ".defaults", issues);
    }

    // Pair-level checks need resolvable agents; stop here otherwise.
    if (!issues.empty()) return issues;

    for (const auto& p : expand_pipelines(s)) {
        const auto& source = s.agents.at(p.source);
        const auto& target = s.agents.at(p.target);
        if (!s.slas.contains(p.source)) add_issue(issues, "slas." + p.source, "missing SLA for pipeline agent");
        if (!s.slas.contains(p.target)) add_issue(issues, "slas." + p.target, "missing SLA for pipeline agent");
        if (!(target.baseline_performance > 0.0)) {
            add_issue(issues, "agents." + p.target + ".baseline_performance", "transfer targets need a baseline > 0");
        }
        const InteractionClass cls = p.spec.cls.value_or(
            s.slas.contains(p.source) ? s.slas.at(p.source).class_for(p.target) : InteractionClass::RealTime);
        if (cls == InteractionClass::NonRealTime && p.spec.schedule.empty()) {
            add_issue(issues, p.origin + ".schedule", "NonRealTime pipelines need at least one window");
        }
        try {
            ExtractionContext ctx;
            ctx.scheme = p.spec.scheme;
            ctx.relational_bits = s.relational_bits;
            (void)extract_knowledge(source, p.spec.kind, 1.0, ctx);
        } catch (const Error& e) {
            add_issue(issues, p.origin + ".kind", e.what());
        }
    }

    for (std::size_t i = 0; i < s.events.size(); ++i) {
        const auto& e = s.events[i];
        const std::string path = "events[" + std::to_string(i) + "]";
        if (!std::isfinite(e.time) || e.time < 0.0 || e.time > s.horizon) {
            add_issue(issues, path + ".time", "must lie in [0, horizon]");
        }
        if (!s.agents.contains(e.agent)) add_issue(issues, path + ".agent", "unknown agent '" + e.agent + "'");
        if (e.source && !s.agents.contains(*e.source)) {
            add_issue(issues, path + ".source", "unknown agent '" + *e.source + "'");
        }
        if (e.kind == EventKind::ResourceAction && !s.topology.has_node(e.node)) {
            add_issue(issues, path + ".node", "unknown node '" + e.node + "'");
        }
        if (e.kind != EventKind::KnowledgeUpdate && e.kind != EventKind::DemandRequest &&
            e.kind != EventKind::ResourceAction) {
            add_issue(issues, path + ".kind", "only KnowledgeUpdate, DemandRequest and ResourceAction may be traced");
        }
    }

    if (s.synthetic) {
        const auto& t = *s.synthetic;
        if (!finite_nonneg(t.update_period) || !finite_nonneg(t.demand_period) ||
            !finite_nonneg(t.update_jitter) || !finite_nonneg(t.demand_jitter)) {
            add_issue(issues, "synthetic", "periods and jitters must be >= 0");
        }
    }
    return issues;
}

EffectOutcome effect_model(const LearningAgent& target,
                           const std::vector<KnowledgeArtifact>& received, QuantScheme scheme,
                           const std::optional<QuantizationConfig>& quantization,
                           double similarity, double homogeneity_threshold,
                           const EffectModelConfig& config) {
    EffectOutcome out{target.baseline_performance, target.baseline_training_time};
    if (received.empty()) return out;

    const bool parameter = std::any_of(received.begin(), received.end(), [](const auto& a) {
        return a.kind == KnowledgeKind::Parameter;
    });
    const bool retuned = parameter && config.retune && quantization.has_value();
    if (retuned) out.t_tl = quantization->retune.retrain_time;

    if (similarity >= homogeneity_threshold) {
        if (quantization) {
            const QuantScheme effective = parameter ? scheme : QuantScheme::Float32;
            const bool restored = retuned && quantization->retune.restores_accuracy;
            out.p_tl = predicted_accuracy(quantization->accuracy, effective, restored) / 100.0;
        }
    } else {
        out.p_tl = target.baseline_performance * config.negative_transfer_factor;
    }
    return out;
}

namespace {

struct QueuedEvent {
    double time;
    EventKind kind;
    std::string subject;
    std::uint64_t seq;
    std::size_t payload;

    bool operator>(const QueuedEvent& o) const {
        return std::tie(time, kind, subject, seq) > std::tie(o.time, o.kind, o.subject, o.seq);
    }
};

struct QueuedJob {
    TransferJob job;
    std::string artifact;
};

struct PipelineState {
    PipelineConfig config;
    std::size_t record = 0;
    Tier source_level = Tier::RadioAccess;
    int source_security = 0;
    double share_fraction = 1.0;
    std::string content_tag;
    std::optional<std::string> last_artifact;
    std::vector<KnowledgeArtifact> received;
};

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<TraceEvent> synthesize(const SyntheticTrace& trace, double horizon, std::uint64_t seed,
                                   const std::vector<TlPipeline>& pipelines) {
    std::set<std::string> sources;
    std::set<std::string> demand_targets;
    for (const auto& p : pipelines) {
        sources.insert(p.auth.source);
        if (p.auth.cls == InteractionClass::OnDemand) demand_targets.insert(p.auth.target);
    }
    std::mt19937_64 rng(seed);
    std::vector<TraceEvent> out;
    auto emit = [&](const std::set<std::string>& agents, double period, double jitter,
                    EventKind kind) {
        if (!(period > 0.0)) return;
        for (const auto& agent : agents) {
            for (double base = 0.0; base <= horizon; base += period) {
                const double t = base + jitter * uniform01(rng);
                if (t <= horizon) {
                    TraceEvent e;
                    e.time = t;
                    e.kind = kind;
                    e.agent = agent;
                    out.push_back(std::move(e));
                }
            }
        }
    };
    emit(sources, trace.update_period, trace.update_jitter, EventKind::KnowledgeUpdate);
    emit(demand_targets, trace.demand_period, trace.demand_jitter, EventKind::DemandRequest);
    return out;
}

} // namespace

SimReport run(const Scenario& scenario) {
    if (auto issues = validate_scenario(scenario); !issues.empty()) {
        throw ValidationFailure(std::move(issues));
    }

    SimReport report;
    report.scenario = scenario.name;
    report.seed = scenario.seed;

    // Authorization: one pipeline per requested pair.
    std::vector<TlPipeline> pipelines;
    std::vector<PipelineState> states;
    for (auto& config : expand_pipelines(scenario)) {
        const auto& source = scenario.agents.at(config.source);
        const auto& target = scenario.agents.at(config.target);
        const auto& source_sla = scenario.slas.at(config.source);

        PipelineRequest request;
        request.source = config.source;
        request.target = config.target;
        request.kind = config.spec.kind;
        request.cls = config.spec.cls.value_or(source_sla.class_for(config.target));
        request.initiator = config.spec.initiator;

        auto deny = [&](DenialReason reason) {
            report.denials.push_back({config.source, config.target, config.spec.kind, reason});
        };
        if (!initiation_allowed(request.initiator, scenario.initiation)) {
            deny(DenialReason::InitiationNotAllowed);
            continue;
        }
        TlCategory category;
        try {
            category = classify(source, target, request.kind, scenario.homogeneity_threshold);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::UnclassifiablePair) throw;
            deny(DenialReason::UnclassifiablePair);
            continue;
        }
        if (!admissible_knowledge_kinds(category).contains(request.kind)) {
            deny(DenialReason::KindNotAdmissible);
            continue;
        }

        PipelineState state;
        state.source_level = scenario.topology.node(source.node).tier;
        state.source_security = source_sla.security_level;
        state.share_fraction = source_sla.share_fraction(request.kind);
        if (!(state.share_fraction > 0.0)) state.share_fraction = 1.0;
        state.content_tag = config.spec.content_tag.empty()
                                ? source.purpose + "." + std::string(to_string(request.kind))
                                : config.spec.content_tag;

        ExtractionContext ctx;
        ctx.scheme = config.spec.scheme;
        ctx.relational_bits = scenario.relational_bits;
        request.payload_bits =
            extract_knowledge(source, request.kind, state.share_fraction, ctx).payload_bits;

        auto decision = authorize(request, scenario.agents, scenario.slas, scenario.topology,
                                  {scenario.security_tolerance});
        if (!decision.granted) {
            deny(*decision.denial_reason);
            continue;
        }

        TlPipeline pipeline;
        pipeline.id = pipelines.size();
        pipeline.rush = scenario.topology.path_load(decision.pipeline->path);
        pipeline.auth = std::move(*decision.pipeline);
        pipeline.schedule = config.spec.schedule;

        PairRecord record;
        record.source = config.source;
        record.target = config.target;
        record.kind = request.kind;
        record.cls = request.cls;
        record.category = category;
        record.similarity = effective_similarity(source.domain, target.domain);
        state.record = report.pairs.size();
        report.pairs.push_back(record);

        state.config = std::move(config);
        states.push_back(std::move(state));
        pipelines.push_back(std::move(pipeline));
    }

    Scheduler scheduler(scenario.overhead, pipelines);
    Repository& repository = report.repository;

    // Event queue ordered by (time, kind, subject, insertion).
    std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, std::greater<>> queue;
    std::uint64_t seq = 0;
    std::vector<TraceEvent> trace = scenario.events;
    if (scenario.synthetic) {
        auto synthetic = synthesize(*scenario.synthetic, scenario.horizon, scenario.seed, pipelines);
        trace.insert(trace.end(), synthetic.begin(), synthetic.end());
    }
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace[i].time < 0.0 || trace[i].time > scenario.horizon) continue;
        queue.push({trace[i].time, trace[i].kind, trace[i].agent, seq++, i});
    }
    for (const auto& p : pipelines) {
        if (p.auth.cls != InteractionClass::NonRealTime) continue;
        for (const auto& w : p.schedule) {
            if (w.start >= 0.0 && w.start <= scenario.horizon) {
                queue.push({w.start, EventKind::WindowOpen, p.auth.source + "->" + p.auth.target,
                            seq++, p.id});
            }
        }
    }

    std::vector<QueuedJob> jobs;
    std::vector<ResourceAction> actions;
    std::map<std::pair<std::string, double>, std::uint64_t> utilization;
    std::map<std::string, std::uint64_t> update_counts;

    auto enqueue_job = [&](TransferJob job, const std::string& artifact) {
        if (job.dispatch_time > scenario.horizon) {
            ++report.unscheduled;
            return;
        }
        const std::string subject = job.source + "->" + job.target;
        const double when = job.dispatch_time;
        jobs.push_back({std::move(job), artifact});
        queue.push({when, EventKind::JobDispatch, subject, seq++, jobs.size() - 1});
    };

    while (!queue.empty()) {
        const QueuedEvent ev = queue.top();
        queue.pop();
        ++report.events_processed;

        switch (ev.kind) {
        case EventKind::WindowOpen:
            break;

        case EventKind::KnowledgeUpdate: {
            const std::string& agent_id = trace[ev.payload].agent;
            const auto& agent = scenario.agents.at(agent_id);
            const std::uint64_t n = update_counts[agent_id]++;
            for (const auto& p : pipelines) {
                if (p.auth.source != agent_id) continue;
                auto& state = states[p.id];
                ExtractionContext ctx;
                ctx.artifact_id = agent_id + "#" + std::to_string(n) + "/" +
                                  std::string(to_string(p.auth.kind)) + "/" +
                                  std::string(to_string(state.config.spec.scheme)) + "/" +
                                  state.content_tag;
                ctx.level = state.source_level;
                ctx.content_tag = state.content_tag;
                ctx.timestamp = ev.time;
                ctx.security_level = state.source_security;
                ctx.scheme = state.config.spec.scheme;
                ctx.relational_bits = scenario.relational_bits;
                state.last_artifact = repository.store(
                    extract_knowledge(agent, p.auth.kind, state.share_fraction, ctx));

                std::vector<TransferJob> produced;
                try {
                    produced = scheduler.schedule_update(p.id, ev.time);
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::NoFutureWindow) throw;
                    ++report.unscheduled;
                    continue;
                }
                if (scenario.non_rush_policy) {
                    produced = plan_non_rush(std::move(produced), pipelines, scenario.overhead);
                }
                for (auto& job : produced) enqueue_job(std::move(job), *state.last_artifact);
            }
            break;
        }

        case EventKind::DemandRequest: {
            const auto& request = trace[ev.payload];
            for (const auto& p : pipelines) {
                if (p.auth.target != request.agent || p.auth.cls != InteractionClass::OnDemand) {
                    continue;
                }
                if (request.source && p.auth.source != *request.source) continue;
                auto outcome = scheduler.on_demand_request(p.id, ev.time);
                if (auto* job = std::get_if<TransferJob>(&outcome)) {
                    enqueue_job(std::move(*job), *states[p.id].last_artifact);
                }
            }
            break;
        }

        case EventKind::JobDispatch: {
            const QueuedJob& queued = jobs[ev.payload];
            const TlPipeline& p = pipelines[queued.job.pipeline];
            auto& state = states[p.id];
            auto& record = report.pairs[state.record];
            record.jobs += 1;
            record.bits += queued.job.payload_bits;
            record.total_theta += queued.job.theta;
            state.received.push_back(*repository.get(queued.artifact));

            const std::string link = p.auth.path.links.empty()
                                         ? "local:" + scenario.agents.at(p.auth.source).node
                                         : p.auth.path.links.front();
            const double bin =
                std::floor(ev.time / scenario.utilization_bin) * scenario.utilization_bin;
            utilization[{link, bin}] += queued.job.payload_bits;
            report.dispatched.push_back(queued.job);
            break;
        }

        case EventKind::ResourceAction: {
            const auto& e = trace[ev.payload];
            actions.push_back({e.agent, e.node, e.resource, e.delta, e.time});
            break;
        }
        }
    }

    report.conflicts = detect_conflicts(std::move(actions), scenario.conflict_window);

    for (const auto& state : states) {
        auto& record = report.pairs[state.record];
        const auto& target = scenario.agents.at(record.target);
        const auto outcome =
            effect_model(target, state.received, state.config.spec.scheme, scenario.quantization,
                         record.similarity, scenario.homogeneity_threshold, scenario.effect);
        record.p_tl = outcome.p_tl;
        record.t_tl = outcome.t_tl;
        record.eta = eta(outcome.p_tl, target.baseline_performance);
        record.tau = tau(target.baseline_training_time, outcome.t_tl);
        record.positive = is_positive_tl(record.eta, record.tau);
    }

    for (const auto& [key, bits] : utilization) {
        report.utilization.push_back({key.first, key.second, bits});
    }
    for (const auto& record : report.pairs) {
        report.totals.total_theta += record.total_theta;
        report.totals.total_bits += record.bits;
        report.totals.jobs += record.jobs;
        if (record.positive) ++report.totals.positive_pairs;
    }
    return report;
}

} // namespace tl6g

// SPDX-License-Identifier: Apache-2.0
#include "tl6g/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "tl6g/error.hpp"

namespace tl6g {

std::vector<std::string> validate_schedule(const Schedule& schedule) {
    std::vector<std::string> problems;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const auto& w = schedule[i];
        if (!std::isfinite(w.start) || !std::isfinite(w.end) || !(w.end > w.start)) {
            problems.push_back("window " + std::to_string(i) + " must have end > start");
        }
        if (i > 0 && w.start < schedule[i - 1].end) {
            problems.push_back("window " + std::to_string(i) +
                               " overlaps or precedes the previous window");
        }
    }
    return problems;
}

double earliest_dispatch(const Schedule& schedule, double t) {
    for (const auto& w : schedule) {
        if (t >= w.start && t < w.end) return t;
        if (w.start >= t) return w.start;
    }
    throw Error(ErrorCode::NoFutureWindow, "no window at or after t=" + std::to_string(t));
}

double job_overhead(const TlPipeline& pipeline, double time, const OverheadParams& params) {
    const auto& a = pipeline.auth;
    return compute_overhead(a.required_bandwidth, a.required_delay, a.cls, a.security_level,
                            params, pipeline.rush.value_at(time));
}

void sort_jobs(std::vector<TransferJob>& jobs) {
    std::stable_sort(jobs.begin(), jobs.end(), [](const TransferJob& x, const TransferJob& y) {
        return std::tie(x.dispatch_time, x.source, x.target, x.pipeline) <
               std::tie(y.dispatch_time, y.source, y.target, y.pipeline);
    });
}

Scheduler::Scheduler(OverheadParams params, std::vector<TlPipeline> pipelines)
    : params_(std::move(params)),
      pipelines_(std::move(pipelines)),
      available_(pipelines_.size(), false),
      pending_(pipelines_.size()) {
    for (std::size_t i = 0; i < pipelines_.size(); ++i) pipelines_[i].id = i;
}

const TlPipeline& Scheduler::at(std::size_t pipeline) const {
    if (pipeline >= pipelines_.size()) {
        throw Error(ErrorCode::InvalidParams, "pipeline " + std::to_string(pipeline));
    }
    return pipelines_[pipeline];
}

TransferJob Scheduler::make_job(const TlPipeline& p, double trigger, double dispatch) const {
    TransferJob job;
    job.pipeline = p.id;
    job.source = p.auth.source;
    job.target = p.auth.target;
    job.kind = p.auth.kind;
    job.cls = p.auth.cls;
    job.trigger_time = trigger;
    job.dispatch_time = dispatch;
    job.payload_bits = p.auth.payload_bits;
    job.theta = job_overhead(p, dispatch, params_);
    return job;
}

std::vector<TransferJob> Scheduler::schedule_update(std::size_t pipeline, double t) {
    const TlPipeline& p = at(pipeline);
    std::vector<TransferJob> jobs;
    switch (p.auth.cls) {
    case InteractionClass::RealTime:
        jobs.push_back(make_job(p, t, t));
        break;
    case InteractionClass::NonRealTime:
        jobs.push_back(make_job(p, t, earliest_dispatch(p.schedule, t)));
        break;
    case InteractionClass::OnDemand:
        available_[pipeline] = true;
        while (!pending_[pipeline].empty()) {
            jobs.push_back(make_job(p, pending_[pipeline].front().request_time, t));
            pending_[pipeline].pop_front();
        }
        break;
    }
    return jobs;
}

std::vector<TransferJob> Scheduler::on_knowledge_update(const std::string& source, double t) {
    std::vector<TransferJob> jobs;
    for (const auto& p : pipelines_) {
        if (p.auth.source != source) continue;
        auto produced = schedule_update(p.id, t);
        jobs.insert(jobs.end(), produced.begin(), produced.end());
    }
    sort_jobs(jobs);
    return jobs;
}

std::variant<TransferJob, Pending> Scheduler::on_demand_request(std::size_t pipeline, double t) {
    const TlPipeline& p = at(pipeline);
    if (p.auth.cls != InteractionClass::OnDemand) {
        throw Error(ErrorCode::WrongClass, "pipeline " + p.auth.source + "->" + p.auth.target +
                                               " is " + std::string(to_string(p.auth.cls)));
    }
    if (available_[pipeline]) return make_job(p, t, t);
    Pending pending{pipeline, t};
    pending_[pipeline].push_back(pending);
    return pending;
}

bool Scheduler::knowledge_available(std::size_t pipeline) const {
    at(pipeline);
    return available_[pipeline];
}

std::size_t Scheduler::pending_count(std::size_t pipeline) const {
    at(pipeline);
    return pending_[pipeline].size();
}

std::vector<TransferJob> plan_non_rush(std::vector<TransferJob> jobs,
                                       const std::vector<TlPipeline>& pipelines,
                                       const OverheadParams& params) {
    for (auto& job : jobs) {
        if (job.cls != InteractionClass::NonRealTime || job.pipeline >= pipelines.size()) continue;
        const TlPipeline& p = pipelines[job.pipeline];

        // The cost is a step function of time, so the minimum over each
        // window is attained at its lower bound or at a step boundary.
        std::vector<double> candidates;
        for (const auto& w : p.schedule) {
            const double lo = std::max(w.start, job.trigger_time);
            if (!(lo < w.end)) continue;
            candidates.push_back(lo);
            auto inner = p.rush.breakpoints_in(lo, w.end);
            candidates.insert(candidates.end(), inner.begin(), inner.end());
        }
        if (candidates.empty()) continue;
        std::sort(candidates.begin(), candidates.end());

        double best_time = candidates.front();
        double best_cost = interaction_cost(InteractionClass::NonRealTime, params,
                                            p.rush.value_at(best_time));
        for (double c : candidates) {
            const double cost =
                interaction_cost(InteractionClass::NonRealTime, params, p.rush.value_at(c));
            if (cost < best_cost) {
                best_cost = cost;
                best_time = c;
            }
        }
        job.dispatch_time = best_time;
        job.theta = job_overhead(p, best_time, params);
    }
    sort_jobs(jobs);
    return jobs;
}

} // namespace tl6g

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "tl6g/costmodel.hpp"
#include "tl6g/governance.hpp"
#include "tl6g/rush_profile.hpp"

namespace tl6g {

/// Half-open dispatch window [start, end) in seconds.
struct Window {
    double start = 0.0;
    double end = 0.0;
    bool operator==(const Window&) const = default;
};

using Schedule = std::vector<Window>;

/// Empty when windows are sorted, non-overlapping and non-empty.
std::vector<std::string> validate_schedule(const Schedule& schedule);

/// t itself when it lies inside a window, otherwise the earliest window start
/// after t. Throws NoFutureWindow.
double earliest_dispatch(const Schedule& schedule, double t);

/// An authorized pipeline plus what the scheduler needs to place its jobs.
struct TlPipeline {
    std::size_t id = 0;
    AuthorizedPipeline auth;
    Schedule schedule;  ///< NonRealTime only
    RushProfile rush;   ///< multiplier applied to the interaction cost
};

struct TransferJob {
    std::size_t pipeline = 0;
    std::string source;
    std::string target;
    KnowledgeKind kind = KnowledgeKind::Parameter;
    InteractionClass cls = InteractionClass::RealTime;
    double trigger_time = 0.0;
    double dispatch_time = 0.0;
    std::uint64_t payload_bits = 1;
    double theta = 0.0;
};

struct Pending {
    std::size_t pipeline = 0;
    double request_time = 0.0;
};

/// Overhead of dispatching on `pipeline` at `time`, using the rush multiplier
/// in effect then.
double job_overhead(const TlPipeline& pipeline, double time, const OverheadParams& params);

/// Sort key used for every job list: (dispatch, source, target, pipeline).
void sort_jobs(std::vector<TransferJob>& jobs);

/// Event-driven placement of transfer jobs for a fixed set of pipelines.
///
/// Real-time pipelines dispatch on the update, non-real-time ones at the next
/// open window, on-demand ones when the target asks and the source has
/// published at least once. Pending requests queue FIFO per pipeline.
/// Not thread-safe; one scheduler per run.
class Scheduler {
public:
    Scheduler(OverheadParams params, std::vector<TlPipeline> pipelines);

    [[nodiscard]] const std::vector<TlPipeline>& pipelines() const noexcept { return pipelines_; }
    [[nodiscard]] const OverheadParams& params() const noexcept { return params_; }

    /// Jobs produced by one pipeline for an update of its source at t. For
    /// on-demand pipelines this returns the resolved pending requests.
    std::vector<TransferJob> schedule_update(std::size_t pipeline, double t);

    /// All pipelines originating at `source`. Throws NoFutureWindow if any
    /// non-real-time pipeline has no window left.
    std::vector<TransferJob> on_knowledge_update(const std::string& source, double t);

    /// Throws WrongClass for pipelines that are not on-demand.
    std::variant<TransferJob, Pending> on_demand_request(std::size_t pipeline, double t);

    [[nodiscard]] bool knowledge_available(std::size_t pipeline) const;
    [[nodiscard]] std::size_t pending_count(std::size_t pipeline) const;

private:
    TransferJob make_job(const TlPipeline& p, double trigger, double dispatch) const;
    const TlPipeline& at(std::size_t pipeline) const;

    OverheadParams params_;
    std::vector<TlPipeline> pipelines_;
    std::vector<bool> available_;
    std::vector<std::deque<Pending>> pending_;
};

/// Moves each non-real-time job, inside its pipeline's windows and not before
/// its trigger, to the earliest instant of minimum interaction cost. Other
/// jobs pass through unchanged. Greedy per job.
std::vector<TransferJob> plan_non_rush(std::vector<TransferJob> jobs,
                                       const std::vector<TlPipeline>& pipelines,
                                       const OverheadParams& params);

} // namespace tl6g

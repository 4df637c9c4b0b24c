// SPDX-License-Identifier: Apache-2.0
#include "tl6g/rush_profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tl6g/error.hpp"

namespace tl6g {

RushProfile::RushProfile() : RushProfile(kSecondsPerDay, {{0.0, 0.0}}) {}

RushProfile::RushProfile(double period, std::vector<Step> steps)
    : period_(period), steps_(std::move(steps)) {}

RushProfile RushProfile::flat(double value, double period) {
    return from_steps(period, {{0.0, value}});
}

RushProfile RushProfile::hourly(const std::array<double, 24>& slots) {
    std::vector<Step> steps;
    steps.reserve(slots.size());
    for (std::size_t h = 0; h < slots.size(); ++h) {
        steps.push_back({static_cast<double>(h) * kSecondsPerHour, slots[h]});
    }
    return from_steps(kSecondsPerDay, std::move(steps));
}

RushProfile RushProfile::from_steps(double period, std::vector<Step> steps) {
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw Error(ErrorCode::InvalidParams, "profile period must be positive");
    }
    if (steps.empty() || steps.front().offset != 0.0) {
        throw Error(ErrorCode::InvalidParams, "profile must start with a step at offset 0");
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (!std::isfinite(steps[i].value)) {
            throw Error(ErrorCode::InvalidParams, "profile values must be finite");
        }
        if (steps[i].offset >= period || (i > 0 && steps[i].offset <= steps[i - 1].offset)) {
            throw Error(ErrorCode::InvalidParams,
                        "profile step offsets must increase inside the period (step " +
                            std::to_string(i) + ")");
        }
    }
    // Merge runs of equal values so breakpoints mark real changes only.
    std::vector<Step> merged;
    for (const auto& s : steps) {
        if (merged.empty() || merged.back().value != s.value) merged.push_back(s);
    }
    return RushProfile(period, std::move(merged));
}

double RushProfile::value_at(double t) const {
    double phase = std::fmod(t, period_);
    if (phase < 0.0) phase += period_;
    auto it = std::upper_bound(steps_.begin(), steps_.end(), phase,
                               [](double p, const Step& s) { return p < s.offset; });
    return std::prev(it)->value;
}

std::vector<double> RushProfile::breakpoints_in(double lo, double hi) const {
    std::vector<double> out;
    if (!(hi > lo)) return out;
    const double first_cycle = std::floor(lo / period_);
    for (double cycle = first_cycle;; cycle += 1.0) {
        const double base = cycle * period_;
        if (base >= hi) break;
        for (std::size_t i = 0; i < steps_.size(); ++i) {
            // The wrap is a change only when the last step differs from the first.
            if (i == 0 && steps_.back().value == steps_.front().value) continue;
            const double t = base + steps_[i].offset;
            if (t > lo && t < hi) out.push_back(t);
        }
    }
    return out;
}

double RushProfile::min_value() const {
    return std::min_element(steps_.begin(), steps_.end(),
                            [](const Step& a, const Step& b) { return a.value < b.value; })
        ->value;
}

double RushProfile::max_value() const {
    return std::max_element(steps_.begin(), steps_.end(),
                            [](const Step& a, const Step& b) { return a.value < b.value; })
        ->value;
}

RushProfile RushProfile::pointwise_max(const RushProfile& a, const RushProfile& b) {
    if (a.period_ != b.period_) {
        throw Error(ErrorCode::InvalidParams, "cannot combine profiles with different periods");
    }
    std::vector<double> offsets;
    for (const auto& s : a.steps_) offsets.push_back(s.offset);
    for (const auto& s : b.steps_) offsets.push_back(s.offset);
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    std::vector<Step> steps;
    steps.reserve(offsets.size());
    for (double o : offsets) steps.push_back({o, std::max(a.value_at(o), b.value_at(o))});
    return from_steps(a.period_, std::move(steps));
}

} // namespace tl6g

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <utility>
#include <vector>

namespace tl6g {

inline constexpr double kSecondsPerHour = 3600.0;
inline constexpr double kSecondsPerDay = 86400.0;

/// Periodic piecewise-constant function of time.
///
/// The profile repeats every `period` seconds. Inside one period it is a list
/// of steps, each starting at an offset and holding its value until the next
/// step starts. Link load profiles (utilization in [0,1]) and rush-hour
/// multipliers (>= 0) both use this type; the usual configuration is 24
/// hourly slots over a day.
class RushProfile {
public:
    struct Step {
        double offset;
        double value;
        bool operator==(const Step&) const = default;
    };

    /// Constant zero over a day.
    RushProfile();

    static RushProfile flat(double value, double period = kSecondsPerDay);
    static RushProfile hourly(const std::array<double, 24>& slots);
    /// Steps must start at offset 0, be strictly increasing and lie inside
    /// [0, period). Throws InvalidParams otherwise.
    static RushProfile from_steps(double period, std::vector<Step> steps);

    /// Value at absolute time t (seconds, may exceed the period).
    [[nodiscard]] double value_at(double t) const;

    /// Absolute times strictly inside (lo, hi) at which a new step begins.
    [[nodiscard]] std::vector<double> breakpoints_in(double lo, double hi) const;

    [[nodiscard]] double period() const noexcept { return period_; }
    [[nodiscard]] const std::vector<Step>& steps() const noexcept { return steps_; }
    [[nodiscard]] double min_value() const;
    [[nodiscard]] double max_value() const;

    /// Pointwise maximum. Both profiles must share a period.
    [[nodiscard]] static RushProfile pointwise_max(const RushProfile& a, const RushProfile& b);

    bool operator==(const RushProfile&) const = default;

private:
    RushProfile(double period, std::vector<Step> steps);

    double period_;
    std::vector<Step> steps_;
};

} // namespace tl6g

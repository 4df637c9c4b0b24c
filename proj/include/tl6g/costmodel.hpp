// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tl6g {

/// When knowledge moves between source and target.
enum class InteractionClass { RealTime, NonRealTime, OnDemand };

std::string_view to_string(InteractionClass c) noexcept;
std::optional<InteractionClass> interaction_class_from_string(std::string_view s) noexcept;

/// Increasing cost of the required bandwidth.
struct BandwidthCostSpec {
    enum class Form { Linear, Affine, Log };
    Form form = Form::Linear;
    double reference = 1e6;  ///< W_ref in bits/s
    double offset = 0.0;     ///< Affine only

    [[nodiscard]] double operator()(double bandwidth) const;
};

/// Decreasing cost of the required delay bound.
struct DelayCostSpec {
    enum class Form { Reciprocal, NegativeExponential };
    Form form = Form::Reciprocal;
    double reference = 1.0;  ///< D_ref in seconds

    [[nodiscard]] double operator()(double delay) const;
};

/// Nondecreasing cost of the requested security level.
struct SecurityCostSpec {
    double coefficient = 1.0;

    [[nodiscard]] double operator()(int level) const { return coefficient * level; }
};

struct OverheadParams {
    std::array<double, 4> alpha{1.0, 1.0, 1.0, 1.0};
    /// Per-class costs, real-time first. Must satisfy M1 >= M2 >= M3 > 0.
    std::array<double, 3> m_costs{3.0, 2.0, 1.0};
    BandwidthCostSpec f1;
    DelayCostSpec f2;
    SecurityCostSpec h;

    /// Problems keyed by field name ("alpha", "m_costs", "f1", ...).
    [[nodiscard]] std::vector<std::pair<std::string, std::string>> validate() const;
    /// Throws InvalidParams with the first problem.
    void check() const;
};

struct TransferMetrics {
    double eta = 1.0;
    double tau = 1.0;
    double theta = 0.0;
    bool positive = false;
};

/// Per-class cost, scaled by (1 + rush_multiplier) when a multiplier is given.
double interaction_cost(InteractionClass cls, const OverheadParams& params,
                        std::optional<double> rush_multiplier = std::nullopt);

/// Weighted overhead of one transfer:
///   a1*f1(W) + a2*f2(D) + a3*g(class) + a4*h(security)
/// Throws NonPositiveBandwidth / NonPositiveDelay.
double compute_overhead(double bandwidth, double delay, InteractionClass cls, int security_level,
                        const OverheadParams& params,
                        std::optional<double> rush_multiplier = std::nullopt);

/// Performance ratio with vs. without transfer. Throws ZeroBaselinePerformance.
double eta(double p_tl, double p_traditional);
/// Training-time ratio without vs. with transfer. Throws ZeroTrainingTime.
double tau(double t_traditional, double t_tl);
/// Strictly better on both performance and training time.
bool is_positive_tl(double eta_value, double tau_value) noexcept;

} // namespace tl6g

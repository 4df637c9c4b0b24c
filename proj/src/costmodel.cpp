// SPDX-License-Identifier: Apache-2.0
#include "tl6g/costmodel.hpp"

#include <cmath>

#include "tl6g/error.hpp"

namespace tl6g {

std::string_view to_string(InteractionClass c) noexcept {
    switch (c) {
    case InteractionClass::RealTime: return "RealTime";
    case InteractionClass::NonRealTime: return "NonRealTime";
    case InteractionClass::OnDemand: return "OnDemand";
    }
    return "?";
}

std::optional<InteractionClass> interaction_class_from_string(std::string_view s) noexcept {
    for (auto c : {InteractionClass::RealTime, InteractionClass::NonRealTime,
                   InteractionClass::OnDemand}) {
        if (to_string(c) == s) return c;
    }
    return std::nullopt;
}

double BandwidthCostSpec::operator()(double bandwidth) const {
    const double x = bandwidth / reference;
    switch (form) {
    case Form::Linear: return x;
    case Form::Affine: return offset + x;
    case Form::Log: return std::log1p(x);
    }
    return x;
}

double DelayCostSpec::operator()(double delay) const {
    switch (form) {
    case Form::Reciprocal: return reference / delay;
    case Form::NegativeExponential: return std::exp(-delay / reference);
    }
    return reference / delay;
}

std::vector<std::pair<std::string, std::string>> OverheadParams::validate() const {
    std::vector<std::pair<std::string, std::string>> problems;
    for (double a : alpha) {
        if (!(a >= 0.0) || !std::isfinite(a)) {
            problems.emplace_back("alpha", "weights must be finite and >= 0");
            break;
        }
    }
    const auto& m = m_costs;
    if (!(m[2] > 0.0) || !std::isfinite(m[0])) {
        problems.emplace_back("m_costs", "class costs must be finite and > 0");
    } else if (!(m[0] >= m[1] && m[1] >= m[2])) {
        problems.emplace_back("m_costs", "class costs must satisfy M1 >= M2 >= M3");
    }
    if (!(f1.reference > 0.0) || !std::isfinite(f1.reference) || !std::isfinite(f1.offset)) {
        problems.emplace_back("f1", "reference bandwidth must be > 0");
    }
    if (!(f2.reference > 0.0) || !std::isfinite(f2.reference)) {
        problems.emplace_back("f2", "reference delay must be > 0");
    }
    if (!(h.coefficient >= 0.0) || !std::isfinite(h.coefficient)) {
        problems.emplace_back("h", "security coefficient must be >= 0");
    }
    if (!problems.empty()) return problems;

    // Sampled monotonicity over a geometric grid.
    double prev_f1 = -INFINITY;
    double prev_f2 = INFINITY;
    for (int e = -6; e <= 12; ++e) {
        const double x = std::pow(10.0, e);
        const double v1 = f1(x);
        const double v2 = f2(x);
        if (v1 < prev_f1) problems.emplace_back("f1", "must be increasing in bandwidth");
        if (v2 > prev_f2) problems.emplace_back("f2", "must be decreasing in delay");
        prev_f1 = v1;
        prev_f2 = v2;
    }
    for (int level = 0; level < 16; ++level) {
        if (h(level + 1) < h(level)) {
            problems.emplace_back("h", "must be nondecreasing in security level");
            break;
        }
    }
    return problems;
}

void OverheadParams::check() const {
    auto problems = validate();
    if (!problems.empty()) {
        throw Error(ErrorCode::InvalidParams, problems.front().first + ": " + problems.front().second);
    }
}

double interaction_cost(InteractionClass cls, const OverheadParams& params,
                        std::optional<double> rush_multiplier) {
    double base = params.m_costs[2];
    if (cls == InteractionClass::RealTime) base = params.m_costs[0];
    if (cls == InteractionClass::NonRealTime) base = params.m_costs[1];
    if (rush_multiplier) return base * (1.0 + *rush_multiplier);
    return base;
}

double compute_overhead(double bandwidth, double delay, InteractionClass cls, int security_level,
                        const OverheadParams& params, std::optional<double> rush_multiplier) {
    if (!(bandwidth > 0.0)) {
        throw Error(ErrorCode::NonPositiveBandwidth, "bandwidth " + std::to_string(bandwidth));
    }
    if (!(delay > 0.0)) {
        throw Error(ErrorCode::NonPositiveDelay, "delay " + std::to_string(delay));
    }
    const auto& a = params.alpha;
    return a[0] * params.f1(bandwidth) + a[1] * params.f2(delay) +
           a[2] * interaction_cost(cls, params, rush_multiplier) + a[3] * params.h(security_level);
}

double eta(double p_tl, double p_traditional) {
    if (!(p_traditional > 0.0)) {
        throw Error(ErrorCode::ZeroBaselinePerformance, "baseline performance must be > 0");
    }
    return p_tl / p_traditional;
}

double tau(double t_traditional, double t_tl) {
    if (!(t_traditional > 0.0) || !(t_tl > 0.0)) {
        throw Error(ErrorCode::ZeroTrainingTime, "training times must be > 0");
    }
    return t_traditional / t_tl;
}

bool is_positive_tl(double eta_value, double tau_value) noexcept {
    return eta_value > 1.0 && tau_value > 1.0;
}

} // namespace tl6g

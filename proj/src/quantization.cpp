// SPDX-License-Identifier: Apache-2.0
#include "tl6g/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tl6g/costmodel.hpp"
#include "tl6g/error.hpp"

namespace tl6g {

std::string_view to_string(QuantScheme s) noexcept {
    switch (s) {
    case QuantScheme::Float32: return "Float32";
    case QuantScheme::Default8: return "Default8";
    case QuantScheme::Fbgemm8: return "Fbgemm8";
    case QuantScheme::Qat8: return "Qat8";
    }
    return "?";
}

std::optional<QuantScheme> quant_scheme_from_string(std::string_view s) noexcept {
    for (auto q : kAllSchemes) {
        if (to_string(q) == s) return q;
    }
    return std::nullopt;
}

std::uint64_t payload_bits(std::uint64_t parameter_count, QuantScheme scheme) {
    if (parameter_count == 0) throw Error(ErrorCode::InvalidParams, "parameter_count must be > 0");
    const std::uint64_t bits = bits_per_weight(scheme);
    if (parameter_count > std::numeric_limits<std::uint64_t>::max() / bits) {
        throw Error(ErrorCode::InvalidParams, "payload overflows 64 bits");
    }
    return parameter_count * bits;
}

AccuracyModel::AccuracyModel(double base_accuracy, double fbgemm_delta, double default_delta)
    : base_(base_accuracy), fbgemm_delta_(fbgemm_delta), default_delta_(default_delta) {
    check(base_, fbgemm_delta_, default_delta_);
}

void AccuracyModel::check(double base, double fbgemm_delta, double default_delta) {
    if (!(base >= 0.0 && base <= 100.0)) {
        throw Error(ErrorCode::InvalidParams, "base_accuracy must lie in [0,100]");
    }
    if (!std::isfinite(fbgemm_delta) || !std::isfinite(default_delta)) {
        throw Error(ErrorCode::InvalidParams, "accuracy deltas must be finite");
    }
    // Qat8 = Fbgemm8 + 1 must not exceed the full-precision reference.
    if (fbgemm_delta + kQatGainOverFbgemm > 0.0) {
        throw Error(ErrorCode::InvalidParams, "Fbgemm8 delta must be <= -1 so that Qat8 <= Float32");
    }
    if (default_delta > fbgemm_delta) {
        throw Error(ErrorCode::InvalidParams, "Default8 delta must be <= Fbgemm8 delta");
    }
    if (base + default_delta < 0.0) {
        throw Error(ErrorCode::InvalidParams, "Default8 accuracy must stay >= 0");
    }
}

double AccuracyModel::level(QuantScheme s) const noexcept {
    // Fbgemm8 is derived from Qat8 so the one-point gap is exact in binary
    // floating point for every level in [1,100].
    const double qat = base_ + (fbgemm_delta_ + kQatGainOverFbgemm);
    const double fbgemm = qat - kQatGainOverFbgemm;
    switch (s) {
    case QuantScheme::Float32: return base_;
    case QuantScheme::Qat8: return qat;
    case QuantScheme::Fbgemm8: return fbgemm;
    case QuantScheme::Default8: return std::min(base_ + default_delta_, fbgemm);
    }
    return base_;
}

double AccuracyModel::delta(QuantScheme s) const noexcept {
    switch (s) {
    case QuantScheme::Float32: return 0.0;
    case QuantScheme::Default8: return default_delta_;
    case QuantScheme::Fbgemm8: return fbgemm_delta_;
    case QuantScheme::Qat8: return fbgemm_delta_ + kQatGainOverFbgemm;
    }
    return 0.0;
}

void AccuracyModel::set_base_accuracy(double base) {
    check(base, fbgemm_delta_, default_delta_);
    base_ = base;
}

void AccuracyModel::set_deltas(double fbgemm_delta, double default_delta) {
    check(base_, fbgemm_delta, default_delta);
    fbgemm_delta_ = fbgemm_delta;
    default_delta_ = default_delta;
}

double predicted_accuracy(const AccuracyModel& model, QuantScheme scheme, bool retuned) {
    if (!quant_scheme_from_string(to_string(scheme))) {
        throw Error(ErrorCode::UnknownScheme, "scheme " + std::to_string(static_cast<int>(scheme)));
    }
    const double raw = retuned ? model.base_accuracy() : model.level(scheme);
    return std::clamp(raw, 0.0, 100.0);
}

double retune_speedup(const RetuneModel& model) {
    return tau(model.full_train_time, model.retrain_time);
}

} // namespace tl6g

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace tl6g {

/// Weight encodings for parameter transfers: full precision and three
/// 8-bit post-training or quantization-aware variants.
enum class QuantScheme { Float32, Default8, Fbgemm8, Qat8 };

inline constexpr std::array<QuantScheme, 4> kAllSchemes{
    QuantScheme::Float32, QuantScheme::Default8, QuantScheme::Fbgemm8, QuantScheme::Qat8};

std::string_view to_string(QuantScheme s) noexcept;
std::optional<QuantScheme> quant_scheme_from_string(std::string_view s) noexcept;

constexpr std::uint32_t bits_per_weight(QuantScheme s) noexcept {
    return s == QuantScheme::Float32 ? 32U : 8U;
}

/// parameter_count * bits_per_weight. Throws InvalidParams for zero weights.
std::uint64_t payload_bits(std::uint64_t parameter_count, QuantScheme scheme);

/// Accuracy (in percent) per scheme before retuning.
///
/// Only Fbgemm8 and Default8 offsets are free inputs; the QAT offset is tied
/// to Fbgemm8 + 1 point. Construction rejects models that break
/// Float32 >= Qat8 >= Fbgemm8 >= Default8.
class AccuracyModel {
public:
    AccuracyModel(double base_accuracy, double fbgemm_delta, double default_delta);

    [[nodiscard]] double base_accuracy() const noexcept { return base_; }
    [[nodiscard]] double delta(QuantScheme s) const noexcept;
    /// Accuracy in percent without retuning.
    [[nodiscard]] double level(QuantScheme s) const noexcept;

    void set_base_accuracy(double base);
    void set_deltas(double fbgemm_delta, double default_delta);

private:
    static void check(double base, double fbgemm_delta, double default_delta);

    double base_;
    double fbgemm_delta_;
    double default_delta_;
};

inline constexpr double kQatGainOverFbgemm = 1.0;

/// Retuned models recover the full-precision accuracy. Clamped to [0,100].
double predicted_accuracy(const AccuracyModel& model, QuantScheme scheme, bool retuned);

struct RetuneModel {
    double retrain_time = 0.0;     ///< seconds
    double full_train_time = 0.0;  ///< seconds
    bool restores_accuracy = true;
};

/// full_train_time / retrain_time. Throws ZeroTrainingTime.
double retune_speedup(const RetuneModel& model);

} // namespace tl6g

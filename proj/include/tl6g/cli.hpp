// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tl6g/simengine.hpp"

namespace tl6g {

struct LoadResult {
    Scenario scenario;
    std::vector<ValidationIssue> issues;
};

/// Parses a scenario document and collects every structural and semantic
/// problem. Throws FileNotFound, or ParseError carrying line and column.
LoadResult load_scenario(const std::filesystem::path& path);
LoadResult parse_scenario(const std::string& text);

/// Empty when the file describes a valid scenario.
std::vector<ValidationIssue> validate(const std::filesystem::path& path);

enum class ReportFormat { Csv, Json };

struct QuantizationRow {
    QuantScheme scheme = QuantScheme::Float32;
    std::uint32_t bits_per_weight = 32;
    std::uint64_t payload_bits = 0;
    double payload_ratio = 1.0;  ///< relative to Float32
    std::optional<double> accuracy;
    std::optional<double> accuracy_retuned;
};

/// Scheme comparison for the scenario's reference parameter count.
std::vector<QuantizationRow> quantization_table(const Scenario& scenario);

/// Writes report.{csv|json}, utilization.csv and quantization.csv (plus
/// conflicts.csv and denials.csv for the csv format). Throws IoError.
void write_reports(const SimReport& report, const Scenario& scenario,
                   const std::filesystem::path& dir, ReportFormat format);

std::string format_number(double value);

struct RunConfig {
    std::vector<std::filesystem::path> scenario_paths;
    std::filesystem::path output_dir = "out";
    ReportFormat format = ReportFormat::Csv;
    std::optional<std::uint64_t> seed_override;
    bool validate_only = false;
    bool save_repository = false;
    unsigned jobs = 1;
};

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitIo = 2 };

/// Loads, validates and runs each scenario, writing reports. A single
/// scenario writes into output_dir; several write into output_dir/<stem>.
/// Returns the worst exit code; diagnostics go to `err`, one line each.
int run_command(const RunConfig& config, std::ostream& err);

/// Prints issues and returns the exit code for `validate <path>`.
int validate_command(const std::filesystem::path& path, std::ostream& out, std::ostream& err);

} // namespace tl6g

// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "CLI11.hpp"
#include "tl6g/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Transfer-learning orchestration simulator"};
    app.require_subcommand(1);

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a scenario file");
    validate->add_option("path", validate_path, "Scenario file")->required();

    tl6g::RunConfig config;
    std::vector<std::string> run_paths;
    std::string out_dir = "out";
    std::string format = "csv";
    std::uint64_t seed = 0;
    auto* run = app.add_subcommand("run", "Simulate one or more scenarios and write reports");
    run->add_option("paths", run_paths, "Scenario files")->required();
    run->add_option("--out", out_dir, "Output directory")->capture_default_str();
    run->add_option("--format", format, "Per-pair report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    auto* seed_opt = run->add_option("--seed", seed, "Override the scenario seed");
    run->add_option("--jobs", config.jobs, "Scenarios to run in parallel")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_flag("--validate-only", config.validate_only, "Validate without running");
    run->add_flag("--save-repository", config.save_repository,
                  "Also write the knowledge repository as repository.jsonl");

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return tl6g::validate_command(validate_path, std::cout, std::cerr);

    for (const auto& p : run_paths) config.scenario_paths.emplace_back(p);
    config.output_dir = out_dir;
    config.format = format == "json" ? tl6g::ReportFormat::Json : tl6g::ReportFormat::Csv;
    if (*seed_opt) config.seed_override = seed;
    return tl6g::run_command(config, std::cerr);
}

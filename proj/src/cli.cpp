// SPDX-License-Identifier: Apache-2.0
#include "tl6g/cli.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <thread>

namespace tl6g {

namespace {

struct Outcome {
    int code = kExitOk;
    std::vector<std::string> diagnostics;
};

Outcome run_one(const std::filesystem::path& scenario_path, const std::filesystem::path& out_dir,
                const RunConfig& config) {
    Outcome outcome;
    const std::string label = scenario_path.string();
    try {
        LoadResult loaded = load_scenario(scenario_path);
        if (config.seed_override) loaded.scenario.seed = *config.seed_override;
        if (!loaded.issues.empty()) {
            for (const auto& issue : loaded.issues) {
                outcome.diagnostics.push_back(label + ": " + issue.path + ": " + issue.message);
            }
            outcome.code = kExitValidation;
            return outcome;
        }
        if (config.validate_only) return outcome;
        const SimReport report = run(loaded.scenario);
        write_reports(report, loaded.scenario, out_dir, config.format);
        if (config.save_repository) report.repository.save(out_dir / "repository.jsonl");
    } catch (const ValidationFailure& e) {
        for (const auto& issue : e.issues()) {
            outcome.diagnostics.push_back(label + ": " + issue.path + ": " + issue.message);
        }
        outcome.code = kExitValidation;
    } catch (const Error& e) {
        outcome.diagnostics.push_back(label + ": " + e.what());
        const bool io = e.code() == ErrorCode::IoError || e.code() == ErrorCode::FileNotFound;
        outcome.code = io ? kExitIo : kExitValidation;
    } catch (const std::exception& e) {
        outcome.diagnostics.push_back(label + ": " + e.what());
        outcome.code = kExitIo;
    }
    return outcome;
}

} // namespace

int run_command(const RunConfig& config, std::ostream& err) {
    const auto& paths = config.scenario_paths;
    std::vector<Outcome> outcomes(paths.size());

    auto output_for = [&](std::size_t i) {
        return paths.size() == 1 ? config.output_dir : config.output_dir / paths[i].stem();
    };

    const unsigned workers =
        std::max(1U, std::min<unsigned>(config.jobs, static_cast<unsigned>(paths.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < paths.size(); i = next++) {
            outcomes[i] = run_one(paths[i], output_for(i), config);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    int code = kExitOk;
    for (const auto& outcome : outcomes) {
        for (const auto& line : outcome.diagnostics) err << line << '\n';
        code = std::max(code, outcome.code);
    }
    return code;
}

int validate_command(const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
    try {
        const auto issues = validate(path);
        if (issues.empty()) {
            out << path.string() << ": ok\n";
            return kExitOk;
        }
        for (const auto& issue : issues) {
            err << path.string() << ": " << issue.path << ": " << issue.message << '\n';
        }
        return kExitValidation;
    } catch (const Error& e) {
        err << path.string() << ": " << e.what() << '\n';
        return e.code() == ErrorCode::FileNotFound ? kExitIo : kExitValidation;
    }
}

} // namespace tl6g

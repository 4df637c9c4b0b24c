// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "tl6g/cli.hpp"

namespace tl6g {

std::string format_number(double value) {
    if (value == 0.0) return "0";  // folds -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::vector<QuantizationRow> quantization_table(const Scenario& scenario) {
    std::uint64_t parameters = 0;
    if (scenario.quantization && scenario.quantization->parameter_count) {
        parameters = *scenario.quantization->parameter_count;
    } else {
        for (const auto& [id, agent] : scenario.agents) {
            parameters = std::max(parameters, agent.task.parameter_count);
        }
    }
    parameters = std::max<std::uint64_t>(parameters, 1);

    const std::uint64_t reference = payload_bits(parameters, QuantScheme::Float32);
    std::vector<QuantizationRow> rows;
    for (auto scheme : kAllSchemes) {
        QuantizationRow row;
        row.scheme = scheme;
        row.bits_per_weight = bits_per_weight(scheme);
        row.payload_bits = payload_bits(parameters, scheme);
        row.payload_ratio = static_cast<double>(row.payload_bits) / static_cast<double>(reference);
        if (scenario.quantization) {
            row.accuracy = predicted_accuracy(scenario.quantization->accuracy, scheme, false);
            row.accuracy_retuned = predicted_accuracy(scenario.quantization->accuracy, scheme,
                                                      scenario.quantization->retune.restores_accuracy);
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string join_agents(const std::set<std::string>& agents) {
    std::string out;
    for (const auto& a : agents) {
        if (!out.empty()) out += ';';
        out += a;
    }
    return out;
}

void write_pairs_csv(const SimReport& report, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "source,target,kind,class,label_axis,domain_axis,similarity,jobs,bits,total_theta,"
           "p_tl,t_tl,eta,tau,positive\n";
    for (const auto& p : report.pairs) {
        out << p.source << ',' << p.target << ',' << to_string(p.kind) << ',' << to_string(p.cls)
            << ',' << to_string(p.category.label_axis) << ',' << to_string(p.category.domain_axis)
            << ',' << format_number(p.similarity) << ',' << p.jobs << ',' << p.bits << ','
            << format_number(p.total_theta) << ',' << format_number(p.p_tl) << ','
            << format_number(p.t_tl) << ',' << format_number(p.eta) << ','
            << format_number(p.tau) << ',' << (p.positive ? "true" : "false") << '\n';
    }
    finish(out, path);
}

void write_conflicts_csv(const SimReport& report, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "node,resource,agents,net_opposition\n";
    for (const auto& c : report.conflicts) {
        out << c.node << ',' << c.resource << ',' << join_agents(c.agents) << ','
            << format_number(c.net_opposition) << '\n';
    }
    finish(out, path);
}

void write_denials_csv(const SimReport& report, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "source,target,kind,reason\n";
    for (const auto& d : report.denials) {
        out << d.source << ',' << d.target << ',' << to_string(d.kind) << ','
            << to_string(d.reason) << '\n';
    }
    finish(out, path);
}

void write_report_json(const SimReport& report, const std::filesystem::path& path) {
    using nlohmann::ordered_json;
    // Numbers go through format_number so text output matches the csv files.
    auto num = [](double v) { return ordered_json::parse(format_number(v)); };

    ordered_json doc;
    doc["scenario"] = report.scenario;
    doc["seed"] = report.seed;
    ordered_json pairs = ordered_json::array();
    for (const auto& p : report.pairs) {
        ordered_json j;
        j["source"] = p.source;
        j["target"] = p.target;
        j["kind"] = to_string(p.kind);
        j["class"] = to_string(p.cls);
        j["label_axis"] = to_string(p.category.label_axis);
        j["domain_axis"] = to_string(p.category.domain_axis);
        j["similarity"] = num(p.similarity);
        j["jobs"] = p.jobs;
        j["bits"] = p.bits;
        j["total_theta"] = num(p.total_theta);
        j["p_tl"] = num(p.p_tl);
        j["t_tl"] = num(p.t_tl);
        j["eta"] = num(p.eta);
        j["tau"] = num(p.tau);
        j["positive"] = p.positive;
        pairs.push_back(std::move(j));
    }
    doc["pairs"] = std::move(pairs);
    ordered_json denials = ordered_json::array();
    for (const auto& d : report.denials) {
        denials.push_back({{"source", d.source},
                           {"target", d.target},
                           {"kind", to_string(d.kind)},
                           {"reason", to_string(d.reason)}});
    }
    doc["denials"] = std::move(denials);
    ordered_json conflicts = ordered_json::array();
    for (const auto& c : report.conflicts) {
        conflicts.push_back({{"node", c.node},
                             {"resource", c.resource},
                             {"agents", c.agents},
                             {"net_opposition", num(c.net_opposition)}});
    }
    doc["conflicts"] = std::move(conflicts);
    doc["totals"] = {{"total_theta", num(report.totals.total_theta)},
                     {"total_bits", report.totals.total_bits},
                     {"jobs", report.totals.jobs},
                     {"positive_pairs", report.totals.positive_pairs}};
    doc["unscheduled"] = report.unscheduled;
    doc["events_processed"] = report.events_processed;

    auto out = open_output(path);
    out << doc.dump(2) << '\n';
    finish(out, path);
}

void write_utilization_csv(const SimReport& report, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "link,bin_start,bits\n";
    for (const auto& cell : report.utilization) {
        out << cell.link << ',' << format_number(cell.bin_start) << ',' << cell.bits << '\n';
    }
    finish(out, path);
}

void write_quantization_csv(const Scenario& scenario, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "scheme,bits_per_weight,payload_bits,payload_ratio,accuracy,accuracy_retuned\n";
    for (const auto& row : quantization_table(scenario)) {
        out << to_string(row.scheme) << ',' << row.bits_per_weight << ',' << row.payload_bits << ','
            << format_number(row.payload_ratio) << ','
            << (row.accuracy ? format_number(*row.accuracy) : "") << ','
            << (row.accuracy_retuned ? format_number(*row.accuracy_retuned) : "") << '\n';
    }
    finish(out, path);
}

} // namespace

void write_reports(const SimReport& report, const Scenario& scenario,
                   const std::filesystem::path& dir, ReportFormat format) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw Error(ErrorCode::IoError, "cannot create output directory " + dir.string());
    }
    if (format == ReportFormat::Json) {
        write_report_json(report, dir / "report.json");
    } else {
        write_pairs_csv(report, dir / "report.csv");
        write_conflicts_csv(report, dir / "conflicts.csv");
        write_denials_csv(report, dir / "denials.csv");
    }
    write_utilization_csv(report, dir / "utilization.csv");
    write_quantization_csv(scenario, dir / "quantization.csv");
}

} // namespace tl6g

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include "ragbench/report.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ragbench {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw Error("failed to format double");
    return std::string(buf, ptr);
}

void RunReport::finalize() {
    metrics.recompute_aggregates();

    subset_counts.clear();
    per_subset_aggregates.clear();
    std::map<std::string, std::map<std::string, double>> sums; // subset -> metric -> sum
    for (const auto& [qid, subset] : query_subsets) subset_counts[subset] += 1;
    for (const auto& [name, values] : metrics.per_query) {
        for (const auto& [qid, v] : values) {
            auto it = query_subsets.find(qid);
            if (it == query_subsets.end()) continue;
            sums[it->second][name] += v;
        }
    }
    for (const auto& [subset, metric_sums] : sums) {
        const auto count = static_cast<double>(subset_counts.at(subset));
        for (const auto& [name, sum] : metric_sums) {
            per_subset_aggregates[subset][name] = sum / count;
        }
    }
}

json RunReport::to_json() const {
    json out;
    out["format_version"] = format_version;
    out["method"] = method;
    out["config"] = config_echo;
    out["cutoffs"] = cutoffs;
    out["query_count"] = query_subsets.size();
    out["aggregates"] = metrics.aggregates;
    json subsets = json::object();
    for (const auto& [subset, count] : subset_counts) {
        json entry;
        entry["count"] = count;
        entry["aggregates"] = per_subset_aggregates.count(subset)
                                  ? json(per_subset_aggregates.at(subset))
                                  : json::object();
        subsets[subset] = std::move(entry);
    }
    out["per_subset"] = std::move(subsets);
    json calls = json::object();
    for (const auto& [key, summary] : provider_calls) {
        calls[key] = {{"calls", summary.calls},
                      {"units", summary.units},
                      {"payload_chars", summary.payload_chars}};
    }
    out["provider_calls"] = std::move(calls);
    return out;
}

std::string RunReport::to_json_string() const {
    return to_json().dump(2) + "\n";
}

std::string RunReport::summary_table() const {
    std::ostringstream out;
    out << "method: " << method << "  queries: " << query_subsets.size() << "\n";
    char buf[64];
    for (const auto& [name, value] : metrics.aggregates) {
        std::snprintf(buf, sizeof(buf), "  %-12s %.3f\n", name.c_str(), value);
        out << buf;
    }
    if (!per_subset_aggregates.empty()) {
        out << "per-subset recall@5 / mrr@3:\n";
        for (const auto& [subset, aggs] : per_subset_aggregates) {
            const double r5 = aggs.count("recall@5") ? aggs.at("recall@5") : 0.0;
            const double m3 = aggs.count("mrr@3") ? aggs.at("mrr@3") : 0.0;
            std::snprintf(buf, sizeof(buf), "  %-10s %.3f / %.3f  (n=%zu)\n", subset.c_str(), r5,
                          m3, subset_counts.at(subset));
            out << buf;
        }
    }
    std::uint64_t calls = 0;
    for (const auto& [key, summary] : provider_calls) calls += summary.calls;
    out << "provider calls: " << calls << "\n";
    return out.str();
}

std::string RunReport::per_query_csv() const {
    std::ostringstream out;
    out << "query_id,metric,value\n";
    // Row order (query_id, metric) ascending; both maps are sorted already.
    std::map<std::string, std::map<std::string, double>> by_query;
    for (const auto& [name, values] : metrics.per_query) {
        for (const auto& [qid, v] : values) by_query[qid][name] = v;
    }
    for (const auto& [qid, row] : by_query) {
        for (const auto& [name, v] : row) {
            out << qid << ',' << name << ',' << format_double(v) << '\n';
        }
    }
    return out.str();
}

std::string RunReport::rankings_csv() const {
    std::ostringstream out;
    out << "query_id,rank,doc_id,score\n";
    for (const auto& [qid, entries] : rankings) {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            out << qid << ',' << (i + 1) << ',' << entries[i].doc_id << ','
                << format_double(entries[i].score) << '\n';
        }
    }
    return out.str();
}

std::string RunReport::recall_curve_csv() const {
    std::ostringstream out;
    out << "method,k,recall\n";
    for (std::size_t k : cutoffs) {
        const auto name = metric_name("recall", k);
        if (metrics.aggregates.count(name)) {
            out << method << ',' << k << ',' << format_double(metrics.aggregates.at(name)) << '\n';
        }
    }
    return out.str();
}

void RunReport::write_files(const std::string& dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream out(fs::path(dir) / name, std::ios::binary);
        if (!out) throw DataError("cannot write '" + name + "' under '" + dir + "'");
        out << content;
    };
    write("report_" + method + ".json", to_json_string());
    write("perquery_" + method + ".csv", per_query_csv());
    write("rankings_" + method + ".csv", rankings_csv());
    write("recall_curve_" + method + ".csv", recall_curve_csv());
}

std::map<std::string, std::map<std::string, double>> parse_per_query_csv(const std::string& csv) {
    std::map<std::string, std::map<std::string, double>> out;
    std::istringstream in(csv);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            first = false;
            if (line.rfind("query_id,", 0) == 0) continue;
        }
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw DataError("malformed per-query csv row: " + line);
        }
        const std::string qid = line.substr(0, c1);
        const std::string metric = line.substr(c1 + 1, c2 - c1 - 1);
        const std::string value_str = line.substr(c2 + 1);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(value_str.data(), value_str.data() + value_str.size(),
                                         value);
        if (ec != std::errc()) throw DataError("bad value in per-query csv row: " + line);
        out[qid][metric] = value;
    }
    return out;
}

RunReport regenerate_report(const json& original_report_json, const std::string& per_query_csv,
                            const QuerySet& queries) {
    RunReport report;
    report.format_version = original_report_json.at("format_version").get<int>();
    report.method = original_report_json.at("method").get<std::string>();
    report.config_echo = original_report_json.at("config");
    report.cutoffs = original_report_json.at("cutoffs").get<std::vector<std::size_t>>();
    for (const auto& [key, entry] : original_report_json.at("provider_calls").items()) {
        CallSummary s;
        s.calls = entry.at("calls").get<std::uint64_t>();
        s.units = entry.at("units").get<std::uint64_t>();
        s.payload_chars = entry.at("payload_chars").get<std::uint64_t>();
        report.provider_calls[key] = s;
    }
    const auto by_query = parse_per_query_csv(per_query_csv);
    for (const auto& [qid, row] : by_query) {
        report.query_subsets[qid] = to_string(queries.at(qid).subset);
        for (const auto& [name, v] : row) report.metrics.per_query[name][qid] = v;
    }
    report.metrics.cutoffs = report.cutoffs;
    report.finalize();
    return report;
}

} // namespace ragbench

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ragbench/corpus.hpp"
#include "ragbench/metrics.hpp"
#include "ragbench/providers.hpp"

namespace ragbench {

/// Everything one experiment run produced. The JSON report holds aggregates
/// and the config echo; per-query values and rankings go to CSV side files
/// from which the report can be regenerated byte-identically.
struct RunReport {
    int format_version = 1;
    std::string method;
    nlohmann::json config_echo;
    std::vector<std::size_t> cutoffs;
    MetricReport metrics;
    std::map<std::string, std::string> query_subsets; // query_id -> subset label
    std::map<std::string, std::size_t> subset_counts;
    std::map<std::string, std::map<std::string, double>> per_subset_aggregates;
    std::map<std::string, CallSummary> provider_calls;
    std::map<std::string, std::vector<ScoredDoc>> rankings; // query_id -> top-depth

    /// Fills subset_counts, per_subset_aggregates, and metric aggregates
    /// from the per-query values (query_id order).
    void finalize();

    nlohmann::json to_json() const;
    std::string to_json_string() const;

    /// Human-readable summary; numbers at 3 decimal places.
    std::string summary_table() const;

    /// Writes report_<method>.json, perquery_<method>.csv,
    /// rankings_<method>.csv, and recall_curve_<method>.csv under dir.
    void write_files(const std::string& dir) const;

    std::string per_query_csv() const;
    std::string rankings_csv() const;
    std::string recall_curve_csv() const;
};

/// Rebuilds a report from its stored per-query values, the config echo, and
/// the query set (for subset labels). The result serializes byte-identically
/// to the original report.
RunReport regenerate_report(const nlohmann::json& original_report_json,
                            const std::string& per_query_csv, const QuerySet& queries);

/// Shortest round-trip decimal form of a double (CSV cell format).
std::string format_double(double v);

/// Parses per-query CSV content (query_id,metric,value rows).
std::map<std::string, std::map<std::string, double>> parse_per_query_csv(const std::string& csv);

} // namespace ragbench

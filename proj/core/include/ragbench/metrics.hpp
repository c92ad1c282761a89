// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ragbench/corpus.hpp"

namespace ragbench {

// --- Retrieval metrics (single relevant document per query) ----------------

/// 1 iff the gold document appears in the first k entries.
double recall_at_k(const RankedList& ranked, const std::string& gold, std::size_t k);

/// 1/rank if the gold's rank is <= k, else 0.
double mrr_at_k(const RankedList& ranked, const std::string& gold, std::size_t k);

/// Binary gain with one relevant document, so ideal DCG is 1 and
/// nDCG@k = 1/log2(rank+1) when the gold's rank is <= k, else 0.
double ndcg_at_k(const RankedList& ranked, const std::string& gold, std::size_t k);

/// Average precision over the full returned list; with a single relevant
/// document this is 1/rank, or 0 when the gold is absent.
double average_precision(const RankedList& ranked, const std::string& gold);

// --- Generation metrics -----------------------------------------------------

struct NumberMatchConfig {
    double epsilon = 1e-2; // relative tolerance
    // Covers percent conversion and thousands/millions/billions mismatches.
    std::vector<double> scale_set = {0.01, 1.0, 100.0, 1e3, 1e6, 1e9, 1e-3, 1e-6, 1e-9};

    void validate() const; // epsilon > 0, scale_set contains 1
};

/// Extracts the first numeric literal from free text. Currency symbols,
/// thousands separators, and percent signs are stripped; a parenthesized
/// number reads as negative. Returns nullopt when no literal is present.
std::optional<double> extract_first_number(const std::string& text);

/// 1 iff some scale s in scale_set satisfies
/// |s*pred - gold| <= epsilon * max(|gold|, 1e-12). Text containing
/// "UNANSWERABLE" (any case) or no numeric literal scores 0.
double number_match(const std::string& answer_text, double gold, const NumberMatchConfig& cfg);

/// Harmonic mean of token precision/recall over whitespace-lowercased
/// multiset overlap. Both empty -> 1; exactly one empty -> 0.
double token_f1(const std::string& pred, const std::string& gold);

/// LCS-based F-measure over tokens (beta = 1).
double rouge_l(const std::string& pred, const std::string& gold);

// --- Per-query bookkeeping ---------------------------------------------------

/// Per-query and aggregate metric values at a fixed cutoff set. Aggregates
/// are arithmetic means over queries in query_id order.
struct MetricReport {
    std::vector<std::size_t> cutoffs;
    // metric name -> query_id -> value; std::map keeps report output ordered.
    std::map<std::string, std::map<std::string, double>> per_query;
    std::map<std::string, double> aggregates;

    void recompute_aggregates();
};

/// Names like "recall@5", "mrr@3", "ndcg@10", "map".
std::string metric_name(const std::string& base, std::size_t k);

/// Computes all retrieval metrics for one query at every cutoff.
std::map<std::string, double> retrieval_metrics(const RankedList& ranked, const std::string& gold,
                                                const std::vector<std::size_t>& cutoffs);

} // namespace ragbench

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <map>
#include <string>
#include <vector>

#include "ragbench/corpus.hpp"
#include "ragbench/providers.hpp"

namespace ragbench {

enum class FailureCategory {
    TableStructureMismatch,
    NumericalReasoning,
    VocabularyMismatch,
    AmbiguousQuery,
    LongDocument,
    Uncategorized,
};

std::string to_string(FailureCategory c);

struct FailureCase {
    std::string query_id;
    std::string gold_doc_id;
    std::vector<std::string> retrieved_top5;
    FailureCategory category = FailureCategory::Uncategorized;
    std::string note; // e.g. provider error detail
};

/// A failure is a query whose gold document is absent from the stored top-5.
/// Returns a uniform sample without replacement of size min(n, failures),
/// deterministic for a given seed.
std::vector<FailureCase> sample_failures(
    const std::map<std::string, std::vector<ScoredDoc>>& rankings, const QuerySet& queries,
    std::size_t n, std::uint64_t seed);

/// Asks the completion provider to label the failure and maps the response
/// onto the five categories by keyword match; anything else (including
/// provider failures, which land in `note`) is Uncategorized.
FailureCategory categorize_failure(CompletionProvider& completion, const FailureCase& failure,
                                   const Corpus& corpus, const QuerySet& queries,
                                   std::string* note = nullptr);

/// Maps free text onto a category by the earliest occurring category phrase.
FailureCategory parse_failure_category(const std::string& text);

std::map<std::string, std::size_t> failure_histogram(const std::vector<FailureCase>& cases);

std::string failures_csv(const std::vector<FailureCase>& cases);

} // namespace ragbench

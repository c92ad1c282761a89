// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include "ragbench/failures.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "ragbench/stats.hpp"

namespace ragbench {

std::string to_string(FailureCategory c) {
    switch (c) {
        case FailureCategory::TableStructureMismatch: return "table_structure_mismatch";
        case FailureCategory::NumericalReasoning: return "numerical_reasoning";
        case FailureCategory::VocabularyMismatch: return "vocabulary_mismatch";
        case FailureCategory::AmbiguousQuery: return "ambiguous_query";
        case FailureCategory::LongDocument: return "long_document";
        case FailureCategory::Uncategorized: return "uncategorized";
    }
    return "uncategorized";
}

std::vector<FailureCase> sample_failures(
    const std::map<std::string, std::vector<ScoredDoc>>& rankings, const QuerySet& queries,
    std::size_t n, std::uint64_t seed) {
    // Failure pool in query_id order, then a seeded partial Fisher-Yates.
    std::vector<FailureCase> pool;
    for (const auto& [qid, entries] : rankings) {
        const Query& q = queries.at(qid);
        bool gold_in_top5 = false;
        for (std::size_t i = 0; i < entries.size() && i < 5; ++i) {
            if (entries[i].doc_id == q.gold_doc_id) {
                gold_in_top5 = true;
                break;
            }
        }
        if (gold_in_top5) continue;
        FailureCase fc;
        fc.query_id = qid;
        fc.gold_doc_id = q.gold_doc_id;
        for (std::size_t i = 0; i < entries.size() && i < 5; ++i) {
            fc.retrieved_top5.push_back(entries[i].doc_id);
        }
        pool.push_back(std::move(fc));
    }

    const std::size_t take = std::min(n, pool.size());
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(bounded_index(rng(), pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(take);
    return pool;
}

namespace {

const char* const kCategorizePrompt =
    R"(You are analyzing a retrieval failure in a financial document search
system. The correct document for the question below was not retrieved in
the top 5 results.

Question: {question}

Gold document:
{document}

Categories:
- table structure mismatch: the answer sits in a table whose layout does
  not align with the question phrasing.
- numerical reasoning: the question requires computation rather than a
  direct lookup.
- vocabulary mismatch: the question words the evidence differently from
  the document.
- ambiguous query: the question underspecifies its target document.
- long document: the relevant evidence is buried in an unusually long
  document.

Respond with exactly one category name.)";

} // namespace

FailureCategory parse_failure_category(const std::string& text) {
    std::string lower = text;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    const std::pair<const char*, FailureCategory> phrases[] = {
        {"table structure mismatch", FailureCategory::TableStructureMismatch},
        {"numerical reasoning", FailureCategory::NumericalReasoning},
        {"vocabulary mismatch", FailureCategory::VocabularyMismatch},
        {"ambiguous query", FailureCategory::AmbiguousQuery},
        {"long document", FailureCategory::LongDocument},
    };
    std::size_t best_pos = std::string::npos;
    FailureCategory best = FailureCategory::Uncategorized;
    for (const auto& [phrase, category] : phrases) {
        const auto pos = lower.find(phrase);
        if (pos != std::string::npos && pos < best_pos) {
            best_pos = pos;
            best = category;
        }
    }
    return best;
}

FailureCategory categorize_failure(CompletionProvider& completion, const FailureCase& failure,
                                   const Corpus& corpus, const QuerySet& queries,
                                   std::string* note) {
    const Query& q = queries.at(failure.query_id);
    std::string prompt = kCategorizePrompt;
    auto replace = [&](const std::string& key, const std::string& value) {
        const auto pos = prompt.find(key);
        if (pos != std::string::npos) prompt.replace(pos, key.size(), value);
    };
    replace("{question}", q.text);
    replace("{document}", corpus.at(failure.gold_doc_id).text);
    try {
        return parse_failure_category(completion.complete(prompt, 0.0, 16));
    } catch (const ProviderError& e) {
        if (note) *note = e.what();
        return FailureCategory::Uncategorized;
    }
}

std::map<std::string, std::size_t> failure_histogram(const std::vector<FailureCase>& cases) {
    std::map<std::string, std::size_t> hist;
    for (const auto& c : cases) hist[to_string(c.category)] += 1;
    return hist;
}

std::string failures_csv(const std::vector<FailureCase>& cases) {
    std::ostringstream out;
    out << "query_id,gold_doc_id,category,top5,note\n";
    for (const auto& c : cases) {
        out << c.query_id << ',' << c.gold_doc_id << ',' << to_string(c.category) << ',';
        for (std::size_t i = 0; i < c.retrieved_top5.size(); ++i) {
            if (i > 0) out << ' ';
            out << c.retrieved_top5[i];
        }
        out << ',' << c.note << '\n';
    }
    return out.str();
}

} // namespace ragbench

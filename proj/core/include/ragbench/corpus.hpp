// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ragbench/errors.hpp"

namespace ragbench {

/// Source subset of a document or query. Labels outside the three benchmark
/// subsets map to Other so synthetic corpora load cleanly.
enum class Subset { FinQA, ConvFinQA, TATDQA, Other };

std::string to_string(Subset s);
Subset parse_subset(const std::string& label);

struct Document {
    std::string doc_id;
    std::string text; // markdown mixing prose and tables
    Subset subset = Subset::Other;
    std::size_t token_count = 0; // whitespace tokens, recomputed on load
    bool contextualized = false; // guards against double context prepending
};

struct Query {
    std::string query_id;
    std::string text;
    std::string gold_doc_id;
    double gold_answer = 0.0;
    Subset subset = Subset::Other;
};

/// Immutable after load; insertion order is the iteration order.
class Corpus {
public:
    Corpus() = default;

    /// Appends a document, enforcing unique non-empty ids and non-empty text.
    void add(Document doc);

    const std::vector<Document>& documents() const noexcept { return docs_; }
    std::size_t size() const noexcept { return docs_.size(); }
    bool empty() const noexcept { return docs_.empty(); }

    bool contains(const std::string& doc_id) const { return index_.count(doc_id) > 0; }
    std::optional<std::size_t> position_of(const std::string& doc_id) const;
    const Document& at(const std::string& doc_id) const;
    const Document& at_position(std::size_t pos) const { return docs_.at(pos); }

    /// True when every document carries the contextualized marker.
    bool contextualized() const;

private:
    std::vector<Document> docs_;
    std::unordered_map<std::string, std::size_t> index_;
};

class QuerySet {
public:
    QuerySet() = default;

    /// Appends a query; gold_doc_id must resolve against `corpus`.
    void add(Query q, const Corpus& corpus);

    const std::vector<Query>& queries() const noexcept { return queries_; }
    std::size_t size() const noexcept { return queries_.size(); }
    bool empty() const noexcept { return queries_.empty(); }
    const Query& at(const std::string& query_id) const;

private:
    std::vector<Query> queries_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// One retrieval result entry. RankedList is the universal currency between
/// retrievers, fusers, rerankers, and metrics.
struct ScoredDoc {
    std::string doc_id;
    double score = 0.0;
};

struct RankedList {
    std::vector<ScoredDoc> entries;
    std::string source; // strategy label

    /// Sorts entries by (score desc, doc_id asc) and enforces the invariants:
    /// unique ids, finite scores.
    void normalize();

    /// 1-based rank of doc_id, or nullopt when absent.
    std::optional<std::size_t> rank_of(const std::string& doc_id) const;

    /// Copy truncated to the first k entries.
    RankedList top(std::size_t k) const;
};

/// Comparator implementing the deterministic (score desc, doc_id asc) order.
bool ranked_before(const ScoredDoc& a, const ScoredDoc& b);

// --- Ingestion -------------------------------------------------------------
//
// Record streams are line-delimited JSON (UTF-8), one record per line.
// Documents require: doc_id, text, subset. Queries require: query_id, text,
// gold_doc_id, gold_answer, subset. Unknown extra fields are ignored.

Corpus load_corpus(std::istream& in);
Corpus load_corpus_file(const std::string& path);
QuerySet load_queries(std::istream& in, const Corpus& corpus);
QuerySet load_queries_file(const std::string& path, const Corpus& corpus);

/// Writes documents back as line-delimited records; load(save(c)) == c.
void save_corpus(const Corpus& corpus, std::ostream& out);
void save_corpus_file(const Corpus& corpus, const std::string& path);

struct CorpusStats {
    std::size_t count = 0;
    double mean_token_count = 0.0;
    std::unordered_map<std::string, std::size_t> per_subset;
};

CorpusStats corpus_stats(const Corpus& corpus);

/// Whitespace token count; the single tokenizer definition used for document
/// statistics across the repo.
std::size_t whitespace_token_count(const std::string& text);

} // namespace ragbench

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "ragbench/corpus.hpp"

namespace ragbench {

struct TokenizerConfig {
    bool lowercase = true;
    bool strip_edge_punctuation = true;
};

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;

    void validate() const;
};

/// Splits on whitespace; optionally lowercases and strips leading/trailing
/// non-alphanumeric characters. Tokens that become empty are dropped.
std::vector<std::string> tokenize(const std::string& text, const TokenizerConfig& cfg = {});

/// One posting: document position in the corpus plus term frequency.
struct Posting {
    std::uint32_t doc_pos = 0;
    std::uint32_t tf = 0;
};

/// Okapi BM25 inverted index over a whole corpus. Immutable after build;
/// concurrent searches are safe.
class LexicalIndex {
public:
    static LexicalIndex build(const Corpus& corpus, const TokenizerConfig& cfg = {});

    /// score(q,d) = sum over query term occurrences of
    ///   idf(t) * tf(t,d)*(k1+1) / (tf(t,d) + k1*(1 - b + b*|d|/avgdl))
    /// with idf(t) = ln((N - df(t) + 0.5)/(df(t) + 0.5) + 1).
    /// Duplicated query terms contribute once per occurrence. Zero-score
    /// documents are excluded; ties break by ascending doc_id.
    RankedList search(const std::string& query, const Bm25Params& params,
                      std::size_t k) const;

    std::size_t doc_count() const noexcept { return doc_lengths_.size(); }
    double avgdl() const noexcept { return avgdl_; }
    std::size_t df(const std::string& term) const;
    const std::vector<std::uint32_t>& doc_lengths() const noexcept { return doc_lengths_; }
    const TokenizerConfig& tokenizer() const noexcept { return tokenizer_; }

    /// Internal versioned dump; not a public contract.
    void save(const std::string& path) const;
    static LexicalIndex load(const std::string& path);

    /// Checks the structural invariants (df == postings length, postings
    /// sorted, avgdl consistent). Throws DataError on violation.
    void validate() const;

private:
    std::unordered_map<std::string, std::vector<Posting>> postings_;
    std::vector<std::uint32_t> doc_lengths_;
    std::vector<std::string> doc_ids_;
    double avgdl_ = 0.0;
    TokenizerConfig tokenizer_;
};

} // namespace ragbench

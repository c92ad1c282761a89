// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "ragbench/providers.hpp"

namespace ragbench {

/// Deterministic bag-of-tokens embedder: the text is split on
/// non-alphanumeric boundaries (case-sensitive), every token hashes to a
/// pseudo-random direction derived from (seed, token), and the sum is
/// L2-normalized. Identical text always maps to the identical unit vector,
/// and texts sharing tokens have correlated embeddings, which makes dense
/// retrieval behave plausibly in offline runs.
class HashEmbedder final : public EmbeddingProvider {
public:
    HashEmbedder(std::size_t dimension, std::uint64_t seed, CallLedger* ledger = nullptr,
                 std::string model_id = "mock-hash");

    const std::string& model_id() const override { return model_id_; }
    std::size_t dimension() const override { return dimension_; }
    std::vector<std::vector<float>> embed(const std::vector<std::string>& texts) override;

private:
    std::vector<float> embed_one(const std::string& text) const;

    std::size_t dimension_;
    std::uint64_t seed_;
    CallLedger* ledger_;
    std::string model_id_;
};

/// Canned completion provider: rules are tried in insertion order and the
/// first whose needle occurs in the prompt answers; an unmatched prompt is a
/// ProviderError. Responders may be fixed strings or functions of the prompt.
class ScriptedCompletion final : public CompletionProvider {
public:
    using Responder = std::function<std::string(const std::string& prompt)>;

    explicit ScriptedCompletion(CallLedger* ledger = nullptr,
                                std::string model_id = "mock-scripted");

    ScriptedCompletion& when_contains(std::string needle, std::string response);
    ScriptedCompletion& when_contains(std::string needle, Responder responder);

    const std::string& model_id() const override { return model_id_; }
    std::string complete(const std::string& prompt, double temperature, int max_tokens) override;

private:
    struct Rule {
        std::string needle;
        Responder respond;
    };
    std::vector<Rule> rules_;
    CallLedger* ledger_;
    std::string model_id_;
};

/// Reranker that knows the gold answer: a document containing the needle
/// registered for the query scores 1.0; every other document at input
/// position p scores 1/(p+2), preserving input order below the gold.
class OracleReranker final : public RerankProvider {
public:
    explicit OracleReranker(std::unordered_map<std::string, std::string> gold_needle_by_query,
                            CallLedger* ledger = nullptr, std::string model_id = "mock-oracle");

    const std::string& model_id() const override { return model_id_; }
    std::vector<RerankEntry> rerank(const std::string& query,
                                    const std::vector<std::string>& documents,
                                    std::size_t top_n) override;

private:
    std::unordered_map<std::string, std::string> gold_needle_by_query_;
    CallLedger* ledger_;
    std::string model_id_;
};

/// Offline completion provider covering every embedded prompt template with a
/// deterministic heuristic response (numeric answer extraction, echoed query
/// variants, token-overlap relevance labels, prefix summaries). Used by the
/// CLI's --offline mode.
std::unique_ptr<ScriptedCompletion> make_offline_completion(CallLedger* ledger = nullptr);

/// First whitespace token of `text` that is purely numeric (after stripping
/// edge punctuation), or nullopt. Exposed for tests of the offline answerer.
std::optional<std::string> first_numeric_token(const std::string& text);

} // namespace ragbench

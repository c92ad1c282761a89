// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ragbench/corpus.hpp"
#include "ragbench/fusion.hpp"
#include "ragbench/prompts.hpp"
#include "ragbench/providers.hpp"
#include "ragbench/vector_index.hpp"

namespace ragbench {

enum class RelevanceLabel { Relevant, Ambiguous, Irrelevant };

/// First label word occurring in the completion wins (case-sensitive, so
/// "IRRELEVANT" is not misread through its "RELEVANT" suffix). Text naming
/// no label parses as Ambiguous.
RelevanceLabel parse_relevance_label(const std::string& completion_text);

/// Knobs for all composed strategies. Temperatures default to the values
/// used in the main experiments; per-method defaults can be overridden.
struct StrategyConfig {
    int hyde_max_tokens = 150;
    double hyde_temperature = 0.0;
    int multi_query_n = 3;
    double multi_query_rrf_k = 60.0;
    double multi_query_temperature = 0.0;
    int multi_query_max_tokens = 256;
    double crag_eval_temperature = 0.0;
    double crag_rewrite_temperature = 0.5;
    int crag_eval_max_tokens = 16;
    int crag_rewrite_max_tokens = 128;
    int crag_top_k = 5;
    int contextual_max_tokens = 100;
    double contextual_temperature = 0.0;
    int rerank_pool = 50;
    int rerank_top_n = 10;

    void validate() const;
};

/// A retriever bound to its indexes: query text in, ranked list out.
/// The depth is the retriever's own contract (harness wiring decides it).
using RetrieverFn = std::function<RankedList(const std::string& query_text)>;

/// Generates a hypothetical answer passage, embeds it, and searches the
/// vector index with that embedding. The raw query is embedded only when
/// the generation comes back empty (fallback, so benchmark queries never
/// return nothing).
RankedList hyde_retrieve(const std::string& query_text, CompletionProvider& completion,
                         EmbeddingProvider& embedder, EmbeddingCache& cache,
                         const VectorIndex& vindex, const PromptLibrary& prompts,
                         const StrategyConfig& cfg, std::size_t k);

/// Lines of the form "<digits>. <text>" (after trimming leading whitespace),
/// capped at max_variants.
std::vector<std::string> parse_numbered_variants(const std::string& completion_text,
                                                 std::size_t max_variants);

/// Asks for query variants, retrieves original plus variants independently
/// at depth k with `dense_retriever`, and merges via RRF. Zero parseable
/// variants degrade to plain retrieval of the original.
RankedList multi_query_retrieve(const std::string& query_text, CompletionProvider& completion,
                                const RetrieverFn& dense_retriever, const PromptLibrary& prompts,
                                const StrategyConfig& cfg, std::size_t k);

/// Returns a new corpus whose document texts are prefixed with an
/// LLM-generated summary and a blank-line separator. Re-applying to an
/// already contextualized corpus is an error; a completion failure for any
/// document aborts the whole operation.
Corpus contextualize_corpus(const Corpus& corpus, CompletionProvider& completion,
                            const PromptLibrary& prompts, const StrategyConfig& cfg);

/// Corrective retrieval: evaluates the hybrid top-k; if no document is
/// RELEVANT, rewrites the query and returns whichever round earned more
/// RELEVANT labels (ties favor round one).
RankedList crag_retrieve(const std::string& query_text, const RetrieverFn& hybrid_retriever,
                         CompletionProvider& completion, const Corpus& corpus,
                         const PromptLibrary& prompts, const StrategyConfig& cfg);

/// Two-stage pipeline: rerank the first stage's top `rerank_pool` documents
/// and return the top `rerank_top_n` with reranker scores. A pool smaller
/// than rerank_pool is reranked as-is; an empty first stage yields an empty
/// list without calling the reranker.
RankedList two_stage_retrieve(const std::string& query_text, const RetrieverFn& first_stage,
                              RerankProvider& reranker, const Corpus& corpus,
                              const StrategyConfig& cfg);

} // namespace ragbench

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ragbench/corpus.hpp"
#include "ragbench/fusion.hpp"
#include "ragbench/lexical.hpp"
#include "ragbench/mocks.hpp"
#include "ragbench/prompts.hpp"
#include "ragbench/providers.hpp"
#include "ragbench/report.hpp"
#include "ragbench/strategies.hpp"
#include "ragbench/vector_index.hpp"

namespace ragbench {

enum class Method {
    Bm25,
    Dense,
    HybridRrf,
    HybridCc,
    HybridRerank,
    Hyde,
    MultiQuery,
    ContextualDense,
    ContextualHybrid,
    Crag,
    Oracle,
};

Method parse_method(const std::string& name); // throws ConfigError on unknown names
std::string to_string(Method m);
std::vector<std::string> known_methods();

struct GenerationConfig {
    int top_k = 5;
    double temperature = 0.0;
    int max_tokens = 64;
};

struct ProviderConfig {
    bool offline = true;
    std::string embedding_model = "mock-hash";
    std::size_t embedding_dimension = 256; // benchmark embedder uses 3072
    std::string completion_model = "mock-offline";
    std::string rerank_model = "mock-oracle";
    int max_attempts = 3;
    int backoff_base_ms = 100;
    double backoff_multiplier = 2.0;
    std::uint32_t rate_limit_per_minute = 0;
    int max_in_flight = 4;
    std::string embed_path = "/v1/embeddings";
    std::string completion_path = "/v1/chat/completions";
    std::string rerank_path = "/v2/rerank";
};

struct ExperimentConfig {
    Method method = Method::HybridRrf;
    std::uint64_t seed = 42;
    std::vector<std::size_t> cutoffs = {1, 3, 5, 10, 20};
    /// Ranked-list depth stored per query; 0 means max(cutoffs).
    std::size_t retrieval_depth = 0;
    /// Depth of the first-stage lists feeding fusion; 0 means the full corpus.
    std::size_t first_stage_depth = 0;
    std::string documents_path;
    std::string queries_path;
    std::string cache_path;
    std::string prompts_dir;
    std::string output_dir = ".";
    int threads = 1;
    Bm25Params bm25;
    RrfConfig rrf;
    ConvexConfig convex;
    StrategyConfig strategy;
    GenerationConfig generation;
    NumberMatchConfig number_match;
    ProviderConfig providers;

    std::size_t effective_retrieval_depth() const;
    void validate() const;
};

/// The bound providers plus shared state for one experiment. Offline mode
/// wires the deterministic mocks; online mode builds HTTP clients from
/// RAGBENCH_{EMBED,LLM,RERANK}_{KEY,ENDPOINT}.
struct ProviderSet {
    std::unique_ptr<EmbeddingProvider> embedder;
    std::unique_ptr<CompletionProvider> completion;
    std::unique_ptr<RerankProvider> reranker;
    std::shared_ptr<CallLedger> ledger;
    std::shared_ptr<Clock> clock;
};

ProviderSet build_providers(const ExperimentConfig& cfg, const Corpus& corpus,
                            const QuerySet& queries);

/// Indexes and retriever wiring for one (method, corpus) pair. Builds only
/// what the method needs; contextual methods re-index a contextualized copy.
class ExperimentContext {
public:
    static ExperimentContext prepare(const ExperimentConfig& cfg, const Corpus& corpus,
                                     const QuerySet& queries, EmbeddingCache* shared_cache = nullptr);

    /// Retriever for the configured method at the configured depth. Oracle
    /// returns the gold document directly.
    RankedList retrieve(const Query& query);

    /// The contextualized copy when the method re-indexes, else the source.
    const Corpus& active_corpus() const {
        return contextualized_ ? *contextualized_ : *source_corpus_;
    }
    const PromptLibrary& prompts() const { return prompts_; }
    CallLedger& ledger() { return *providers_.ledger; }
    ProviderSet& providers() { return providers_; }
    EmbeddingCache& cache() { return *cache_; }
    const ExperimentConfig& config() const { return cfg_; }

private:
    ExperimentConfig cfg_;
    const Corpus* source_corpus_ = nullptr;
    std::optional<Corpus> contextualized_; // owns the re-indexed copy if used
    std::optional<LexicalIndex> lexical_;
    std::optional<VectorIndex> vector_;
    PromptLibrary prompts_;
    ProviderSet providers_;
    std::shared_ptr<EmbeddingCache> owned_cache_;
    EmbeddingCache* cache_ = nullptr;

    RetrieverFn bm25_fn(std::size_t depth);
    RetrieverFn dense_fn(std::size_t depth);
    RetrieverFn hybrid_rrf_fn(std::size_t depth);
    RetrieverFn hybrid_cc_fn(std::size_t depth);
};

/// Runs the configured method over every query, computing all retrieval
/// metrics at all cutoffs with per-subset breakdowns. Deterministic with
/// mocks and a fixed seed.
RunReport run_experiment(const ExperimentConfig& cfg, const Corpus& corpus,
                         const QuerySet& queries, EmbeddingCache* shared_cache = nullptr);

// --- Pairwise comparison -----------------------------------------------------

struct MethodScores {
    std::string name;
    std::map<std::string, double> per_query; // query_id -> metric value
};

struct ComparisonRow {
    std::string method_a;
    std::string method_b;
    double delta_mean = 0.0; // mean(a) - mean(b)
    double p_raw = 1.0;
    double p_adjusted = 1.0;
    bool significant = false;
};

struct ComparisonTable {
    std::string metric;
    std::size_t comparisons = 0; // Bonferroni m
    std::vector<ComparisonRow> rows;

    std::string to_csv() const;
};

/// Paired bootstrap over every method pair on the shared query set, with
/// Bonferroni m = number of pairs. Mismatched query sets are an error.
ComparisonTable compare_methods(const std::vector<MethodScores>& methods,
                                const std::string& metric, std::size_t n_resamples,
                                std::uint64_t seed);

MethodScores scores_for_metric(const RunReport& report, const std::string& metric);

// --- Ablation sweeps ------------------------------------------------------------

struct SweepResult {
    std::string axis;
    std::vector<double> values;
    std::vector<RunReport> reports;

    /// Plot-ready CSV: axis,value,metric,value rows for all aggregates.
    std::string to_csv() const;
};

/// Re-runs the experiment once per axis value, sharing the embedding cache.
/// Axis is one of: alpha, rrf_k, rerank_pool, rerank_top_n.
SweepResult sweep(const ExperimentConfig& base, const std::string& axis,
                  const std::vector<double>& values, const Corpus& corpus,
                  const QuerySet& queries);

} // namespace ragbench

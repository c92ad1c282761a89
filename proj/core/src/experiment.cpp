// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include "ragbench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "ragbench/http_providers.hpp"
#include "ragbench/stats.hpp"

namespace ragbench {

namespace {

const std::pair<const char*, Method> kMethodNames[] = {
    {"bm25", Method::Bm25},
    {"dense", Method::Dense},
    {"hybrid_rrf", Method::HybridRrf},
    {"hybrid_cc", Method::HybridCc},
    {"hybrid_rerank", Method::HybridRerank},
    {"hyde", Method::Hyde},
    {"multi_query", Method::MultiQuery},
    {"contextual_dense", Method::ContextualDense},
    {"contextual_hybrid", Method::ContextualHybrid},
    {"crag", Method::Crag},
    {"oracle", Method::Oracle},
};

bool needs_lexical(Method m) {
    switch (m) {
        case Method::Bm25:
        case Method::HybridRrf:
        case Method::HybridCc:
        case Method::HybridRerank:
        case Method::ContextualHybrid:
        case Method::Crag:
            return true;
        default:
            return false;
    }
}

bool needs_vectors(Method m) {
    switch (m) {
        case Method::Dense:
        case Method::HybridRrf:
        case Method::HybridCc:
        case Method::HybridRerank:
        case Method::Hyde:
        case Method::MultiQuery:
        case Method::ContextualDense:
        case Method::ContextualHybrid:
        case Method::Crag:
            return true;
        default:
            return false;
    }
}

bool needs_contextualization(Method m) {
    return m == Method::ContextualDense || m == Method::ContextualHybrid;
}

} // namespace

Method parse_method(const std::string& name) {
    for (const auto& [n, m] : kMethodNames) {
        if (name == n) return m;
    }
    throw ConfigError("unknown method '" + name + "' (known: " + [] {
        std::string all;
        for (const auto& [n, m] : kMethodNames) {
            if (!all.empty()) all += ", ";
            all += n;
        }
        return all;
    }() + ")");
}

std::string to_string(Method m) {
    for (const auto& [n, candidate] : kMethodNames) {
        if (candidate == m) return n;
    }
    return "unknown";
}

std::vector<std::string> known_methods() {
    std::vector<std::string> out;
    for (const auto& [n, m] : kMethodNames) out.emplace_back(n);
    return out;
}

std::size_t ExperimentConfig::effective_retrieval_depth() const {
    if (retrieval_depth > 0) return retrieval_depth;
    std::size_t depth = 0;
    for (auto k : cutoffs) depth = std::max(depth, k);
    return depth == 0 ? 10 : depth;
}

void ExperimentConfig::validate() const {
    if (cutoffs.empty()) throw ConfigError("cutoffs must not be empty");
    for (auto k : cutoffs) {
        if (k == 0) throw ConfigError("cutoffs must be >= 1");
    }
    if (threads < 1) throw ConfigError("threads must be >= 1");
    bm25.validate();
    rrf.validate();
    convex.validate();
    strategy.validate();
    number_match.validate();
    if (providers.max_attempts < 1) throw ConfigError("providers.max_attempts must be >= 1");
    if (providers.embedding_dimension == 0) {
        throw ConfigError("providers.embedding_dimension must be positive");
    }
}

ProviderSet build_providers(const ExperimentConfig& cfg, const Corpus& corpus,
                            const QuerySet& queries) {
    ProviderSet set;
    set.ledger = std::make_shared<CallLedger>();
    set.clock = std::make_shared<SystemClock>();

    if (cfg.providers.offline) {
        set.embedder = std::make_unique<HashEmbedder>(cfg.providers.embedding_dimension, cfg.seed,
                                                      set.ledger.get(),
                                                      cfg.providers.embedding_model);
        set.completion = make_offline_completion(set.ledger.get());
        // The offline reranker knows each query's gold document by its text.
        std::unordered_map<std::string, std::string> needles;
        for (const auto& q : queries.queries()) {
            if (corpus.contains(q.gold_doc_id)) {
                needles[q.text] = corpus.at(q.gold_doc_id).text;
            }
        }
        set.reranker = std::make_unique<OracleReranker>(std::move(needles), set.ledger.get(),
                                                        cfg.providers.rerank_model);
        return set;
    }

    RequestPolicy policy;
    policy.max_attempts = cfg.providers.max_attempts;
    policy.backoff_base = std::chrono::milliseconds(cfg.providers.backoff_base_ms);
    policy.backoff_multiplier = cfg.providers.backoff_multiplier;
    policy.rate_limit_per_minute = cfg.providers.rate_limit_per_minute;

    set.embedder = make_http_embedder(cfg.providers, policy, *set.clock, set.ledger.get());
    set.completion = make_http_completion(cfg.providers, policy, *set.clock, set.ledger.get());
    set.reranker = make_http_reranker(cfg.providers, policy, *set.clock, set.ledger.get());
    return set;
}

ExperimentContext ExperimentContext::prepare(const ExperimentConfig& cfg, const Corpus& corpus,
                                             const QuerySet& queries,
                                             EmbeddingCache* shared_cache) {
    cfg.validate();
    ExperimentContext ctx;
    ctx.cfg_ = cfg;
    ctx.source_corpus_ = &corpus;
    ctx.prompts_ = cfg.prompts_dir.empty() ? PromptLibrary::defaults()
                                           : PromptLibrary::load_dir(cfg.prompts_dir);
    ctx.providers_ = build_providers(cfg, corpus, queries);

    if (shared_cache) {
        ctx.cache_ = shared_cache;
    } else {
        ctx.owned_cache_ = std::make_shared<EmbeddingCache>();
        if (!cfg.cache_path.empty()) {
            *ctx.owned_cache_ = EmbeddingCache::open(cfg.cache_path);
        }
        ctx.cache_ = ctx.owned_cache_.get();
    }

    if (needs_contextualization(cfg.method)) {
        ctx.contextualized_ = contextualize_corpus(corpus, *ctx.providers_.completion,
                                                   ctx.prompts_, cfg.strategy);
    }
    const Corpus& active = ctx.active_corpus();

    if (needs_lexical(cfg.method)) {
        ctx.lexical_ = LexicalIndex::build(active);
    }
    if (needs_vectors(cfg.method)) {
        std::vector<std::string> texts;
        texts.reserve(active.size());
        for (const auto& doc : active.documents()) texts.push_back(doc.text);
        const auto vectors = cached_embed(*ctx.providers_.embedder, *ctx.cache_, texts);
        std::vector<std::pair<std::string, std::vector<float>>> rows;
        rows.reserve(vectors.size());
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            rows.emplace_back(active.at_position(i).doc_id, vectors[i]);
        }
        ctx.vector_ = VectorIndex::build(rows);
    }
    return ctx;
}

RetrieverFn ExperimentContext::bm25_fn(std::size_t depth) {
    return [this, depth](const std::string& q) {
        return lexical_->search(q, cfg_.bm25, depth);
    };
}

RetrieverFn ExperimentContext::dense_fn(std::size_t depth) {
    return [this, depth](const std::string& q) {
        const auto vectors = cached_embed(*providers_.embedder, *cache_, {q});
        return vector_->search(vectors.front(), depth);
    };
}

RetrieverFn ExperimentContext::hybrid_rrf_fn(std::size_t depth) {
    const std::size_t first_depth =
        cfg_.first_stage_depth > 0 ? cfg_.first_stage_depth : active_corpus().size();
    auto sparse = bm25_fn(first_depth);
    auto dense = dense_fn(first_depth);
    return [this, sparse, dense, depth](const std::string& q) {
        return rrf_fuse({sparse(q), dense(q)}, cfg_.rrf, depth);
    };
}

RetrieverFn ExperimentContext::hybrid_cc_fn(std::size_t depth) {
    const std::size_t first_depth =
        cfg_.first_stage_depth > 0 ? cfg_.first_stage_depth : active_corpus().size();
    auto sparse = bm25_fn(first_depth);
    auto dense = dense_fn(first_depth);
    return [this, sparse, dense, depth](const std::string& q) {
        return convex_fuse(sparse(q), dense(q), cfg_.convex, depth);
    };
}

RankedList ExperimentContext::retrieve(const Query& query) {
    const std::size_t depth = cfg_.effective_retrieval_depth();
    switch (cfg_.method) {
        case Method::Bm25:
            return bm25_fn(depth)(query.text);
        case Method::Dense:
        case Method::ContextualDense:
            return dense_fn(depth)(query.text);
        case Method::HybridRrf:
        case Method::ContextualHybrid:
            return hybrid_rrf_fn(depth)(query.text);
        case Method::HybridCc:
            return hybrid_cc_fn(depth)(query.text);
        case Method::HybridRerank: {
            const auto pool = static_cast<std::size_t>(cfg_.strategy.rerank_pool);
            return two_stage_retrieve(query.text, hybrid_rrf_fn(std::max(depth, pool)),
                                      *providers_.reranker, active_corpus(), cfg_.strategy);
        }
        case Method::Hyde:
            return hyde_retrieve(query.text, *providers_.completion, *providers_.embedder, *cache_,
                                 *vector_, prompts_, cfg_.strategy, depth);
        case Method::MultiQuery:
            return multi_query_retrieve(query.text, *providers_.completion, dense_fn(depth),
                                        prompts_, cfg_.strategy, depth);
        case Method::Crag:
            return crag_retrieve(query.text,
                                 hybrid_rrf_fn(static_cast<std::size_t>(cfg_.strategy.crag_top_k)),
                                 *providers_.completion, active_corpus(), prompts_, cfg_.strategy);
        case Method::Oracle: {
            RankedList out;
            out.source = "oracle";
            out.entries.push_back({query.gold_doc_id, 1.0});
            return out;
        }
    }
    throw ConfigError("unhandled method");
}

RunReport run_experiment(const ExperimentConfig& cfg, const Corpus& corpus,
                         const QuerySet& queries, EmbeddingCache* shared_cache) {
    if (queries.empty()) throw DataError("run_experiment: empty query set");
    auto ctx = ExperimentContext::prepare(cfg, corpus, queries, shared_cache);

    const auto& qs = queries.queries();
    std::vector<RankedList> ranked(qs.size());

    const int threads = std::max(1, cfg.threads);
    if (threads == 1) {
        for (std::size_t i = 0; i < qs.size(); ++i) ranked[i] = ctx.retrieve(qs[i]);
    } else {
        // Results land at their query's index, so thread count cannot change
        // the report.
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (;;) {
                        const std::size_t i = next.fetch_add(1);
                        if (i >= qs.size()) return;
                        ranked[i] = ctx.retrieve(qs[i]);
                    }
                } catch (...) {
                    errors[static_cast<std::size_t>(t)] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    RunReport report;
    report.method = to_string(cfg.method);
    report.cutoffs = cfg.cutoffs;
    report.metrics.cutoffs = cfg.cutoffs;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const Query& q = qs[i];
        const auto values = retrieval_metrics(ranked[i], q.gold_doc_id, cfg.cutoffs);
        for (const auto& [name, v] : values) report.metrics.per_query[name][q.query_id] = v;
        report.query_subsets[q.query_id] = to_string(q.subset);
        report.rankings[q.query_id] = ranked[i].entries;
    }
    report.provider_calls = ctx.ledger().summary();
    report.finalize();
    return report;
}

std::string ComparisonTable::to_csv() const {
    std::ostringstream out;
    out << "metric,method_a,method_b,delta_mean,p_raw,p_adjusted,significant,m\n";
    for (const auto& row : rows) {
        out << metric << ',' << row.method_a << ',' << row.method_b << ','
            << format_double(row.delta_mean) << ',' << format_double(row.p_raw) << ','
            << format_double(row.p_adjusted) << ',' << (row.significant ? 1 : 0) << ','
            << comparisons << '\n';
    }
    return out.str();
}

MethodScores scores_for_metric(const RunReport& report, const std::string& metric) {
    auto it = report.metrics.per_query.find(metric);
    if (it == report.metrics.per_query.end()) {
        throw DataError("report for '" + report.method + "' has no metric '" + metric + "'");
    }
    return {report.method, it->second};
}

ComparisonTable compare_methods(const std::vector<MethodScores>& methods,
                                const std::string& metric, std::size_t n_resamples,
                                std::uint64_t seed) {
    if (methods.size() < 2) throw DataError("compare_methods needs at least two methods");
    const auto& reference = methods.front().per_query;
    for (const auto& m : methods) {
        if (m.per_query.size() != reference.size()) {
            throw DataError("method '" + m.name + "' covers a different query set");
        }
        for (const auto& [qid, v] : reference) {
            if (!m.per_query.count(qid)) {
                throw DataError("method '" + m.name + "' is missing query '" + qid + "'");
            }
        }
    }

    ComparisonTable table;
    table.metric = metric;
    std::vector<double> raw;
    for (std::size_t i = 0; i < methods.size(); ++i) {
        for (std::size_t j = i + 1; j < methods.size(); ++j) {
            std::vector<double> a, b;
            a.reserve(reference.size());
            b.reserve(reference.size());
            double mean_a = 0.0, mean_b = 0.0;
            for (const auto& [qid, v] : reference) {
                (void)v;
                a.push_back(methods[i].per_query.at(qid));
                b.push_back(methods[j].per_query.at(qid));
                mean_a += a.back();
                mean_b += b.back();
            }
            mean_a /= static_cast<double>(a.size());
            mean_b /= static_cast<double>(b.size());

            ComparisonRow row;
            row.method_a = methods[i].name;
            row.method_b = methods[j].name;
            row.delta_mean = mean_a - mean_b;
            row.p_raw = paired_bootstrap(a, b, n_resamples, seed);
            table.rows.push_back(row);
            raw.push_back(row.p_raw);
        }
    }
    table.comparisons = table.rows.size();
    const auto adjusted = bonferroni(raw, table.comparisons);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        table.rows[i].p_adjusted = adjusted[i];
        table.rows[i].significant = adjusted[i] < kSignificanceLevel;
    }
    return table;
}

std::string SweepResult::to_csv() const {
    std::ostringstream out;
    out << "axis,value,metric,metric_value\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        for (const auto& [name, v] : reports[i].metrics.aggregates) {
            out << axis << ',' << format_double(values[i]) << ',' << name << ','
                << format_double(v) << '\n';
        }
    }
    return out.str();
}

SweepResult sweep(const ExperimentConfig& base, const std::string& axis,
                  const std::vector<double>& values, const Corpus& corpus,
                  const QuerySet& queries) {
    if (values.empty()) throw ConfigError("sweep needs at least one axis value");
    SweepResult result;
    result.axis = axis;
    result.values = values;

    EmbeddingCache shared_cache;
    if (!base.cache_path.empty()) shared_cache = EmbeddingCache::open(base.cache_path);

    for (double value : values) {
        ExperimentConfig cfg = base;
        if (axis == "alpha") {
            cfg.convex.alpha = value;
        } else if (axis == "rrf_k") {
            cfg.rrf.k_rrf = value;
        } else if (axis == "rerank_pool") {
            cfg.strategy.rerank_pool = static_cast<int>(value);
        } else if (axis == "rerank_top_n") {
            cfg.strategy.rerank_top_n = static_cast<int>(value);
        } else {
            throw ConfigError("unknown sweep axis '" + axis +
                              "' (known: alpha, rrf_k, rerank_pool, rerank_top_n)");
        }
        result.reports.push_back(run_experiment(cfg, corpus, queries, &shared_cache));
    }
    return result;
}

} // namespace ragbench

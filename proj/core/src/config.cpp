// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include "ragbench/config.hpp"

#include <fstream>
#include <set>

namespace ragbench {

using nlohmann::json;

json config_to_json(const ExperimentConfig& cfg) {
    json doc;
    doc["method"] = to_string(cfg.method);
    doc["seed"] = cfg.seed;
    doc["cutoffs"] = cfg.cutoffs;
    doc["retrieval_depth"] = cfg.retrieval_depth;
    doc["first_stage_depth"] = cfg.first_stage_depth;
    doc["threads"] = cfg.threads;
    doc["paths"] = {{"documents", cfg.documents_path},
                    {"queries", cfg.queries_path},
                    {"cache", cfg.cache_path},
                    {"prompts_dir", cfg.prompts_dir},
                    {"output_dir", cfg.output_dir}};
    doc["bm25"] = {{"k1", cfg.bm25.k1}, {"b", cfg.bm25.b}};
    doc["rrf"] = {{"k", cfg.rrf.k_rrf}};
    doc["convex"] = {{"alpha", cfg.convex.alpha}, {"normalization", "min_max"}};
    doc["strategy"] = {{"hyde_max_tokens", cfg.strategy.hyde_max_tokens},
                       {"hyde_temperature", cfg.strategy.hyde_temperature},
                       {"multi_query_n", cfg.strategy.multi_query_n},
                       {"multi_query_rrf_k", cfg.strategy.multi_query_rrf_k},
                       {"multi_query_temperature", cfg.strategy.multi_query_temperature},
                       {"multi_query_max_tokens", cfg.strategy.multi_query_max_tokens},
                       {"crag_eval_temperature", cfg.strategy.crag_eval_temperature},
                       {"crag_rewrite_temperature", cfg.strategy.crag_rewrite_temperature},
                       {"crag_eval_max_tokens", cfg.strategy.crag_eval_max_tokens},
                       {"crag_rewrite_max_tokens", cfg.strategy.crag_rewrite_max_tokens},
                       {"crag_top_k", cfg.strategy.crag_top_k},
                       {"contextual_max_tokens", cfg.strategy.contextual_max_tokens},
                       {"contextual_temperature", cfg.strategy.contextual_temperature},
                       {"rerank_pool", cfg.strategy.rerank_pool},
                       {"rerank_top_n", cfg.strategy.rerank_top_n}};
    doc["generation"] = {{"top_k", cfg.generation.top_k},
                         {"temperature", cfg.generation.temperature},
                         {"max_tokens", cfg.generation.max_tokens}};
    doc["number_match"] = {{"epsilon", cfg.number_match.epsilon},
                           {"scale_set", cfg.number_match.scale_set}};
    doc["providers"] = {{"offline", cfg.providers.offline},
                        {"embedding_model", cfg.providers.embedding_model},
                        {"embedding_dimension", cfg.providers.embedding_dimension},
                        {"completion_model", cfg.providers.completion_model},
                        {"rerank_model", cfg.providers.rerank_model},
                        {"max_attempts", cfg.providers.max_attempts},
                        {"backoff_base_ms", cfg.providers.backoff_base_ms},
                        {"backoff_multiplier", cfg.providers.backoff_multiplier},
                        {"rate_limit_per_minute", cfg.providers.rate_limit_per_minute},
                        {"max_in_flight", cfg.providers.max_in_flight},
                        {"embed_path", cfg.providers.embed_path},
                        {"completion_path", cfg.providers.completion_path},
                        {"rerank_path", cfg.providers.rerank_path}};
    return doc;
}

namespace {

template <typename T>
void maybe(const json& doc, const char* key, T& slot) {
    if (doc.contains(key)) slot = doc.at(key).get<T>();
}

} // namespace

ExperimentConfig config_from_json(const json& doc, const ExperimentConfig& base) {
    if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
    static const std::set<std::string> known = {
        "method", "seed",     "cutoffs",    "retrieval_depth", "first_stage_depth",
        "threads", "paths",   "bm25",       "rrf",             "convex",
        "strategy", "generation", "number_match", "providers"};
    for (const auto& [key, value] : doc.items()) {
        if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
    }

    ExperimentConfig cfg = base;
    if (doc.contains("method")) cfg.method = parse_method(doc.at("method").get<std::string>());
    maybe(doc, "seed", cfg.seed);
    maybe(doc, "cutoffs", cfg.cutoffs);
    maybe(doc, "retrieval_depth", cfg.retrieval_depth);
    maybe(doc, "first_stage_depth", cfg.first_stage_depth);
    maybe(doc, "threads", cfg.threads);
    if (doc.contains("paths")) {
        const auto& p = doc.at("paths");
        maybe(p, "documents", cfg.documents_path);
        maybe(p, "queries", cfg.queries_path);
        maybe(p, "cache", cfg.cache_path);
        maybe(p, "prompts_dir", cfg.prompts_dir);
        maybe(p, "output_dir", cfg.output_dir);
    }
    if (doc.contains("bm25")) {
        maybe(doc.at("bm25"), "k1", cfg.bm25.k1);
        maybe(doc.at("bm25"), "b", cfg.bm25.b);
    }
    if (doc.contains("rrf")) maybe(doc.at("rrf"), "k", cfg.rrf.k_rrf);
    if (doc.contains("convex")) maybe(doc.at("convex"), "alpha", cfg.convex.alpha);
    if (doc.contains("strategy")) {
        const auto& s = doc.at("strategy");
        maybe(s, "hyde_max_tokens", cfg.strategy.hyde_max_tokens);
        maybe(s, "hyde_temperature", cfg.strategy.hyde_temperature);
        maybe(s, "multi_query_n", cfg.strategy.multi_query_n);
        maybe(s, "multi_query_rrf_k", cfg.strategy.multi_query_rrf_k);
        maybe(s, "multi_query_temperature", cfg.strategy.multi_query_temperature);
        maybe(s, "multi_query_max_tokens", cfg.strategy.multi_query_max_tokens);
        maybe(s, "crag_eval_temperature", cfg.strategy.crag_eval_temperature);
        maybe(s, "crag_rewrite_temperature", cfg.strategy.crag_rewrite_temperature);
        maybe(s, "crag_eval_max_tokens", cfg.strategy.crag_eval_max_tokens);
        maybe(s, "crag_rewrite_max_tokens", cfg.strategy.crag_rewrite_max_tokens);
        maybe(s, "crag_top_k", cfg.strategy.crag_top_k);
        maybe(s, "contextual_max_tokens", cfg.strategy.contextual_max_tokens);
        maybe(s, "contextual_temperature", cfg.strategy.contextual_temperature);
        maybe(s, "rerank_pool", cfg.strategy.rerank_pool);
        maybe(s, "rerank_top_n", cfg.strategy.rerank_top_n);
    }
    if (doc.contains("generation")) {
        const auto& g = doc.at("generation");
        maybe(g, "top_k", cfg.generation.top_k);
        maybe(g, "temperature", cfg.generation.temperature);
        maybe(g, "max_tokens", cfg.generation.max_tokens);
    }
    if (doc.contains("number_match")) {
        const auto& nm = doc.at("number_match");
        maybe(nm, "epsilon", cfg.number_match.epsilon);
        maybe(nm, "scale_set", cfg.number_match.scale_set);
    }
    if (doc.contains("providers")) {
        const auto& p = doc.at("providers");
        maybe(p, "offline", cfg.providers.offline);
        maybe(p, "embedding_model", cfg.providers.embedding_model);
        maybe(p, "embedding_dimension", cfg.providers.embedding_dimension);
        maybe(p, "completion_model", cfg.providers.completion_model);
        maybe(p, "rerank_model", cfg.providers.rerank_model);
        maybe(p, "max_attempts", cfg.providers.max_attempts);
        maybe(p, "backoff_base_ms", cfg.providers.backoff_base_ms);
        maybe(p, "backoff_multiplier", cfg.providers.backoff_multiplier);
        maybe(p, "rate_limit_per_minute", cfg.providers.rate_limit_per_minute);
        maybe(p, "max_in_flight", cfg.providers.max_in_flight);
        maybe(p, "embed_path", cfg.providers.embed_path);
        maybe(p, "completion_path", cfg.providers.completion_path);
        maybe(p, "rerank_path", cfg.providers.rerank_path);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path, const ExperimentConfig& base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw ConfigError("config file '" + path + "' is not valid JSON");
    return config_from_json(doc, base);
}

} // namespace ragbench

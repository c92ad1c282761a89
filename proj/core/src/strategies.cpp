// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include "ragbench/strategies.hpp"

#include <algorithm>
#include <cctype>

namespace ragbench {

namespace {

std::string trimmed(const std::string& s) {
    const auto lo = s.find_first_not_of(" \t\r\n");
    if (lo == std::string::npos) return {};
    const auto hi = s.find_last_not_of(" \t\r\n");
    return s.substr(lo, hi - lo + 1);
}

} // namespace

void StrategyConfig::validate() const {
    if (hyde_max_tokens <= 0 || multi_query_n <= 0 || crag_top_k <= 0 ||
        contextual_max_tokens <= 0 || rerank_pool <= 0 || rerank_top_n <= 0 ||
        multi_query_max_tokens <= 0 || crag_eval_max_tokens <= 0 || crag_rewrite_max_tokens <= 0) {
        throw ConfigError("strategy config: all counts must be positive");
    }
    if (hyde_temperature < 0 || multi_query_temperature < 0 || crag_eval_temperature < 0 ||
        crag_rewrite_temperature < 0 || contextual_temperature < 0) {
        throw ConfigError("strategy config: temperatures must be >= 0");
    }
    if (!(multi_query_rrf_k > 0)) throw ConfigError("strategy config: multi_query_rrf_k must be > 0");
}

RelevanceLabel parse_relevance_label(const std::string& completion_text) {
    // Position of the earliest label word; IRRELEVANT starts two characters
    // before its embedded RELEVANT, so earliest-start picks the right one.
    const std::pair<const char*, RelevanceLabel> words[] = {
        {"RELEVANT", RelevanceLabel::Relevant},
        {"AMBIGUOUS", RelevanceLabel::Ambiguous},
        {"IRRELEVANT", RelevanceLabel::Irrelevant},
    };
    std::size_t best_pos = std::string::npos;
    RelevanceLabel best = RelevanceLabel::Ambiguous;
    for (const auto& [word, label] : words) {
        const auto pos = completion_text.find(word);
        if (pos != std::string::npos && pos < best_pos) {
            best_pos = pos;
            best = label;
        }
    }
    return best;
}

RankedList hyde_retrieve(const std::string& query_text, CompletionProvider& completion,
                         EmbeddingProvider& embedder, EmbeddingCache& cache,
                         const VectorIndex& vindex, const PromptLibrary& prompts,
                         const StrategyConfig& cfg, std::size_t k) {
    cfg.validate();
    const std::string& tmpl = prompts.hyde.empty() ? prompts.hyde_fallback : prompts.hyde;
    require_placeholder(tmpl, "query", "hyde");
    const std::string prompt = render_template(tmpl, {{"query", query_text}});
    const std::string passage =
        completion.complete(prompt, cfg.hyde_temperature, cfg.hyde_max_tokens);

    const std::string to_embed = trimmed(passage).empty() ? query_text : passage;
    auto vectors = cached_embed(embedder, cache, {to_embed});
    auto out = vindex.search(vectors.front(), k);
    out.source = "hyde";
    return out;
}

std::vector<std::string> parse_numbered_variants(const std::string& completion_text,
                                                 std::size_t max_variants) {
    std::vector<std::string> variants;
    std::size_t start = 0;
    while (start <= completion_text.size() && variants.size() < max_variants) {
        auto end = completion_text.find('\n', start);
        if (end == std::string::npos) end = completion_text.size();
        std::string line = completion_text.substr(start, end - start);
        start = end + 1;

        std::size_t i = 0;
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t digits = i;
        while (digits < line.size() && std::isdigit(static_cast<unsigned char>(line[digits])))
            ++digits;
        if (digits == i || digits + 1 >= line.size()) continue;
        if (line[digits] != '.' || line[digits + 1] != ' ') continue;
        const std::string text = trimmed(line.substr(digits + 2));
        if (!text.empty()) variants.push_back(text);
        if (end == completion_text.size()) break;
    }
    return variants;
}

RankedList multi_query_retrieve(const std::string& query_text, CompletionProvider& completion,
                                const RetrieverFn& dense_retriever, const PromptLibrary& prompts,
                                const StrategyConfig& cfg, std::size_t k) {
    cfg.validate();
    require_placeholder(prompts.multi_query, "query", "multi_query");
    require_placeholder(prompts.multi_query, "n", "multi_query");
    const std::string prompt = render_template(
        prompts.multi_query, {{"query", query_text}, {"n", std::to_string(cfg.multi_query_n)}});
    const std::string response =
        completion.complete(prompt, cfg.multi_query_temperature, cfg.multi_query_max_tokens);

    const auto variants =
        parse_numbered_variants(response, static_cast<std::size_t>(cfg.multi_query_n));
    if (variants.empty()) {
        auto out = dense_retriever(query_text);
        out.source = "multi_query";
        return out.top(k);
    }

    std::vector<RankedList> lists;
    lists.push_back(dense_retriever(query_text));
    for (const auto& v : variants) lists.push_back(dense_retriever(v));
    auto out = rrf_fuse(lists, RrfConfig{cfg.multi_query_rrf_k}, k);
    out.source = "multi_query";
    return out;
}

Corpus contextualize_corpus(const Corpus& corpus, CompletionProvider& completion,
                            const PromptLibrary& prompts, const StrategyConfig& cfg) {
    cfg.validate();
    require_placeholder(prompts.contextual_whole, "document", "contextual_whole");
    for (const auto& doc : corpus.documents()) {
        if (doc.contextualized) {
            throw DataError("document '" + doc.doc_id + "' is already contextualized");
        }
    }

    // All summaries are generated before the new corpus is assembled, so a
    // provider failure aborts without producing a partially augmented corpus.
    std::vector<std::string> summaries;
    summaries.reserve(corpus.size());
    for (const auto& doc : corpus.documents()) {
        const std::string prompt =
            render_template(prompts.contextual_whole, {{"document", doc.text}});
        summaries.push_back(
            completion.complete(prompt, cfg.contextual_temperature, cfg.contextual_max_tokens));
    }

    Corpus out;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Document& doc = corpus.at_position(i);
        Document updated = doc;
        updated.text = summaries[i] + "\n\n" + doc.text;
        updated.contextualized = true;
        out.add(std::move(updated));
    }
    return out;
}

RankedList crag_retrieve(const std::string& query_text, const RetrieverFn& hybrid_retriever,
                         CompletionProvider& completion, const Corpus& corpus,
                         const PromptLibrary& prompts, const StrategyConfig& cfg) {
    cfg.validate();
    require_placeholder(prompts.crag_eval, "query", "crag_eval");
    require_placeholder(prompts.crag_eval, "document", "crag_eval");
    require_placeholder(prompts.crag_rewrite, "query", "crag_rewrite");

    const auto top_k = static_cast<std::size_t>(cfg.crag_top_k);
    auto classify = [&](const RankedList& round, const std::string& q) {
        std::size_t relevant = 0;
        for (const auto& entry : round.entries) {
            const std::string prompt = render_template(
                prompts.crag_eval, {{"query", q}, {"document", corpus.at(entry.doc_id).text}});
            const std::string judgment =
                completion.complete(prompt, cfg.crag_eval_temperature, cfg.crag_eval_max_tokens);
            if (parse_relevance_label(judgment) == RelevanceLabel::Relevant) ++relevant;
        }
        return relevant;
    };

    RankedList round1 = hybrid_retriever(query_text).top(top_k);
    round1.source = "crag";
    const std::size_t relevant1 = classify(round1, query_text);
    if (relevant1 > 0) return round1;

    const std::string rewrite_prompt =
        render_template(prompts.crag_rewrite, {{"query", query_text}});
    const std::string rewritten = trimmed(
        completion.complete(rewrite_prompt, cfg.crag_rewrite_temperature,
                            cfg.crag_rewrite_max_tokens));
    if (rewritten.empty()) return round1;

    RankedList round2 = hybrid_retriever(rewritten).top(top_k);
    round2.source = "crag";
    const std::size_t relevant2 = classify(round2, rewritten);
    return relevant2 > relevant1 ? round2 : round1;
}

RankedList two_stage_retrieve(const std::string& query_text, const RetrieverFn& first_stage,
                              RerankProvider& reranker, const Corpus& corpus,
                              const StrategyConfig& cfg) {
    cfg.validate();
    const RankedList pool = first_stage(query_text).top(static_cast<std::size_t>(cfg.rerank_pool));
    RankedList out;
    out.source = "two_stage";
    if (pool.entries.empty()) return out;

    std::vector<std::string> texts;
    texts.reserve(pool.entries.size());
    for (const auto& entry : pool.entries) texts.push_back(corpus.at(entry.doc_id).text);

    const auto reranked =
        reranker.rerank(query_text, texts, static_cast<std::size_t>(cfg.rerank_top_n));
    for (const auto& r : reranked) {
        if (r.index >= pool.entries.size()) {
            throw ProviderError("reranker returned out-of-range document index " +
                                std::to_string(r.index));
        }
        out.entries.push_back({pool.entries[r.index].doc_id, r.score});
    }
    out.normalize();
    return out;
}

} // namespace ragbench

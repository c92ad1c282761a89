// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include <catch2/catch_amalgamated.hpp>

#include "ragbench/config.hpp"
#include "ragbench/experiment.hpp"
#include "ragbench/failures.hpp"
#include "ragbench/generation.hpp"
#include "synthetic.hpp"

using namespace ragbench;
using ragbench::testing::make_synthetic_world;
using ragbench::testing::SyntheticSpec;

namespace {

ExperimentConfig small_config(Method method) {
    ExperimentConfig cfg;
    cfg.method = method;
    cfg.providers.embedding_dimension = 64;
    return cfg;
}

ragbench::testing::SyntheticWorld small_world() {
    SyntheticSpec spec;
    spec.n_docs = 24;
    spec.n_plain = 4;
    spec.n_lexical = 3;
    spec.n_semantic = 3;
    return make_synthetic_world(spec);
}

} // namespace

TEST_CASE("method names round-trip and unknown names fail", "[harness]") {
    for (const auto& name : known_methods()) {
        CHECK(to_string(parse_method(name)) == name);
    }
    REQUIRE_THROWS_AS(parse_method("bm26"), ConfigError);
}

TEST_CASE("two runs with the same seed produce byte-identical reports", "[harness]") {
    const auto world = small_world();
    for (Method m : {Method::Bm25, Method::HybridRrf, Method::Hyde}) {
        auto cfg = small_config(m);
        auto r1 = run_experiment(cfg, world.corpus, world.queries);
        auto r2 = run_experiment(cfg, world.corpus, world.queries);
        r1.config_echo = config_to_json(cfg);
        r2.config_echo = config_to_json(cfg);
        CHECK(r1.to_json_string() == r2.to_json_string());
        CHECK(r1.per_query_csv() == r2.per_query_csv());
        CHECK(r1.rankings_csv() == r2.rankings_csv());
    }
}

TEST_CASE("thread count does not change the report", "[harness]") {
    const auto world = small_world();
    auto cfg = small_config(Method::HybridRrf);
    cfg.threads = 1;
    auto sequential = run_experiment(cfg, world.corpus, world.queries);
    cfg.threads = 4;
    auto parallel = run_experiment(cfg, world.corpus, world.queries);
    CHECK(sequential.per_query_csv() == parallel.per_query_csv());
    CHECK(sequential.rankings_csv() == parallel.rankings_csv());
}

TEST_CASE("bm25 run equals per-query metric calls composed by hand", "[harness]") {
    const auto world = small_world();
    auto cfg = small_config(Method::Bm25);
    const auto report = run_experiment(cfg, world.corpus, world.queries);

    const auto index = LexicalIndex::build(world.corpus);
    std::map<std::string, double> expected_recall5;
    double sum = 0.0;
    for (const auto& q : world.queries.queries()) {
        const auto ranked = index.search(q.text, cfg.bm25, cfg.effective_retrieval_depth());
        const double r5 = recall_at_k(ranked, q.gold_doc_id, 5);
        expected_recall5[q.query_id] = r5;
        sum += r5;
    }
    for (const auto& [qid, v] : report.metrics.per_query.at("recall@5")) {
        CHECK(v == expected_recall5.at(qid));
    }
    CHECK(report.metrics.aggregates.at("recall@5") ==
          Catch::Approx(sum / static_cast<double>(world.queries.size())).margin(1e-12));
}

TEST_CASE("oracle method has recall 1 at every cutoff", "[harness]") {
    const auto world = small_world();
    const auto report = run_experiment(small_config(Method::Oracle), world.corpus, world.queries);
    for (std::size_t k : {1, 3, 5, 10, 20}) {
        CHECK(report.metrics.aggregates.at(metric_name("recall", k)) == 1.0);
    }
    CHECK(report.provider_calls.empty()); // no providers touched
}

TEST_CASE("subset means recombine to the overall mean", "[harness]") {
    const auto world = small_world();
    const auto report = run_experiment(small_config(Method::Bm25), world.corpus, world.queries);
    const double n = static_cast<double>(world.queries.size());
    for (const auto& [name, overall] : report.metrics.aggregates) {
        double weighted = 0.0;
        for (const auto& [subset, aggs] : report.per_subset_aggregates) {
            weighted += (static_cast<double>(report.subset_counts.at(subset)) / n) * aggs.at(name);
        }
        CHECK(weighted == Catch::Approx(overall).margin(1e-12));
    }
}

TEST_CASE("report regenerates byte-identically from stored values", "[harness]") {
    const auto world = small_world();
    auto cfg = small_config(Method::HybridRrf);
    auto report = run_experiment(cfg, world.corpus, world.queries);
    report.config_echo = config_to_json(cfg);

    const auto regenerated =
        regenerate_report(report.to_json(), report.per_query_csv(), world.queries);
    CHECK(regenerated.to_json_string() == report.to_json_string());
}

TEST_CASE("contextual methods rebuild indexes over augmented text", "[harness]") {
    const auto world = small_world();
    auto cfg = small_config(Method::ContextualDense);
    const auto report = run_experiment(cfg, world.corpus, world.queries);
    // One summary per document.
    bool found = false;
    for (const auto& [key, summary] : report.provider_calls) {
        if (key.rfind("completion:", 0) == 0) {
            CHECK(summary.calls == world.corpus.size());
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("provider call totals are predictable per strategy", "[harness]") {
    const auto world = small_world();
    const auto n_queries = world.queries.size();
    const auto n_docs = world.corpus.size();

    SECTION("bm25 makes no provider calls") {
        const auto report = run_experiment(small_config(Method::Bm25), world.corpus, world.queries);
        CHECK(report.provider_calls.empty());
    }
    SECTION("dense embeds the corpus once and each query once") {
        const auto report =
            run_experiment(small_config(Method::Dense), world.corpus, world.queries);
        std::uint64_t embed_calls = 0, embed_units = 0;
        for (const auto& [key, summary] : report.provider_calls) {
            if (key.rfind("embedding:", 0) == 0) {
                embed_calls += summary.calls;
                embed_units += summary.units;
            }
        }
        CHECK(embed_calls == 1 + n_queries); // one corpus batch + one per query
        CHECK(embed_units == n_docs + n_queries);
    }
    SECTION("multi-query costs one completion and four retrievals per query") {
        const auto report =
            run_experiment(small_config(Method::MultiQuery), world.corpus, world.queries);
        std::uint64_t completion_calls = 0;
        for (const auto& [key, summary] : report.provider_calls) {
            if (key.rfind("completion:", 0) == 0) completion_calls += summary.calls;
        }
        CHECK(completion_calls == n_queries);
        // The offline mock echoes the original query as every variant, so the
        // variant embeddings all hit the cache: corpus batch + 1 per query.
        std::uint64_t embed_units = 0;
        for (const auto& [key, summary] : report.provider_calls) {
            if (key.rfind("embedding:", 0) == 0) embed_units += summary.units;
        }
        CHECK(embed_units == n_docs + n_queries);
    }
}

TEST_CASE("compare_methods", "[harness]") {
    MethodScores a{"a", {{"q1", 1.0}, {"q2", 0.5}, {"q3", 0.0}, {"q4", 1.0}}};

    SECTION("a report against itself: delta 0, p 1, not significant") {
        const auto table = compare_methods({a, {"b", a.per_query}}, "recall@5", 2000, 42);
        REQUIRE(table.rows.size() == 1);
        CHECK(table.rows[0].delta_mean == 0.0);
        CHECK(table.rows[0].p_raw == 1.0);
        CHECK_FALSE(table.rows[0].significant);
    }
    SECTION("constant +0.2 difference with n = 100 is significant") {
        MethodScores lo, hi;
        lo.name = "lo";
        hi.name = "hi";
        for (int i = 0; i < 100; ++i) {
            const std::string qid = "q" + std::to_string(100 + i);
            lo.per_query[qid] = 0.25 * (i % 3);
            hi.per_query[qid] = lo.per_query[qid] + 0.2;
        }
        const auto table = compare_methods({hi, lo}, "recall@5", 10000, 42);
        REQUIRE(table.rows.size() == 1);
        CHECK(table.rows[0].delta_mean == Catch::Approx(0.2).margin(1e-12));
        CHECK(table.rows[0].significant);
    }
    SECTION("three methods form exactly three pairs with m = 3") {
        const auto table = compare_methods(
            {a, {"b", a.per_query}, {"c", a.per_query}}, "recall@5", 500, 42);
        CHECK(table.rows.size() == 3);
        CHECK(table.comparisons == 3);
    }
    SECTION("mismatched query sets are rejected") {
        MethodScores b{"b", {{"q1", 1.0}, {"q2", 0.5}, {"q3", 0.0}, {"qX", 1.0}}};
        REQUIRE_THROWS_AS(compare_methods({a, b}, "recall@5", 500, 42), DataError);
    }
}

TEST_CASE("answer_questions builds the pinned context format", "[harness]") {
    Corpus corpus;
    corpus.add({"dA", "alpha text 111", Subset::Other});
    corpus.add({"dB", "beta text 222", Subset::Other});
    QuerySet queries;
    queries.add({"q1", "what number", "dA", 111.0, Subset::Other}, corpus);

    const std::vector<const Document*> docs = {&corpus.at("dA"), &corpus.at("dB")};
    CHECK(assemble_context(docs) ==
          "Document 1:\nalpha text 111\n\nDocument 2:\nbeta text 222");

    // Capture the exact prompt the generation stage sends (golden check).
    CallLedger ledger;
    ScriptedCompletion completion(&ledger);
    std::string seen_prompt;
    completion.when_contains("Answer the following question", [&](const std::string& p) {
        seen_prompt = p;
        return std::string("111");
    });
    auto retriever = [&](const Query&) {
        RankedList list;
        list.entries = {{"dA", 2.0}, {"dB", 1.0}};
        return list;
    };
    const auto records =
        answer_questions(queries, retriever, completion, corpus, PromptLibrary::defaults(), false,
                         5, 0.0, 64, NumberMatchConfig{});
    REQUIRE(records.size() == 1);
    CHECK(records[0].nm == 1.0);
    CHECK(records[0].context_ids == std::vector<std::string>{"dA", "dB"});
    const std::string expected_prompt =
        "Answer the following question based ONLY on\n"
        "the provided context.\n"
        "If the answer is a number, provide just the\n"
        "number. If you cannot answer from the\n"
        "context, say \"UNANSWERABLE\".\n"
        "\n"
        "Context:\n"
        "Document 1:\nalpha text 111\n\nDocument 2:\nbeta text 222\n"
        "\n"
        "Question: what number\n"
        "\n"
        "Answer:";
    CHECK(seen_prompt == expected_prompt);

    SECTION("oracle mode uses the gold document as the sole context") {
        const auto oracle_records =
            answer_questions(queries, retriever, completion, corpus, PromptLibrary::defaults(),
                             true, 5, 0.0, 64, NumberMatchConfig{});
        CHECK(oracle_records[0].context_ids == std::vector<std::string>{"dA"});
    }
    SECTION("UNANSWERABLE scores zero") {
        ScriptedCompletion refuse(&ledger);
        refuse.when_contains("Answer the following question", "UNANSWERABLE");
        const auto r = answer_questions(queries, retriever, refuse, corpus,
                                        PromptLibrary::defaults(), false, 5, 0.0, 64,
                                        NumberMatchConfig{});
        CHECK(r[0].nm == 0.0);
    }
}

TEST_CASE("failure sampling", "[harness]") {
    Corpus corpus;
    for (int i = 0; i < 12; ++i) {
        corpus.add({"d" + std::to_string(i), "text | " + std::to_string(i), Subset::Other});
    }
    QuerySet queries;
    std::map<std::string, std::vector<ScoredDoc>> rankings;
    for (int i = 0; i < 12; ++i) {
        const std::string qid = "q" + std::to_string(i);
        queries.add({qid, "t", "d" + std::to_string(i), 1.0, Subset::Other}, corpus);
        std::vector<ScoredDoc> entries;
        for (int r = 0; r < 6; ++r) {
            entries.push_back({"d" + std::to_string((i + r + (i % 2 == 0 ? 1 : 0)) % 12),
                               6.0 - r});
        }
        // Even queries: gold shifted out of the top five. Odd: gold at rank 1.
        rankings[qid] = entries;
    }

    SECTION("gold at rank 5 is not a failure; rank 6 is") {
        std::map<std::string, std::vector<ScoredDoc>> edge;
        QuerySet qs;
        qs.add({"qa", "t", "d0", 1.0, Subset::Other}, corpus);
        qs.add({"qb", "t", "d1", 1.0, Subset::Other}, corpus);
        edge["qa"] = {{"d2", 6}, {"d3", 5}, {"d4", 4}, {"d5", 3}, {"d0", 2}, {"d6", 1}};
        edge["qb"] = {{"d2", 6}, {"d3", 5}, {"d4", 4}, {"d5", 3}, {"d6", 2}, {"d1", 1}};
        const auto failures = sample_failures(edge, qs, 100, 42);
        REQUIRE(failures.size() == 1);
        CHECK(failures[0].query_id == "qb");
        CHECK(failures[0].retrieved_top5.size() == 5);
    }
    SECTION("fewer failures than n returns them all") {
        const auto failures = sample_failures(rankings, queries, 100, 42);
        CHECK(failures.size() == 6); // the even queries
    }
    SECTION("same seed, same sample; different seed may differ") {
        const auto s1 = sample_failures(rankings, queries, 3, 42);
        const auto s2 = sample_failures(rankings, queries, 3, 42);
        REQUIRE(s1.size() == s2.size());
        for (std::size_t i = 0; i < s1.size(); ++i) CHECK(s1[i].query_id == s2[i].query_id);
    }
}

TEST_CASE("failure categorization maps keywords onto the taxonomy", "[harness]") {
    CHECK(parse_failure_category("table structure mismatch") ==
          FailureCategory::TableStructureMismatch);
    CHECK(parse_failure_category("This is a NUMERICAL REASONING case") ==
          FailureCategory::NumericalReasoning);
    CHECK(parse_failure_category("vocabulary mismatch, mostly") ==
          FailureCategory::VocabularyMismatch);
    CHECK(parse_failure_category("ambiguous query") == FailureCategory::AmbiguousQuery);
    CHECK(parse_failure_category("long document") == FailureCategory::LongDocument);
    CHECK(parse_failure_category("none of the above") == FailureCategory::Uncategorized);

    Corpus corpus;
    corpus.add({"d0", "gold | table | here", Subset::Other});
    QuerySet queries;
    queries.add({"q0", "question text", "d0", 1.0, Subset::Other}, corpus);
    FailureCase failure;
    failure.query_id = "q0";
    failure.gold_doc_id = "d0";

    SECTION("scripted labels drive the histogram") {
        CallLedger ledger;
        ScriptedCompletion completion(&ledger);
        completion.when_contains("retrieval failure", "numerical reasoning");
        std::vector<FailureCase> cases(5, failure);
        for (auto& c : cases) {
            c.category = categorize_failure(completion, c, corpus, queries);
        }
        const auto hist = failure_histogram(cases);
        CHECK(hist.at("numerical_reasoning") == 5);
    }
    SECTION("provider failure lands in uncategorized with a note") {
        CallLedger ledger;
        ScriptedCompletion silent(&ledger); // no rules -> ProviderError
        std::string note;
        CHECK(categorize_failure(silent, failure, corpus, queries, &note) ==
              FailureCategory::Uncategorized);
        CHECK(!note.empty());
    }
}

TEST_CASE("sweep over axes", "[harness]") {
    const auto world = small_world();

    SECTION("alpha sweep: alpha = 0 equals pure sparse ranking over the pools") {
        auto cfg = small_config(Method::HybridCc);
        const auto result = sweep(cfg, "alpha", {0.0, 0.5, 1.0}, world.corpus, world.queries);
        REQUIRE(result.reports.size() == 3);
        // alpha = 0: convex ranking reduces to BM25's order, so the rank
        // metrics match the pure bm25 report wherever bm25 retrieved.
        const auto bm25_report =
            run_experiment(small_config(Method::Bm25), world.corpus, world.queries);
        const auto& cc0 = result.reports[0].metrics.per_query.at("mrr@5");
        for (const auto& [qid, v] : bm25_report.metrics.per_query.at("mrr@5")) {
            if (v > 0.0) CHECK(cc0.at(qid) == v);
        }
        const auto csv = result.to_csv();
        CHECK(csv.find("alpha,0,") != std::string::npos);
    }
    SECTION("rrf_k sweep produces one report per value") {
        auto cfg = small_config(Method::HybridRrf);
        const auto result = sweep(cfg, "rrf_k", {10, 30, 60, 100}, world.corpus, world.queries);
        CHECK(result.reports.size() == 4);
    }
    SECTION("unknown axis") {
        auto cfg = small_config(Method::HybridRrf);
        REQUIRE_THROWS_AS(sweep(cfg, "gamma", {1.0}, world.corpus, world.queries), ConfigError);
    }
}

TEST_CASE("config round-trips through json and rejects unknown keys", "[harness]") {
    ExperimentConfig cfg;
    cfg.method = Method::Crag;
    cfg.seed = 7;
    cfg.convex.alpha = 0.25;
    cfg.strategy.rerank_pool = 20;
    const auto doc = config_to_json(cfg);
    const auto restored = config_from_json(doc);
    CHECK(restored.method == Method::Crag);
    CHECK(restored.seed == 7);
    CHECK(restored.convex.alpha == 0.25);
    CHECK(restored.strategy.rerank_pool == 20);
    CHECK(config_to_json(restored) == doc);

    nlohmann::json bad = {{"methd", "bm25"}};
    REQUIRE_THROWS_AS(config_from_json(bad), ConfigError);
    nlohmann::json bad_method = {{"method", "bm26"}};
    REQUIRE_THROWS_AS(config_from_json(bad_method), ConfigError);
}

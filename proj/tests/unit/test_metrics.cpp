// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

#include "ragbench/metrics.hpp"
#include "ragbench/report.hpp"
#include "reference.hpp"

using namespace ragbench;

namespace {

RankedList list_with_gold_at(std::size_t rank, std::size_t length) {
    RankedList list;
    double score = 100.0;
    for (std::size_t i = 1; i <= length; ++i) {
        score -= 1.0;
        list.entries.push_back({i == rank ? "gold" : "doc" + std::to_string(i), score});
    }
    return list;
}

} // namespace

TEST_CASE("recall / mrr / ndcg / map pinned cases", "[metrics]") {
    CHECK(recall_at_k(list_with_gold_at(2, 5), "gold", 3) == 1.0);
    CHECK(recall_at_k(list_with_gold_at(4, 5), "gold", 3) == 0.0);
    CHECK(recall_at_k(list_with_gold_at(1, 0), "gold", 20) == 0.0); // absent

    CHECK(mrr_at_k(list_with_gold_at(1, 5), "gold", 3) == 1.0);
    CHECK(mrr_at_k(list_with_gold_at(2, 5), "gold", 3) == 0.5);
    CHECK(mrr_at_k(list_with_gold_at(5, 5), "gold", 3) == 0.0);

    CHECK(ndcg_at_k(list_with_gold_at(1, 5), "gold", 5) == 1.0);
    CHECK(ndcg_at_k(list_with_gold_at(3, 5), "gold", 5) == Catch::Approx(0.5).margin(1e-12));

    CHECK(average_precision(list_with_gold_at(1, 5), "gold") == 1.0);
    CHECK(average_precision(list_with_gold_at(4, 5), "gold") == 0.25);
    CHECK(average_precision(list_with_gold_at(1, 0), "gold") == 0.0);
}

TEST_CASE("rank metrics agree with brute-force references on random lists", "[metrics]") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t length = 1 + rng() % 30;
        const std::size_t gold_rank = 1 + rng() % (length + 5); // sometimes absent
        const auto list = list_with_gold_at(gold_rank, length);
        for (std::size_t k : {1, 3, 5, 10, 20}) {
            CHECK(recall_at_k(list, "gold", k) == testing::ref_recall(list, "gold", k));
            CHECK(mrr_at_k(list, "gold", k) == testing::ref_mrr(list, "gold", k));
            CHECK(ndcg_at_k(list, "gold", k) ==
                  Catch::Approx(testing::ref_ndcg_single_relevant(list, "gold", k)).margin(1e-12));
        }
        CHECK(average_precision(list, "gold") == testing::ref_average_precision(list, "gold"));
    }
}

TEST_CASE("metric monotonicity and consistency properties", "[metrics]") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t length = 1 + rng() % 25;
        const std::size_t gold_rank = 1 + rng() % (length + 3);
        const auto list = list_with_gold_at(gold_rank, length);

        double prev_recall = 0.0, prev_mrr = 0.0, prev_ndcg = 0.0;
        for (std::size_t k = 1; k <= length + 2; ++k) {
            const double r = recall_at_k(list, "gold", k);
            const double m = mrr_at_k(list, "gold", k);
            const double n = ndcg_at_k(list, "gold", k);
            CHECK(r >= prev_recall);
            CHECK(m >= prev_mrr);
            CHECK(n >= prev_ndcg);
            if (r == 1.0) CHECK(n > 0.0);
            prev_recall = r;
            prev_mrr = m;
            prev_ndcg = n;
        }
        // Single relevant document: MRR over the full list equals MAP.
        CHECK(mrr_at_k(list, "gold", list.entries.size()) ==
              average_precision(list, "gold"));
    }
}

TEST_CASE("rank metrics depend only on the gold rank, never on scores", "[metrics]") {
    std::mt19937_64 rng(13);
    auto list = list_with_gold_at(4, 12);
    const auto before = retrieval_metrics(list, "gold", {1, 3, 5, 10, 20});
    // Perturb scores without reordering.
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
        list.entries[i].score = 1000.0 - static_cast<double>(i) * 2.0 -
                                std::uniform_real_distribution<double>(0.0, 0.5)(rng);
    }
    const auto after = retrieval_metrics(list, "gold", {1, 3, 5, 10, 20});
    CHECK(before == after);
}

TEST_CASE("number extraction", "[metrics]") {
    CHECK(extract_first_number("12.4").value() == 12.4);
    CHECK(extract_first_number("$1,234.56").value() == 1234.56);
    CHECK(extract_first_number("(2,500)").value() == -2500.0);
    CHECK(extract_first_number("-3.75").value() == -3.75);
    CHECK(extract_first_number("41%").value() == 41.0);
    CHECK(extract_first_number("(12.5%)").value() == -12.5);
    CHECK(extract_first_number(".5").value() == 0.5);
    CHECK(extract_first_number("1.5e3").value() == 1500.0);
    CHECK(extract_first_number("between 5 and 7").value() == 5.0);
    CHECK(extract_first_number("1,2345").value() == 1.0); // not a 3-digit group
    CHECK_FALSE(extract_first_number("no numbers here").has_value());
    CHECK_FALSE(extract_first_number("").has_value());
}

TEST_CASE("number_match follows the frozen reference table", "[metrics]") {
    std::ifstream in(std::string(RAGBENCH_TEST_DATA_DIR) + "/number_match_cases.jsonl");
    REQUIRE(in.good());
    NumberMatchConfig cfg;
    std::string line;
    std::size_t cases = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto rec = nlohmann::json::parse(line);
        const auto answer = rec.at("answer").get<std::string>();
        const auto gold = rec.at("gold").get<double>();
        const auto expected = rec.at("expected").get<int>();
        INFO("answer='" << answer << "' gold=" << gold);
        CHECK(number_match(answer, gold, cfg) == static_cast<double>(expected));
        ++cases;
    }
    CHECK(cases == 23);
}

TEST_CASE("number_match scale symmetry with the identity member", "[metrics]") {
    NumberMatchConfig cfg;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(0.5, 900.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double gold = dist(rng);
        const double pred = gold * (1.0 + ((trial % 2 == 0) ? 0.005 : 0.02));
        const double outcome = number_match(format_double(pred), gold, cfg);
        // Scaling both sides by the same factor preserves the outcome while
        // 1 stays in the scale set (relative tolerance is scale-free).
        for (double c : {10.0, 1000.0}) {
            CHECK(number_match(format_double(pred * c), gold * c, cfg) == outcome);
        }
    }
}

TEST_CASE("number_match config validation", "[metrics]") {
    NumberMatchConfig no_identity;
    no_identity.scale_set = {100.0};
    REQUIRE_THROWS_AS(no_identity.validate(), ConfigError);
    NumberMatchConfig bad_eps;
    bad_eps.epsilon = 0.0;
    REQUIRE_THROWS_AS(bad_eps.validate(), ConfigError);
}

TEST_CASE("token_f1", "[metrics]") {
    CHECK(token_f1("Net income", "net income") == 1.0);
    CHECK(token_f1("alpha beta", "gamma delta") == 0.0);
    CHECK(token_f1("net income 2019", "net income") == Catch::Approx(0.8).margin(1e-12));
    CHECK(token_f1("", "") == 1.0);
    CHECK(token_f1("something", "") == 0.0);
    CHECK(token_f1("", "something") == 0.0);
    // Multiset semantics: a repeated prediction token only matches once.
    CHECK(token_f1("a a", "a b") == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("rouge_l agrees with the full-matrix LCS reference", "[metrics]") {
    CHECK(rouge_l("net income rose", "net income rose") == 1.0);
    CHECK(rouge_l("alpha beta", "gamma delta") == 0.0);

    const std::pair<const char*, const char*> pairs[] = {
        {"the net income rose sharply", "net income rose"},
        {"a b c d e", "b d a e"},
        {"one two three", "three two one"},
        {"x", "x y z x"},
        {"alpha beta gamma", "beta"},
    };
    for (const auto& [pred, gold] : pairs) {
        const double lcs = static_cast<double>(testing::ref_lcs_tokens(pred, gold));
        const double np = static_cast<double>(testing::ref_lcs_tokens(pred, pred));
        const double ng = static_cast<double>(testing::ref_lcs_tokens(gold, gold));
        double expected = 0.0;
        if (lcs > 0) {
            const double p = lcs / np, r = lcs / ng;
            expected = 2.0 * p * r / (p + r);
        }
        CHECK(rouge_l(pred, gold) == Catch::Approx(expected).margin(1e-12));
    }
}

TEST_CASE("metric report aggregates are arithmetic means", "[metrics]") {
    MetricReport report;
    report.per_query["recall@5"] = {{"q1", 1.0}, {"q2", 0.0}, {"q3", 1.0}};
    report.recompute_aggregates();
    CHECK(report.aggregates.at("recall@5") == Catch::Approx(2.0 / 3.0).margin(1e-15));
}

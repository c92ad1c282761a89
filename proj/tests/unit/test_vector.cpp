// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ragbench/vector_index.hpp"
#include "reference.hpp"

using namespace ragbench;

namespace {

std::vector<float> random_vector(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<float> dist(0.0f, 1.0f);
    std::vector<float> v(dim);
    for (auto& x : v) x = dist(rng);
    return v;
}

} // namespace

TEST_CASE("build_vector_index validates input", "[vector]") {
    SECTION("mixed dimensions") {
        REQUIRE_THROWS_AS(VectorIndex::build({{"a", {1.0f, 0.0f, 0.0f}}, {"b", {1.0f, 0.0f, 0.0f, 0.0f}}}),
                          DataError);
    }
    SECTION("non-finite component") {
        REQUIRE_THROWS_AS(
            VectorIndex::build({{"a", {1.0f, std::numeric_limits<float>::infinity()}}}),
            DataError);
    }
    SECTION("zero vector") {
        REQUIRE_THROWS_AS(VectorIndex::build({{"a", {0.0f, 0.0f}}}), DataError);
    }
    SECTION("duplicate doc id") {
        REQUIRE_THROWS_AS(VectorIndex::build({{"a", {1.0f, 0.0f}}, {"a", {0.0f, 1.0f}}}),
                          DataError);
    }
    SECTION("valid build stores unit rows") {
        const auto index =
            VectorIndex::build({{"a", {3.0f, 0.0f}}, {"b", {0.0f, 5.0f}}, {"c", {1.0f, 1.0f}}});
        REQUIRE(index.size() == 3);
        for (std::size_t i = 0; i < index.size(); ++i) {
            double norm = 0.0;
            for (std::size_t j = 0; j < index.dimension(); ++j) {
                norm += static_cast<double>(index.row(i)[j]) * index.row(i)[j];
            }
            CHECK(std::sqrt(norm) == Catch::Approx(1.0).margin(1e-6));
        }
    }
}

TEST_CASE("search identities", "[vector]") {
    const auto index =
        VectorIndex::build({{"a", {1.0f, 0.0f, 0.0f}}, {"b", {0.0f, 1.0f, 0.0f}}});

    SECTION("query equal to a stored vector scores 1 at rank 1") {
        const auto r = index.search({0.0f, 2.0f, 0.0f}, 1);
        REQUIRE(r.entries.size() == 1);
        CHECK(r.entries[0].doc_id == "b");
        CHECK(r.entries[0].score == Catch::Approx(1.0).margin(1e-6));
    }
    SECTION("query orthogonal to all rows ties at zero in doc_id order") {
        const auto r = index.search({0.0f, 0.0f, 1.0f}, 2);
        REQUIRE(r.entries.size() == 2);
        CHECK(r.entries[0].doc_id == "a");
        CHECK(r.entries[1].doc_id == "b");
        CHECK(std::abs(r.entries[0].score) < 1e-6);
        CHECK(std::abs(r.entries[1].score) < 1e-6);
    }
    SECTION("dimension mismatch, zero query, k = 0") {
        REQUIRE_THROWS_AS(index.search({1.0f, 0.0f}, 1), DataError);
        REQUIRE_THROWS_AS(index.search({0.0f, 0.0f, 0.0f}, 1), DataError);
        REQUIRE_THROWS_AS(index.search({1.0f, 0.0f, 0.0f}, 0), ConfigError);
    }
}

TEST_CASE("search equals the naive full-scan reference", "[vector]") {
    std::mt19937_64 rng(42);
    std::vector<std::pair<std::string, std::vector<float>>> rows;
    for (int i = 0; i < 50; ++i) {
        rows.emplace_back("doc" + std::to_string(i), random_vector(rng, 64));
    }
    const auto index = VectorIndex::build(rows);

    for (int q = 0; q < 20; ++q) {
        const auto query = random_vector(rng, 64);
        for (std::size_t k : {1, 3, 5, 10}) {
            const auto got = index.search(query, k);
            const auto expected = testing::ref_cosine_topk(rows, query, k);
            REQUIRE(got.entries.size() == expected.size());
            for (std::size_t i = 0; i < expected.size(); ++i) {
                CHECK(got.entries[i].doc_id == expected[i].first);
                CHECK(got.entries[i].score == Catch::Approx(expected[i].second).margin(1e-5));
            }
        }
    }
}

TEST_CASE("scale invariance of the query", "[vector]") {
    std::mt19937_64 rng(7);
    std::vector<std::pair<std::string, std::vector<float>>> rows;
    for (int i = 0; i < 30; ++i) {
        rows.emplace_back("doc" + std::to_string(i), random_vector(rng, 32));
    }
    const auto index = VectorIndex::build(rows);
    const auto query = random_vector(rng, 32);
    const auto base = index.search(query, 10);

    for (float c : {0.5f, 2.0f, 10.0f}) {
        auto scaled = query;
        for (auto& x : scaled) x *= c;
        const auto r = index.search(scaled, 10);
        REQUIRE(r.entries.size() == base.entries.size());
        for (std::size_t i = 0; i < base.entries.size(); ++i) {
            CHECK(r.entries[i].doc_id == base.entries[i].doc_id);
        }
    }
}

TEST_CASE("search is deterministic across repeated runs", "[vector]") {
    std::mt19937_64 rng(3);
    std::vector<std::pair<std::string, std::vector<float>>> rows;
    for (int i = 0; i < 20; ++i) {
        rows.emplace_back("doc" + std::to_string(i), random_vector(rng, 16));
    }
    const auto index = VectorIndex::build(rows);
    const auto query = random_vector(rng, 16);
    const auto a = index.search(query, 5);
    const auto b = index.search(query, 5);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].doc_id == b.entries[i].doc_id);
        CHECK(a.entries[i].score == b.entries[i].score);
    }
}

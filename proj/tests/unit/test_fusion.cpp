// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ragbench/fusion.hpp"
#include "reference.hpp"

using namespace ragbench;

namespace {

RankedList make_list(std::vector<std::pair<std::string, double>> entries,
                     std::string source = "test") {
    RankedList list;
    list.source = std::move(source);
    for (auto& [id, score] : entries) list.entries.push_back({id, score});
    list.normalize();
    return list;
}

RankedList random_list(std::mt19937_64& rng, std::size_t pool, std::size_t length) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < pool; ++i) ids.push_back("doc" + std::to_string(i));
    std::shuffle(ids.begin(), ids.end(), rng);
    std::vector<std::pair<std::string, double>> entries;
    double score = 100.0;
    std::uniform_real_distribution<double> gap(0.01, 2.0);
    for (std::size_t i = 0; i < length && i < ids.size(); ++i) {
        score -= gap(rng);
        entries.emplace_back(ids[i], score);
    }
    return make_list(std::move(entries));
}

} // namespace

TEST_CASE("rrf of two rank-1 appearances", "[fusion]") {
    const auto a = make_list({{"gold", 5.0}, {"x", 1.0}});
    const auto b = make_list({{"gold", 0.9}, {"y", 0.1}});
    const auto fused = rrf_fuse({a, b}, RrfConfig{60.0}, 10);
    REQUIRE(!fused.entries.empty());
    CHECK(fused.entries[0].doc_id == "gold");
    CHECK(fused.entries[0].score == Catch::Approx(2.0 / 61.0).epsilon(1e-12));
}

TEST_CASE("doc present in only one list gets a single reciprocal term", "[fusion]") {
    const auto a = make_list({{"solo", 5.0}});
    const auto b = make_list({{"other", 0.9}});
    const auto fused = rrf_fuse({a, b}, RrfConfig{60.0}, 10);
    const auto rank = fused.rank_of("solo");
    REQUIRE(rank.has_value());
    for (const auto& e : fused.entries) {
        if (e.doc_id == "solo") CHECK(e.score == Catch::Approx(1.0 / 61.0).epsilon(1e-12));
    }
}

TEST_CASE("rrf validation", "[fusion]") {
    const auto a = make_list({{"x", 1.0}});
    REQUIRE_THROWS_AS(rrf_fuse({a}, RrfConfig{60.0}, 5), ConfigError);
    REQUIRE_THROWS_AS(rrf_fuse({a, a}, RrfConfig{60.0}, 0), ConfigError);
    REQUIRE_THROWS_AS(rrf_fuse({a, a}, RrfConfig{0.0}, 5), ConfigError);
}

TEST_CASE("rrf equals the per-document materialization on random pairs", "[fusion]") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_list(rng, 30, 12);
        const auto b = random_list(rng, 30, 12);
        const auto fused = rrf_fuse({a, b}, RrfConfig{60.0}, 30);
        const auto expected = testing::ref_rrf_scores({a, b}, 60.0);

        REQUIRE(fused.entries.size() == expected.size());
        // Expected order: score desc, id asc, straight from the map.
        std::vector<std::pair<std::string, double>> ordered(expected.begin(), expected.end());
        std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
            if (x.second != y.second) return x.second > y.second;
            return x.first < y.first;
        });
        for (std::size_t i = 0; i < ordered.size(); ++i) {
            CHECK(fused.entries[i].doc_id == ordered[i].first);
            CHECK(fused.entries[i].score == Catch::Approx(ordered[i].second).margin(1e-12));
        }
    }
}

TEST_CASE("rrf reads only ranks, not scores", "[fusion]") {
    std::mt19937_64 rng(11);
    const auto a = random_list(rng, 20, 10);
    const auto b = random_list(rng, 20, 10);
    // exp() is strictly monotone, so ranks are unchanged.
    auto transform = [](RankedList list) {
        for (auto& e : list.entries) e.score = std::exp(e.score / 50.0);
        list.normalize();
        return list;
    };
    const auto fused = rrf_fuse({a, b}, RrfConfig{60.0}, 20);
    const auto fused_t = rrf_fuse({transform(a), transform(b)}, RrfConfig{60.0}, 20);
    REQUIRE(fused.entries.size() == fused_t.entries.size());
    for (std::size_t i = 0; i < fused.entries.size(); ++i) {
        CHECK(fused.entries[i].doc_id == fused_t.entries[i].doc_id);
        CHECK(fused.entries[i].score == fused_t.entries[i].score);
    }
}

TEST_CASE("rrf across the ablation smoothing constants", "[fusion]") {
    std::mt19937_64 rng(5);
    const auto a = random_list(rng, 25, 10);
    const auto b = random_list(rng, 25, 10);
    for (double k : {10.0, 30.0, 60.0, 100.0}) {
        const auto fused = rrf_fuse({a, b}, RrfConfig{k}, 25);
        REQUIRE(!fused.entries.empty());
        for (std::size_t i = 1; i < fused.entries.size(); ++i) {
            CHECK(ranked_before(fused.entries[i - 1], fused.entries[i]));
        }
        // Two docs with identical rank profiles stay tied at every k and
        // resolve by doc_id.
        const auto expected = testing::ref_rrf_scores({a, b}, k);
        for (const auto& e : fused.entries) {
            CHECK(e.score == Catch::Approx(expected.at(e.doc_id)).margin(1e-12));
        }
    }
}

TEST_CASE("fusing a list with itself reproduces its order", "[fusion]") {
    std::mt19937_64 rng(17);
    const auto a = random_list(rng, 15, 15);
    const auto rrf = rrf_fuse({a, a}, RrfConfig{60.0}, 15);
    REQUIRE(rrf.entries.size() == a.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(rrf.entries[i].doc_id == a.entries[i].doc_id);
    }
    const auto cc = convex_fuse(a, a, ConvexConfig{0.5}, 15);
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(cc.entries[i].doc_id == a.entries[i].doc_id);
    }
}

namespace {

// Order of `pool` docs within the fused list (zero-score docs from the other
// retriever can interleave at the tail, so the comparison is the
// pool-restricted subsequence).
std::vector<std::string> order_within_pool(const RankedList& fused, const RankedList& pool) {
    std::vector<std::string> out;
    for (const auto& e : fused.entries) {
        if (pool.rank_of(e.doc_id).has_value()) out.push_back(e.doc_id);
    }
    return out;
}

} // namespace

TEST_CASE("convex fusion at the endpoints reproduces single retrievers", "[fusion]") {
    const auto sparse = make_list({{"s1", 9.0}, {"s2", 4.0}, {"s3", 1.0}});
    const auto dense = make_list({{"d1", 0.8}, {"s2", 0.6}, {"d2", 0.2}});

    SECTION("alpha = 1 follows the dense order over its pool") {
        const auto fused = convex_fuse(sparse, dense, ConvexConfig{1.0}, 10);
        CHECK(order_within_pool(fused, dense) == std::vector<std::string>{"d1", "s2", "d2"});
        CHECK(fused.entries[0].doc_id == "d1"); // the dense top is the fused top
    }
    SECTION("alpha = 0 follows the sparse order over its pool") {
        const auto fused = convex_fuse(sparse, dense, ConvexConfig{0.0}, 10);
        CHECK(order_within_pool(fused, sparse) == std::vector<std::string>{"s1", "s2", "s3"});
        CHECK(fused.entries[0].doc_id == "s1");
    }
}

TEST_CASE("convex fusion matches hand arithmetic at alpha = 0.5", "[fusion]") {
    // sparse: a=10 b=5 c=0 -> norms 1.0/0.5/0.0; dense: b=0.9 a=0.75 d=0.3
    // -> norms 1.0/0.75/0.0. Expected: a=0.875, b=0.75, c=0, d=0.
    const auto sparse = make_list({{"a", 10.0}, {"b", 5.0}, {"c", 0.0}});
    const auto dense = make_list({{"b", 0.9}, {"a", 0.75}, {"d", 0.3}});
    const auto fused = convex_fuse(sparse, dense, ConvexConfig{0.5}, 4);

    REQUIRE(fused.entries.size() == 4);
    CHECK(fused.entries[0].doc_id == "a");
    CHECK(fused.entries[0].score == Catch::Approx(0.875).margin(1e-12));
    CHECK(fused.entries[1].doc_id == "b");
    CHECK(fused.entries[1].score == Catch::Approx(0.75).margin(1e-12));
    CHECK(fused.entries[2].doc_id == "c"); // zero scores tie-break by id
    CHECK(fused.entries[2].score == 0.0);
    CHECK(fused.entries[3].doc_id == "d");
    CHECK(fused.entries[3].score == 0.0);
}

TEST_CASE("convex order is invariant to positive affine input transforms", "[fusion]") {
    std::mt19937_64 rng(23);
    const auto sparse = random_list(rng, 20, 10);
    const auto dense = random_list(rng, 20, 10);
    auto affine = [](RankedList list, double scale, double shift) {
        for (auto& e : list.entries) e.score = scale * e.score + shift;
        list.normalize();
        return list;
    };
    const auto base = convex_fuse(sparse, dense, ConvexConfig{0.5}, 20);
    const auto transformed =
        convex_fuse(affine(sparse, 3.0, 17.0), affine(dense, 0.25, -2.0), ConvexConfig{0.5}, 20);
    REQUIRE(base.entries.size() == transformed.entries.size());
    for (std::size_t i = 0; i < base.entries.size(); ++i) {
        CHECK(base.entries[i].doc_id == transformed.entries[i].doc_id);
        CHECK(base.entries[i].score == Catch::Approx(transformed.entries[i].score).margin(1e-9));
    }
}

TEST_CASE("constant-score lists min-max normalize to all ones", "[fusion]") {
    const auto flat = make_list({{"a", 2.0}, {"b", 2.0}, {"c", 2.0}});
    const auto dense = make_list({{"b", 1.0}});
    const auto fused = convex_fuse(flat, dense, ConvexConfig{0.5}, 4);
    // Every flat doc contributes 0.5; b adds the dense half on top.
    CHECK(fused.entries[0].doc_id == "b");
    CHECK(fused.entries[0].score == Catch::Approx(1.0).margin(1e-12));
    for (std::size_t i = 1; i < fused.entries.size(); ++i) {
        CHECK(fused.entries[i].score == Catch::Approx(0.5).margin(1e-12));
    }
}

TEST_CASE("convex validation", "[fusion]") {
    ConvexConfig bad;
    bad.alpha = 1.5;
    REQUIRE_THROWS_AS(bad.validate(), ConfigError);
    const auto a = make_list({{"x", 1.0}});
    REQUIRE_THROWS_AS(convex_fuse(a, a, ConvexConfig{0.5}, 0), ConfigError);
}

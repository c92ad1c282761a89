// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include <benchmark/benchmark.h>

#include <random>

#include "ragbench/vector_index.hpp"

namespace {

using namespace ragbench;

VectorIndex build_index(std::size_t n_docs, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<float> dist(0.0f, 1.0f);
    std::vector<std::pair<std::string, std::vector<float>>> rows;
    rows.reserve(n_docs);
    for (std::size_t i = 0; i < n_docs; ++i) {
        std::vector<float> v(dim);
        for (auto& x : v) x = dist(rng);
        rows.emplace_back("d" + std::to_string(i), std::move(v));
    }
    return VectorIndex::build(rows);
}

// Full-scan search at the benchmark embedder's dimensionality (3072).
void BM_VectorSearch(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(1));
    const auto index = build_index(static_cast<std::size_t>(state.range(0)), dim, 2);
    std::mt19937_64 rng(99);
    std::normal_distribution<float> dist(0.0f, 1.0f);
    std::vector<float> query(dim);
    for (auto& x : query) x = dist(rng);

    for (auto _ : state) {
        auto result = index.search(query, 20);
        benchmark::DoNotOptimize(result.entries.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VectorSearch)->Args({1000, 256})->Args({7318, 256})->Args({7318, 3072});

} // namespace

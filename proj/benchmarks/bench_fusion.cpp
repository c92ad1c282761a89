// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include <benchmark/benchmark.h>

#include <random>

#include "ragbench/fusion.hpp"

namespace {

using namespace ragbench;

RankedList random_list(std::size_t pool, std::size_t length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> ids;
    ids.reserve(pool);
    for (std::size_t i = 0; i < pool; ++i) ids.push_back("d" + std::to_string(i));
    std::shuffle(ids.begin(), ids.end(), rng);
    RankedList list;
    double score = 1e6;
    for (std::size_t i = 0; i < length; ++i) {
        score -= 1.0 + static_cast<double>(rng() % 100) / 100.0;
        list.entries.push_back({ids[i], score});
    }
    return list;
}

// Full-depth fusion of two corpus-sized lists, as the hybrid pipeline runs it.
void BM_RrfFuse(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_list(n, n, 1);
    const auto b = random_list(n, n, 2);
    for (auto _ : state) {
        auto fused = rrf_fuse({a, b}, RrfConfig{60.0}, 20);
        benchmark::DoNotOptimize(fused.entries.data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RrfFuse)->Arg(1000)->Arg(7318);

void BM_ConvexFuse(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_list(n, n, 3);
    const auto b = random_list(n, n, 4);
    for (auto _ : state) {
        auto fused = convex_fuse(a, b, ConvexConfig{0.5}, 20);
        benchmark::DoNotOptimize(fused.entries.data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ConvexFuse)->Arg(1000)->Arg(7318);

} // namespace

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "ragbench/lexical.hpp"

namespace {

using namespace ragbench;

Corpus synthetic_corpus(std::size_t n_docs, std::size_t doc_len, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> word(0, 5000);
    Corpus corpus;
    for (std::size_t i = 0; i < n_docs; ++i) {
        std::ostringstream text;
        for (std::size_t t = 0; t < doc_len; ++t) {
            if (t) text << ' ';
            text << 'w' << word(rng);
        }
        corpus.add({"d" + std::to_string(i), text.str(), Subset::Other});
    }
    return corpus;
}

std::string random_query(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> word(0, 5000);
    std::ostringstream q;
    for (int t = 0; t < 8; ++t) {
        if (t) q << ' ';
        q << 'w' << word(rng);
    }
    return q.str();
}

void BM_LexicalIndexBuild(benchmark::State& state) {
    const auto corpus = synthetic_corpus(static_cast<std::size_t>(state.range(0)), 200, 1);
    for (auto _ : state) {
        auto index = LexicalIndex::build(corpus);
        benchmark::DoNotOptimize(index.doc_count());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LexicalIndexBuild)->Arg(1000)->Arg(7318);

void BM_LexicalSearch(benchmark::State& state) {
    const auto corpus = synthetic_corpus(static_cast<std::size_t>(state.range(0)), 200, 1);
    const auto index = LexicalIndex::build(corpus);
    std::uint64_t qseed = 0;
    for (auto _ : state) {
        auto result = index.search(random_query(qseed++), Bm25Params{}, 20);
        benchmark::DoNotOptimize(result.entries.data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_LexicalSearch)->Arg(1000)->Arg(7318);

} // namespace

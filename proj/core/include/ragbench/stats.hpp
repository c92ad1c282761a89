// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <cstdint>
#include <vector>

#include "ragbench/errors.hpp"

namespace ragbench {

/// Maps a 64-bit random word to [0, n) without std::uniform_int_distribution,
/// whose output is implementation-defined. Keeps resamples reproducible
/// across platforms and easy to mirror in reference implementations.
std::uint64_t bounded_index(std::uint64_t word, std::uint64_t n);

/// Two-sided paired bootstrap p-value over per-query score pairs.
///
/// Resamples query indices with replacement B times (std::mt19937_64 seeded
/// with `seed`, indices via bounded_index), computes the resampled mean
/// difference delta_j = mean(a[idx]) - mean(b[idx]), and returns
/// p = min(1, 2 * min(frac(delta <= 0), frac(delta >= 0))).
double paired_bootstrap(const std::vector<double>& a, const std::vector<double>& b,
                        std::size_t n_resamples, std::uint64_t seed);

/// Bonferroni adjustment: each p multiplied by m and clipped at 1.
/// Requires m >= p_values.size() >= 1.
std::vector<double> bonferroni(const std::vector<double>& p_values, std::size_t m);

/// Significance threshold applied to adjusted p-values.
inline constexpr double kSignificanceLevel = 0.05;

} // namespace ragbench

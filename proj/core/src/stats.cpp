// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include "ragbench/stats.hpp"

#include <algorithm>
#include <random>

namespace ragbench {

std::uint64_t bounded_index(std::uint64_t word, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(word) * static_cast<unsigned __int128>(n)) >> 64);
}

double paired_bootstrap(const std::vector<double>& a, const std::vector<double>& b,
                        std::size_t n_resamples, std::uint64_t seed) {
    if (a.size() != b.size()) throw DataError("paired_bootstrap: score vectors differ in length");
    if (a.size() < 2) throw DataError("paired_bootstrap: need at least 2 paired scores");
    if (n_resamples == 0) throw ConfigError("paired_bootstrap: need at least 1 resample");

    const std::size_t n = a.size();
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];

    std::mt19937_64 rng(seed);
    std::size_t n_le = 0, n_ge = 0;
    for (std::size_t j = 0; j < n_resamples; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += diff[bounded_index(rng(), n)];
        }
        const double delta = sum / static_cast<double>(n);
        if (delta <= 0.0) ++n_le;
        if (delta >= 0.0) ++n_ge;
    }
    const double frac_le = static_cast<double>(n_le) / static_cast<double>(n_resamples);
    const double frac_ge = static_cast<double>(n_ge) / static_cast<double>(n_resamples);
    return std::min(1.0, 2.0 * std::min(frac_le, frac_ge));
}

std::vector<double> bonferroni(const std::vector<double>& p_values, std::size_t m) {
    if (p_values.empty()) throw DataError("bonferroni: empty p-value list");
    if (m < p_values.size()) {
        throw DataError("bonferroni: comparison count m smaller than the p-value list");
    }
    std::vector<double> adjusted;
    adjusted.reserve(p_values.size());
    for (double p : p_values) {
        adjusted.push_back(std::min(1.0, p * static_cast<double>(m)));
    }
    return adjusted;
}

} // namespace ragbench

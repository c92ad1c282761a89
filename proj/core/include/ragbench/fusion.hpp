// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <vector>

#include "ragbench/corpus.hpp"

namespace ragbench {

struct RrfConfig {
    double k_rrf = 60.0;

    void validate() const;
};

struct ConvexConfig {
    double alpha = 0.5; // dense weight
    // min-max is the only normalization; pool = the docs each list returned.

    void validate() const;
};

/// Reciprocal rank fusion over the union of the input lists:
/// fused(d) = sum over lists of 1/(k_rrf + rank(d)), 1-based ranks, a list
/// not containing d contributing 0. Requires at least two lists.
RankedList rrf_fuse(const std::vector<RankedList>& lists, const RrfConfig& cfg, std::size_t k);

/// Convex score combination: each list's scores are min-max normalized over
/// its own retrieved pool (constant-score lists normalize to all-1, absent
/// docs contribute 0), then fused = alpha*dense + (1-alpha)*sparse.
RankedList convex_fuse(const RankedList& sparse, const RankedList& dense, const ConvexConfig& cfg,
                       std::size_t k);

} // namespace ragbench

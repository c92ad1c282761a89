// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <string>
#include <vector>

#include "ragbench/corpus.hpp"

namespace ragbench {

/// Exact exhaustive inner-product index. Rows are L2-normalized at ingest so
/// the inner product equals cosine similarity regardless of how the provider
/// normalized its embeddings. Immutable after build.
class VectorIndex {
public:
    /// Normalizes and stores each vector. Errors on dimension mismatch,
    /// non-finite components, zero vectors, and duplicate doc ids.
    static VectorIndex build(const std::vector<std::pair<std::string, std::vector<float>>>& vectors);

    /// Full scan: the query is normalized, scored against every row (32-bit
    /// values, 64-bit accumulation), and the exact top-k is returned by
    /// (score desc, doc_id asc).
    RankedList search(const std::vector<float>& query_vector, std::size_t k) const;

    std::size_t size() const noexcept { return row_ids_.size(); }
    std::size_t dimension() const noexcept { return dimension_; }
    const std::vector<std::string>& row_ids() const noexcept { return row_ids_; }

    /// Row view for tests; rows are stored contiguously.
    const float* row(std::size_t i) const { return rows_.data() + i * dimension_; }

private:
    std::vector<float> rows_; // row-major, unit rows
    std::vector<std::string> row_ids_;
    std::size_t dimension_ = 0;
};

/// L2-normalizes in place; throws DataError on zero or non-finite input.
void normalize_vector(std::vector<float>& v, const std::string& context);

} // namespace ragbench

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include "ragbench/vector_index.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace ragbench {

void normalize_vector(std::vector<float>& v, const std::string& context) {
    double norm_sq = 0.0;
    for (float x : v) {
        if (!std::isfinite(x)) throw DataError(context + ": non-finite vector component");
        norm_sq += static_cast<double>(x) * static_cast<double>(x);
    }
    if (norm_sq == 0.0) throw DataError(context + ": zero vector cannot be normalized");
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (float& x : v) x = static_cast<float>(static_cast<double>(x) * inv);
}

VectorIndex VectorIndex::build(
    const std::vector<std::pair<std::string, std::vector<float>>>& vectors) {
    VectorIndex index;
    if (vectors.empty()) throw DataError("cannot build vector index from zero vectors");
    index.dimension_ = vectors.front().second.size();
    if (index.dimension_ == 0) throw DataError("vector dimension must be positive");
    index.rows_.reserve(vectors.size() * index.dimension_);
    index.row_ids_.reserve(vectors.size());

    std::unordered_set<std::string> seen;
    for (const auto& [doc_id, vec] : vectors) {
        if (vec.size() != index.dimension_) {
            throw DataError("vector for '" + doc_id + "' has dimension " +
                            std::to_string(vec.size()) + ", expected " +
                            std::to_string(index.dimension_));
        }
        if (!seen.insert(doc_id).second) {
            throw DataError("duplicate doc_id '" + doc_id + "' in vector index");
        }
        std::vector<float> row = vec;
        normalize_vector(row, "vector for '" + doc_id + "'");
        index.rows_.insert(index.rows_.end(), row.begin(), row.end());
        index.row_ids_.push_back(doc_id);
    }
    return index;
}

RankedList VectorIndex::search(const std::vector<float>& query_vector, std::size_t k) const {
    if (k == 0) throw ConfigError("vector_search requires k >= 1");
    if (query_vector.size() != dimension_) {
        throw DataError("query dimension " + std::to_string(query_vector.size()) +
                        " does not match index dimension " + std::to_string(dimension_));
    }
    std::vector<float> q = query_vector;
    normalize_vector(q, "query vector");

    RankedList out;
    out.source = "dense";
    out.entries.reserve(row_ids_.size());
    for (std::size_t i = 0; i < row_ids_.size(); ++i) {
        const float* r = row(i);
        double dot = 0.0;
        for (std::size_t j = 0; j < dimension_; ++j) {
            dot += static_cast<double>(r[j]) * static_cast<double>(q[j]);
        }
        out.entries.push_back({row_ids_[i], dot});
    }
    out.normalize();
    return out.top(k);
}

} // namespace ragbench

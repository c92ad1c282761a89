// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include "ragbench/fusion.hpp"

#include <algorithm>
#include <map>

namespace ragbench {

void RrfConfig::validate() const {
    if (!(k_rrf > 0.0)) throw ConfigError("rrf k must be > 0");
}

void ConvexConfig::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("convex alpha must be in [0,1]");
}

RankedList rrf_fuse(const std::vector<RankedList>& lists, const RrfConfig& cfg, std::size_t k) {
    cfg.validate();
    if (k == 0) throw ConfigError("rrf_fuse requires k >= 1");
    if (lists.size() < 2) throw ConfigError("rrf_fuse requires at least 2 input lists");

    // std::map keeps doc iteration deterministic regardless of input order.
    std::map<std::string, double> fused;
    for (const auto& list : lists) {
        for (std::size_t i = 0; i < list.entries.size(); ++i) {
            fused[list.entries[i].doc_id] += 1.0 / (cfg.k_rrf + static_cast<double>(i + 1));
        }
    }

    RankedList out;
    out.source = "rrf";
    out.entries.reserve(fused.size());
    for (const auto& [doc_id, score] : fused) out.entries.push_back({doc_id, score});
    out.normalize();
    return out.top(k);
}

namespace {

std::map<std::string, double> min_max_normalized(const RankedList& list) {
    std::map<std::string, double> norm;
    if (list.entries.empty()) return norm;
    double lo = list.entries.front().score, hi = list.entries.front().score;
    for (const auto& e : list.entries) {
        lo = std::min(lo, e.score);
        hi = std::max(hi, e.score);
    }
    for (const auto& e : list.entries) {
        norm[e.doc_id] = (hi == lo) ? 1.0 : (e.score - lo) / (hi - lo);
    }
    return norm;
}

} // namespace

RankedList convex_fuse(const RankedList& sparse, const RankedList& dense, const ConvexConfig& cfg,
                       std::size_t k) {
    cfg.validate();
    if (k == 0) throw ConfigError("convex_fuse requires k >= 1");

    const auto sparse_norm = min_max_normalized(sparse);
    const auto dense_norm = min_max_normalized(dense);

    std::map<std::string, double> fused;
    for (const auto& [doc_id, s] : sparse_norm) fused[doc_id] += (1.0 - cfg.alpha) * s;
    for (const auto& [doc_id, s] : dense_norm) fused[doc_id] += cfg.alpha * s;

    RankedList out;
    out.source = "convex";
    out.entries.reserve(fused.size());
    for (const auto& [doc_id, score] : fused) out.entries.push_back({doc_id, score});
    out.normalize();
    return out.top(k);
}

} // namespace ragbench

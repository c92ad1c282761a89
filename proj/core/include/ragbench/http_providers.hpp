// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <memory>

#include "ragbench/providers.hpp"

namespace ragbench {

struct ProviderConfig; // defined in experiment.hpp

/// Builders for the online providers. Endpoints and credentials come from
/// environment variables:
///   RAGBENCH_EMBED_ENDPOINT  / RAGBENCH_EMBED_KEY
///   RAGBENCH_LLM_ENDPOINT    / RAGBENCH_LLM_KEY
///   RAGBENCH_RERANK_ENDPOINT / RAGBENCH_RERANK_KEY
/// A missing endpoint raises ConfigError naming the variable. Credentials
/// never appear in configs or reports.
std::unique_ptr<EmbeddingProvider> make_http_embedder(const ProviderConfig& cfg,
                                                      const RequestPolicy& policy, Clock& clock,
                                                      CallLedger* ledger);
std::unique_ptr<CompletionProvider> make_http_completion(const ProviderConfig& cfg,
                                                         const RequestPolicy& policy, Clock& clock,
                                                         CallLedger* ledger);
std::unique_ptr<RerankProvider> make_http_reranker(const ProviderConfig& cfg,
                                                   const RequestPolicy& policy, Clock& clock,
                                                   CallLedger* ledger);

} // namespace ragbench

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ragbench/corpus.hpp"
#include "ragbench/metrics.hpp"
#include "ragbench/prompts.hpp"
#include "ragbench/providers.hpp"

namespace ragbench {

struct GenerationRecord {
    std::string query_id;
    std::string answer_text;
    std::vector<std::string> context_ids; // rank order
    double nm = 0.0;
    double token_f1 = 0.0;
    double rouge_l = 0.0;
};

/// Context assembly for generation: documents in rank order, each introduced
/// by a "Document <i>:" header line, separated by blank lines.
std::string assemble_context(const std::vector<const Document*>& docs);

/// Runs the generation stage over every query: retrieve (or take the gold
/// document directly in oracle mode), build the context, complete at the
/// configured temperature, and score NM / token F1 / ROUGE-L against the
/// gold answer.
std::vector<GenerationRecord> answer_questions(
    const QuerySet& queries, const std::function<RankedList(const Query&)>& retriever,
    CompletionProvider& completion, const Corpus& corpus, const PromptLibrary& prompts,
    bool oracle_mode, int top_k, double temperature, int max_tokens,
    const NumberMatchConfig& nm_cfg);

/// Mean of a generation metric over the records.
double mean_nm(const std::vector<GenerationRecord>& records);

/// JSONL serialization of generation records (one record per line).
std::string generation_records_jsonl(const std::vector<GenerationRecord>& records);

} // namespace ragbench

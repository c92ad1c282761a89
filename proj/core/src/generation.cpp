// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include "ragbench/generation.hpp"

#include <sstream>

#include <json.hpp>

#include "ragbench/report.hpp"

namespace ragbench {

std::string assemble_context(const std::vector<const Document*>& docs) {
    std::string out;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (i > 0) out += "\n\n";
        out += "Document " + std::to_string(i + 1) + ":\n" + docs[i]->text;
    }
    return out;
}

std::vector<GenerationRecord> answer_questions(
    const QuerySet& queries, const std::function<RankedList(const Query&)>& retriever,
    CompletionProvider& completion, const Corpus& corpus, const PromptLibrary& prompts,
    bool oracle_mode, int top_k, double temperature, int max_tokens,
    const NumberMatchConfig& nm_cfg) {
    require_placeholder(prompts.generation, "context", "generation");
    require_placeholder(prompts.generation, "question", "generation");
    if (top_k < 1) throw ConfigError("generation top_k must be >= 1");

    std::vector<GenerationRecord> records;
    records.reserve(queries.size());
    for (const Query& q : queries.queries()) {
        GenerationRecord rec;
        rec.query_id = q.query_id;

        std::vector<const Document*> context_docs;
        if (oracle_mode) {
            context_docs.push_back(&corpus.at(q.gold_doc_id));
        } else {
            const auto ranked = retriever(q).top(static_cast<std::size_t>(top_k));
            for (const auto& entry : ranked.entries) {
                context_docs.push_back(&corpus.at(entry.doc_id));
            }
        }
        for (const auto* d : context_docs) rec.context_ids.push_back(d->doc_id);

        const std::string prompt = render_template(
            prompts.generation,
            {{"context", assemble_context(context_docs)}, {"question", q.text}});
        rec.answer_text = completion.complete(prompt, temperature, max_tokens);

        const std::string gold_text = format_double(q.gold_answer);
        rec.nm = number_match(rec.answer_text, q.gold_answer, nm_cfg);
        rec.token_f1 = token_f1(rec.answer_text, gold_text);
        rec.rouge_l = rouge_l(rec.answer_text, gold_text);
        records.push_back(std::move(rec));
    }
    return records;
}

double mean_nm(const std::vector<GenerationRecord>& records) {
    if (records.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& r : records) sum += r.nm;
    return sum / static_cast<double>(records.size());
}

std::string generation_records_jsonl(const std::vector<GenerationRecord>& records) {
    std::ostringstream out;
    for (const auto& r : records) {
        nlohmann::json rec;
        rec["query_id"] = r.query_id;
        rec["answer"] = r.answer_text;
        rec["context_ids"] = r.context_ids;
        rec["nm"] = r.nm;
        rec["token_f1"] = r.token_f1;
        rec["rouge_l"] = r.rouge_l;
        out << rec.dump() << '\n';
    }
    return out.str();
}

} // namespace ragbench

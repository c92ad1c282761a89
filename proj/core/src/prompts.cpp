// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include "ragbench/prompts.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ragbench/errors.hpp"

namespace ragbench {

namespace {

const char* const kGeneration =
    R"(Answer the following question based ONLY on
the provided context.
If the answer is a number, provide just the
number. If you cannot answer from the
context, say "UNANSWERABLE".

Context:
{context}

Question: {question}

Answer:)";

const char* const kHyde =
    R"(Given the following question about financial
data, write a short passage that would
contain the answer. Include specific numbers
and financial terms.
Question: {query}
Passage:)";

const char* const kHydeFallback =
    R"(Please write a short passage that directly
answers the following question. The passage
should be factual, detailed, and roughly
the length of a typical encyclopedia
paragraph.

Question: {query}

Passage:)";

const char* const kMultiQuery =
    R"(You are a helpful assistant that generates
alternative search queries. Given the
following question, generate {n} alternative
phrasings that capture the same information
need but use different wording or
perspectives. Return each query on its own
line, numbered (e.g. 1. ... 2. ...).
Do not include any other text.

Original question: {query}

Alternative queries:)";

const char* const kCragEval =
    R"(You are a relevance evaluator. Given a
question and a retrieved document, classify
the document's relevance to answering the
question.

Question: {query}
Document: {document}

Respond with exactly one of:
- RELEVANT: The document contains
  information that directly helps answer
  the question.
- AMBIGUOUS: The document is partially
  relevant or tangentially related but
  may not fully answer the question.
- IRRELEVANT: The document does not
  contain useful information for
  answering the question.

Classification:)";

const char* const kCragRewrite =
    R"(The following question was used to search a
financial document corpus, but the retrieved
results were not sufficiently relevant.

Original question: {query}

Please rewrite this question to be more
specific and likely to retrieve the correct
financial document. Focus on including
specific financial terms, company names,
time periods, or metric names that would
appear in the target document.

Rewritten question:)";

const char* const kContextualChunk =
    R"(Here is the full document:
<document>
{document}
</document>

Here is a chunk from that document:
<chunk>
{chunk}
</chunk>

Please give a short, succinct context
(2-3 sentences) to situate this chunk
within the overall document for the
purposes of improving search retrieval
of the chunk. Answer only with the
context, nothing else.)";

const char* const kContextualWhole =
    R"(Here is a document:
<document>
{document}
</document>

Please provide a concise summary context
(2-3 sentences) that captures the key
topics and entities in this document, for
the purpose of improving search retrieval.
Answer only with the context, nothing else.)";

std::string read_template_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    if (!text.empty() && text.back() == '\n') text.pop_back();
    return text;
}

} // namespace

PromptLibrary PromptLibrary::defaults() {
    PromptLibrary lib;
    lib.generation = kGeneration;
    lib.hyde = kHyde;
    lib.hyde_fallback = kHydeFallback;
    lib.multi_query = kMultiQuery;
    lib.crag_eval = kCragEval;
    lib.crag_rewrite = kCragRewrite;
    lib.contextual_chunk = kContextualChunk;
    lib.contextual_whole = kContextualWhole;
    return lib;
}

PromptLibrary PromptLibrary::load_dir(const std::string& dir) {
    PromptLibrary lib = defaults();
    const std::filesystem::path base(dir);
    if (!std::filesystem::is_directory(base)) {
        throw ConfigError("prompt directory '" + dir + "' does not exist");
    }
    const std::pair<const char*, std::string*> slots[] = {
        {"generation", &lib.generation},
        {"hyde", &lib.hyde},
        {"hyde_fallback", &lib.hyde_fallback},
        {"multi_query", &lib.multi_query},
        {"crag_eval", &lib.crag_eval},
        {"crag_rewrite", &lib.crag_rewrite},
        {"contextual_chunk", &lib.contextual_chunk},
        {"contextual_whole", &lib.contextual_whole},
    };
    for (const auto& [name, slot] : slots) {
        const auto path = base / (std::string(name) + ".txt");
        if (std::filesystem::exists(path)) *slot = read_template_file(path);
    }
    return lib;
}

std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& values) {
    std::string out;
    out.reserve(tmpl.size());
    std::size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl[i] == '{') {
            const auto close = tmpl.find('}', i + 1);
            if (close != std::string::npos) {
                const std::string name = tmpl.substr(i + 1, close - i - 1);
                auto it = values.find(name);
                if (it != values.end()) {
                    out += it->second;
                    i = close + 1;
                    continue;
                }
            }
        }
        out.push_back(tmpl[i++]);
    }
    return out;
}

void require_placeholder(const std::string& tmpl, const std::string& placeholder,
                         const std::string& template_name) {
    if (tmpl.find("{" + placeholder + "}") == std::string::npos) {
        throw ConfigError("template '" + template_name + "' is missing the {" + placeholder +
                          "} placeholder");
    }
}

} // namespace ragbench

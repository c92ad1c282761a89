// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include "ragbench/mocks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <sstream>

#include <openssl/evp.h>

#include "ragbench/metrics.hpp"

namespace ragbench {

namespace {

std::array<std::uint8_t, 32> sha256_bytes(const std::string& data) {
    std::array<std::uint8_t, 32> out{};
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, out.data(), &len) != 1) {
        if (ctx) EVP_MD_CTX_free(ctx);
        throw Error("sha256 digest failure");
    }
    EVP_MD_CTX_free(ctx);
    return out;
}

std::vector<std::string> alnum_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

} // namespace

HashEmbedder::HashEmbedder(std::size_t dimension, std::uint64_t seed, CallLedger* ledger,
                           std::string model_id)
    : dimension_(dimension), seed_(seed), ledger_(ledger), model_id_(std::move(model_id)) {
    if (dimension_ == 0) throw ConfigError("hash embedder dimension must be positive");
}

std::vector<float> HashEmbedder::embed_one(const std::string& text) const {
    auto tokens = alnum_tokens(text);
    if (tokens.empty()) tokens.push_back(text); // hash the raw bytes instead

    std::vector<double> acc(dimension_, 0.0);
    for (const auto& token : tokens) {
        // Counter-mode expansion of sha256(seed || token || block) into
        // dimension values in [-1, 1].
        std::size_t produced = 0;
        std::uint32_t block = 0;
        while (produced < dimension_) {
            std::string material;
            material.reserve(8 + token.size() + 4);
            for (int i = 0; i < 8; ++i) {
                material.push_back(static_cast<char>((seed_ >> (8 * i)) & 0xff));
            }
            material += token;
            for (int i = 0; i < 4; ++i) {
                material.push_back(static_cast<char>((block >> (8 * i)) & 0xff));
            }
            const auto digest = sha256_bytes(material);
            for (std::size_t b = 0; b + 1 < digest.size() && produced < dimension_; b += 2) {
                const auto u = static_cast<std::uint32_t>(digest[b]) |
                               (static_cast<std::uint32_t>(digest[b + 1]) << 8);
                acc[produced++] += static_cast<double>(u) / 65535.0 * 2.0 - 1.0;
            }
            ++block;
        }
    }

    double norm_sq = 0.0;
    for (double x : acc) norm_sq += x * x;
    const double inv = norm_sq > 0.0 ? 1.0 / std::sqrt(norm_sq) : 0.0;
    std::vector<float> out(dimension_);
    for (std::size_t i = 0; i < dimension_; ++i) {
        out[i] = static_cast<float>(acc[i] * inv);
    }
    return out;
}

std::vector<std::vector<float>> HashEmbedder::embed(const std::vector<std::string>& texts) {
    std::vector<std::vector<float>> out;
    out.reserve(texts.size());
    std::uint64_t chars = 0;
    for (const auto& t : texts) {
        chars += t.size();
        out.push_back(embed_one(t));
    }
    if (ledger_) ledger_->record("embedding", model_id_, texts.size(), chars);
    return out;
}

ScriptedCompletion::ScriptedCompletion(CallLedger* ledger, std::string model_id)
    : ledger_(ledger), model_id_(std::move(model_id)) {}

ScriptedCompletion& ScriptedCompletion::when_contains(std::string needle, std::string response) {
    rules_.push_back({std::move(needle),
                      [response = std::move(response)](const std::string&) { return response; }});
    return *this;
}

ScriptedCompletion& ScriptedCompletion::when_contains(std::string needle, Responder responder) {
    rules_.push_back({std::move(needle), std::move(responder)});
    return *this;
}

std::string ScriptedCompletion::complete(const std::string& prompt, double /*temperature*/,
                                         int /*max_tokens*/) {
    if (ledger_) ledger_->record("completion", model_id_, 1, prompt.size());
    for (const auto& rule : rules_) {
        if (prompt.find(rule.needle) != std::string::npos) return rule.respond(prompt);
    }
    throw ProviderError("scripted completion has no rule matching prompt: " +
                        prompt.substr(0, std::min<std::size_t>(prompt.size(), 80)));
}

OracleReranker::OracleReranker(std::unordered_map<std::string, std::string> gold_needle_by_query,
                               CallLedger* ledger, std::string model_id)
    : gold_needle_by_query_(std::move(gold_needle_by_query)),
      ledger_(ledger),
      model_id_(std::move(model_id)) {}

std::vector<RerankEntry> OracleReranker::rerank(const std::string& query,
                                                const std::vector<std::string>& documents,
                                                std::size_t top_n) {
    std::uint64_t chars = 0;
    for (const auto& d : documents) chars += d.size();
    if (ledger_) ledger_->record("rerank", model_id_, documents.size(), chars);

    const auto needle_it = gold_needle_by_query_.find(query);
    std::vector<RerankEntry> scored;
    scored.reserve(documents.size());
    for (std::size_t p = 0; p < documents.size(); ++p) {
        double score = 1.0 / static_cast<double>(p + 2);
        if (needle_it != gold_needle_by_query_.end() &&
            documents[p].find(needle_it->second) != std::string::npos) {
            score = 1.0;
        }
        scored.push_back({p, score});
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const RerankEntry& a, const RerankEntry& b) { return a.score > b.score; });
    if (scored.size() > top_n) scored.resize(top_n);
    return scored;
}

std::optional<std::string> first_numeric_token(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        std::size_t lo = 0, hi = tok.size();
        while (lo < hi && !std::isalnum(static_cast<unsigned char>(tok[lo])) && tok[lo] != '-' &&
               tok[lo] != '.')
            ++lo;
        while (hi > lo && !std::isalnum(static_cast<unsigned char>(tok[hi - 1])))
            --hi;
        const std::string core = tok.substr(lo, hi - lo);
        if (core.empty()) continue;
        bool has_digit = false, ok = true;
        for (char c : core) {
            if (c >= '0' && c <= '9') {
                has_digit = true;
            } else if (c != '.' && c != ',' && c != '-' && c != '+') {
                ok = false;
                break;
            }
        }
        if (ok && has_digit) return core;
    }
    return std::nullopt;
}

namespace {

// Pulls the remainder of the line following `marker`, trimmed.
std::string line_after(const std::string& prompt, const std::string& marker) {
    const auto pos = prompt.find(marker);
    if (pos == std::string::npos) return {};
    auto start = pos + marker.size();
    auto end = prompt.find('\n', start);
    if (end == std::string::npos) end = prompt.size();
    std::string out = prompt.substr(start, end - start);
    const auto lo = out.find_first_not_of(" \t");
    const auto hi = out.find_last_not_of(" \t\r");
    if (lo == std::string::npos) return {};
    return out.substr(lo, hi - lo + 1);
}

std::string section_between(const std::string& prompt, const std::string& open,
                            const std::string& close) {
    const auto a = prompt.find(open);
    if (a == std::string::npos) return {};
    const auto b = prompt.find(close, a + open.size());
    if (b == std::string::npos) return prompt.substr(a + open.size());
    return prompt.substr(a + open.size(), b - a - open.size());
}

} // namespace

std::unique_ptr<ScriptedCompletion> make_offline_completion(CallLedger* ledger) {
    auto mock = std::make_unique<ScriptedCompletion>(ledger, "mock-offline");

    // Generation: answer with the first standalone number in the context,
    // ignoring the "Document <i>:" header lines the context assembler adds.
    mock->when_contains("Answer the following question based ONLY on",
                        [](const std::string& prompt) {
                            const auto ctx = section_between(prompt, "Context:", "Question:");
                            std::string body;
                            std::istringstream lines(ctx);
                            std::string line;
                            while (std::getline(lines, line)) {
                                if (line.rfind("Document ", 0) == 0) continue;
                                body += line;
                                body += '\n';
                            }
                            if (auto num = first_numeric_token(body)) return *num;
                            return std::string("UNANSWERABLE");
                        });

    // HyDE (both the primary and the fallback template): echo the question.
    mock->when_contains("write a short passage", [](const std::string& prompt) {
        return line_after(prompt, "Question:");
    });

    // Multi-query: three numbered restatements of the original question.
    mock->when_contains("alternative search queries", [](const std::string& prompt) {
        const auto original = line_after(prompt, "Original question:");
        std::string out;
        for (int i = 1; i <= 3; ++i) {
            out += std::to_string(i) + ". " + original + "\n";
        }
        return out;
    });

    // CRAG relevance judge: token-overlap heuristic over query and document.
    mock->when_contains("You are a relevance evaluator", [](const std::string& prompt) {
        const auto question = line_after(prompt, "Question:");
        const auto document = section_between(prompt, "Document:", "\nRespond with exactly");
        std::string doc_lower = document;
        std::transform(doc_lower.begin(), doc_lower.end(), doc_lower.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        std::size_t hits = 0;
        for (auto tok : alnum_tokens(question)) {
            if (tok.size() < 3) continue;
            std::transform(tok.begin(), tok.end(), tok.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            if (doc_lower.find(tok) != std::string::npos) ++hits;
        }
        if (hits >= 2) return std::string("RELEVANT");
        if (hits == 1) return std::string("AMBIGUOUS");
        return std::string("IRRELEVANT");
    });

    // CRAG rewrite: return the original question unchanged.
    mock->when_contains("Please rewrite this question", [](const std::string& prompt) {
        return line_after(prompt, "Original question:");
    });

    // Contextual retrieval (whole-document and chunked): prefix summary.
    auto summarize = [](const std::string& prompt) {
        const auto body = section_between(prompt, "<document>\n", "\n</document>");
        std::istringstream in(body);
        std::string tok, out;
        int count = 0;
        while (count < 12 && (in >> tok)) {
            if (!out.empty()) out += ' ';
            out += tok;
            ++count;
        }
        return "Summary: " + out + ".";
    };
    mock->when_contains("concise summary context", summarize);
    mock->when_contains("short, succinct context", summarize);

    // Failure categorization: markdown tables point at table structure.
    mock->when_contains("retrieval failure", [](const std::string& prompt) {
        const auto document = section_between(prompt, "Gold document:", "\nCategories:");
        return document.find('|') != std::string::npos ? std::string("table structure mismatch")
                                                       : std::string("vocabulary mismatch");
    });

    return mock;
}

} // namespace ragbench

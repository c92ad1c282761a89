// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include "ragbench/lexical.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace ragbench {

using nlohmann::json;

void Bm25Params::validate() const {
    if (!(k1 > 0.0)) throw ConfigError("bm25 k1 must be > 0");
    if (!(b >= 0.0 && b <= 1.0)) throw ConfigError("bm25 b must be in [0,1]");
}

std::vector<std::string> tokenize(const std::string& text, const TokenizerConfig& cfg) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) continue;
        std::string tok = text.substr(start, i - start);
        if (cfg.strip_edge_punctuation) {
            std::size_t lo = 0, hi = tok.size();
            while (lo < hi && !std::isalnum(static_cast<unsigned char>(tok[lo]))) ++lo;
            while (hi > lo && !std::isalnum(static_cast<unsigned char>(tok[hi - 1]))) --hi;
            tok = tok.substr(lo, hi - lo);
        }
        if (cfg.lowercase) {
            std::transform(tok.begin(), tok.end(), tok.begin(), [](unsigned char c) {
                return static_cast<char>(std::tolower(c));
            });
        }
        if (!tok.empty()) tokens.push_back(std::move(tok));
    }
    return tokens;
}

LexicalIndex LexicalIndex::build(const Corpus& corpus, const TokenizerConfig& cfg) {
    if (corpus.empty()) throw DataError("cannot build lexical index over an empty corpus");
    LexicalIndex index;
    index.tokenizer_ = cfg;
    index.doc_ids_.reserve(corpus.size());
    index.doc_lengths_.reserve(corpus.size());

    std::uint64_t total_len = 0;
    for (std::size_t pos = 0; pos < corpus.size(); ++pos) {
        const Document& doc = corpus.at_position(pos);
        const auto tokens = tokenize(doc.text, cfg);
        index.doc_ids_.push_back(doc.doc_id);
        index.doc_lengths_.push_back(static_cast<std::uint32_t>(tokens.size()));
        total_len += tokens.size();

        std::unordered_map<std::string, std::uint32_t> tf;
        for (const auto& t : tokens) ++tf[t];
        for (auto& [term, freq] : tf) {
            index.postings_[term].push_back(
                {static_cast<std::uint32_t>(pos), freq});
        }
    }
    // Postings are appended in ascending doc position already; keep the
    // invariant explicit for loaded indexes too.
    index.avgdl_ = static_cast<double>(total_len) / static_cast<double>(corpus.size());
    return index;
}

std::size_t LexicalIndex::df(const std::string& term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? 0 : it->second.size();
}

RankedList LexicalIndex::search(const std::string& query, const Bm25Params& params,
                                std::size_t k) const {
    params.validate();
    if (k == 0) throw ConfigError("lexical_search requires k >= 1");

    const double n_docs = static_cast<double>(doc_count());
    std::vector<double> scores(doc_lengths_.size(), 0.0);
    for (const auto& term : tokenize(query, tokenizer_)) {
        auto it = postings_.find(term);
        if (it == postings_.end()) continue;
        const auto& plist = it->second;
        const double df_t = static_cast<double>(plist.size());
        const double idf = std::log((n_docs - df_t + 0.5) / (df_t + 0.5) + 1.0);
        for (const Posting& p : plist) {
            const double tf = static_cast<double>(p.tf);
            const double len = static_cast<double>(doc_lengths_[p.doc_pos]);
            const double denom =
                tf + params.k1 * (1.0 - params.b + params.b * len / avgdl_);
            scores[p.doc_pos] += idf * tf * (params.k1 + 1.0) / denom;
        }
    }

    RankedList out;
    out.source = "bm25";
    for (std::size_t pos = 0; pos < scores.size(); ++pos) {
        if (scores[pos] > 0.0) out.entries.push_back({doc_ids_[pos], scores[pos]});
    }
    out.normalize();
    return out.top(k);
}

void LexicalIndex::validate() const {
    if (doc_ids_.size() != doc_lengths_.size()) {
        throw DataError("lexical index: doc_ids and doc_lengths disagree");
    }
    std::uint64_t total = 0;
    for (auto len : doc_lengths_) total += len;
    const double expect =
        static_cast<double>(total) / static_cast<double>(doc_lengths_.size());
    if (std::abs(expect - avgdl_) > 1e-9) throw DataError("lexical index: avgdl mismatch");
    for (const auto& [term, plist] : postings_) {
        if (plist.empty()) throw DataError("lexical index: empty postings for '" + term + "'");
        for (std::size_t i = 1; i < plist.size(); ++i) {
            if (plist[i - 1].doc_pos >= plist[i].doc_pos) {
                throw DataError("lexical index: postings not sorted for '" + term + "'");
            }
        }
    }
}

void LexicalIndex::save(const std::string& path) const {
    json dump;
    dump["format"] = "raglex";
    dump["version"] = 1;
    dump["lowercase"] = tokenizer_.lowercase;
    dump["strip_edge_punctuation"] = tokenizer_.strip_edge_punctuation;
    dump["avgdl"] = avgdl_;
    dump["doc_ids"] = doc_ids_;
    dump["doc_lengths"] = doc_lengths_;
    json terms = json::object();
    for (const auto& [term, plist] : postings_) {
        json rows = json::array();
        for (const auto& p : plist) rows.push_back({p.doc_pos, p.tf});
        terms[term] = std::move(rows);
    }
    dump["postings"] = std::move(terms);
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << dump.dump() << '\n';
}

LexicalIndex LexicalIndex::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open lexical index '" + path + "'");
    json dump = json::parse(in, nullptr, false);
    if (dump.is_discarded() || dump.value("format", "") != "raglex" ||
        dump.value("version", 0) != 1) {
        throw DataError("unrecognized lexical index format in '" + path + "'");
    }
    LexicalIndex index;
    index.tokenizer_.lowercase = dump.at("lowercase").get<bool>();
    index.tokenizer_.strip_edge_punctuation = dump.at("strip_edge_punctuation").get<bool>();
    index.avgdl_ = dump.at("avgdl").get<double>();
    index.doc_ids_ = dump.at("doc_ids").get<std::vector<std::string>>();
    index.doc_lengths_ = dump.at("doc_lengths").get<std::vector<std::uint32_t>>();
    for (const auto& [term, rows] : dump.at("postings").items()) {
        auto& plist = index.postings_[term];
        for (const auto& row : rows) {
            plist.push_back({row.at(0).get<std::uint32_t>(), row.at(1).get<std::uint32_t>()});
        }
    }
    index.validate();
    return index;
}

} // namespace ragbench

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include "ragbench/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ragbench {

using nlohmann::json;

std::string to_string(Subset s) {
    switch (s) {
        case Subset::FinQA: return "FinQA";
        case Subset::ConvFinQA: return "ConvFinQA";
        case Subset::TATDQA: return "TATDQA";
        case Subset::Other: return "Other";
    }
    return "Other";
}

Subset parse_subset(const std::string& label) {
    std::string norm;
    for (char c : label) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            norm.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (norm == "finqa") return Subset::FinQA;
    if (norm == "convfinqa") return Subset::ConvFinQA;
    if (norm == "tatdqa") return Subset::TATDQA;
    return Subset::Other;
}

std::size_t whitespace_token_count(const std::string& text) {
    std::size_t count = 0;
    bool in_token = false;
    for (char c : text) {
        const bool ws = std::isspace(static_cast<unsigned char>(c)) != 0;
        if (!ws && !in_token) ++count;
        in_token = !ws;
    }
    return count;
}

void Corpus::add(Document doc) {
    if (doc.doc_id.empty()) throw DataError("document with empty doc_id");
    if (doc.text.empty()) throw DataError("document '" + doc.doc_id + "' has empty text");
    if (index_.count(doc.doc_id)) throw DataError("duplicate doc_id '" + doc.doc_id + "'");
    doc.token_count = whitespace_token_count(doc.text);
    index_.emplace(doc.doc_id, docs_.size());
    docs_.push_back(std::move(doc));
}

std::optional<std::size_t> Corpus::position_of(const std::string& doc_id) const {
    auto it = index_.find(doc_id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const Document& Corpus::at(const std::string& doc_id) const {
    auto it = index_.find(doc_id);
    if (it == index_.end()) throw DataError("unknown doc_id '" + doc_id + "'");
    return docs_[it->second];
}

bool Corpus::contextualized() const {
    if (docs_.empty()) return false;
    return std::all_of(docs_.begin(), docs_.end(),
                       [](const Document& d) { return d.contextualized; });
}

void QuerySet::add(Query q, const Corpus& corpus) {
    if (q.query_id.empty()) throw DataError("query with empty query_id");
    if (index_.count(q.query_id)) throw DataError("duplicate query_id '" + q.query_id + "'");
    if (!corpus.contains(q.gold_doc_id)) {
        throw DataError("query '" + q.query_id + "' has unknown gold_doc_id '" + q.gold_doc_id +
                        "'");
    }
    if (!std::isfinite(q.gold_answer)) {
        throw DataError("query '" + q.query_id + "' has non-finite gold_answer");
    }
    index_.emplace(q.query_id, queries_.size());
    queries_.push_back(std::move(q));
}

const Query& QuerySet::at(const std::string& query_id) const {
    auto it = index_.find(query_id);
    if (it == index_.end()) throw DataError("unknown query_id '" + query_id + "'");
    return queries_[it->second];
}

bool ranked_before(const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
}

void RankedList::normalize() {
    for (const auto& e : entries) {
        if (!std::isfinite(e.score)) {
            throw DataError("non-finite score for doc '" + e.doc_id + "' in ranked list");
        }
    }
    std::stable_sort(entries.begin(), entries.end(), ranked_before);
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].doc_id == entries[i - 1].doc_id) {
            throw DataError("duplicate doc_id '" + entries[i].doc_id + "' in ranked list");
        }
    }
}

std::optional<std::size_t> RankedList::rank_of(const std::string& doc_id) const {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].doc_id == doc_id) return i + 1;
    }
    return std::nullopt;
}

RankedList RankedList::top(std::size_t k) const {
    RankedList out;
    out.source = source;
    out.entries.assign(entries.begin(),
                       entries.begin() + static_cast<std::ptrdiff_t>(std::min(k, entries.size())));
    return out;
}

namespace {

json parse_record(const std::string& line, std::size_t index) {
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) {
        throw DataError("malformed record at line " + std::to_string(index) + ": not a JSON object");
    }
    return rec;
}

std::string require_string(const json& rec, const char* field, std::size_t index) {
    if (!rec.contains(field)) {
        throw DataError("malformed record at line " + std::to_string(index) + ": missing field '" +
                        field + "'");
    }
    const auto& v = rec.at(field);
    if (!v.is_string()) {
        throw DataError("malformed record at line " + std::to_string(index) + ": field '" + field +
                        "' is not a string");
    }
    return v.get<std::string>();
}

} // namespace

Corpus load_corpus(std::istream& in) {
    Corpus corpus;
    std::string line;
    std::size_t index = 0;
    while (std::getline(in, line)) {
        ++index;
        if (line.empty()) continue;
        json rec = parse_record(line, index);
        Document doc;
        doc.doc_id = require_string(rec, "doc_id", index);
        doc.text = require_string(rec, "text", index);
        doc.subset = parse_subset(require_string(rec, "subset", index));
        if (rec.contains("contextualized") && rec["contextualized"].is_boolean()) {
            doc.contextualized = rec["contextualized"].get<bool>();
        }
        try {
            corpus.add(std::move(doc));
        } catch (const DataError& e) {
            throw DataError(std::string(e.what()) + " (line " + std::to_string(index) + ")");
        }
    }
    return corpus;
}

QuerySet load_queries(std::istream& in, const Corpus& corpus) {
    QuerySet qs;
    std::string line;
    std::size_t index = 0;
    while (std::getline(in, line)) {
        ++index;
        if (line.empty()) continue;
        json rec = parse_record(line, index);
        Query q;
        q.query_id = require_string(rec, "query_id", index);
        q.text = require_string(rec, "text", index);
        q.gold_doc_id = require_string(rec, "gold_doc_id", index);
        q.subset = parse_subset(require_string(rec, "subset", index));
        if (!rec.contains("gold_answer")) {
            throw DataError("malformed record at line " + std::to_string(index) +
                            ": missing field 'gold_answer'");
        }
        const auto& ans = rec["gold_answer"];
        if (ans.is_number()) {
            q.gold_answer = ans.get<double>();
        } else if (ans.is_string()) {
            const std::string s = ans.get<std::string>();
            std::size_t pos = 0;
            double value = 0.0;
            try {
                value = std::stod(s, &pos);
            } catch (const std::exception&) {
                throw DataError("query '" + q.query_id + "' has non-numeric gold_answer '" + s +
                                "'");
            }
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos != s.size()) {
                throw DataError("query '" + q.query_id + "' has non-numeric gold_answer '" + s +
                                "'");
            }
            q.gold_answer = value;
        } else {
            throw DataError("query '" + q.query_id + "' has non-numeric gold_answer");
        }
        try {
            qs.add(std::move(q), corpus);
        } catch (const DataError& e) {
            throw DataError(std::string(e.what()) + " (line " + std::to_string(index) + ")");
        }
    }
    return qs;
}

void save_corpus(const Corpus& corpus, std::ostream& out) {
    for (const auto& doc : corpus.documents()) {
        json rec;
        rec["doc_id"] = doc.doc_id;
        rec["text"] = doc.text;
        rec["subset"] = to_string(doc.subset);
        if (doc.contextualized) rec["contextualized"] = true;
        out << rec.dump() << '\n';
    }
}

Corpus load_corpus_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open corpus file '" + path + "'");
    return load_corpus(in);
}

QuerySet load_queries_file(const std::string& path, const Corpus& corpus) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open queries file '" + path + "'");
    return load_queries(in, corpus);
}

void save_corpus_file(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    save_corpus(corpus, out);
}

CorpusStats corpus_stats(const Corpus& corpus) {
    if (corpus.empty()) throw DataError("corpus_stats on empty corpus");
    CorpusStats stats;
    stats.count = corpus.size();
    double total = 0.0;
    for (const auto& doc : corpus.documents()) {
        total += static_cast<double>(doc.token_count);
        stats.per_subset[to_string(doc.subset)] += 1;
    }
    stats.mean_token_count = total / static_cast<double>(corpus.size());
    return stats;
}

} // namespace ragbench

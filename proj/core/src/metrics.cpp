// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include "ragbench/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_map>

namespace ragbench {

double recall_at_k(const RankedList& ranked, const std::string& gold, std::size_t k) {
    auto rank = ranked.rank_of(gold);
    return (rank && *rank <= k) ? 1.0 : 0.0;
}

double mrr_at_k(const RankedList& ranked, const std::string& gold, std::size_t k) {
    auto rank = ranked.rank_of(gold);
    return (rank && *rank <= k) ? 1.0 / static_cast<double>(*rank) : 0.0;
}

double ndcg_at_k(const RankedList& ranked, const std::string& gold, std::size_t k) {
    auto rank = ranked.rank_of(gold);
    if (!rank || *rank > k) return 0.0;
    return 1.0 / std::log2(static_cast<double>(*rank) + 1.0);
}

double average_precision(const RankedList& ranked, const std::string& gold) {
    auto rank = ranked.rank_of(gold);
    return rank ? 1.0 / static_cast<double>(*rank) : 0.0;
}

void NumberMatchConfig::validate() const {
    if (!(epsilon > 0.0)) throw ConfigError("number match epsilon must be > 0");
    if (std::find(scale_set.begin(), scale_set.end(), 1.0) == scale_set.end()) {
        throw ConfigError("number match scale_set must contain 1");
    }
}

namespace {

bool is_digit(char c) {
    return c >= '0' && c <= '9';
}

// Characters skipped when looking around a literal for signs and parens.
bool is_soft(char c) {
    return c == ' ' || c == '\t' || c == '$';
}

} // namespace

std::optional<double> extract_first_number(const std::string& text) {
    const std::size_t n = text.size();
    std::size_t i = 0;
    // First position that starts a numeric literal: a digit, or '.' directly
    // followed by a digit.
    for (; i < n; ++i) {
        if (is_digit(text[i])) break;
        if (text[i] == '.' && i + 1 < n && is_digit(text[i + 1])) break;
    }
    if (i >= n) return std::nullopt;

    // Look behind for an explicit sign and an opening paren, skipping spaces
    // and currency markers.
    bool negative = false;
    bool open_paren = false;
    {
        std::size_t j = i;
        while (j > 0 && is_soft(text[j - 1])) --j;
        if (j > 0 && (text[j - 1] == '-' || text[j - 1] == '+')) {
            negative = (text[j - 1] == '-');
            --j;
            while (j > 0 && is_soft(text[j - 1])) --j;
        }
        if (j > 0 && text[j - 1] == '(') open_paren = true;
    }

    // Integer part, with ',' accepted only as a separator of exactly three
    // digits ("1,234,567" but not "1,23" or "1,2345").
    std::string literal;
    std::size_t pos = i;
    if (text[pos] == '.') literal = "0"; // leading-dot form ".5"
    while (pos < n && is_digit(text[pos])) literal.push_back(text[pos++]);
    while (pos < n && text[pos] == ',' && pos + 3 < n && is_digit(text[pos + 1]) &&
           is_digit(text[pos + 2]) && is_digit(text[pos + 3]) &&
           (pos + 4 >= n || !is_digit(text[pos + 4]))) {
        literal.append(text, pos + 1, 3);
        pos += 4;
    }
    if (pos < n && text[pos] == '.' && pos + 1 < n && is_digit(text[pos + 1])) {
        literal.push_back('.');
        ++pos;
        while (pos < n && is_digit(text[pos])) literal.push_back(text[pos++]);
    }
    if (pos < n && (text[pos] == 'e' || text[pos] == 'E')) {
        std::size_t e = pos + 1;
        std::string exp = "e";
        if (e < n && (text[e] == '+' || text[e] == '-')) exp.push_back(text[e++]);
        if (e < n && is_digit(text[e])) {
            while (e < n && is_digit(text[e])) exp.push_back(text[e++]);
            literal += exp;
            pos = e;
        }
    }

    double value = 0.0;
    auto [ptr, ec] = std::from_chars(literal.data(), literal.data() + literal.size(), value);
    if (ec != std::errc() || ptr != literal.data() + literal.size()) return std::nullopt;

    // Look ahead for the closing paren, skipping percent and currency marks.
    if (open_paren) {
        std::size_t j = pos;
        while (j < n && (is_soft(text[j]) || text[j] == '%')) ++j;
        if (j < n && text[j] == ')') negative = true;
    }
    return negative ? -value : value;
}

double number_match(const std::string& answer_text, double gold, const NumberMatchConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(gold)) throw DataError("number_match requires a finite gold value");

    std::string upper(answer_text);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper.find("UNANSWERABLE") != std::string::npos) return 0.0;

    const auto pred = extract_first_number(answer_text);
    if (!pred) return 0.0;

    const double tol = cfg.epsilon * std::max(std::abs(gold), 1e-12);
    for (double s : cfg.scale_set) {
        if (std::abs(s * (*pred) - gold) <= tol) return 1.0;
    }
    return 0.0;
}

namespace {

std::vector<std::string> lower_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) tokens.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

} // namespace

double token_f1(const std::string& pred, const std::string& gold) {
    const auto p = lower_tokens(pred);
    const auto g = lower_tokens(gold);
    if (p.empty() && g.empty()) return 1.0;
    if (p.empty() || g.empty()) return 0.0;

    std::unordered_map<std::string, std::size_t> gold_counts;
    for (const auto& t : g) ++gold_counts[t];
    std::size_t overlap = 0;
    for (const auto& t : p) {
        auto it = gold_counts.find(t);
        if (it != gold_counts.end() && it->second > 0) {
            ++overlap;
            --it->second;
        }
    }
    if (overlap == 0) return 0.0;
    const double precision = static_cast<double>(overlap) / static_cast<double>(p.size());
    const double recall = static_cast<double>(overlap) / static_cast<double>(g.size());
    return 2.0 * precision * recall / (precision + recall);
}

double rouge_l(const std::string& pred, const std::string& gold) {
    const auto p = lower_tokens(pred);
    const auto g = lower_tokens(gold);
    if (p.empty() && g.empty()) return 1.0;
    if (p.empty() || g.empty()) return 0.0;

    // Quadratic LCS with a rolling row.
    std::vector<std::size_t> prev(g.size() + 1, 0), cur(g.size() + 1, 0);
    for (std::size_t i = 1; i <= p.size(); ++i) {
        for (std::size_t j = 1; j <= g.size(); ++j) {
            cur[j] = (p[i - 1] == g[j - 1]) ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    const auto lcs = static_cast<double>(prev[g.size()]);
    if (lcs == 0.0) return 0.0;
    const double precision = lcs / static_cast<double>(p.size());
    const double recall = lcs / static_cast<double>(g.size());
    return 2.0 * precision * recall / (precision + recall);
}

std::string metric_name(const std::string& base, std::size_t k) {
    return base + "@" + std::to_string(k);
}

std::map<std::string, double> retrieval_metrics(const RankedList& ranked, const std::string& gold,
                                                const std::vector<std::size_t>& cutoffs) {
    std::map<std::string, double> values;
    for (std::size_t k : cutoffs) {
        values[metric_name("recall", k)] = recall_at_k(ranked, gold, k);
        values[metric_name("mrr", k)] = mrr_at_k(ranked, gold, k);
        values[metric_name("ndcg", k)] = ndcg_at_k(ranked, gold, k);
    }
    values["map"] = average_precision(ranked, gold);
    return values;
}

void MetricReport::recompute_aggregates() {
    aggregates.clear();
    for (const auto& [name, values] : per_query) {
        double sum = 0.0;
        for (const auto& [qid, v] : values) sum += v;
        aggregates[name] = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
    }
}

} // namespace ragbench

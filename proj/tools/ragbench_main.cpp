// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ragbench/config.hpp"
#include "ragbench/experiment.hpp"
#include "ragbench/failures.hpp"
#include "ragbench/generation.hpp"
#include "ragbench/lexical.hpp"

namespace {

using namespace ragbench;
using nlohmann::json;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::map<std::string, std::vector<ScoredDoc>> load_rankings_csv(const std::string& path) {
    std::map<std::string, std::vector<ScoredDoc>> out;
    std::istringstream in(read_file(path));
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first && line.rfind("query_id,", 0) == 0) {
            first = false;
            continue;
        }
        first = false;
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        for (int c = 0; c < 3; ++c) {
            const auto comma = line.find(',', start);
            if (comma == std::string::npos) throw DataError("malformed rankings row: " + line);
            cols.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        cols.push_back(line.substr(start));
        out[cols[0]].push_back({cols[2], std::stod(cols[3])});
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"retrieval strategy engine and benchmark harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 42;
    bool offline_flag = false;
    app.add_option("--config", config_path, "configuration file (JSON)");
    auto* seed_opt = app.add_option("--seed", seed, "random seed (default 42)");
    app.add_flag("--offline", offline_flag, "mock providers only; refuses any network use");

    // Shared per-subcommand options.
    std::string documents_path, queries_path, output_path, output_dir, cache_path;
    std::string method_name, metric = "recall@5", axis, rankings_path;
    std::string report_path, per_query_path, generations_path;
    std::vector<std::string> input_files, input_names;
    std::vector<double> axis_values;
    std::size_t sample_n = 100, resamples = 10000;
    bool oracle_mode = false;

    auto* ingest = app.add_subcommand("ingest", "validate corpus/query files and print stats");
    ingest->add_option("--documents", documents_path)->required();
    ingest->add_option("--queries", queries_path);

    auto* contextualize =
        app.add_subcommand("contextualize", "prepend generated summaries to every document");
    contextualize->add_option("--documents", documents_path)->required();
    contextualize->add_option("--output", output_path)->required();

    auto* embed = app.add_subcommand("embed", "embed all documents into the cache file");
    embed->add_option("--documents", documents_path)->required();
    embed->add_option("--cache", cache_path)->required();

    auto* index = app.add_subcommand("index", "build and persist the lexical index");
    index->add_option("--documents", documents_path)->required();
    index->add_option("--output", output_path)->required();

    auto* run = app.add_subcommand("run", "run one retrieval experiment");
    run->add_option("--method", method_name);
    run->add_option("--documents", documents_path);
    run->add_option("--queries", queries_path);
    run->add_option("--cache", cache_path);
    run->add_option("--output-dir", output_dir);

    auto* generate = app.add_subcommand("generate", "end-to-end answer generation");
    generate->add_option("--method", method_name);
    generate->add_option("--documents", documents_path);
    generate->add_option("--queries", queries_path);
    generate->add_option("--cache", cache_path);
    generate->add_option("--output", output_path)->required();
    generate->add_flag("--oracle", oracle_mode, "use the gold document as the sole context");

    auto* eval = app.add_subcommand("eval", "regenerate a report or aggregate generations");
    eval->add_option("--report", report_path);
    eval->add_option("--per-query", per_query_path);
    eval->add_option("--queries", queries_path);
    eval->add_option("--generations", generations_path);
    eval->add_option("--output", output_path);

    auto* compare = app.add_subcommand("compare", "pairwise significance over per-query CSVs");
    compare->add_option("--metric", metric, "metric name (default recall@5)");
    compare->add_option("--inputs", input_files)->required()->expected(-2);
    compare->add_option("--names", input_names)->required()->expected(-2);
    compare->add_option("--resamples", resamples, "bootstrap resamples (default 10000)");
    compare->add_option("--output", output_path);

    auto* sweep_cmd = app.add_subcommand("sweep", "ablation sweep over one parameter axis");
    sweep_cmd->add_option("--axis", axis)->required();
    sweep_cmd->add_option("--values", axis_values)->required()->expected(-1);
    sweep_cmd->add_option("--method", method_name);
    sweep_cmd->add_option("--documents", documents_path);
    sweep_cmd->add_option("--queries", queries_path);
    sweep_cmd->add_option("--cache", cache_path);
    sweep_cmd->add_option("--output-dir", output_dir);

    auto* failures_cmd =
        app.add_subcommand("failures", "sample and categorize retrieval failures");
    failures_cmd->add_option("--rankings", rankings_path)->required();
    failures_cmd->add_option("--documents", documents_path);
    failures_cmd->add_option("--queries", queries_path);
    failures_cmd->add_option("--n", sample_n, "sample size (default 100)");
    failures_cmd->add_option("--output", output_path);

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = load_config_file(config_path);
        if (seed_opt->count() > 0) cfg.seed = seed;
        if (offline_flag) cfg.providers.offline = true;
        if (!documents_path.empty()) cfg.documents_path = documents_path;
        if (!queries_path.empty()) cfg.queries_path = queries_path;
        if (!cache_path.empty()) cfg.cache_path = cache_path;
        if (!method_name.empty()) cfg.method = parse_method(method_name);
        if (!output_dir.empty()) cfg.output_dir = output_dir;

        auto load_data = [&](bool need_queries) {
            if (cfg.documents_path.empty()) {
                throw ConfigError("--documents (or paths.documents) required");
            }
            Corpus corpus = load_corpus_file(cfg.documents_path);
            QuerySet queries;
            if (need_queries) {
                if (cfg.queries_path.empty()) {
                    throw ConfigError("--queries (or paths.queries) required");
                }
                queries = load_queries_file(cfg.queries_path, corpus);
            }
            return std::make_pair(std::move(corpus), std::move(queries));
        };

        if (*ingest) {
            auto [corpus, queries] = load_data(!cfg.queries_path.empty());
            const auto stats = corpus_stats(corpus);
            std::cout << "documents: " << stats.count << "\n";
            std::cout << "mean token count: " << stats.mean_token_count << "\n";
            for (const auto& [subset, count] : stats.per_subset) {
                std::cout << "  " << subset << ": " << count << "\n";
            }
            if (!cfg.queries_path.empty()) {
                std::cout << "queries: " << queries.size() << " (all gold ids resolved)\n";
            }
        } else if (*contextualize) {
            auto [corpus, queries] = load_data(false);
            auto providers = build_providers(cfg, corpus, queries);
            const auto prompts = cfg.prompts_dir.empty()
                                     ? PromptLibrary::defaults()
                                     : PromptLibrary::load_dir(cfg.prompts_dir);
            const Corpus augmented =
                contextualize_corpus(corpus, *providers.completion, prompts, cfg.strategy);
            save_corpus_file(augmented, output_path);
            std::cout << "contextualized " << augmented.size() << " documents -> " << output_path
                      << "\n";
        } else if (*embed) {
            auto [corpus, queries] = load_data(false);
            auto providers = build_providers(cfg, corpus, queries);
            EmbeddingCache cache = EmbeddingCache::open(cfg.cache_path);
            std::vector<std::string> texts;
            for (const auto& doc : corpus.documents()) texts.push_back(doc.text);
            cached_embed(*providers.embedder, cache, texts);
            cache.save(cfg.cache_path);
            std::cout << "cache entries: " << cache.size() << " -> " << cfg.cache_path << "\n";
        } else if (*index) {
            auto [corpus, queries] = load_data(false);
            const auto lex = LexicalIndex::build(corpus);
            lex.save(output_path);
            std::cout << "indexed " << lex.doc_count() << " documents -> " << output_path << "\n";
        } else if (*run) {
            auto [corpus, queries] = load_data(true);
            RunReport report = run_experiment(cfg, corpus, queries);
            report.config_echo = config_to_json(cfg);
            report.write_files(cfg.output_dir);
            std::cout << report.summary_table();
        } else if (*generate) {
            auto [corpus, queries] = load_data(true);
            auto ctx = ExperimentContext::prepare(cfg, corpus, queries);
            const auto records = answer_questions(
                queries, [&](const Query& q) { return ctx.retrieve(q); },
                *ctx.providers().completion, ctx.active_corpus(), ctx.prompts(),
                oracle_mode || cfg.method == Method::Oracle, cfg.generation.top_k,
                cfg.generation.temperature, cfg.generation.max_tokens, cfg.number_match);
            write_file(output_path, generation_records_jsonl(records));
            std::printf("records: %zu  NM: %.3f\n", records.size(), mean_nm(records));
        } else if (*eval) {
            if (!generations_path.empty()) {
                double nm = 0, f1 = 0, rl = 0;
                std::size_t n = 0;
                std::istringstream in(read_file(generations_path));
                std::string line;
                while (std::getline(in, line)) {
                    if (line.empty()) continue;
                    const json rec = json::parse(line);
                    nm += rec.at("nm").get<double>();
                    f1 += rec.at("token_f1").get<double>();
                    rl += rec.at("rouge_l").get<double>();
                    ++n;
                }
                if (n == 0) throw DataError("no generation records in " + generations_path);
                std::printf("records: %zu  NM: %.3f  token_f1: %.3f  rouge_l: %.3f\n", n, nm / n,
                            f1 / n, rl / n);
            } else {
                if (report_path.empty() || per_query_path.empty() || cfg.queries_path.empty()) {
                    throw ConfigError(
                        "eval needs --generations, or --report + --per-query + --queries");
                }
                auto [corpus, queries] = load_data(true);
                const json original = json::parse(read_file(report_path));
                RunReport report = regenerate_report(original, read_file(per_query_path), queries);
                const std::string out = report.to_json_string();
                if (!output_path.empty()) write_file(output_path, out);
                std::cout << report.summary_table();
            }
        } else if (*compare) {
            if (input_files.size() != input_names.size()) {
                throw ConfigError("--inputs and --names must have the same arity");
            }
            std::vector<MethodScores> methods;
            for (std::size_t i = 0; i < input_files.size(); ++i) {
                const auto per_query = parse_per_query_csv(read_file(input_files[i]));
                MethodScores scores;
                scores.name = input_names[i];
                for (const auto& [qid, row] : per_query) {
                    auto it = row.find(metric);
                    if (it == row.end()) {
                        throw DataError("metric '" + metric + "' missing for query '" + qid +
                                        "' in " + input_files[i]);
                    }
                    scores.per_query[qid] = it->second;
                }
                methods.push_back(std::move(scores));
            }
            const auto table = compare_methods(methods, metric, resamples, cfg.seed);
            if (!output_path.empty()) write_file(output_path, table.to_csv());
            for (const auto& row : table.rows) {
                std::printf("%s vs %s: delta=%.4f p_adj=%.4f %s\n", row.method_a.c_str(),
                            row.method_b.c_str(), row.delta_mean, row.p_adjusted,
                            row.significant ? "significant" : "n.s.");
            }
        } else if (*sweep_cmd) {
            auto [corpus, queries] = load_data(true);
            const auto result = sweep(cfg, axis, axis_values, corpus, queries);
            std::filesystem::create_directories(cfg.output_dir);
            write_file(
                (std::filesystem::path(cfg.output_dir) / ("sweep_" + axis + ".csv")).string(),
                result.to_csv());
            for (std::size_t i = 0; i < result.reports.size(); ++i) {
                std::printf("%s=%g:\n%s", axis.c_str(), result.values[i],
                            result.reports[i].summary_table().c_str());
            }
        } else if (*failures_cmd) {
            auto [corpus, queries] = load_data(true);
            const auto rankings = load_rankings_csv(rankings_path);
            auto cases = sample_failures(rankings, queries, sample_n, cfg.seed);
            auto providers = build_providers(cfg, corpus, queries);
            for (auto& c : cases) {
                c.category = categorize_failure(*providers.completion, c, corpus, queries, &c.note);
            }
            if (!output_path.empty()) write_file(output_path, failures_csv(cases));
            std::cout << "failures sampled: " << cases.size() << "\n";
            for (const auto& [category, count] : failure_histogram(cases)) {
                std::cout << "  " << category << ": " << count << "\n";
            }
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

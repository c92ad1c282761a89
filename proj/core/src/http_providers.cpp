// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "ragbench/http_providers.hpp"

#include <cstdlib>

#include <json.hpp>

#include "ragbench/experiment.hpp"

namespace ragbench {

using nlohmann::json;

namespace {

struct Endpoint {
    std::string base;   // scheme://host[:port]
    std::string prefix; // path prefix, possibly empty
};

Endpoint split_endpoint(const std::string& url, const std::string& env_name) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError(env_name + " must be a full URL (got '" + url + "')");
    }
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, ""};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string require_env(const char* name) {
    const char* value = std::getenv(name);
    if (!value || !*value) {
        throw ConfigError(std::string("online mode requires the ") + name +
                          " environment variable");
    }
    return value;
}

/// Shared POST-with-retry plumbing for the three JSON endpoints.
class JsonEndpointClient {
public:
    JsonEndpointClient(const char* endpoint_env, const char* key_env, std::string path,
                       const RequestPolicy& policy, Clock& clock)
        : policy_(policy), limiter_(policy.rate_limit_per_minute, clock), clock_(clock) {
        const auto endpoint = split_endpoint(require_env(endpoint_env), endpoint_env);
        base_ = endpoint.base;
        path_ = endpoint.prefix + path;
        api_key_ = require_env(key_env);
    }

    json post(const json& body) {
        limiter_.acquire();
        const std::string payload = body.dump();
        auto result = with_retry(policy_, clock_, [&] {
            httplib::Client client(base_);
            client.set_read_timeout(120, 0);
            httplib::Headers headers = {{"Authorization", "Bearer " + api_key_}};
            auto res = client.Post(path_, headers, payload, "application/json");
            if (!res) {
                throw ProviderError("no response from " + base_ + path_);
            }
            if (res->status < 200 || res->status >= 300) {
                throw ProviderError("HTTP " + std::to_string(res->status) + " from " + base_ +
                                    path_ + ": " + res->body.substr(0, 200));
            }
            json parsed = json::parse(res->body, nullptr, false);
            if (parsed.is_discarded()) {
                throw ProviderError("non-JSON response from " + base_ + path_);
            }
            return parsed;
        });
        return result.value;
    }

private:
    RequestPolicy policy_;
    RateLimiter limiter_;
    Clock& clock_;
    std::string base_;
    std::string path_;
    std::string api_key_;
};

class HttpEmbedder final : public EmbeddingProvider {
public:
    HttpEmbedder(const ProviderConfig& cfg, const RequestPolicy& policy, Clock& clock,
                 CallLedger* ledger)
        : client_("RAGBENCH_EMBED_ENDPOINT", "RAGBENCH_EMBED_KEY", cfg.embed_path, policy, clock),
          model_id_(cfg.embedding_model),
          dimension_(cfg.embedding_dimension),
          ledger_(ledger) {}

    const std::string& model_id() const override { return model_id_; }
    std::size_t dimension() const override { return dimension_; }

    std::vector<std::vector<float>> embed(const std::vector<std::string>& texts) override {
        std::uint64_t chars = 0;
        for (const auto& t : texts) chars += t.size();
        if (ledger_) ledger_->record("embedding", model_id_, texts.size(), chars);

        json body = {{"model", model_id_}, {"input", texts}};
        const json response = client_.post(body);
        if (!response.contains("data") || !response["data"].is_array() ||
            response["data"].size() != texts.size()) {
            throw ProviderError("embedding response shape mismatch");
        }
        std::vector<std::vector<float>> out(texts.size());
        for (const auto& item : response["data"]) {
            const auto index = item.at("index").get<std::size_t>();
            if (index >= out.size()) throw ProviderError("embedding response index out of range");
            out[index] = item.at("embedding").get<std::vector<float>>();
            if (out[index].size() != dimension_) {
                throw ProviderError("embedding dimension mismatch: got " +
                                    std::to_string(out[index].size()) + ", expected " +
                                    std::to_string(dimension_));
            }
        }
        return out;
    }

private:
    JsonEndpointClient client_;
    std::string model_id_;
    std::size_t dimension_;
    CallLedger* ledger_;
};

class HttpCompletion final : public CompletionProvider {
public:
    HttpCompletion(const ProviderConfig& cfg, const RequestPolicy& policy, Clock& clock,
                   CallLedger* ledger)
        : client_("RAGBENCH_LLM_ENDPOINT", "RAGBENCH_LLM_KEY", cfg.completion_path, policy, clock),
          model_id_(cfg.completion_model),
          ledger_(ledger) {}

    const std::string& model_id() const override { return model_id_; }

    std::string complete(const std::string& prompt, double temperature, int max_tokens) override {
        if (ledger_) ledger_->record("completion", model_id_, 1, prompt.size());
        json body = {{"model", model_id_},
                     {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
                     {"temperature", temperature},
                     {"max_tokens", max_tokens}};
        const json response = client_.post(body);
        try {
            return response.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const json::exception&) {
            throw ProviderError("completion response missing choices[0].message.content");
        }
    }

private:
    JsonEndpointClient client_;
    std::string model_id_;
    CallLedger* ledger_;
};

class HttpReranker final : public RerankProvider {
public:
    HttpReranker(const ProviderConfig& cfg, const RequestPolicy& policy, Clock& clock,
                 CallLedger* ledger)
        : client_("RAGBENCH_RERANK_ENDPOINT", "RAGBENCH_RERANK_KEY", cfg.rerank_path, policy,
                  clock),
          model_id_(cfg.rerank_model),
          ledger_(ledger) {}

    const std::string& model_id() const override { return model_id_; }

    std::vector<RerankEntry> rerank(const std::string& query,
                                    const std::vector<std::string>& documents,
                                    std::size_t top_n) override {
        std::uint64_t chars = query.size();
        for (const auto& d : documents) chars += d.size();
        if (ledger_) ledger_->record("rerank", model_id_, documents.size(), chars);

        json body = {{"model", model_id_},
                     {"query", query},
                     {"documents", documents},
                     {"top_n", top_n}};
        const json response = client_.post(body);
        if (!response.contains("results") || !response["results"].is_array()) {
            throw ProviderError("rerank response missing results array");
        }
        std::vector<RerankEntry> out;
        for (const auto& item : response["results"]) {
            RerankEntry entry;
            entry.index = item.at("index").get<std::size_t>();
            entry.score = item.at("relevance_score").get<double>();
            out.push_back(entry);
        }
        return out;
    }

private:
    JsonEndpointClient client_;
    std::string model_id_;
    CallLedger* ledger_;
};

} // namespace

std::unique_ptr<EmbeddingProvider> make_http_embedder(const ProviderConfig& cfg,
                                                      const RequestPolicy& policy, Clock& clock,
                                                      CallLedger* ledger) {
    return std::make_unique<HttpEmbedder>(cfg, policy, clock, ledger);
}

std::unique_ptr<CompletionProvider> make_http_completion(const ProviderConfig& cfg,
                                                         const RequestPolicy& policy, Clock& clock,
                                                         CallLedger* ledger) {
    return std::make_unique<HttpCompletion>(cfg, policy, clock, ledger);
}

std::unique_ptr<RerankProvider> make_http_reranker(const ProviderConfig& cfg,
                                                   const RequestPolicy& policy, Clock& clock,
                                                   CallLedger* ledger) {
    return std::make_unique<HttpReranker>(cfg, policy, clock, ledger);
}

} // namespace ragbench

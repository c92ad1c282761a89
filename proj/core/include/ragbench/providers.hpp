// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "ragbench/errors.hpp"

namespace ragbench {

// --- Clock ------------------------------------------------------------------

/// Injectable time source so retry backoff and rate limiting are testable
/// with a simulated clock.
class Clock {
public:
    virtual ~Clock() = default;
    virtual std::chrono::steady_clock::time_point now() = 0;
    virtual void sleep_for(std::chrono::milliseconds d) = 0;
};

class SystemClock final : public Clock {
public:
    std::chrono::steady_clock::time_point now() override;
    void sleep_for(std::chrono::milliseconds d) override;
};

/// Manual clock: sleep_for advances time instead of blocking.
class SimulatedClock final : public Clock {
public:
    std::chrono::steady_clock::time_point now() override { return now_; }
    void sleep_for(std::chrono::milliseconds d) override { now_ += d; }
    void advance(std::chrono::milliseconds d) { now_ += d; }

private:
    std::chrono::steady_clock::time_point now_{};
};

// --- Retry and rate limiting --------------------------------------------------

struct RequestPolicy {
    int max_attempts = 3;
    std::chrono::milliseconds backoff_base{100};
    double backoff_multiplier = 2.0;
    /// Calls per minute; 0 disables rate limiting.
    std::uint32_t rate_limit_per_minute = 0;

    void validate() const;
};

template <typename T>
struct RetryResult {
    T value;
    int attempts = 1;
};

/// Runs `action` up to policy.max_attempts times with exponential backoff,
/// returning the first success. Terminal failure throws ProviderError
/// carrying the attempt count and the last underlying message.
template <typename Action>
auto with_retry(const RequestPolicy& policy, Clock& clock, Action&& action)
    -> RetryResult<decltype(action())> {
    policy.validate();
    std::string last_error;
    auto delay = policy.backoff_base;
    for (int attempt = 1; attempt <= policy.max_attempts; ++attempt) {
        try {
            return {action(), attempt};
        } catch (const std::exception& e) {
            last_error = e.what();
            if (attempt < policy.max_attempts) {
                clock.sleep_for(delay);
                delay = std::chrono::milliseconds(static_cast<std::int64_t>(
                    static_cast<double>(delay.count()) * policy.backoff_multiplier));
            }
        }
    }
    throw ProviderError("request failed after " + std::to_string(policy.max_attempts) +
                            " attempts: " + last_error,
                        policy.max_attempts);
}

/// Sliding-window limiter: at most `per_minute` acquisitions in any 60 s
/// window, blocking (via the clock) until the window frees up.
class RateLimiter {
public:
    RateLimiter(std::uint32_t per_minute, Clock& clock) : per_minute_(per_minute), clock_(clock) {}

    void acquire();

private:
    std::uint32_t per_minute_;
    Clock& clock_;
    std::deque<std::chrono::steady_clock::time_point> recent_;
    std::mutex mutex_;
};

// --- Call accounting -----------------------------------------------------------

struct CallSummary {
    std::uint64_t calls = 0;
    std::uint64_t units = 0; // texts embedded, documents reranked, completions
    std::uint64_t payload_chars = 0;
};

/// Thread-safe append-only ledger of provider calls; summaries are emitted in
/// sorted provider order so reports stay deterministic.
class CallLedger {
public:
    void record(const std::string& provider_kind, const std::string& model_id, std::uint64_t units,
                std::uint64_t payload_chars);

    std::map<std::string, CallSummary> summary() const;
    std::uint64_t total_calls() const;
    std::uint64_t calls_for(const std::string& provider_kind) const;
    void reset();

private:
    mutable std::mutex mutex_;
    std::map<std::string, CallSummary> totals_;
};

// --- Provider contracts ----------------------------------------------------------

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual const std::string& model_id() const = 0;
    virtual std::size_t dimension() const = 0;
    /// One batch call; the result order matches the input order.
    virtual std::vector<std::vector<float>> embed(const std::vector<std::string>& texts) = 0;
};

class CompletionProvider {
public:
    virtual ~CompletionProvider() = default;
    virtual const std::string& model_id() const = 0;
    virtual std::string complete(const std::string& prompt, double temperature,
                                 int max_tokens) = 0;
};

struct RerankEntry {
    std::size_t index = 0; // position in the input document list
    double score = 0.0;
};

class RerankProvider {
public:
    virtual ~RerankProvider() = default;
    virtual const std::string& model_id() const = 0;
    /// Returns min(top_n, documents.size()) entries with non-increasing scores.
    virtual std::vector<RerankEntry> rerank(const std::string& query,
                                            const std::vector<std::string>& documents,
                                            std::size_t top_n) = 0;
};

// --- Embedding cache --------------------------------------------------------------
//
// File format (little-endian):
//   magic "RAGEMB1" (7 bytes), version byte 0x01, then records of
//   32-byte key | u32 dimension | dimension f32 components.
// The key is SHA-256 over model_id bytes followed by text bytes.

using CacheKey = std::array<std::uint8_t, 32>;

CacheKey embedding_cache_key(const std::string& model_id, const std::string& text);

class EmbeddingCache {
public:
    EmbeddingCache() = default;
    EmbeddingCache(EmbeddingCache&& other) noexcept;
    EmbeddingCache& operator=(EmbeddingCache&& other) noexcept;

    /// Loads an existing cache file; a missing file yields an empty cache.
    static EmbeddingCache open(const std::string& path);

    /// Rewrites the whole cache atomically (temp file + rename).
    void save(const std::string& path) const;

    std::optional<std::vector<float>> lookup(const CacheKey& key) const;
    void insert(const CacheKey& key, std::vector<float> vector);
    std::size_t size() const;

private:
    struct KeyHash {
        std::size_t operator()(const CacheKey& k) const;
    };
    mutable std::shared_mutex mutex_;
    std::unordered_map<CacheKey, std::vector<float>, KeyHash> entries_;
};

/// Embeds `texts`, consulting the cache first and calling the provider only
/// for misses (one batch call). Results are written back and returned in
/// input order. Dimension mismatches in the provider response are errors.
std::vector<std::vector<float>> cached_embed(EmbeddingProvider& provider, EmbeddingCache& cache,
                                             const std::vector<std::string>& texts);

} // namespace ragbench

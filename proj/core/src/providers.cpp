// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#include "ragbench/providers.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <thread>

#include <openssl/evp.h>

namespace ragbench {

std::chrono::steady_clock::time_point SystemClock::now() {
    return std::chrono::steady_clock::now();
}

void SystemClock::sleep_for(std::chrono::milliseconds d) {
    std::this_thread::sleep_for(d);
}

void RequestPolicy::validate() const {
    if (max_attempts < 1) throw ConfigError("request policy: max_attempts must be >= 1");
    if (backoff_base.count() < 0) throw ConfigError("request policy: negative backoff");
    if (backoff_multiplier < 1.0) throw ConfigError("request policy: multiplier must be >= 1");
}

void RateLimiter::acquire() {
    if (per_minute_ == 0) return;
    std::lock_guard<std::mutex> lock(mutex_);
    const auto window = std::chrono::seconds(60);
    for (;;) {
        const auto now = clock_.now();
        while (!recent_.empty() && now - recent_.front() >= window) recent_.pop_front();
        if (recent_.size() < per_minute_) {
            recent_.push_back(now);
            return;
        }
        const auto wait = std::chrono::duration_cast<std::chrono::milliseconds>(
            recent_.front() + window - now);
        clock_.sleep_for(std::max(wait, std::chrono::milliseconds(1)));
    }
}

void CallLedger::record(const std::string& provider_kind, const std::string& model_id,
                        std::uint64_t units, std::uint64_t payload_chars) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto& entry = totals_[provider_kind + ":" + model_id];
    entry.calls += 1;
    entry.units += units;
    entry.payload_chars += payload_chars;
}

std::map<std::string, CallSummary> CallLedger::summary() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return totals_;
}

std::uint64_t CallLedger::total_calls() const {
    std::lock_guard<std::mutex> lock(mutex_);
    std::uint64_t total = 0;
    for (const auto& [key, entry] : totals_) total += entry.calls;
    return total;
}

std::uint64_t CallLedger::calls_for(const std::string& provider_kind) const {
    std::lock_guard<std::mutex> lock(mutex_);
    std::uint64_t total = 0;
    for (const auto& [key, entry] : totals_) {
        if (key.rfind(provider_kind + ":", 0) == 0) total += entry.calls;
    }
    return total;
}

void CallLedger::reset() {
    std::lock_guard<std::mutex> lock(mutex_);
    totals_.clear();
}

CacheKey embedding_cache_key(const std::string& model_id, const std::string& text) {
    CacheKey key{};
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw Error("failed to allocate digest context");
    unsigned int len = 0;
    if (EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, model_id.data(), model_id.size()) != 1 ||
        EVP_DigestUpdate(ctx, text.data(), text.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, key.data(), &len) != 1 || len != key.size()) {
        EVP_MD_CTX_free(ctx);
        throw Error("sha256 digest failure");
    }
    EVP_MD_CTX_free(ctx);
    return key;
}

std::size_t EmbeddingCache::KeyHash::operator()(const CacheKey& k) const {
    std::size_t h = 0;
    std::memcpy(&h, k.data(), sizeof(h)); // the key is already a digest
    return h;
}

EmbeddingCache::EmbeddingCache(EmbeddingCache&& other) noexcept {
    std::unique_lock lock(other.mutex_);
    entries_ = std::move(other.entries_);
}

EmbeddingCache& EmbeddingCache::operator=(EmbeddingCache&& other) noexcept {
    if (this != &other) {
        std::scoped_lock lock(mutex_, other.mutex_);
        entries_ = std::move(other.entries_);
    }
    return *this;
}

namespace {

constexpr char kCacheMagic[7] = {'R', 'A', 'G', 'E', 'M', 'B', '1'};
constexpr std::uint8_t kCacheVersion = 0x01;

} // namespace

EmbeddingCache EmbeddingCache::open(const std::string& path) {
    EmbeddingCache cache;
    std::ifstream in(path, std::ios::binary);
    if (!in) return cache;

    char magic[7];
    std::uint8_t version = 0;
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0) {
        throw DataError("'" + path + "' is not an embedding cache file");
    }
    if (!in.read(reinterpret_cast<char*>(&version), 1) || version != kCacheVersion) {
        throw DataError("unsupported embedding cache version in '" + path + "'");
    }
    for (;;) {
        CacheKey key{};
        if (!in.read(reinterpret_cast<char*>(key.data()), key.size())) break;
        std::uint32_t dim = 0;
        unsigned char dim_bytes[4];
        if (!in.read(reinterpret_cast<char*>(dim_bytes), 4)) {
            throw DataError("truncated embedding cache record in '" + path + "'");
        }
        dim = static_cast<std::uint32_t>(dim_bytes[0]) |
              (static_cast<std::uint32_t>(dim_bytes[1]) << 8) |
              (static_cast<std::uint32_t>(dim_bytes[2]) << 16) |
              (static_cast<std::uint32_t>(dim_bytes[3]) << 24);
        std::vector<float> vec(dim);
        if (dim > 0 &&
            !in.read(reinterpret_cast<char*>(vec.data()),
                     static_cast<std::streamsize>(sizeof(float) * dim))) {
            throw DataError("truncated embedding cache record in '" + path + "'");
        }
        cache.entries_[key] = std::move(vec);
    }
    return cache;
}

void EmbeddingCache::save(const std::string& path) const {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open '" + tmp + "' for writing");
        out.write(kCacheMagic, sizeof(kCacheMagic));
        out.write(reinterpret_cast<const char*>(&kCacheVersion), 1);
        std::shared_lock lock(mutex_);
        for (const auto& [key, vec] : entries_) {
            out.write(reinterpret_cast<const char*>(key.data()),
                      static_cast<std::streamsize>(key.size()));
            const auto dim = static_cast<std::uint32_t>(vec.size());
            const unsigned char dim_bytes[4] = {
                static_cast<unsigned char>(dim & 0xff),
                static_cast<unsigned char>((dim >> 8) & 0xff),
                static_cast<unsigned char>((dim >> 16) & 0xff),
                static_cast<unsigned char>((dim >> 24) & 0xff)};
            out.write(reinterpret_cast<const char*>(dim_bytes), 4);
            out.write(reinterpret_cast<const char*>(vec.data()),
                      static_cast<std::streamsize>(sizeof(float) * vec.size()));
        }
        if (!out) throw DataError("failed writing embedding cache '" + tmp + "'");
    }
    std::filesystem::rename(tmp, path);
}

std::optional<std::vector<float>> EmbeddingCache::lookup(const CacheKey& key) const {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void EmbeddingCache::insert(const CacheKey& key, std::vector<float> vector) {
    std::unique_lock lock(mutex_);
    entries_[key] = std::move(vector);
}

std::size_t EmbeddingCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

std::vector<std::vector<float>> cached_embed(EmbeddingProvider& provider, EmbeddingCache& cache,
                                             const std::vector<std::string>& texts) {
    std::vector<std::vector<float>> out(texts.size());
    std::vector<std::size_t> miss_positions;
    std::vector<std::string> miss_texts;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (texts[i].empty()) throw DataError("cached_embed: empty text at position " +
                                              std::to_string(i));
        const auto key = embedding_cache_key(provider.model_id(), texts[i]);
        if (auto hit = cache.lookup(key)) {
            out[i] = std::move(*hit);
        } else {
            miss_positions.push_back(i);
            miss_texts.push_back(texts[i]);
        }
    }
    if (!miss_texts.empty()) {
        auto fresh = provider.embed(miss_texts);
        if (fresh.size() != miss_texts.size()) {
            throw ProviderError("embedding provider returned " + std::to_string(fresh.size()) +
                                " vectors for " + std::to_string(miss_texts.size()) + " texts");
        }
        for (std::size_t j = 0; j < fresh.size(); ++j) {
            if (fresh[j].size() != provider.dimension()) {
                throw ProviderError("embedding dimension mismatch: got " +
                                    std::to_string(fresh[j].size()) + ", expected " +
                                    std::to_string(provider.dimension()));
            }
            const auto key =
                embedding_cache_key(provider.model_id(), miss_texts[j]);
            cache.insert(key, fresh[j]);
            out[miss_positions[j]] = std::move(fresh[j]);
        }
    }
    return out;
}

} // namespace ragbench

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <stdexcept>
#include <string>

namespace ragbench {

/// Base class for all ragbench errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed, duplicate, or unresolvable input records.
class DataError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration values or unknown methods/axes.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// External provider failures (after retries), contract violations, or
/// unmatched scripted rules.
class ProviderError : public Error {
public:
    explicit ProviderError(const std::string& what, int attempts = 0)
        : Error(what), attempts_(attempts) {}

    /// Number of attempts made before giving up (0 when not retry-related).
    int attempts() const noexcept { return attempts_; }

private:
    int attempts_ = 0;
};

} // namespace ragbench

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <string>

#include <json.hpp>

#include "ragbench/experiment.hpp"

namespace ragbench {

/// Serializes the full configuration; this is also the config echo embedded
/// in every report.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Applies the keys present in `doc` over `base` (defaults for everything
/// else). Unknown top-level keys are a ConfigError, so typos fail loudly.
ExperimentConfig config_from_json(const nlohmann::json& doc,
                                  const ExperimentConfig& base = {});

ExperimentConfig load_config_file(const std::string& path, const ExperimentConfig& base = {});

} // namespace ragbench

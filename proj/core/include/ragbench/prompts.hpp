// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 ragbench contributors

#pragma once

#include <map>
#include <string>

namespace ragbench {

/// Templates for every LLM-dependent stage, with brace-delimited
/// placeholders ({query}, {question}, {context}, {document}, {chunk}, {n}).
/// Defaults are embedded; any template can be overridden from a file.
struct PromptLibrary {
    std::string generation;
    std::string hyde;
    std::string hyde_fallback;
    std::string multi_query;
    std::string crag_eval;
    std::string crag_rewrite;
    std::string contextual_chunk;
    std::string contextual_whole;

    static PromptLibrary defaults();

    /// Defaults, with any of <name>.txt present in `dir` replacing the
    /// embedded template (one trailing newline is chomped).
    static PromptLibrary load_dir(const std::string& dir);
};

/// Substitutes {name} occurrences for the provided values in one pass;
/// braces not naming a provided value are left untouched.
std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& values);

/// Throws ConfigError when `tmpl` does not reference {placeholder}.
void require_placeholder(const std::string& tmpl, const std::string& placeholder,
                         const std::string& template_name);

} // namespace ragbench

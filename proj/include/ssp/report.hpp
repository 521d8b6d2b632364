/*
 * Copyright 2026 The sspsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ssp/scenario.hpp"

namespace ssp::report {

enum class Format : std::uint8_t { Text, Json, Csv };

std::optional<Format> parse_format(std::string_view text);

// JSON keys, in order: outcome, abort_reason, link_keys_match,
// transcript_length. CSV has the same columns under a header row.
std::string render(const scenario::ScenarioResult& result, Format format);

// CSV header: io_pair,oob,attacker,success_rate.
std::string render(const scenario::FeasibilityMatrix& matrix, Format format);

// Writes `content` to `destination`, or to stdout when it is empty or "-".
// Throws Error(IoFailure) when the file cannot be written.
void write_output(const std::string& content, const std::string& destination);

void emit_report(const scenario::ScenarioResult& result, Format format,
                 const std::string& destination);
void emit_report(const scenario::FeasibilityMatrix& matrix, Format format,
                 const std::string& destination);

}  // namespace ssp::report

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

#include "ssp/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ssp/error.hpp"

namespace ssp::report {

namespace {

std::string io_pair(const scenario::MatrixCell& c) {
  return fmt::format("{}-{}", pairing::to_string(c.io_a), pairing::to_string(c.io_b));
}

std::string rate(const scenario::MatrixCell& c) { return fmt::format("{:.4f}", c.success_rate()); }

}  // namespace

std::optional<Format> parse_format(std::string_view text) {
  if (text == "text") return Format::Text;
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  return std::nullopt;
}

std::string render(const scenario::ScenarioResult& r, Format format) {
  const auto outcome = scenario::to_string(r.outcome);
  const auto reason = pairing::to_string(r.abort_reason);
  switch (format) {
    case Format::Json: {
      nlohmann::ordered_json j;
      j["outcome"] = outcome;
      j["abort_reason"] = reason;
      j["link_keys_match"] = r.link_keys_match;
      j["transcript_length"] = r.transcript.size();
      return j.dump(2) + "\n";
    }
    case Format::Csv:
      return fmt::format("outcome,abort_reason,link_keys_match,transcript_length\n{},{},{},{}\n",
                         outcome, reason, r.link_keys_match, r.transcript.size());
    case Format::Text: {
      auto model = [](const std::optional<pairing::AssociationModel>& m) {
        return m ? std::string(pairing::to_string(*m)) : std::string("-");
      };
      std::string out = r.serialize_transcript();
      out += fmt::format("outcome: {}\nabort_reason: {}\nmodel: A={} B={}\nlink_keys_match: {}\n",
                         outcome, reason, model(r.model_a), model(r.model_b), r.link_keys_match);
      out += fmt::format("transcript_length: {}\n", r.transcript.size());
      return out;
    }
  }
  return {};
}

std::string render(const scenario::FeasibilityMatrix& m, Format format) {
  switch (format) {
    case Format::Json: {
      auto cells = nlohmann::ordered_json::array();
      for (const auto& c : m.cells) {
        nlohmann::ordered_json j;
        j["io_pair"] = io_pair(c);
        j["oob"] = c.oob;
        j["attacker"] = scenario::to_string(c.attacker);
        j["success_rate"] = c.success_rate();
        j["runs"] = c.runs;
        cells.push_back(std::move(j));
      }
      return cells.dump(2) + "\n";
    }
    case Format::Csv: {
      std::string out = "io_pair,oob,attacker,success_rate\n";
      for (const auto& c : m.cells) {
        out += fmt::format("{},{},{},{}\n", io_pair(c), c.oob ? "yes" : "no",
                           scenario::to_string(c.attacker), rate(c));
      }
      return out;
    }
    case Format::Text: {
      std::string out = fmt::format("{:<34} {:<4} {:<10} {}\n", "io_pair", "oob", "attacker",
                                    "success_rate");
      for (const auto& c : m.cells) {
        out += fmt::format("{:<34} {:<4} {:<10} {}\n", io_pair(c), c.oob ? "yes" : "no",
                           scenario::to_string(c.attacker), rate(c));
      }
      return out;
    }
  }
  return {};
}

void write_output(const std::string& content, const std::string& destination) {
  if (destination.empty() || destination == "-") {
    std::cout << content << std::flush;
    if (!std::cout) throw Error(ErrorCode::IoFailure, "cannot write to stdout");
    return;
  }
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + destination);
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + destination);
}

void emit_report(const scenario::ScenarioResult& result, Format format,
                 const std::string& destination) {
  write_output(render(result, format), destination);
}

void emit_report(const scenario::FeasibilityMatrix& matrix, Format format,
                 const std::string& destination) {
  write_output(render(matrix, format), destination);
}

}  // namespace ssp::report

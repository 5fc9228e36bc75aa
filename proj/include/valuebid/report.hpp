// Copyright 2026 The valuebid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VALUEBID_REPORT_HPP_
#define VALUEBID_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valuebid/audit.hpp"
#include "valuebid/market.hpp"
#include "valuebid/mechanisms.hpp"
#include "valuebid/rat.hpp"
#include "valuebid/scenario.hpp"

namespace valuebid {

// Output encodings shared by every command. All three are deterministic:
// identical inputs render to identical bytes. Money always appears as the
// exact rational next to a 6-decimal rendering.
enum class ReportFormat { kCsv, kJson, kText };

std::string ToString(ReportFormat format);
ReportFormat ReportFormatFromString(std::string_view text);  // ParseError

// Everything one mechanism run produced, paired with the oracle optimum
// of the same market. `ratio` is revenue over optimum, with the worthless
// market (optimum zero) scored 1.
struct RunReport {
  std::string mechanism;
  std::string scenario_digest;
  std::uint64_t seed = 0;
  Outcome outcome;
  Rat revenue;
  Rat oracle_optimum;
  Rat ratio;
  std::vector<std::string> trace;
};

RunReport BuildRunReport(MechanismId id, const Scenario& scenario,
                         std::uint64_t seed, const MechanismResult& result);

// `space` names the bundles in the outcome. CSV uses two columns
// (field, value); JSON mirrors the text layout with exact strings plus
// *_decimal companions.
std::string RenderRunReport(const RunReport& report, const ItemSpace& space,
                            ReportFormat format);

// An audit verdict ready for emission. `witness_path` names the scenario
// file the witness was serialized to, when one was written.
struct AuditReport {
  std::string mechanism;
  std::string scenario_digest;
  AuditMode mode = AuditMode::kDeterministic;
  AuditVerdict verdict;
  std::optional<std::string> witness_path;
};

std::string RenderAuditReport(const AuditReport& report, ReportFormat format);

// RFC-4180 cell quoting: wraps the text in quotes when it contains a
// comma, quote or newline, doubling embedded quotes.
std::string CsvCell(const std::string& text);

// The money rendering every report uses: the exact rational followed by
// its 6-decimal approximation, "100/3 (33.333333)".
std::string MoneyText(const Rat& value);

}  // namespace valuebid

#endif  // VALUEBID_REPORT_HPP_

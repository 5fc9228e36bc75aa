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

#include "valuebid/report.hpp"

#include <sstream>

#include "json.hpp"
#include "valuebid/errors.hpp"
#include "valuebid/oracles.hpp"

namespace valuebid {

std::string MoneyText(const Rat& value) {
  return value.ToString() + " (" + value.ToDecimalString() + ")";
}

namespace {

std::string ShowUtility(const Utility& utility) {
  if (utility.IsNegInf()) return "-inf";
  return MoneyText(utility.value());
}

std::string JoinedLabels(const std::vector<PartitionLabel>& labels) {
  std::string out;
  for (const PartitionLabel label : labels) {
    if (!out.empty()) out += ",";
    out += ToString(label);
  }
  return out;
}

void CsvRow(std::ostringstream& out, const std::string& field,
            const std::string& value) {
  out << CsvCell(field) << "," << CsvCell(value) << "\n";
}

std::string RunText(const RunReport& report, const ItemSpace& space) {
  std::ostringstream out;
  out << "mechanism: " << report.mechanism << "\n";
  out << "scenario: " << report.scenario_digest << "\n";
  out << "seed: " << report.seed << "\n";
  out << "outcome:\n";
  for (int i = 0; i < report.outcome.allocation().size(); ++i) {
    out << "  bidder " << i << ": "
        << space.Describe(report.outcome.allocation()[i]) << ", pays "
        << MoneyText(report.outcome.payments()[i]) << "\n";
  }
  out << "revenue: " << MoneyText(report.revenue) << "\n";
  out << "optimum: " << MoneyText(report.oracle_optimum) << "\n";
  out << "ratio: " << MoneyText(report.ratio) << "\n";
  out << "trace:\n";
  for (const std::string& line : report.trace) {
    out << "  " << line << "\n";
  }
  return out.str();
}

std::string RunCsv(const RunReport& report, const ItemSpace& space) {
  std::ostringstream out;
  out << "field,value\n";
  CsvRow(out, "mechanism", report.mechanism);
  CsvRow(out, "scenario_digest", report.scenario_digest);
  CsvRow(out, "seed", std::to_string(report.seed));
  for (int i = 0; i < report.outcome.allocation().size(); ++i) {
    const std::string bidder = "bidder_" + std::to_string(i);
    CsvRow(out, bidder + "_bundle",
           space.Describe(report.outcome.allocation()[i]));
    CsvRow(out, bidder + "_payment", MoneyText(report.outcome.payments()[i]));
  }
  CsvRow(out, "revenue", MoneyText(report.revenue));
  CsvRow(out, "optimum", MoneyText(report.oracle_optimum));
  CsvRow(out, "ratio", MoneyText(report.ratio));
  for (std::size_t i = 0; i < report.trace.size(); ++i) {
    CsvRow(out, "trace_" + std::to_string(i + 1), report.trace[i]);
  }
  return out.str();
}

std::string RunJson(const RunReport& report, const ItemSpace& space) {
  nlohmann::ordered_json body;
  body["mechanism"] = report.mechanism;
  body["scenario_digest"] = report.scenario_digest;
  body["seed"] = report.seed;
  auto rows = nlohmann::ordered_json::array();
  for (int i = 0; i < report.outcome.allocation().size(); ++i) {
    const Rat& payment = report.outcome.payments()[i];
    rows.push_back({{"bidder", i},
                    {"bundle", space.Describe(report.outcome.allocation()[i])},
                    {"payment", payment.ToString()},
                    {"payment_decimal", payment.ToDecimalString()}});
  }
  body["outcome"] = std::move(rows);
  body["revenue"] = report.revenue.ToString();
  body["revenue_decimal"] = report.revenue.ToDecimalString();
  body["optimum"] = report.oracle_optimum.ToString();
  body["optimum_decimal"] = report.oracle_optimum.ToDecimalString();
  body["ratio"] = report.ratio.ToString();
  body["ratio_decimal"] = report.ratio.ToDecimalString();
  body["trace"] = report.trace;
  return body.dump(2) + "\n";
}

std::string AuditText(const AuditReport& report) {
  std::ostringstream out;
  out << "mechanism: " << report.mechanism << "\n";
  out << "scenario: " << report.scenario_digest << "\n";
  out << "mode: " << AuditModeName(report.mode) << "\n";
  out << "status: " << AuditStatusName(report.verdict.status) << "\n";
  out << "cases checked: " << report.verdict.cases_checked << "\n";
  out << "cases skipped: " << report.verdict.cases_skipped << "\n";
  if (report.verdict.witness) {
    const AuditWitness& witness = *report.verdict.witness;
    const ItemSpace& space = witness.base.items();
    out << "witness bidder: " << witness.bidder << "\n";
    if (witness.seed) out << "witness seed: " << *witness.seed << "\n";
    if (witness.labels) {
      out << "witness labels: " << JoinedLabels(*witness.labels) << "\n";
    }
    out << "truthful utility: " << ShowUtility(witness.truthful_utility)
        << "\n";
    out << "deviating utility: " << ShowUtility(witness.deviating_utility)
        << "\n";
    out << "misreport:\n";
    for (const Atom& atom : witness.misreport.atoms()) {
      out << "  " << space.Describe(atom.bundle) << ": " << MoneyText(atom.value)
          << "\n";
    }
  }
  if (report.witness_path) {
    out << "witness file: " << *report.witness_path << "\n";
  }
  return out.str();
}

std::string AuditCsv(const AuditReport& report) {
  std::ostringstream out;
  out << "field,value\n";
  CsvRow(out, "mechanism", report.mechanism);
  CsvRow(out, "scenario_digest", report.scenario_digest);
  CsvRow(out, "mode", AuditModeName(report.mode));
  CsvRow(out, "status", AuditStatusName(report.verdict.status));
  CsvRow(out, "cases_checked", std::to_string(report.verdict.cases_checked));
  CsvRow(out, "cases_skipped", std::to_string(report.verdict.cases_skipped));
  if (report.verdict.witness) {
    const AuditWitness& witness = *report.verdict.witness;
    const ItemSpace& space = witness.base.items();
    CsvRow(out, "witness_bidder", std::to_string(witness.bidder));
    if (witness.seed) {
      CsvRow(out, "witness_seed", std::to_string(*witness.seed));
    }
    if (witness.labels) {
      CsvRow(out, "witness_labels", JoinedLabels(*witness.labels));
    }
    CsvRow(out, "truthful_utility", ShowUtility(witness.truthful_utility));
    CsvRow(out, "deviating_utility", ShowUtility(witness.deviating_utility));
    for (const Atom& atom : witness.misreport.atoms()) {
      CsvRow(out, "misreport_atom",
             space.Describe(atom.bundle) + ": " + MoneyText(atom.value));
    }
  }
  if (report.witness_path) {
    CsvRow(out, "witness_file", *report.witness_path);
  }
  return out.str();
}

std::string AuditJson(const AuditReport& report) {
  nlohmann::ordered_json body;
  body["mechanism"] = report.mechanism;
  body["scenario_digest"] = report.scenario_digest;
  body["mode"] = AuditModeName(report.mode);
  body["status"] = AuditStatusName(report.verdict.status);
  body["cases_checked"] = report.verdict.cases_checked;
  body["cases_skipped"] = report.verdict.cases_skipped;
  if (report.verdict.witness) {
    const AuditWitness& witness = *report.verdict.witness;
    const ItemSpace& space = witness.base.items();
    nlohmann::ordered_json entry;
    entry["bidder"] = witness.bidder;
    if (witness.seed) entry["seed"] = *witness.seed;
    if (witness.labels) {
      auto labels = nlohmann::ordered_json::array();
      for (const PartitionLabel label : *witness.labels) {
        labels.push_back(ToString(label));
      }
      entry["partition_labels"] = std::move(labels);
    }
    entry["truthful_utility"] = witness.truthful_utility.ToString();
    entry["truthful_utility_decimal"] =
        witness.truthful_utility.IsNegInf()
            ? "-inf"
            : witness.truthful_utility.value().ToDecimalString();
    entry["deviating_utility"] = witness.deviating_utility.ToString();
    entry["deviating_utility_decimal"] =
        witness.deviating_utility.IsNegInf()
            ? "-inf"
            : witness.deviating_utility.value().ToDecimalString();
    auto atoms = nlohmann::ordered_json::array();
    for (const Atom& atom : witness.misreport.atoms()) {
      atoms.push_back({{"bundle", space.Describe(atom.bundle)},
                       {"value", atom.value.ToString()},
                       {"value_decimal", atom.value.ToDecimalString()}});
    }
    entry["misreport"] = std::move(atoms);
    if (report.witness_path) entry["file"] = *report.witness_path;
    body["witness"] = std::move(entry);
  }
  return body.dump(2) + "\n";
}

}  // namespace

std::string ToString(ReportFormat format) {
  switch (format) {
    case ReportFormat::kCsv:
      return "csv";
    case ReportFormat::kJson:
      return "json";
    case ReportFormat::kText:
      return "text";
  }
  throw ContractError("unhandled report format");
}

ReportFormat ReportFormatFromString(std::string_view text) {
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "json") return ReportFormat::kJson;
  if (text == "text") return ReportFormat::kText;
  throw ParseError("unknown report format '" + std::string(text) +
                   "', expected csv, json or text");
}

RunReport BuildRunReport(MechanismId id, const Scenario& scenario,
                         std::uint64_t seed, const MechanismResult& result) {
  const Rat revenue = Revenue(result.outcome);
  const Rat optimum = OptimalRevenue(scenario.market).value;
  const Rat ratio = optimum.IsZero() ? Rat(1) : revenue / optimum;
  return RunReport{ToString(id),    ScenarioDigest(scenario), seed,
                   result.outcome,  revenue,                  optimum,
                   ratio,           result.trace};
}

std::string RenderRunReport(const RunReport& report, const ItemSpace& space,
                            ReportFormat format) {
  switch (format) {
    case ReportFormat::kCsv:
      return RunCsv(report, space);
    case ReportFormat::kJson:
      return RunJson(report, space);
    case ReportFormat::kText:
      return RunText(report, space);
  }
  throw ContractError("unhandled report format");
}

std::string RenderAuditReport(const AuditReport& report,
                              ReportFormat format) {
  switch (format) {
    case ReportFormat::kCsv:
      return AuditCsv(report);
    case ReportFormat::kJson:
      return AuditJson(report);
    case ReportFormat::kText:
      return AuditText(report);
  }
  throw ContractError("unhandled report format");
}

std::string CsvCell(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (const char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace valuebid

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

#include <string>

#include "doctest.h"
#include "json.hpp"
#include "valuebid/errors.hpp"
#include "valuebid/fixtures.hpp"
#include "valuebid/tape.hpp"

using namespace valuebid;

namespace {

Scenario GoldenScenario() {
  return Scenario{GoldenShowcaseMarket(), std::nullopt, std::nullopt,
                  std::nullopt};
}

RunReport GoldenReport() {
  const Scenario scenario = GoldenScenario();
  RandomTape tape(0);
  const MechanismResult result =
      RunMechanism(MechanismId::kGolden, scenario.market, tape, Rat(1, 10));
  return BuildRunReport(MechanismId::kGolden, scenario, 0, result);
}

}  // namespace

TEST_CASE("report formats round-trip through their names") {
  for (ReportFormat format :
       {ReportFormat::kCsv, ReportFormat::kJson, ReportFormat::kText}) {
    CHECK(ReportFormatFromString(ToString(format)) == format);
  }
  CHECK_THROWS_AS(ReportFormatFromString("xml"), ParseError);
}

TEST_CASE("a run report carries consistent oracle figures") {
  const RunReport report = GoldenReport();
  CHECK(report.mechanism == "golden");
  CHECK(report.seed == 0);
  CHECK(report.revenue == Rat(100));
  CHECK(report.oracle_optimum == Rat(119));
  CHECK(report.ratio == Rat(100, 119));
  // Recomputing the ratio from the embedded outcome and oracle value
  // reproduces the stored one.
  Rat total;
  for (const Rat& p : report.outcome.payments()) total += p;
  CHECK(total == report.revenue);
  CHECK(report.revenue / report.oracle_optimum == report.ratio);
  CHECK(report.scenario_digest == ScenarioDigest(GoldenScenario()));
  CHECK(report.scenario_digest.size() == 16);
}

TEST_CASE("a worthless market scores ratio one by convention") {
  const ItemSpace space = ItemSpace::MultiUnit(2);
  const Scenario scenario{
      Market(space, {Valuation(space, {}), Valuation(space, {})}),
      std::nullopt, std::nullopt, std::nullopt};
  RandomTape tape(0);
  const MechanismResult result =
      RunMechanism(MechanismId::kPo, scenario.market, tape, Rat(1, 10));
  const RunReport report =
      BuildRunReport(MechanismId::kPo, scenario, 0, result);
  CHECK(report.revenue == Rat(0));
  CHECK(report.oracle_optimum == Rat(0));
  CHECK(report.ratio == Rat(1));
}

TEST_CASE("the text rendering is byte-stable") {
  const RunReport report = GoldenReport();
  const std::string expected = "mechanism: golden\n"
                               "scenario: " + report.scenario_digest + "\n"
                               "seed: 0\n"
                               "outcome:\n"
                               "  bidder 0: 2 units, pays 100 (100.000000)\n"
                               "  bidder 1: 0 units, pays 0 (0.000000)\n"
                               "revenue: 100 (100.000000)\n"
                               "optimum: 119 (119.000000)\n"
                               "ratio: 100/119 (0.840336)\n"
                               "trace:\n"
                               "  case 1: weak single-unit bid 55 against "
                               "golden fraction of 100\n"
                               "  allocate both units to bidder 0, price "
                               "100\n";
  const ItemSpace& space = GoldenShowcaseMarket().items();
  CHECK(RenderRunReport(report, space, ReportFormat::kText) == expected);
  CHECK(RenderRunReport(report, space, ReportFormat::kText) ==
        RenderRunReport(report, space, ReportFormat::kText));
}

TEST_CASE("the csv rendering has two columns and quotes commas") {
  const RunReport report = GoldenReport();
  const ItemSpace& space = GoldenShowcaseMarket().items();
  const std::string csv = RenderRunReport(report, space, ReportFormat::kCsv);
  CHECK(csv.rfind("field,value\n", 0) == 0);
  CHECK(csv.find("bidder_0_bundle,2 units\n") != std::string::npos);
  CHECK(csv.find("ratio,100/119 (0.840336)\n") != std::string::npos);
  // The trace line contains a comma, so the cell must arrive quoted.
  CHECK(csv.find("trace_2,\"allocate both units to bidder 0, price 100\"\n") !=
        std::string::npos);
}

TEST_CASE("the json rendering parses and mirrors the exact figures") {
  const RunReport report = GoldenReport();
  const ItemSpace& space = GoldenShowcaseMarket().items();
  const std::string text = RenderRunReport(report, space, ReportFormat::kJson);
  const nlohmann::json body = nlohmann::json::parse(text);
  CHECK(body["mechanism"] == "golden");
  CHECK(body["seed"] == 0);
  CHECK(body["outcome"].size() == 2);
  CHECK(body["outcome"][0]["bundle"] == "2 units");
  CHECK(body["outcome"][0]["payment"] == "100");
  CHECK(body["outcome"][1]["payment_decimal"] == "0.000000");
  CHECK(body["revenue"] == "100");
  CHECK(body["ratio"] == "100/119");
  CHECK(body["ratio_decimal"] == "0.840336");
  CHECK(body["trace"].size() == 2);
}

TEST_CASE("audit reports render the witness in every format") {
  const Market market = ShadingShowcaseMarket();
  const Scenario scenario{market, std::nullopt, std::nullopt, std::nullopt};
  AuditReport report{"revmax", ScenarioDigest(scenario),
                     AuditMode::kDeterministic,
                     AuditDeterministic(MechanismId::kRevMax, market),
                     std::string("witness.json")};
  REQUIRE(report.verdict.found());

  const std::string text = RenderAuditReport(report, ReportFormat::kText);
  CHECK(text.find("status: violation") != std::string::npos);
  CHECK(text.find("witness bidder: 0") != std::string::npos);
  CHECK(text.find("truthful utility: 10 (10.000000)") != std::string::npos);
  CHECK(text.find("deviating utility: 11 (11.000000)") != std::string::npos);
  CHECK(text.find("2 units: 11 (11.000000)") != std::string::npos);
  CHECK(text.find("witness file: witness.json") != std::string::npos);

  const std::string csv = RenderAuditReport(report, ReportFormat::kCsv);
  CHECK(csv.find("status,violation\n") != std::string::npos);
  CHECK(csv.find("witness_bidder,0\n") != std::string::npos);
  CHECK(csv.find("misreport_atom,2 units: 11 (11.000000)\n") !=
        std::string::npos);

  const nlohmann::json body =
      nlohmann::json::parse(RenderAuditReport(report, ReportFormat::kJson));
  CHECK(body["status"] == "violation");
  CHECK(body["witness"]["bidder"] == 0);
  CHECK(body["witness"]["deviating_utility"] == "11");
  CHECK(body["witness"]["misreport"].size() == 1);
  CHECK(body["witness"]["misreport"][0]["bundle"] == "2 units");
  CHECK(body["witness"]["file"] == "witness.json");
}

TEST_CASE("a clean audit renders without witness rows") {
  const Market market = ShadingShowcaseMarket();
  const Scenario scenario{market, std::nullopt, std::nullopt, std::nullopt};
  const AuditReport report{"po", ScenarioDigest(scenario),
                           AuditMode::kDeterministic,
                           AuditDeterministic(MechanismId::kPo, market),
                           std::nullopt};
  const std::string text = RenderAuditReport(report, ReportFormat::kText);
  CHECK(text.find("status: no_violation_found") != std::string::npos);
  CHECK(text.find("witness bidder") == std::string::npos);
  const nlohmann::json body =
      nlohmann::json::parse(RenderAuditReport(report, ReportFormat::kJson));
  CHECK_FALSE(body.contains("witness"));
}

TEST_CASE("a universal witness carries its seed") {
  const Market market = FiveClauseShowcaseMarket();
  const Scenario scenario{market, std::nullopt, std::nullopt, std::nullopt};
  const AuditReport report{
      "demo3x4", ScenarioDigest(scenario), AuditMode::kUniversal,
      AuditUniversal(MechanismId::kDemo3x4, market, Rat(1, 10),
                     {RandomTape(42)}),
      std::nullopt};
  REQUIRE(report.verdict.found());
  const std::string text = RenderAuditReport(report, ReportFormat::kText);
  CHECK(text.find("mode: universal") != std::string::npos);
  CHECK(text.find("witness seed: 42") != std::string::npos);
}

TEST_CASE("csv cells quote exactly when needed") {
  CHECK(CsvCell("plain") == "plain");
  CHECK(CsvCell("with, comma") == "\"with, comma\"");
  CHECK(CsvCell("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(CsvCell("two\nlines") == "\"two\nlines\"");
  CHECK(CsvCell("") == "");
}

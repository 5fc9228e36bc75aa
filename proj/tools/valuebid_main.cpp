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

// Command-line front end. Subcommands:
//
//   run       one mechanism on a scenario file, full report
//   audit     search for a profitable misreport, write a replayable witness
//   sweep     worst-case revenue ratio over a built-in instance family
//   fixtures  the library's self-checking showcase suite
//   oracle    optimal and fractional revenue of a scenario
//
// Exit codes: 0 success (audit: no violation found), 1 audit violation or
// failed fixture, 2 malformed input, 3 violated precondition or contract.
// Command-line usage errors keep CLI11's own codes, which start at 100.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "valuebid/audit.hpp"
#include "valuebid/errors.hpp"
#include "valuebid/fixtures.hpp"
#include "valuebid/market.hpp"
#include "valuebid/mechanisms.hpp"
#include "valuebid/oracles.hpp"
#include "valuebid/rat.hpp"
#include "valuebid/report.hpp"
#include "valuebid/scenario.hpp"
#include "valuebid/sweep.hpp"
#include "valuebid/tape.hpp"

using namespace valuebid;

namespace {

struct OutputSpec {
  std::string path;  // empty: standard output only
  ReportFormat format = ReportFormat::kText;
};

// Reports go to standard output always and to `path` additionally, so a
// redirected run and a --out run produce the same bytes.
void Emit(const std::string& text, const std::string& path) {
  std::cout << text;
  if (path.empty()) return;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open output file '" + path + "'");
  file << text;
}

void WriteFile(const std::string& path, const std::string& bytes) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open witness file '" + path + "'");
  file << bytes;
}

Rat ParseRatArg(const std::string& text, const std::string& flag) {
  try {
    return Rat::FromString(text);
  } catch (const ParseError& error) {
    throw ParseError(flag, error.what());
  }
}

std::vector<Rat> ParseRatList(const std::string& text,
                              const std::string& flag) {
  std::vector<Rat> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    values.push_back(ParseRatArg(text.substr(start, comma - start), flag));
    if (comma == std::string::npos) return values;
    start = comma + 1;
  }
}

std::uint64_t ResolveSeed(const std::optional<std::uint64_t>& flag,
                          const Scenario& scenario) {
  if (flag) return *flag;
  return scenario.seed.value_or(0);
}

Rat ResolveEpsilon(const std::string& flag, const Scenario& scenario) {
  if (!flag.empty()) return ParseRatArg(flag, "--epsilon");
  if (scenario.epsilon) return *scenario.epsilon;
  return Rat(1, 10);
}

AuditMode AuditModeFromName(const std::string& name) {
  if (name == "det") return AuditMode::kDeterministic;
  if (name == "universal") return AuditMode::kUniversal;
  return AuditMode::kExpectation;
}

// "dir/thm3.json" -> "dir/thm3.witness.json".
std::string DefaultWitnessPath(const std::string& scenario_path) {
  std::filesystem::path path(scenario_path);
  path.replace_extension();
  path += ".witness.json";
  return path.string();
}

// The tape set a universal audit quantifies over: every labeling when
// --all-partitions is given, the scenario's fixed labeling when it has
// one, otherwise `tape_count` consecutively seeded plain tapes.
std::vector<RandomTape> UniversalTapes(const Scenario& scenario,
                                       std::uint64_t seed, bool all_partitions,
                                       int tape_count) {
  std::vector<RandomTape> tapes;
  if (all_partitions) {
    static constexpr PartitionLabel kRoles[] = {
        PartitionLabel::kGrand, PartitionLabel::kFixed, PartitionLabel::kStat};
    const int n = scenario.market.bidders();
    if (n > 10) {
      throw CapacityError(
          "--all-partitions enumerates 3^n labelings and stops at 10 bidders");
    }
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (long long code = 0; code < total; ++code) {
      std::vector<PartitionLabel> labels(n);
      long long rest = code;
      for (int i = 0; i < n; ++i) {
        labels[i] = kRoles[rest % 3];
        rest /= 3;
      }
      tapes.emplace_back(seed, std::move(labels));
    }
    return tapes;
  }
  if (scenario.partition_labels) {
    tapes.emplace_back(seed, *scenario.partition_labels);
    return tapes;
  }
  for (int t = 0; t < tape_count; ++t) {
    tapes.emplace_back(seed + static_cast<std::uint64_t>(t));
  }
  return tapes;
}

int CmdRun(const std::string& scenario_path, const std::string& mechanism,
           const std::optional<std::uint64_t>& seed_flag,
           const std::string& epsilon_flag, const OutputSpec& output) {
  const Scenario scenario = LoadScenario(scenario_path);
  const MechanismId id = MechanismIdFromString(mechanism);
  const std::uint64_t seed = ResolveSeed(seed_flag, scenario);
  const Rat epsilon = ResolveEpsilon(epsilon_flag, scenario);
  RandomTape tape = scenario.partition_labels
                        ? RandomTape(seed, *scenario.partition_labels)
                        : RandomTape(seed);
  const MechanismResult result =
      RunMechanism(id, scenario.market, tape, epsilon);
  const RunReport report = BuildRunReport(id, scenario, seed, result);
  Emit(RenderRunReport(report, scenario.market.items(), output.format),
       output.path);
  return 0;
}

int CmdAudit(const std::string& scenario_path, const std::string& mechanism,
             const std::string& mode_name,
             const std::optional<std::uint64_t>& seed_flag,
             const std::string& epsilon_flag, const std::string& opponent_grid,
             bool all_partitions, int tape_count,
             const std::string& witness_out, const OutputSpec& output) {
  const Scenario scenario = LoadScenario(scenario_path);
  const MechanismId id = MechanismIdFromString(mechanism);
  const AuditMode mode = AuditModeFromName(mode_name);
  const std::uint64_t seed = ResolveSeed(seed_flag, scenario);
  const Rat epsilon = ResolveEpsilon(epsilon_flag, scenario);
  DeviationOptions options;
  if (!opponent_grid.empty()) {
    options.opponent_scales = ParseRatList(opponent_grid, "--opponent-grid");
  }

  AuditVerdict verdict;
  switch (mode) {
    case AuditMode::kDeterministic:
      verdict = AuditDeterministic(id, scenario.market, options);
      break;
    case AuditMode::kUniversal:
      verdict = AuditUniversal(
          id, scenario.market, epsilon,
          UniversalTapes(scenario, seed, all_partitions, tape_count), options);
      break;
    case AuditMode::kExpectation:
      if (id != MechanismId::kRand2x2) {
        throw ContractError("expectation mode audits only rand2x2, not '" +
                            mechanism + "'");
      }
      verdict = AuditExpectation2x2(scenario.market, options);
      break;
  }

  AuditReport report{ToString(id), ScenarioDigest(scenario), mode, verdict,
                     std::nullopt};
  if (verdict.found()) {
    const AuditWitness& witness = *verdict.witness;
    // The witness file holds the deviated market plus whatever the replay
    // needs to be deterministic; `run` on it reproduces the deviating
    // outcome and the original scenario supplies the true valuation.
    const Scenario replay{witness.deviated,
                          id == MechanismId::kFrameworkU
                              ? std::optional<Rat>(epsilon)
                              : std::nullopt,
                          witness.seed, witness.labels};
    const std::string path = witness_out.empty()
                                 ? DefaultWitnessPath(scenario_path)
                                 : witness_out;
    WriteFile(path, SerializeScenario(replay));
    report.witness_path = path;
  }
  Emit(RenderAuditReport(report, output.format), output.path);
  return verdict.found() ? 1 : 0;
}

int CmdSweep(const std::string& mechanism, int k, int n,
             const std::string& epsilon_flag, bool expectation,
             const std::string& exec_name, const OutputSpec& output) {
  const MechanismId id = MechanismIdFromString(mechanism);
  if (expectation && id != MechanismId::kRand2x2) {
    throw ContractError("--expectation applies only to the rand2x2 sweep");
  }
  const Rat epsilon = epsilon_flag.empty()
                          ? Rat(1, 10)
                          : ParseRatArg(epsilon_flag, "--epsilon");
  const ExecMode exec = ExecModeFromString(exec_name);

  std::unique_ptr<InstanceFamily> family;
  switch (id) {
    case MechanismId::kGolden:
      family = std::make_unique<Golden2x2Family>(k);
      break;
    case MechanismId::kRand2x2:
      family = std::make_unique<Rand2x2Family>(k);
      break;
    case MechanismId::kStrongest:
      family = std::make_unique<StrongestFamily>(n, k);
      break;
    default:
      throw ContractError("no instance family is defined for mechanism '" +
                          mechanism + "'");
  }
  if (family->size() == 0) {
    throw ContractError("instance family " + family->name() + " is empty");
  }

  if (output.format == ReportFormat::kCsv) {
    // Rows are streamed as they arrive so the table never has to fit in
    // memory; the sink contract guarantees ascending index order in both
    // execution modes, hence byte-stable output.
    std::ofstream file;
    if (!output.path.empty()) {
      file.open(output.path, std::ios::binary);
      if (!file) throw Error("cannot open output file '" + output.path + "'");
    }
    const auto write = [&file](const std::string& chunk) {
      std::cout << chunk;
      if (file.is_open()) file << chunk;
    };
    write("index,ratio,ratio_decimal\n");
    const SweepRowSink sink = [&write](long long index, const Rat& ratio) {
      write(std::to_string(index) + "," + ratio.ToString() + "," +
            ratio.ToDecimalString() + "\n");
    };
    const SweepResult result = WorstCaseSweep(id, *family, epsilon, exec, sink);
    write("min," + result.min_ratio.ToString() + "," +
          result.min_ratio.ToDecimalString() + "\n");
    return 0;
  }

  const SweepResult result = WorstCaseSweep(id, *family, epsilon, exec);
  if (output.format == ReportFormat::kText) {
    std::ostringstream out;
    out << "mechanism: " << ToString(id) << "\n";
    out << "family: " << family->name() << "\n";
    out << "instances: " << result.instances << "\n";
    out << "min ratio: " << MoneyText(result.min_ratio) << "\n";
    out << "witness index: " << result.witness_index << "\n";
    Emit(out.str(), output.path);
  } else {
    nlohmann::ordered_json body;
    body["mechanism"] = ToString(id);
    body["family"] = family->name();
    body["instances"] = result.instances;
    body["min_ratio"] = result.min_ratio.ToString();
    body["min_ratio_decimal"] = result.min_ratio.ToDecimalString();
    body["witness_index"] = result.witness_index;
    Emit(body.dump(2) + "\n", output.path);
  }
  return 0;
}

int CmdFixtures(const OutputSpec& output) {
  const std::vector<FixtureResult> results = RunFixtureSuite();
  if (output.format == ReportFormat::kText) {
    std::ostringstream out;
    int passed = 0;
    for (const FixtureResult& result : results) {
      out << (result.passed ? "PASS" : "FAIL") << " " << result.id << ": "
          << result.summary << "\n";
      out << "  " << result.detail << "\n";
      if (result.passed) ++passed;
    }
    out << passed << "/" << results.size() << " fixtures passed\n";
    Emit(out.str(), output.path);
  } else if (output.format == ReportFormat::kCsv) {
    std::ostringstream out;
    out << "id,status,summary,detail\n";
    for (const FixtureResult& result : results) {
      out << CsvCell(result.id) << ","
          << (result.passed ? "pass" : "fail") << ","
          << CsvCell(result.summary) << "," << CsvCell(result.detail) << "\n";
    }
    Emit(out.str(), output.path);
  } else {
    nlohmann::ordered_json body;
    body["fixtures"] = nlohmann::ordered_json::array();
    for (const FixtureResult& result : results) {
      nlohmann::ordered_json row;
      row["id"] = result.id;
      row["summary"] = result.summary;
      row["passed"] = result.passed;
      row["detail"] = result.detail;
      body["fixtures"].push_back(std::move(row));
    }
    body["all_passed"] = AllPassed(results);
    Emit(body.dump(2) + "\n", output.path);
  }
  return AllPassed(results) ? 0 : 1;
}

int CmdOracle(const std::string& scenario_path, const OutputSpec& output) {
  const Scenario scenario = LoadScenario(scenario_path);
  const OptimalSolution best = OptimalRevenue(scenario.market);
  const Rat fractional = FractionalOpt(scenario.market);
  const ItemSpace& space = scenario.market.items();
  const std::string digest = ScenarioDigest(scenario);

  if (output.format == ReportFormat::kText) {
    std::ostringstream out;
    out << "scenario: " << digest << "\n";
    out << "optimal_revenue: " << MoneyText(best.value) << "\n";
    out << "optimal_allocation:\n";
    for (int i = 0; i < best.allocation.size(); ++i) {
      out << "  bidder " << i << ": " << space.Describe(best.allocation[i])
          << "\n";
    }
    out << "fractional_opt: " << MoneyText(fractional) << "\n";
    Emit(out.str(), output.path);
  } else if (output.format == ReportFormat::kCsv) {
    std::ostringstream out;
    out << "field,value\n";
    out << "scenario_digest," << CsvCell(digest) << "\n";
    out << "optimal_revenue," << CsvCell(MoneyText(best.value)) << "\n";
    for (int i = 0; i < best.allocation.size(); ++i) {
      out << "bidder_" << i << "_bundle,"
          << CsvCell(space.Describe(best.allocation[i])) << "\n";
    }
    out << "fractional_opt," << CsvCell(MoneyText(fractional)) << "\n";
    Emit(out.str(), output.path);
  } else {
    nlohmann::ordered_json body;
    body["scenario_digest"] = digest;
    body["optimal_revenue"] = best.value.ToString();
    body["optimal_revenue_decimal"] = best.value.ToDecimalString();
    body["optimal_allocation"] = nlohmann::ordered_json::array();
    for (int i = 0; i < best.allocation.size(); ++i) {
      body["optimal_allocation"].push_back(space.Describe(best.allocation[i]));
    }
    body["fractional_opt"] = fractional.ToString();
    body["fractional_opt_decimal"] = fractional.ToDecimalString();
    Emit(body.dump(2) + "\n", output.path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  CLI::App app{"exact auction mechanisms for value-maximizing bidders",
               "valuebid"};
  app.require_subcommand(1);
  const auto format_check = CLI::IsMember({"csv", "json", "text"});

  std::string run_scenario, run_mechanism, run_epsilon, run_out;
  std::string run_format = "text";
  std::optional<std::uint64_t> run_seed;
  CLI::App* run = app.add_subcommand(
      "run", "run one mechanism on a scenario and report the outcome");
  run->add_option("scenario", run_scenario, "scenario file")->required();
  run->add_option("mechanism", run_mechanism,
                  "po, revmax, sp-greedy, golden, rand2x2, strongest, "
                  "framework-u or demo3x4")
      ->required();
  run->add_option("--seed", run_seed,
                  "tape seed; default is the scenario's seed, else 0");
  run->add_option("--epsilon", run_epsilon,
                  "framework-u epsilon as decimal or fraction; default is "
                  "the scenario's epsilon, else 1/10");
  run->add_option("--out", run_out, "also write the report to this file");
  run->add_option("--format", run_format, "report format")->check(format_check);

  std::string audit_scenario, audit_mechanism, audit_mode, audit_epsilon;
  std::string audit_opponents, audit_witness_out, audit_out;
  std::string audit_format = "text";
  std::optional<std::uint64_t> audit_seed;
  bool audit_all_partitions = false;
  int audit_tapes = 16;
  CLI::App* audit = app.add_subcommand(
      "audit", "search for a profitable unilateral misreport");
  audit->add_option("scenario", audit_scenario, "scenario file")->required();
  audit->add_option("mechanism", audit_mechanism, "mechanism id")->required();
  audit->add_option("mode", audit_mode,
                    "det (single run), universal (per fixed tape) or "
                    "expectation (exact rand2x2 expectation)")
      ->required()
      ->check(CLI::IsMember({"det", "universal", "expectation"}));
  audit->add_option("--seed", audit_seed,
                    "base tape seed for universal mode");
  audit->add_option("--epsilon", audit_epsilon,
                    "framework-u epsilon as decimal or fraction");
  audit->add_option("--opponent-grid", audit_opponents,
                    "comma-separated scale factors also applied to opponent "
                    "reports, e.g. 0,1/2,1,2");
  audit->add_flag("--all-partitions", audit_all_partitions,
                  "universal mode: quantify over every partition labeling");
  audit->add_option("--tapes", audit_tapes,
                    "universal mode: tape count when no labels are fixed")
      ->check(CLI::PositiveNumber);
  audit->add_option("--witness-out", audit_witness_out,
                    "witness scenario path; default derives from the "
                    "scenario file name");
  audit->add_option("--out", audit_out, "also write the report to this file");
  audit->add_option("--format", audit_format, "report format")
      ->check(format_check);

  std::string sweep_mechanism, sweep_epsilon, sweep_out;
  std::string sweep_format = "csv";
  std::string sweep_exec = "parallel";
  int sweep_k = 10;
  int sweep_n = 3;
  bool sweep_expectation = false;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "worst-case revenue ratio over a built-in instance family");
  sweep->add_option("mechanism", sweep_mechanism,
                    "golden, rand2x2 or strongest")
      ->required();
  sweep->add_option("--k", sweep_k, "largest integer bid in the family")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--n", sweep_n, "bidder count for the strongest family")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--epsilon", sweep_epsilon,
                    "epsilon forwarded to the mechanism");
  sweep->add_flag("--expectation", sweep_expectation,
                  "score rand2x2 by its exact expected revenue (its sweeps "
                  "always do; the flag documents intent)");
  sweep->add_option("--exec", sweep_exec, "execution mode")
      ->check(CLI::IsMember({"serial", "parallel"}));
  sweep->add_option("--out", sweep_out, "also write the table to this file");
  sweep->add_option("--format", sweep_format,
                    "csv streams every row; json and text summarize")
      ->check(format_check);

  std::string fixtures_out;
  std::string fixtures_format = "text";
  CLI::App* fixtures = app.add_subcommand(
      "fixtures", "run the self-checking showcase suite");
  fixtures->add_option("--out", fixtures_out,
                       "also write the report to this file");
  fixtures->add_option("--format", fixtures_format, "report format")
      ->check(format_check);

  std::string oracle_scenario, oracle_out;
  std::string oracle_format = "text";
  CLI::App* oracle = app.add_subcommand(
      "oracle", "optimal and fractional revenue of a scenario");
  oracle->add_option("scenario", oracle_scenario, "scenario file")->required();
  oracle->add_option("--out", oracle_out,
                     "also write the report to this file");
  oracle->add_option("--format", oracle_format, "report format")
      ->check(format_check);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return CmdRun(run_scenario, run_mechanism, run_seed, run_epsilon,
                    {run_out, ReportFormatFromString(run_format)});
    }
    if (audit->parsed()) {
      return CmdAudit(audit_scenario, audit_mechanism, audit_mode, audit_seed,
                      audit_epsilon, audit_opponents, audit_all_partitions,
                      audit_tapes, audit_witness_out,
                      {audit_out, ReportFormatFromString(audit_format)});
    }
    if (sweep->parsed()) {
      return CmdSweep(sweep_mechanism, sweep_k, sweep_n, sweep_epsilon,
                      sweep_expectation, sweep_exec,
                      {sweep_out, ReportFormatFromString(sweep_format)});
    }
    if (fixtures->parsed()) {
      return CmdFixtures({fixtures_out,
                          ReportFormatFromString(fixtures_format)});
    }
    return CmdOracle(oracle_scenario,
                     {oracle_out, ReportFormatFromString(oracle_format)});
  } catch (const ParseError& error) {
    std::cerr << "parse error: " << error.what() << "\n";
    return 2;
  } catch (const PreconditionError& error) {
    std::cerr << "precondition violated: " << error.what() << "\n";
    return 3;
  } catch (const ContractError& error) {
    std::cerr << "contract violated: " << error.what() << "\n";
    return 3;
  } catch (const CapacityError& error) {
    std::cerr << "capacity exceeded: " << error.what() << "\n";
    return 3;
  } catch (const Error& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 3;
  }
}

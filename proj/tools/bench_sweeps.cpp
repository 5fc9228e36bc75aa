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

// Times every worst-case sweep family in serial and OpenMP-parallel mode
// and checks that both modes reduce to the same minimum. The serial path
// is the reference implementation; this target shows what the parallel
// path buys on the current machine.

#include <chrono>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "valuebid/sweep.hpp"

namespace {

using valuebid::ExecMode;
using valuebid::InstanceFamily;
using valuebid::MechanismId;
using valuebid::Rat;
using valuebid::SweepResult;
using valuebid::WorstCaseSweep;

double TimedSweep(MechanismId id, const InstanceFamily& family, ExecMode mode,
                  SweepResult* result) {
  const auto start = std::chrono::steady_clock::now();
  SweepResult r = WorstCaseSweep(id, family, Rat(0), mode);
  const auto stop = std::chrono::steady_clock::now();
  *result = std::move(r);
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"valuebid sweep benchmark: serial reference vs OpenMP"};
  int golden_k = 20;
  int split_k = 20;
  int strongest_n = 3;
  int strongest_k = 5;
  int repeats = 1;
  app.add_option("--golden-k", golden_k, "grid maximum for the golden family");
  app.add_option("--split-k", split_k,
                 "grid maximum for the randomized split family");
  app.add_option("--strongest-n", strongest_n,
                 "bidders (= units) for the strongest family");
  app.add_option("--strongest-k", strongest_k,
                 "grid maximum for the strongest family");
  app.add_option("--repeats", repeats, "timed repetitions per row");
  CLI11_PARSE(app, argc, argv);

  struct Row {
    MechanismId id;
    std::unique_ptr<InstanceFamily> family;
  };
  std::vector<Row> rows;
  rows.push_back({MechanismId::kGolden,
                  std::make_unique<valuebid::Golden2x2Family>(golden_k)});
  rows.push_back({MechanismId::kRand2x2,
                  std::make_unique<valuebid::Rand2x2Family>(split_k)});
  rows.push_back({MechanismId::kStrongest,
                  std::make_unique<valuebid::StrongestFamily>(strongest_n,
                                                              strongest_k)});

  std::printf("threads available: %d\n\n", omp_get_max_threads());
  std::printf("%-18s %12s %12s %12s %9s %s\n", "family", "instances",
              "serial ms", "parallel ms", "speedup", "min ratio");
  for (const Row& row : rows) {
    double serial_ms = 0;
    double parallel_ms = 0;
    SweepResult serial{Rat(0), 0, 0, row.family->Instance(0)};
    SweepResult parallel = serial;
    for (int r = 0; r < repeats; ++r) {
      serial_ms += TimedSweep(row.id, *row.family, ExecMode::kSerial, &serial);
      parallel_ms +=
          TimedSweep(row.id, *row.family, ExecMode::kParallel, &parallel);
    }
    serial_ms /= repeats;
    parallel_ms /= repeats;
    const bool same = serial.min_ratio == parallel.min_ratio &&
                      serial.witness_index == parallel.witness_index;
    std::printf("%-18s %12lld %12.1f %12.1f %8.2fx %s%s\n",
                row.family->name().c_str(), serial.instances, serial_ms,
                parallel_ms, serial_ms / parallel_ms,
                serial.min_ratio.ToString().c_str(),
                same ? "" : "  [MODES DISAGREE]");
    if (!same) return 1;
  }
  return 0;
}

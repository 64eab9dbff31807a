// Copyright 2026 The CHERIoT Model Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHERIOT_CAMPAIGN_H_
#define CHERIOT_CAMPAIGN_H_

// Campaign plumbing: run configuration, seed derivation, traces, verdict
// files, reports and counterexample minimization.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cheriot/directed.h"
#include "cheriot/driver.h"
#include "cheriot/harness.h"
#include "cheriot/mutation.h"
#include "cheriot/program.h"

namespace cheriot {

struct RunConfig {
  uint64_t seed = 1;
  uint64_t programs = 10;
  uint64_t insns = 64;
  unsigned max_gnt = 10;
  unsigned max_rvalid = 10;
  unsigned wfi_wake = 16;
  unsigned max_fetch = 3;
  Mutation mutation = Mutation::kNone;
  bool mtval_on_ebreak_pc = false;

  std::optional<std::string> Validate() const;
  TimingBounds bounds() const;
  RunOptions options() const;
};

// Seed of the index-th run of a campaign.
uint64_t RunSeed(uint64_t campaign_seed, uint64_t index);

struct RunSpec {
  Program program;
  TimingSchedule schedule;
};
// Program and schedule, both determined by the run seed.
RunSpec MakeRun(const RunConfig &config, uint64_t run_seed);

std::string TraceHeader(const RunConfig &config, uint64_t run_seed);
// Fills config and seed from a header line; false if malformed.
bool ParseTraceHeader(const std::string &line, RunConfig *config,
                      uint64_t *run_seed);
// Header, one record per line, final verdict record.
std::string RenderTrace(const RunConfig &config, uint64_t run_seed,
                        const RunResult &result);
// Empty if every line is a well-formed record of a known kind and the
// trace ends with a final verdict; otherwise the problem.
std::optional<std::string> ValidateTrace(const std::string &text);

// Machine-readable verdict file content.
std::string RenderVerdict(const RunResult &result, const RunConfig &config,
                          uint64_t run_seed, const std::string &case_name,
                          Mutation case_target);

struct Report {
  uint64_t runs = 0;
  uint64_t failed_runs = 0;
  uint64_t max_gap = 0;
  std::array<uint64_t, kNumCheckers> pass{};
  std::array<uint64_t, kNumCheckers> fail{};
  // detected[i][j]: mutation M(i+1) on the directed case targeting M(j+1);
  // -1 when no verdict was seen.
  std::array<std::array<int, 6>, 6> detected{};
  bool any_directed = false;

  std::string ToText() const;
};
// Builds a report from verdict file contents. False on malformed input.
bool BuildReport(const std::vector<std::string> &verdicts, Report *out);

struct Minimized {
  Program program;
  TimingSchedule schedule;
  RunResult result;
  int instructions_removed = 0;
  int runs = 0;
};
// Greedily replaces body instructions with NOPs and shrinks latencies to 1
// while `target` still fires.
Minimized Minimize(const Program &program, const TimingSchedule &schedule,
                   const RunOptions &options, Checker target,
                   int budget = 600);

}  // namespace cheriot

#endif  // CHERIOT_CAMPAIGN_H_

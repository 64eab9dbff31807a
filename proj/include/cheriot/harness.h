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

#ifndef CHERIOT_HARNESS_H_
#define CHERIOT_HARNESS_H_

// Runs the microcore against the driver and checks it, cycle by cycle,
// against the architectural model.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cheriot/driver.h"
#include "cheriot/isa_spec.h"
#include "cheriot/microcore.h"
#include "cheriot/program.h"

namespace cheriot {

enum class Checker : uint8_t {
  kProtocol,       // the core or driver broke the port protocol
  kDti,            // cached corrections and well-formedness, every cycle
  kFollower,       // per-instruction agreement with the spec step
  kContinuity,     // abs after an instruction is stricter than its spec step
  kStateMatching,  // abs at each boundary equals the iterated spec
  kObservational,  // data port activity equals the spec's plan
  kMonotonicity,   // committed capabilities do not exceed their parents
  kLiveness,       // instruction completions at most B_max cycles apart
  kMemWellformed,  // tagged granules written to memory are well-formed
  kFifo,           // fetch FIFO hands out addresses in order
  kLsuAlternative, // load results depend only on the responses
  kStallPurity,    // no architectural change while waiting on memory
};
inline constexpr int kNumCheckers = 12;
const char *CheckerName(Checker c);
bool ParseChecker(const std::string &name, Checker *out);

struct Failure {
  Checker checker;
  uint64_t cycle = 0;
  std::string detail;
};

struct RunOptions {
  MicroConfig micro;
  SpecConfig spec;
  std::vector<ClearRule> clear_rules;
  TimingBounds bounds;
  uint64_t max_spec_en = 1000;
  uint64_t max_cycles = 0;  // 0 derives a limit from max_spec_en
  bool record_trace = false;
  bool stop_at_first_failure = false;
  uint64_t alt_seed = 1;  // alternative responses for the LSU check
};

struct RunResult {
  std::vector<Failure> failures;  // first failure of each checker
  std::array<uint64_t, kNumCheckers> checks{};
  uint64_t cycles = 0;
  uint64_t spec_en = 0;
  uint64_t max_gap = 0;
  uint64_t tagged_stores = 0;
  std::vector<std::string> trace;

  bool passed() const { return failures.empty(); }
  bool Detected(Checker c) const;
  std::string Summary() const;
};

RunResult RunHarness(const Program &program, const TimingSchedule &schedule,
                     const RunOptions &options);

// Worst-case cycles between consecutive instruction completions.
uint64_t LivenessBound(const TimingBounds &b);

// Data port outputs over the cycles a plan's requests are shown, given the
// grant latencies from request `first_request` of the schedule on.
std::vector<PortOutputs> ExpectedPortEvents(const MemEventPlan &plan,
                                            const TimingSchedule &schedule,
                                            size_t first_request);

// Every tagged cached capability in every block (register file, pcc, mtcc,
// mepcc, writeback) has fresh corrections and is well-formed. Returns the
// first offending block.
std::optional<std::string> CheckDti(const MicroState &m);

// child carries no authority beyond parent.
bool IsMonotone(const Capability &child, const Capability &parent);

}  // namespace cheriot

#endif  // CHERIOT_HARNESS_H_

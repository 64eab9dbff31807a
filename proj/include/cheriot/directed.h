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

#ifndef CHERIOT_DIRECTED_H_
#define CHERIOT_DIRECTED_H_

// Directed programs, one per mutation, and the detection matrix.

#include <array>
#include <string>
#include <vector>

#include "cheriot/harness.h"
#include "cheriot/mutation.h"

namespace cheriot {

struct DirectedCase {
  std::string name;
  Mutation target = Mutation::kNone;
  Program program;
  TimingSchedule schedule;
  uint64_t spec_en = 0;  // instructions to run
  Checker expected;      // the checker meant to catch `target`
};

// One case per mutation, in M1..M6 order.
std::vector<DirectedCase> DirectedCases();

RunResult RunDirected(const DirectedCase &c, Mutation m,
                      bool record_trace = false);

struct DetectionMatrix {
  // cell[i][j]: mutation M(i+1) run on case j.
  std::array<std::array<RunResult, 6>, 6> cell;
  std::array<RunResult, 6> unmutated;

  bool FullDiagonal() const;
  std::string ToString() const;
};

DetectionMatrix RunDetectionMatrix(const std::vector<DirectedCase> &cases);

}  // namespace cheriot

#endif  // CHERIOT_DIRECTED_H_

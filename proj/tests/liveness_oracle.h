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

#ifndef CHERIOT_TESTS_LIVENESS_ORACLE_H_
#define CHERIOT_TESTS_LIVENESS_ORACLE_H_

// Worst completion gap found by running every short sequence of
// latency-sensitive instructions under extreme and random latencies.

#include <cstdint>
#include <string>

#include "cheriot/driver.h"

namespace cheriot::testing {

struct GapWitness {
  uint64_t gap = 0;
  std::string sequence;
  std::string schedule;
};

GapWitness SearchWorstGap(const TimingBounds &bounds, int random_schedules);

}  // namespace cheriot::testing

#endif  // CHERIOT_TESTS_LIVENESS_ORACLE_H_

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

#ifndef CHERIOT_DRIVER_H_
#define CHERIOT_DRIVER_H_

// The core's environment: instruction and data memories responding with
// scheduled latencies, and the interrupt line.

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cheriot/memory.h"
#include "cheriot/microcore.h"
#include "cheriot/program.h"

namespace cheriot {

struct TimingBounds {
  unsigned max_gnt = 10;
  unsigned max_rvalid = 10;
  unsigned max_fetch = 3;
  unsigned max_wfi_wake = 16;
};

// Latencies are counted in cycles: a grant latency of g grants a request in
// the g-th cycle it is asserted, and a response latency of r delivers the
// response r cycles after the grant. Entries past the end of a list read
// as 1.
struct TimingSchedule {
  std::vector<uint8_t> gnt;       // per data request
  std::vector<uint8_t> rvalid;    // per data request
  std::vector<uint8_t> fetch;     // per instruction fetch
  std::vector<uint8_t> wfi_wake;  // per sleep
  std::vector<uint64_t> irq_cycles;  // ascending; irq rises at each

  unsigned Gnt(size_t k) const { return k < gnt.size() ? gnt[k] : 1; }
  unsigned Rvalid(size_t k) const { return k < rvalid.size() ? rvalid[k] : 1; }
  unsigned Fetch(size_t k) const { return k < fetch.size() ? fetch[k] : 1; }
  unsigned Wake(size_t k) const {
    return k < wfi_wake.size() ? wfi_wake[k] : 1;
  }

  // Error message for the first out-of-range entry.
  std::optional<std::string> Validate(const TimingBounds &b) const;

  static TimingSchedule Random(std::mt19937_64 &rng, const TimingBounds &b,
                               size_t instructions);
  static TimingSchedule Fixed(unsigned gnt, unsigned rvalid, unsigned fetch,
                              unsigned wake, size_t instructions);
};

class Driver {
 public:
  Driver(const Program &program, const TimingSchedule &schedule);

  // Inputs for this cycle given the core's outputs at its start. Applies
  // granted writes to memory.
  CycleInputs Respond(uint64_t cycle, const PortOutputs &data,
                      const FetchOutputs &fetch, bool sleeping);

  const DataMemory &memory() const { return memory_; }
  size_t requests_started() const { return next_req_; }
  bool irq_level() const { return irq_; }

 private:
  struct Pending {
    uint64_t due;
    MemWord data;
  };
  const Program &program_;
  const TimingSchedule &t_;
  DataMemory memory_;

  bool active_ = false;
  PortOutputs current_;
  size_t req_index_ = 0;
  size_t next_req_ = 0;
  unsigned waited_ = 0;
  std::deque<Pending> responses_;

  bool fetch_pending_ = false;
  uint32_t fetch_addr_ = 0;
  uint64_t fetch_due_ = 0;
  size_t fetch_index_ = 0;

  bool irq_ = false;
  size_t irq_index_ = 0;
  bool wake_armed_ = false;
  uint64_t wake_at_ = 0;
  size_t wake_index_ = 0;
};

}  // namespace cheriot

#endif  // CHERIOT_DRIVER_H_

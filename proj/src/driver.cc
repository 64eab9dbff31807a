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

#include "cheriot/driver.h"

#include <algorithm>
#include <stdexcept>

namespace cheriot {
namespace {

uint8_t Latency(std::mt19937_64 &rng, unsigned max) {
  // Mostly fast, sometimes anything up to the bound.
  if (rng() % 3 == 0) return 1;
  return static_cast<uint8_t>(1 + rng() % max);
}

std::optional<std::string> CheckRange(const std::vector<uint8_t> &v,
                                      unsigned max, const char *name) {
  for (size_t k = 0; k < v.size(); ++k) {
    if (v[k] < 1 || v[k] > max) {
      return std::string(name) + "[" + std::to_string(k) + "] = " +
             std::to_string(v[k]) + " outside [1, " + std::to_string(max) +
             "]";
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> TimingSchedule::Validate(
    const TimingBounds &b) const {
  if (auto e = CheckRange(gnt, b.max_gnt, "gnt")) return e;
  if (auto e = CheckRange(rvalid, b.max_rvalid, "rvalid")) return e;
  if (auto e = CheckRange(fetch, b.max_fetch, "fetch")) return e;
  if (auto e = CheckRange(wfi_wake, b.max_wfi_wake, "wfi_wake")) return e;
  for (size_t k = 1; k < irq_cycles.size(); ++k) {
    if (irq_cycles[k] < irq_cycles[k - 1]) return "irq_cycles not ascending";
  }
  return std::nullopt;
}

TimingSchedule TimingSchedule::Random(std::mt19937_64 &rng,
                                      const TimingBounds &b,
                                      size_t instructions) {
  TimingSchedule t;
  const size_t n_req = 2 * instructions + 16;
  for (size_t k = 0; k < n_req; ++k) {
    t.gnt.push_back(Latency(rng, b.max_gnt));
    t.rvalid.push_back(Latency(rng, b.max_rvalid));
  }
  for (size_t k = 0; k < 4 * instructions + 16; ++k) {
    t.fetch.push_back(Latency(rng, b.max_fetch));
  }
  for (size_t k = 0; k < instructions / 8 + 4; ++k) {
    t.wfi_wake.push_back(Latency(rng, b.max_wfi_wake));
  }
  const uint64_t horizon = 12 * instructions + 64;
  const size_t n_irq = rng() % (instructions / 32 + 2);
  for (size_t k = 0; k < n_irq; ++k) t.irq_cycles.push_back(rng() % horizon);
  std::sort(t.irq_cycles.begin(), t.irq_cycles.end());
  return t;
}

TimingSchedule TimingSchedule::Fixed(unsigned gnt, unsigned rvalid,
                                     unsigned fetch, unsigned wake,
                                     size_t instructions) {
  TimingSchedule t;
  t.gnt.assign(2 * instructions + 16, static_cast<uint8_t>(gnt));
  t.rvalid.assign(2 * instructions + 16, static_cast<uint8_t>(rvalid));
  t.fetch.assign(4 * instructions + 16, static_cast<uint8_t>(fetch));
  t.wfi_wake.assign(instructions + 4, static_cast<uint8_t>(wake));
  return t;
}

Driver::Driver(const Program &program, const TimingSchedule &schedule)
    : program_(program), t_(schedule), memory_(program.memory) {}

CycleInputs Driver::Respond(uint64_t cycle, const PortOutputs &data,
                            const FetchOutputs &fetch, bool sleeping) {
  CycleInputs in;

  // Interrupt line.
  while (irq_index_ < t_.irq_cycles.size() &&
         t_.irq_cycles[irq_index_] <= cycle) {
    irq_ = true;
    ++irq_index_;
  }
  if (!sleeping) wake_armed_ = false;
  if (sleeping && !irq_ && !wake_armed_) {
    wake_armed_ = true;
    // The core stays asleep for exactly the scheduled number of cycles.
    wake_at_ = cycle + t_.Wake(wake_index_++) - 1;
  }
  if (wake_armed_ && cycle >= wake_at_) {
    irq_ = true;
    wake_armed_ = false;
  }
  in.irq = irq_;

  // Data port.
  if (!responses_.empty() && responses_.front().due == cycle) {
    in.rvalid = true;
    in.rdata = responses_.front().data;
    responses_.pop_front();
  }
  if (data.req) {
    if (!active_) {
      active_ = true;
      current_ = data;
      req_index_ = next_req_++;
      waited_ = 0;
    } else if (!(data == current_)) {
      throw std::logic_error("request changed before grant");
    }
    if (++waited_ == t_.Gnt(req_index_)) {
      in.gnt = true;
      active_ = false;
      MemWord resp;
      if (data.we) {
        memory_.Apply({data.addr, data.be, data.wdata, data.wtag, true});
        if ((data.addr & ~3u) == kIrqAckAddr) irq_ = false;
      } else {
        resp = memory_.ReadWord(data.addr);
      }
      responses_.push_back({cycle + t_.Rvalid(req_index_), resp});
    }
  } else if (active_) {
    throw std::logic_error("request withdrawn before grant");
  }

  // Instruction port.
  if (fetch_pending_ && fetch_due_ == cycle) {
    in.fetch_valid = true;
    in.fetch_addr = fetch_addr_;
    in.fetch_bits = program_.Fetch(fetch_addr_);
    fetch_pending_ = false;
  }
  if (fetch.req) {
    if (fetch_pending_) throw std::logic_error("second fetch in flight");
    fetch_pending_ = true;
    fetch_addr_ = fetch.addr;
    fetch_due_ = cycle + t_.Fetch(fetch_index_++);
  }
  return in;
}

}  // namespace cheriot

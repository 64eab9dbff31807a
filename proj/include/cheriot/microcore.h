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

#ifndef CHERIOT_MICROCORE_H_
#define CHERIOT_MICROCORE_H_

// Cycle-level core model: an execute stage and a writeback stage fed by a
// fetch FIFO, a register file of capabilities with cached bounds
// corrections, and a load/store unit speaking a request/grant/response
// protocol.

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "cheriot/capability.h"
#include "cheriot/fetch_fifo.h"
#include "cheriot/isa.h"
#include "cheriot/isa_spec.h"
#include "cheriot/memory.h"
#include "cheriot/mutation.h"

namespace cheriot {

// A capability plus the bounds corrections computed when it was written.
struct CachedCap {
  Capability cap;
  Corrections cor;

  static CachedCap From(const Capability &c) { return {c, CorrectionsOf(c)}; }
  bool CorrectionsFresh() const { return cor == CorrectionsOf(cap); }
  friend bool operator==(const CachedCap &, const CachedCap &) = default;
};

struct CycleInputs {
  bool gnt = false;
  bool rvalid = false;
  MemWord rdata;
  bool fetch_valid = false;
  uint32_t fetch_bits = 0;
  uint32_t fetch_addr = 0;
  bool irq = false;
};

// Data memory port. Fields other than req matter only when req is set.
struct PortOutputs {
  bool req = false;
  uint32_t addr = 0;
  bool we = false;
  uint8_t be = 0;
  uint32_t wdata = 0;
  bool wtag = false;

  static PortOutputs FromRequest(const MemRequest &r) {
    return {true, r.addr, r.we, r.be, r.wdata, r.wtag};
  }
  std::string ToString() const;
  friend bool operator==(const PortOutputs &, const PortOutputs &) = default;
};

// Instruction side: a fetch request is accepted in the cycle it is shown.
struct FetchOutputs {
  bool req = false;
  uint32_t addr = 0;
};

enum class LsuPhase : uint8_t {
  kIdle, kWaitGnt1, kWaitRvalid1, kWaitGnt2, kWaitRvalid2
};

// How a finished transaction turns into a register value.
enum class LsuResult : uint8_t { kNone, kWord, kCap };

struct LsuState {
  LsuPhase phase = LsuPhase::kIdle;
  std::array<MemRequest, 2> reqs{};
  int num_reqs = 0;
  std::array<MemWord, 2> resp{};
  LsuResult result = LsuResult::kNone;
  uint32_t addr = 0;  // byte address of the access
  unsigned width = 0;
  bool sign = false;
  PermissionSet auth_perms;  // of the authorising cap, for CLC filtering
  bool orphan = false;       // issued by an instruction that trapped
};

struct WbBuffer {
  bool valid = false;
  uint8_t rd = 0;
  bool known = false;  // value available (loads fill it on the last rvalid)
  CachedCap value;
};

struct MicroState {
  std::array<CachedCap, kNumRegisters> regs{};
  CachedCap pcc;  // its address is stale, `pc` is the program counter
  uint32_t pc = 0;
  CachedCap mtcc;
  CachedCap mepcc;
  uint32_t mtval = 0;
  uint32_t mcause = 0;
  bool mie = false;
  bool mpie = false;

  // EX is waiting for the LSU to be granted the current instruction's
  // requests.
  bool ex_mem_wait = false;
  bool ex_irq_sample = false;  // irq seen when that instruction was decided
  WbBuffer wb;
  LsuState lsu;
  FetchFifo fifo;
  bool fetch_outstanding = false;
  bool fetch_drop = false;  // discard the outstanding fetch when it returns
  uint32_t fetch_next = 0;
  bool sleeping = false;
  uint64_t cycle = 0;

  static MicroState Reset();
};

// What happened in one cycle, for the checkers.
struct CycleInfo {
  bool spec_en = false;
  // EX made its architectural decision (trap or not, memory plan). For
  // memory instructions this precedes spec_en.
  bool decided = false;
  bool decision_irq = false;
  bool interrupt = false;
  std::optional<ExceptionCause> trap;
  bool ex_stalled_on_memory = false;
  // Register file write at the end of this cycle.
  bool wb_retire = false;
  uint8_t wb_rd = 0;
  CachedCap wb_value;
  bool lsu_response = false;
  bool lsu_final = false;
};

struct MicroConfig {
  Mutation mutation = Mutation::kNone;
  bool ebreak_mtval_pc = false;
};

class Microcore {
 public:
  explicit Microcore(const MicroConfig &config = {});

  const MicroState &state() const { return m_; }
  MicroState &mutable_state() { return m_; }
  const MicroConfig &config() const { return config_; }

  // Outputs depend only on the current state.
  PortOutputs DataPort() const;
  FetchOutputs FetchPort() const;
  bool sleeping() const { return m_.sleeping; }

  // Advances one clock. Throws std::logic_error on protocol violations by
  // the environment.
  CycleInfo Step(const CycleInputs &in);

  // The architectural state represented by the current microarchitectural
  // state. Only meaningful when writeback holds no unresolved load.
  ArchState Abs() const;
  bool AbsDefined() const { return !m_.wb.valid || m_.wb.known; }

  // Value the pending load would produce if its remaining responses were
  // `rest`. Empty when no load is in flight.
  std::optional<CachedCap> AlternativeCompletion(
      const std::array<MemWord, 2> &rest) const;

 private:
  CachedCap ReadReg(unsigned r) const;
  void TakeTrap(ExceptionCause cause, uint32_t mtval, CycleInfo &info);
  void Redirect(const CachedCap &pcc, uint32_t target);
  void ExecuteNonMemory(const Instruction &inst, CycleInfo &info);
  bool SetupMemory(const Instruction &inst, CycleInfo &info);
  bool Interruptible() const;
  void StepLsu(const CycleInputs &in, CycleInfo &info);
  CachedCap CompleteLoad(const std::array<MemWord, 2> &resp) const;
  void StepFetch(const CycleInputs &in, const FetchOutputs &out);

  MicroConfig config_;
  MicroState m_;
  bool redirected_ = false;  // set during Step
  bool irq_in_ = false;
};

}  // namespace cheriot

#endif  // CHERIOT_MICROCORE_H_

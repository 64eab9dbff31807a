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

#include "cheriot/harness.h"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cheriot {
namespace {

constexpr const char *kCheckerNames[kNumCheckers] = {
    "protocol",      "dti",           "follower",     "continuity",
    "state_matching", "observational", "monotonicity", "liveness",
    "mem_wellformed", "fifo",          "lsu_alt",      "stall_purity",
};

std::string Hex(uint64_t v) {
  char buf[24];
  snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(v));
  return buf;
}

// Architectural registers of the core that are not in the register file.
struct Scalars {
  uint32_t pc;
  Capability pcc, mtcc, mepcc;
  uint32_t mtval, mcause;
  bool mie, mpie;
  std::array<Capability, kNumRegisters> regs;

  static Scalars Of(const MicroState &m) {
    Scalars s{m.pc, m.pcc.cap, m.mtcc.cap, m.mepcc.cap, m.mtval,
              m.mcause, m.mie, m.mpie, {}};
    for (int r = 0; r < kNumRegisters; ++r) s.regs[r] = m.regs[r].cap;
    return s;
  }
  bool operator==(const Scalars &) const = default;
};

// Everything the follower knows about one instruction.
struct Token {
  ArchState pre;
  ArchInput in;
  StepResult res;
  uint64_t decided_cycle = 0;
  size_t granted = 0;
  size_t responses = 0;
};

struct WbExpect {
  uint8_t rd = 0;
  std::shared_ptr<const Token> tok;
};

bool AppearsIn(const Capability &c, const Token &t) {
  for (const Slot &s : CapabilitySlots()) {
    if (ReadSlot(t.pre, s) == c) return true;
  }
  const auto &d = t.in.mem_read_data;
  for (size_t k = 0; k + 1 < d.size(); k += 2) {
    const uint64_t bits = d[k].data | (uint64_t{d[k + 1].data} << 32);
    if (FromBits(bits, d[k].tag) == c) return true;
  }
  return false;
}

class Harness {
 public:
  Harness(const Program &p, const TimingSchedule &t, const RunOptions &o)
      : p_(p), t_(t), o_(o), core_(o.micro), driver_(p, t),
        spec_mem_(p.memory), alt_rng_(o.alt_seed) {
    core_.mutable_state().fifo.set_tracing(true);
    bmax_ = LivenessBound(o.bounds);
    max_cycles_ = o.max_cycles ? o.max_cycles
                               : (o.max_spec_en + 2) * (bmax_ + 1);
    a_ = ArchState::Reset();
  }

  RunResult Run() {
    for (cycle_ = 0; r_.spec_en < o_.max_spec_en; ++cycle_) {
      if (cycle_ >= max_cycles_) {
        Fail(Checker::kLiveness, "cycle limit reached");
        break;
      }
      if (!Tick()) break;
      if (o_.stop_at_first_failure && !r_.failures.empty()) break;
    }
    r_.cycles = cycle_;
    Finish();
    return std::move(r_);
  }

 private:
  void Fail(Checker c, const std::string &detail) {
    if (r_.Detected(c)) return;
    r_.failures.push_back({c, cycle_, detail});
    Trace("verdict checker=" + std::string(CheckerName(c)) + " result=fail");
  }
  void Count(Checker c) { ++r_.checks[static_cast<int>(c)]; }
  void Trace(const std::string &s) {
    if (o_.record_trace) r_.trace.push_back(std::to_string(cycle_) + " " + s);
  }

  bool Tick();
  void CheckDti();
  void CheckPort(const PortOutputs &port, const CycleInputs &in);
  void Decide(const ArchState &pre, const CycleInfo &info);
  void Complete(const ArchState &pre, const CycleInfo &info);
  void Retire(const CycleInfo &info);
  void CheckAlternative();
  void IterateSpec(const ArchState &abs, const CycleInfo &info);
  void Finish();

  const Program &p_;
  const TimingSchedule &t_;
  const RunOptions &o_;
  Microcore core_;
  Driver driver_;
  RunResult r_;
  uint64_t cycle_ = 0;
  uint64_t bmax_ = 0;
  uint64_t max_cycles_ = 0;
  uint64_t last_en_ = 0;
  bool irq_level_ = false;

  std::shared_ptr<Token> ex_tok_;   // decided, not yet completed
  std::shared_ptr<Token> lsu_tok_;  // owns the LSU transaction
  std::optional<WbExpect> wb_tok_;
  std::optional<ArchState> stored_prev_;
  std::optional<CachedCap> alt_expect_;

  // Iterated spec.
  ArchState a_;
  DataMemory spec_mem_;
  size_t spec_req_ = 0;
  std::vector<PortOutputs> window_;

  std::mt19937_64 alt_rng_;
};

bool Harness::Tick() {
  const bool abs_ok = core_.AbsDefined();
  const ArchState abs = abs_ok ? core_.Abs() : ArchState{};
  const Scalars before = Scalars::Of(core_.state());
  const bool wb_pending = core_.state().wb.valid && !core_.state().wb.known;
  const PortOutputs port = core_.DataPort();
  const FetchOutputs fetch = core_.FetchPort();
  CycleInputs in;
  CycleInfo info;
  Count(Checker::kProtocol);
  try {
    in = driver_.Respond(cycle_, port, fetch, core_.sleeping());
    info = core_.Step(in);
  } catch (const std::logic_error &e) {
    Fail(Checker::kProtocol, e.what());
    return false;
  }
  if (in.irq != irq_level_) {
    irq_level_ = in.irq;
    Trace("irq level=" + std::to_string(in.irq));
  }

  CheckDti();
  CheckPort(port, in);
  if (info.wb_retire) Retire(info);
  if (info.decided || info.spec_en) {
    if (!abs_ok) {
      Fail(Checker::kFollower, "instruction boundary with unresolved load");
    } else {
      if (info.decided) Decide(abs, info);
      if (info.spec_en) Complete(abs, info);
    }
  }
  if (info.ex_stalled_on_memory) {
    Count(Checker::kStallPurity);
    Scalars after = Scalars::Of(core_.state());
    if (info.wb_retire) after.regs[info.wb_rd] = before.regs[info.wb_rd];
    if (!(after == before)) {
      Fail(Checker::kStallPurity, "architectural state changed while stalled");
    }
  }
  CheckAlternative();
  if (info.lsu_final) {
    if (alt_expect_ && wb_pending && core_.state().wb.known) {
      Count(Checker::kLsuAlternative);
      if (!(core_.state().wb.value.cap == alt_expect_->cap)) {
        Fail(Checker::kLsuAlternative,
             "load result " + core_.state().wb.value.cap.ToString() +
                 " differs from the completion predicted from memory " +
                 alt_expect_->cap.ToString());
      }
    }
    alt_expect_.reset();
    lsu_tok_.reset();
  }
  if (cycle_ - last_en_ > bmax_) {
    Fail(Checker::kLiveness, "no instruction completed for " +
                                 std::to_string(cycle_ - last_en_) +
                                 " cycles (bound " + std::to_string(bmax_) +
                                 ")");
  }
  return true;
}

void Harness::CheckDti() {
  Count(Checker::kDti);
  if (auto bad = cheriot::CheckDti(core_.state())) Fail(Checker::kDti, *bad);
}

void Harness::CheckPort(const PortOutputs &port, const CycleInputs &in) {
  if (port.req) {
    window_.push_back(port);
    Trace("port_out addr=" + Hex(port.addr) + " be=" + Hex(port.be) +
          " we=" + std::to_string(port.we) + " wdata=" + Hex(port.wdata) +
          " wtag=" + std::to_string(port.wtag) +
          " gnt=" + std::to_string(in.gnt));
    Count(Checker::kFollower);
    const Token *t = ex_tok_.get();
    if (!t || t->granted >= t->res.plan.requests.size()) {
      Fail(Checker::kFollower, "unexpected request " + port.ToString());
    } else {
      const PortOutputs want =
          PortOutputs::FromRequest(t->res.plan.requests[t->granted]);
      if (!(want == port)) {
        Fail(Checker::kFollower, "request " + port.ToString() +
                                     ", spec plans " + want.ToString());
      }
      if (in.gnt) ++ex_tok_->granted;
    }
    if (in.gnt && port.we && port.wtag && (port.addr & 4)) {
      ++r_.tagged_stores;
      Count(Checker::kMemWellformed);
      const Capability c = driver_.memory().LoadCap(port.addr & ~7u);
      if (c.tag && !IsMemWellformed(c)) {
        Fail(Checker::kMemWellformed,
             "granule " + Hex(port.addr & ~7u) + " holds " + c.ToString());
      }
    }
  }
  if (in.rvalid && lsu_tok_ && lsu_tok_->res.plan.kind == PlanKind::kRead) {
    Count(Checker::kFollower);
    const size_t k = lsu_tok_->responses++;
    const auto &want = lsu_tok_->in.mem_read_data;
    if (k >= want.size() || !(want[k] == in.rdata)) {
      Fail(Checker::kFollower, "response " + std::to_string(k) +
                                   " data does not match memory");
    }
  }
}

void Harness::Decide(const ArchState &pre, const CycleInfo &info) {
  auto t = std::make_shared<Token>();
  t->pre = pre;
  t->decided_cycle = cycle_;
  t->in.instr_bits = p_.Fetch(pre.pc());
  t->in.irq_pending = info.decision_irq;
  const MemEventPlan plan = SpecOut(pre, t->in, o_.spec);
  t->in.mem_read_data = ReadResponses(driver_.memory(), plan);
  t->res = CSpecStep(pre, t->in, o_.clear_rules, o_.spec);

  Count(Checker::kFollower);
  if (t->res.trap != info.trap) {
    auto name = [](const std::optional<ExceptionCause> &c) {
      return std::string(c ? ExceptionCauseName(*c) : "none");
    };
    Fail(Checker::kFollower, "access check at pc " + Hex(pre.pc()) +
                                 ": spec " + name(t->res.trap) + ", core " +
                                 name(info.trap));
  }
  if (info.trap) {
    Trace("trap mcause=" + Hex(McauseCode(*info.trap)));
  }
  ex_tok_ = t;
  if (!t->res.plan.requests.empty() && !info.trap) lsu_tok_ = t;
}

void Harness::Complete(const ArchState &pre, const CycleInfo &info) {
  std::shared_ptr<Token> t = ex_tok_;
  ex_tok_.reset();
  if (!t) {
    Fail(Checker::kFollower, "instruction completed without a decision");
    return;
  }
  Count(Checker::kFollower);
  if (t->decided_cycle != cycle_ && !(pre == t->pre)) {
    Fail(Checker::kFollower, "state changed between decision and completion: " +
                                 DescribeDifference(t->pre, pre));
  }
  if (t->granted != t->res.plan.requests.size()) {
    Fail(Checker::kFollower,
         "completed after " + std::to_string(t->granted) + " of " +
             std::to_string(t->res.plan.requests.size()) + " requests");
  }

  // Commits other than the register file happen now.
  const MicroState &m = core_.state();
  const ArchState post = core_.Abs();
  const ArchState &want = t->res.next;
  std::string bad;
  if (!(post.pcc == want.pcc)) bad = "pcc";
  else if (!(post.mtcc == want.mtcc)) bad = "mtcc";
  else if (!(post.mepcc == want.mepcc)) bad = "mepcc";
  else if (post.mtval != want.mtval) bad = "mtval";
  else if (post.mcause != want.mcause) bad = "mcause";
  else if (post.mstatus() != want.mstatus()) bad = "mstatus";
  if (!bad.empty()) {
    Fail(Checker::kFollower, "commit of " + bad + " at pc " + Hex(pre.pc()) +
                                 ": " + DescribeDifference(want, post));
  }
  Trace("commit_csr pc=" + Hex(post.pc()) + " mcause=" + Hex(post.mcause) +
        " mtval=" + Hex(post.mtval) + " mstatus=" + Hex(post.mstatus()));

  const uint8_t rd = m.wb.valid ? m.wb.rd : 0;
  for (int r = 1; r < kNumRegisters; ++r) {
    if (r != rd && !(want.x[r] == t->pre.x[r])) {
      Fail(Checker::kFollower, "spec writes x" + std::to_string(r) +
                                   " but the core does not");
    }
  }
  if (rd) wb_tok_ = WbExpect{rd, t};

  // Monotonicity of the non-register capability slots.
  for (const Slot &s : CapabilitySlots()) {
    if (s.kind == SlotKind::kReg) continue;
    const Capability now = ReadSlot(post, s);
    if (!now.tag || now == ReadSlot(t->pre, s)) continue;
    Count(Checker::kMonotonicity);
    bool derived = false;
    for (const Derivation &d : t->res.derivations) {
      if (!(d.slot == s)) continue;
      derived = true;
      if (!IsMonotone(now, d.parent)) {
        Fail(Checker::kMonotonicity, s.ToString() + " = " + now.ToString() +
                                         " exceeds parent " +
                                         d.parent.ToString());
      }
    }
    if (!derived && !AppearsIn(now, *t)) {
      Fail(Checker::kMonotonicity,
           s.ToString() + " = " + now.ToString() + " has no parent");
    }
  }

  Count(Checker::kContinuity);
  if (stored_prev_ && !StateStricterThan(pre, *stored_prev_)) {
    Fail(Checker::kContinuity, "at pc " + Hex(pre.pc()) + ": " +
                                   DescribeDifference(*stored_prev_, pre));
  }
  stored_prev_ = want;

  IterateSpec(pre, info);

  const uint64_t gap = cycle_ - last_en_ + (r_.spec_en == 0 ? 1 : 0);
  Count(Checker::kLiveness);
  r_.max_gap = std::max(r_.max_gap, gap);
  last_en_ = cycle_;
  ++r_.spec_en;
  Trace("spec_en n=" + std::to_string(r_.spec_en) + " pc=" + Hex(pre.pc()) +
        " insn=" + Hex(t->in.instr_bits));
}

void Harness::Retire(const CycleInfo &info) {
  Trace("commit_rf rd=" + std::to_string(info.wb_rd) +
        " value=" + Hex(ToBits(info.wb_value.cap)) +
        " tag=" + std::to_string(info.wb_value.cap.tag));
  Count(Checker::kFollower);
  if (!wb_tok_ || wb_tok_->rd != info.wb_rd) {
    Fail(Checker::kFollower,
         "unexpected register write x" + std::to_string(info.wb_rd));
    wb_tok_.reset();
    return;
  }
  const Token &t = *wb_tok_->tok;
  const Capability &want = t.res.next.x[info.wb_rd];
  const Capability &got = info.wb_value.cap;
  if (!(want == got)) {
    Fail(Checker::kFollower, "register write x" +
                                 std::to_string(info.wb_rd) + " at pc " +
                                 Hex(t.pre.pc()) + ": spec " +
                                 want.ToString() + ", core " + got.ToString());
  }
  if (got.tag && !(got == t.pre.x[info.wb_rd])) {
    Count(Checker::kMonotonicity);
    const Slot s{SlotKind::kReg, info.wb_rd};
    bool derived = false;
    for (const Derivation &d : t.res.derivations) {
      if (!(d.slot == s)) continue;
      derived = true;
      if (!IsMonotone(got, d.parent)) {
        Fail(Checker::kMonotonicity, s.ToString() + " = " + got.ToString() +
                                         " exceeds parent " +
                                         d.parent.ToString());
      }
    }
    if (!derived && !AppearsIn(got, t)) {
      Fail(Checker::kMonotonicity,
           s.ToString() + " = " + got.ToString() + " has no parent");
    }
  }
  wb_tok_.reset();
}

// Predicts the pending load's result twice: once from the words memory
// will actually return, once from random words checked against the spec.
void Harness::CheckAlternative() {
  const LsuState &l = core_.state().lsu;
  if (l.phase == LsuPhase::kIdle || l.orphan ||
      l.result == LsuResult::kNone || !lsu_tok_) {
    return;
  }
  const bool first = l.phase == LsuPhase::kWaitGnt1 ||
                     l.phase == LsuPhase::kWaitRvalid1;
  std::array<MemWord, 2> actual{};
  std::array<MemWord, 2> random{};
  for (int k = 0; k < 2; ++k) {
    const int req = first ? k : k + 1;
    if (req < l.num_reqs) actual[k] = driver_.memory().ReadWord(l.reqs[req].addr);
    random[k] = {static_cast<uint32_t>(alt_rng_()), (alt_rng_() & 1) != 0};
  }
  const std::optional<CachedCap> pred = core_.AlternativeCompletion(actual);
  if (!pred) return;
  Count(Checker::kLsuAlternative);
  if (alt_expect_ && !(alt_expect_->cap == pred->cap)) {
    Fail(Checker::kLsuAlternative, "predicted load result changed mid-flight");
  }
  alt_expect_ = pred;

  const std::optional<CachedCap> alt = core_.AlternativeCompletion(random);
  const std::optional<Instruction> inst = Decode(lsu_tok_->in.instr_bits);
  if (!alt || !inst || inst->rd == 0) return;
  ArchInput in = lsu_tok_->in;
  in.mem_read_data.clear();
  if (first) {
    for (int k = 0; k < l.num_reqs; ++k) in.mem_read_data.push_back(random[k]);
  } else {
    in.mem_read_data = {l.resp[0], random[0]};
  }
  const StepResult sr = CSpecStep(lsu_tok_->pre, in, o_.clear_rules, o_.spec);
  Count(Checker::kLsuAlternative);
  if (!(sr.next.x[inst->rd] == alt->cap)) {
    Fail(Checker::kLsuAlternative,
         "with other responses the core would load " + alt->cap.ToString() +
             ", spec " + sr.next.x[inst->rd].ToString());
  } else if (alt->cap.tag && !alt->CorrectionsFresh()) {
    Fail(Checker::kLsuAlternative, "alternative result has stale corrections");
  }
}

void Harness::IterateSpec(const ArchState &abs, const CycleInfo &info) {
  Count(Checker::kStateMatching);
  const bool match = o_.clear_rules.empty() ? abs == a_
                                            : StateStricterThan(abs, a_);
  if (!match) {
    Fail(Checker::kStateMatching,
         "instruction " + std::to_string(r_.spec_en) + ": " +
             DescribeDifference(a_, abs));
  }
  ArchInput in;
  in.instr_bits = p_.Fetch(a_.pc());
  in.irq_pending = info.decision_irq;
  in.mem_read_data = ReadResponses(spec_mem_, SpecOut(a_, in, o_.spec));
  const StepResult sr = CSpecStep(a_, in, o_.clear_rules, o_.spec);

  Count(Checker::kObservational);
  const std::vector<PortOutputs> want =
      ExpectedPortEvents(sr.plan, t_, spec_req_);
  if (want != window_) {
    std::string d = "instruction " + std::to_string(r_.spec_en) + " at pc " +
                    Hex(a_.pc()) + ": expected " +
                    std::to_string(want.size()) + " request cycles, saw " +
                    std::to_string(window_.size());
    for (size_t k = 0; k < std::min(want.size(), window_.size()); ++k) {
      if (!(want[k] == window_[k])) {
        d += "; first difference " + window_[k].ToString() + " vs " +
             want[k].ToString();
        break;
      }
    }
    Fail(Checker::kObservational, d);
  }
  window_.clear();
  spec_req_ += sr.plan.requests.size();
  ApplyWrites(spec_mem_, sr.plan);
  a_ = sr.next;
}

void Harness::Finish() {
  Count(Checker::kFifo);
  if (!FifoTraceConsistent(core_.state().fifo.trace())) {
    Fail(Checker::kFifo, "dequeued address differs from enqueued address");
  }
  // Everything granted so far is in both memories; only compare when no
  // write is half done.
  if (core_.state().lsu.phase == LsuPhase::kIdle ||
      core_.state().lsu.reqs[0].we == false) {
    Count(Checker::kStateMatching);
    if (!(driver_.memory() == spec_mem_)) {
      std::string d = "memory differs";
      for (const auto &[addr, word] : spec_mem_.words()) {
        if (!(driver_.memory().ReadWord(addr) == spec_mem_.ReadWord(addr))) {
          d += " at " + Hex(addr);
          break;
        }
      }
      Fail(Checker::kStateMatching, d);
    }
  }
  for (uint32_t g : driver_.memory().tagged_granules()) {
    Count(Checker::kMemWellformed);
    const Capability c = driver_.memory().LoadCap(g);
    if (!IsMemWellformed(c)) {
      Fail(Checker::kMemWellformed, "granule " + Hex(g) + " holds " +
                                        c.ToString());
    }
  }
  std::string v = r_.passed() ? "pass" : "fail";
  Trace("verdict result=" + v + " spec_en=" + std::to_string(r_.spec_en) +
        " max_gap=" + std::to_string(r_.max_gap));
}

}  // namespace

const char *CheckerName(Checker c) {
  return kCheckerNames[static_cast<int>(c)];
}

bool ParseChecker(const std::string &name, Checker *out) {
  for (int k = 0; k < kNumCheckers; ++k) {
    if (name == kCheckerNames[k]) {
      *out = static_cast<Checker>(k);
      return true;
    }
  }
  return false;
}

std::optional<std::string> CheckDti(const MicroState &m) {
  auto check = [](const CachedCap &c,
                  const std::string &where) -> std::optional<std::string> {
    if (!c.cap.tag) return std::nullopt;
    if (!c.CorrectionsFresh()) {
      return where + ": stale bounds corrections on " + c.cap.ToString();
    }
    if (!IsMemWellformed(c.cap)) return where + ": malformed " + c.cap.ToString();
    return std::nullopt;
  };
  for (int r = 1; r < kNumRegisters; ++r) {
    if (auto e = check(m.regs[r], "regfile x" + std::to_string(r))) return e;
  }
  if (auto e = check(m.pcc, "pcc")) return e;
  if (auto e = check(m.mtcc, "mtcc")) return e;
  if (auto e = check(m.mepcc, "mepcc")) return e;
  if (m.wb.valid && m.wb.known) return check(m.wb.value, "writeback");
  return std::nullopt;
}

bool RunResult::Detected(Checker c) const {
  return std::any_of(failures.begin(), failures.end(),
                     [c](const Failure &f) { return f.checker == c; });
}

std::string RunResult::Summary() const {
  std::ostringstream os;
  os << (passed() ? "PASS" : "FAIL") << " cycles=" << cycles
     << " spec_en=" << spec_en << " max_gap=" << max_gap;
  for (const Failure &f : failures) {
    os << "\n  " << CheckerName(f.checker) << " @" << f.cycle << ": "
       << f.detail;
  }
  return os.str();
}

RunResult RunHarness(const Program &program, const TimingSchedule &schedule,
                     const RunOptions &options) {
  return Harness(program, schedule, options).Run();
}

uint64_t LivenessBound(const TimingBounds &b) {
  const uint64_t g = b.max_gnt, r = b.max_rvalid, f = b.max_fetch,
                 w = b.max_wfi_wake;
  // A capability access behind another one, behind a redirect, or right
  // after waking.
  return std::max({2 * r + 2 * g + 1, 2 * f + 2 + 2 * g + r, w + 2 * g + r});
}

std::vector<PortOutputs> ExpectedPortEvents(const MemEventPlan &plan,
                                            const TimingSchedule &schedule,
                                            size_t first_request) {
  std::vector<PortOutputs> out;
  for (size_t k = 0; k < plan.requests.size(); ++k) {
    const PortOutputs o = PortOutputs::FromRequest(plan.requests[k]);
    out.insert(out.end(), schedule.Gnt(first_request + k), o);
  }
  return out;
}

bool IsMonotone(const Capability &child, const Capability &parent) {
  if (!child.tag) return true;
  if (!parent.tag) return false;
  return BoundsOf(parent).Contains(BoundsOf(child)) &&
         child.permissions().SubsetOf(parent.permissions());
}

}  // namespace cheriot

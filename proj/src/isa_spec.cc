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

#include "cheriot/isa_spec.h"

#include <cstdio>
#include <sstream>

namespace cheriot {
namespace {

Capability Reg(const ArchState &s, unsigned r) {
  return r == 0 ? Capability::Null() : s.x[r];
}

Slot RegSlot(unsigned r) { return {SlotKind::kReg, r}; }

// mtcc and mepcc only hold word-aligned, unsealed executable capabilities.
Capability LegalizeCodeCap(const Capability &c) {
  Capability out = SetAddress(c, c.address & ~3u);
  if (!out.permissions().execute) out.tag = false;
  return out;
}

uint32_t SignExtend(uint32_t v, unsigned bits) {
  const unsigned shift = 32 - bits;
  return static_cast<uint32_t>(static_cast<int32_t>(v << shift) >> shift);
}

class Stepper {
 public:
  Stepper(const ArchState &s, const ArchInput &in, const SpecConfig &cfg)
      : s_(s), in_(in), cfg_(cfg) {
    r_.next = s;
  }

  StepResult Run();

 private:
  void Trap(ExceptionCause cause, uint32_t mtval);
  void Execute(const Instruction &inst);
  void WriteInt(unsigned rd, uint32_t value) {
    if (rd != 0) r_.next.x[rd] = Capability::Null(value);
  }
  void WriteCap(unsigned rd, const Capability &value,
                const Capability &parent) {
    if (rd == 0) return;
    r_.next.x[rd] = value;
    r_.derivations.push_back({RegSlot(rd), parent});
  }
  void SetPc(uint32_t target) {
    r_.next.pcc = SetAddress(s_.pcc, target);
    r_.derivations.push_back({{SlotKind::kPcc, 0}, s_.pcc});
  }
  // Branch/jump target; false after raising the misaligned trap.
  bool CheckTarget(uint32_t target) {
    if (target & 3u) {
      Trap(ExceptionCause::kMisalignedTarget, target);
      return false;
    }
    return true;
  }
  MemWord Response(size_t n) const {
    return n < in_.mem_read_data.size() ? in_.mem_read_data[n] : MemWord{};
  }

  void Load(const Instruction &inst);
  void Store(const Instruction &inst);
  void LoadCap(const Instruction &inst);
  void StoreCap(const Instruction &inst);
  void Csr(const Instruction &inst);
  void SpecialRw(const Instruction &inst);
  void Cjalr(const Instruction &inst);

  const ArchState &s_;
  const ArchInput &in_;
  const SpecConfig &cfg_;
  StepResult r_;
  bool trapped_ = false;
  bool pc_written_ = false;
};

void Stepper::Trap(ExceptionCause cause, uint32_t mtval) {
  // Nothing the instruction did survives a trap.
  r_ = StepResult{};
  r_.next = s_;
  ArchState &n = r_.next;
  n.mepcc = SetAddress(s_.pcc, s_.pc());
  n.mcause = McauseCode(cause);
  n.mtval = mtval;
  n.mpie = s_.mie;
  n.mie = false;
  n.pcc = SetAddress(s_.mtcc, s_.mtcc.address & ~3u);
  r_.derivations.push_back({{SlotKind::kMepcc, 0}, s_.pcc});
  r_.derivations.push_back({{SlotKind::kPcc, 0}, s_.mtcc});
  r_.trap = cause;
  trapped_ = true;
}

StepResult Stepper::Run() {
  const uint32_t pc = s_.pc();
  if (in_.irq_pending && s_.mie) {
    Trap(ExceptionCause::kExternalInterrupt, 0);
    return r_;
  }
  if (auto f = CheckAccess(s_.pcc, pc, 4, AccessKind::kExecute)) {
    Trap(*f == CapFault::kBounds ? ExceptionCause::kFetchBoundsViolation
                                 : CauseForCapFault(*f),
         pc);
    return r_;
  }
  auto inst = Decode(in_.instr_bits);
  if (!inst) {
    Trap(ExceptionCause::kIllegalInstruction, in_.instr_bits);
    return r_;
  }
  Execute(*inst);
  if (!trapped_ && !pc_written_) SetPc(pc + 4);
  return r_;
}

void Stepper::Execute(const Instruction &i) {
  const uint32_t pc = s_.pc();
  const Capability c1 = Reg(s_, i.rs1);
  const Capability c2 = Reg(s_, i.rs2);
  const uint32_t a = c1.address;
  const uint32_t b = c2.address;
  const uint32_t imm = static_cast<uint32_t>(i.imm);
  auto branch = [&](bool taken) {
    if (!taken) return;
    const uint32_t target = pc + imm;
    if (!CheckTarget(target)) return;
    SetPc(target);
    pc_written_ = true;
  };
  switch (i.op) {
    case Op::kAddi: WriteInt(i.rd, a + imm); break;
    case Op::kSlti:
      WriteInt(i.rd, static_cast<int32_t>(a) < i.imm);
      break;
    case Op::kSltiu: WriteInt(i.rd, a < imm); break;
    case Op::kXori: WriteInt(i.rd, a ^ imm); break;
    case Op::kOri: WriteInt(i.rd, a | imm); break;
    case Op::kAndi: WriteInt(i.rd, a & imm); break;
    case Op::kSlli: WriteInt(i.rd, a << (imm & 31)); break;
    case Op::kSrli: WriteInt(i.rd, a >> (imm & 31)); break;
    case Op::kSrai:
      WriteInt(i.rd, static_cast<uint32_t>(static_cast<int32_t>(a) >>
                                           (imm & 31)));
      break;
    case Op::kAdd: WriteInt(i.rd, a + b); break;
    case Op::kSub: WriteInt(i.rd, a - b); break;
    case Op::kSll: WriteInt(i.rd, a << (b & 31)); break;
    case Op::kSlt:
      WriteInt(i.rd, static_cast<int32_t>(a) < static_cast<int32_t>(b));
      break;
    case Op::kSltu: WriteInt(i.rd, a < b); break;
    case Op::kXor: WriteInt(i.rd, a ^ b); break;
    case Op::kSrl: WriteInt(i.rd, a >> (b & 31)); break;
    case Op::kSra:
      WriteInt(i.rd, static_cast<uint32_t>(static_cast<int32_t>(a) >>
                                           (b & 31)));
      break;
    case Op::kOr: WriteInt(i.rd, a | b); break;
    case Op::kAnd: WriteInt(i.rd, a & b); break;
    case Op::kLui: WriteInt(i.rd, imm); break;
    case Op::kAuipcc:
      WriteCap(i.rd, SetAddress(s_.pcc, pc + imm), s_.pcc);
      break;
    case Op::kBeq: branch(a == b); break;
    case Op::kBne: branch(a != b); break;
    case Op::kBlt:
      branch(static_cast<int32_t>(a) < static_cast<int32_t>(b));
      break;
    case Op::kBge:
      branch(static_cast<int32_t>(a) >= static_cast<int32_t>(b));
      break;
    case Op::kBltu: branch(a < b); break;
    case Op::kBgeu: branch(a >= b); break;
    case Op::kLb: case Op::kLh: case Op::kLw: case Op::kLbu: case Op::kLhu:
      Load(i);
      break;
    case Op::kSb: case Op::kSh: case Op::kSw:
      Store(i);
      break;
    case Op::kClc: LoadCap(i); break;
    case Op::kCsc: StoreCap(i); break;
    case Op::kCjal: {
      const uint32_t target = pc + imm;
      if (!CheckTarget(target)) return;
      WriteCap(i.rd, SetAddress(s_.pcc, pc + 4), s_.pcc);
      SetPc(target);
      pc_written_ = true;
      break;
    }
    case Op::kCjalr: Cjalr(i); break;
    case Op::kCsrrw: case Op::kCsrrs: case Op::kCsrrc:
    case Op::kCsrrwi: case Op::kCsrrsi: case Op::kCsrrci:
      Csr(i);
      break;
    case Op::kEcall: Trap(ExceptionCause::kECall, 0); break;
    case Op::kEbreak:
      Trap(ExceptionCause::kEBreak, cfg_.ebreak_mtval_pc ? pc : 0);
      break;
    case Op::kMret:
      if (!s_.pcc.permissions().system_registers) {
        Trap(ExceptionCause::kPermissionViolation, 0);
        return;
      }
      r_.next.pcc = s_.mepcc;
      r_.derivations.push_back({{SlotKind::kPcc, 0}, s_.mepcc});
      r_.next.mie = s_.mpie;
      r_.next.mpie = true;
      pc_written_ = true;
      break;
    case Op::kWfi: break;
    case Op::kCGetPerm: WriteInt(i.rd, c1.permissions().ToMask()); break;
    case Op::kCGetType: WriteInt(i.rd, c1.otype); break;
    case Op::kCGetBase: WriteInt(i.rd, BoundsOf(c1).base); break;
    case Op::kCGetLen: {
      const Bounds bd = BoundsOf(c1);
      uint64_t len = bd.top >= bd.base ? bd.top - bd.base : 0;
      WriteInt(i.rd, len > 0xffffffffu ? 0xffffffffu
                                       : static_cast<uint32_t>(len));
      break;
    }
    case Op::kCGetTag: WriteInt(i.rd, c1.tag); break;
    case Op::kCGetTop: {
      const uint64_t top = BoundsOf(c1).top;
      WriteInt(i.rd, top > 0xffffffffu ? 0xffffffffu
                                       : static_cast<uint32_t>(top));
      break;
    }
    case Op::kCMove: WriteCap(i.rd, c1, c1); break;
    case Op::kCSetAddr: WriteCap(i.rd, SetAddress(c1, b), c1); break;
    case Op::kCIncAddr: WriteCap(i.rd, SetAddress(c1, a + b), c1); break;
    case Op::kCIncAddrImm:
      WriteCap(i.rd, SetAddress(c1, a + imm), c1);
      break;
    case Op::kCSetBounds: WriteCap(i.rd, SetBounds(c1, b).cap, c1); break;
    case Op::kCSetBoundsExact: {
      SetBoundsResult sb = SetBounds(c1, b);
      if (!sb.exact) sb.cap.tag = false;
      WriteCap(i.rd, sb.cap, c1);
      break;
    }
    case Op::kCAndPerm:
      WriteCap(i.rd, AndPerms(c1, PermissionSet::FromMask(b)), c1);
      break;
    case Op::kCSeal: WriteCap(i.rd, Seal(c1, c2), c1); break;
    case Op::kCUnseal: WriteCap(i.rd, Unseal(c1, c2), c1); break;
    case Op::kCSeqx:
      WriteInt(i.rd, c1.tag == c2.tag && ToBits(c1) == ToBits(c2));
      break;
    case Op::kCSpecialRw: SpecialRw(i); break;
  }
}

void Stepper::Load(const Instruction &i) {
  const Capability auth = Reg(s_, i.rs1);
  const uint32_t addr = auth.address + static_cast<uint32_t>(i.imm);
  const unsigned width = AccessWidth(i.op);
  if (auto f = CheckAccess(auth, addr, width, AccessKind::kLoad)) {
    Trap(CauseForCapFault(*f), addr);
    return;
  }
  r_.plan.kind = PlanKind::kRead;
  r_.plan.requests = SplitAccess(addr, width, false, 0);
  std::vector<MemWord> resp;
  for (size_t n = 0; n < r_.plan.requests.size(); ++n) {
    resp.push_back(Response(n));
  }
  uint32_t v = AssembleLoad(addr, width, resp);
  if (i.op == Op::kLb) v = SignExtend(v, 8);
  if (i.op == Op::kLh) v = SignExtend(v, 16);
  WriteInt(i.rd, v);
}

void Stepper::Store(const Instruction &i) {
  const Capability auth = Reg(s_, i.rs1);
  const uint32_t addr = auth.address + static_cast<uint32_t>(i.imm);
  const unsigned width = AccessWidth(i.op);
  if (auto f = CheckAccess(auth, addr, width, AccessKind::kStore)) {
    Trap(CauseForCapFault(*f), addr);
    return;
  }
  r_.plan.kind = PlanKind::kWrite;
  r_.plan.requests = SplitAccess(addr, width, true, Reg(s_, i.rs2).address);
}

void Stepper::LoadCap(const Instruction &i) {
  const Capability auth = Reg(s_, i.rs1);
  const uint32_t addr = auth.address + static_cast<uint32_t>(i.imm);
  if (auto f = CheckAccess(auth, addr, 8, AccessKind::kLoad)) {
    Trap(CauseForCapFault(*f), addr);
    return;
  }
  if (addr & 7u) {
    Trap(ExceptionCause::kLoadMisaligned, addr);
    return;
  }
  r_.plan.kind = PlanKind::kRead;
  r_.plan.requests = {{addr, 0xf, 0, false, false},
                      {addr + 4, 0xf, 0, false, false}};
  const MemWord lo = Response(0);
  const MemWord hi = Response(1);
  const Capability raw =
      FromBits(lo.data | (uint64_t{hi.data} << 32), lo.tag);
  Capability v = raw;
  const PermissionSet ap = auth.permissions();
  if (!ap.cap_access) {
    v.tag = false;
  } else if (v.tag && !v.sealed() && !ap.store) {
    PermissionSet keep = PermissionSet::All();
    keep.store = false;
    v = AndPerms(v, keep);
  }
  WriteCap(i.rd, v, raw);
}

void Stepper::StoreCap(const Instruction &i) {
  const Capability auth = Reg(s_, i.rs1);
  const Capability data = Reg(s_, i.rs2);
  const uint32_t addr = auth.address + static_cast<uint32_t>(i.imm);
  const AccessKind kind = data.tag ? AccessKind::kStoreCap : AccessKind::kStore;
  if (auto f = CheckAccess(auth, addr, 8, kind)) {
    Trap(CauseForCapFault(*f), addr);
    return;
  }
  if (addr & 7u) {
    Trap(ExceptionCause::kStoreMisaligned, addr);
    return;
  }
  const uint64_t bits = ToBits(data);
  r_.plan.kind = PlanKind::kWrite;
  r_.plan.requests = {
      {addr, 0xf, static_cast<uint32_t>(bits), data.tag, true},
      {addr + 4, 0xf, static_cast<uint32_t>(bits >> 32), data.tag, true}};
}

void Stepper::Cjalr(const Instruction &i) {
  const Capability c1 = Reg(s_, i.rs1);
  const uint32_t target = (c1.address + static_cast<uint32_t>(i.imm)) & ~1u;
  if (!c1.tag) return Trap(ExceptionCause::kTagViolation, target);
  if (c1.sealed()) return Trap(ExceptionCause::kSealViolation, target);
  if (!c1.permissions().execute) {
    return Trap(ExceptionCause::kPermissionViolation, target);
  }
  if (!CheckTarget(target)) return;
  WriteCap(i.rd, SetAddress(s_.pcc, s_.pc() + 4), s_.pcc);
  r_.next.pcc = SetAddress(c1, target);
  r_.derivations.push_back({{SlotKind::kPcc, 0}, c1});
  pc_written_ = true;
}

void Stepper::Csr(const Instruction &i) {
  if (!s_.pcc.permissions().system_registers) {
    Trap(ExceptionCause::kPermissionViolation, 0);
    return;
  }
  uint32_t old = 0;
  switch (i.csr) {
    case kCsrMstatus: old = s_.mstatus(); break;
    case kCsrMcause: old = s_.mcause; break;
    case kCsrMtval: old = s_.mtval; break;
  }
  const bool imm_form = i.op == Op::kCsrrwi || i.op == Op::kCsrrsi ||
                        i.op == Op::kCsrrci;
  const uint32_t src = imm_form ? i.rs1 : Reg(s_, i.rs1).address;
  uint32_t nv = old;
  bool write = true;
  switch (i.op) {
    case Op::kCsrrw: case Op::kCsrrwi: nv = src; break;
    case Op::kCsrrs: case Op::kCsrrsi: nv = old | src; write = i.rs1 != 0;
      break;
    default: nv = old & ~src; write = i.rs1 != 0; break;
  }
  if (write) {
    switch (i.csr) {
      case kCsrMstatus:
        r_.next.mie = nv & (1u << 3);
        r_.next.mpie = nv & (1u << 7);
        break;
      case kCsrMcause: r_.next.mcause = nv; break;
      case kCsrMtval: r_.next.mtval = nv; break;
    }
  }
  WriteInt(i.rd, old);
}

void Stepper::SpecialRw(const Instruction &i) {
  if (!s_.pcc.permissions().system_registers) {
    Trap(ExceptionCause::kPermissionViolation, 0);
    return;
  }
  const bool is_mtcc = i.csr == kScrMtcc;
  const Capability old = is_mtcc ? s_.mtcc : s_.mepcc;
  if (i.rs1 != 0) {
    const Capability src = Reg(s_, i.rs1);
    const Capability nv = LegalizeCodeCap(src);
    (is_mtcc ? r_.next.mtcc : r_.next.mepcc) = nv;
    r_.derivations.push_back(
        {{is_mtcc ? SlotKind::kMtcc : SlotKind::kMepcc, 0}, src});
  }
  WriteCap(i.rd, old, old);
}

}  // namespace

ArchState ArchState::Reset() {
  ArchState s;
  s.pcc = Capability::ExecutableRoot(kResetPc);
  s.x[1] = Capability::MemoryRoot(0);
  s.x[2] = Capability::SealingRoot(0);
  s.mtcc = Capability::ExecutableRoot(kTrapVector);
  return s;
}

uint32_t McauseCode(ExceptionCause cause) {
  switch (cause) {
    case ExceptionCause::kMisalignedTarget: return 0;
    case ExceptionCause::kFetchBoundsViolation: return 1;
    case ExceptionCause::kIllegalInstruction: return 2;
    case ExceptionCause::kEBreak: return 3;
    case ExceptionCause::kLoadMisaligned: return 4;
    case ExceptionCause::kStoreMisaligned: return 6;
    case ExceptionCause::kECall: return 11;
    case ExceptionCause::kBoundsViolation: return 26;
    case ExceptionCause::kSealViolation: return 27;
    case ExceptionCause::kTagViolation: return 28;
    case ExceptionCause::kPermissionViolation: return 29;
    case ExceptionCause::kExternalInterrupt: return 0x8000000bu;
  }
  return 0;
}

const char *ExceptionCauseName(ExceptionCause cause) {
  switch (cause) {
    case ExceptionCause::kIllegalInstruction: return "IllegalInstruction";
    case ExceptionCause::kFetchBoundsViolation: return "FetchBoundsViolation";
    case ExceptionCause::kTagViolation: return "TagViolation";
    case ExceptionCause::kSealViolation: return "SealViolation";
    case ExceptionCause::kPermissionViolation: return "PermissionViolation";
    case ExceptionCause::kBoundsViolation: return "BoundsViolation";
    case ExceptionCause::kMisalignedTarget: return "MisalignedTarget";
    case ExceptionCause::kLoadMisaligned: return "LoadMisaligned";
    case ExceptionCause::kStoreMisaligned: return "StoreMisaligned";
    case ExceptionCause::kEBreak: return "EBreak";
    case ExceptionCause::kECall: return "ECall";
    case ExceptionCause::kExternalInterrupt: return "ExternalInterrupt";
  }
  return "?";
}

ExceptionCause CauseForCapFault(CapFault fault) {
  switch (fault) {
    case CapFault::kTag: return ExceptionCause::kTagViolation;
    case CapFault::kSeal: return ExceptionCause::kSealViolation;
    case CapFault::kPermission: return ExceptionCause::kPermissionViolation;
    case CapFault::kBounds: return ExceptionCause::kBoundsViolation;
  }
  return ExceptionCause::kTagViolation;
}

std::string Slot::ToString() const {
  char buf[32];
  switch (kind) {
    case SlotKind::kReg: std::snprintf(buf, sizeof buf, "x%u", index); break;
    case SlotKind::kPcc: return "pcc";
    case SlotKind::kMtcc: return "mtcc";
    case SlotKind::kMepcc: return "mepcc";
  }
  return buf;
}

Capability ReadSlot(const ArchState &s, const Slot &slot) {
  switch (slot.kind) {
    case SlotKind::kReg: return Reg(s, slot.index);
    case SlotKind::kPcc: return s.pcc;
    case SlotKind::kMtcc: return s.mtcc;
    case SlotKind::kMepcc: return s.mepcc;
  }
  return {};
}

std::vector<Slot> CapabilitySlots() {
  std::vector<Slot> out;
  for (uint32_t r = 1; r < kNumRegisters; ++r) out.push_back(RegSlot(r));
  out.push_back({SlotKind::kPcc, 0});
  out.push_back({SlotKind::kMtcc, 0});
  out.push_back({SlotKind::kMepcc, 0});
  return out;
}

StepResult SpecStep(const ArchState &s, const ArchInput &in,
                    const SpecConfig &config) {
  return Stepper(s, in, config).Run();
}

MemEventPlan SpecOut(const ArchState &s, const ArchInput &in,
                     const SpecConfig &config) {
  return SpecStep(s, in, config).plan;
}

StepResult CSpecStep(const ArchState &s, const ArchInput &in,
                     const std::vector<ClearRule> &rules,
                     const SpecConfig &config) {
  StepResult r = SpecStep(s, in, config);
  if (rules.empty()) return r;
  ArchState &n = r.next;
  for (const Slot &slot : CapabilitySlots()) {
    bool clear = false;
    for (const ClearRule &rule : rules) clear = clear || rule(s, in, slot);
    if (!clear) continue;
    switch (slot.kind) {
      case SlotKind::kReg: n.x[slot.index].tag = false; break;
      case SlotKind::kPcc: n.pcc.tag = false; break;
      case SlotKind::kMtcc: n.mtcc.tag = false; break;
      case SlotKind::kMepcc: n.mepcc.tag = false; break;
    }
  }
  return r;
}

bool StateStricterThan(const ArchState &s1, const ArchState &s2) {
  for (int r = 0; r < kNumRegisters; ++r) {
    if (!CapStricterThan(s1.x[r], s2.x[r])) return false;
  }
  if (!CapStricterThan(s1.pcc, s2.pcc) ||
      !CapStricterThan(s1.mtcc, s2.mtcc) ||
      !CapStricterThan(s1.mepcc, s2.mepcc)) {
    return false;
  }
  if (s1.mtval != s2.mtval || s1.mcause != s2.mcause || s1.mie != s2.mie ||
      s1.mpie != s2.mpie) {
    return false;
  }
  return true;
}

std::string DescribeDifference(const ArchState &e, const ArchState &a) {
  std::ostringstream os;
  auto cap = [&](const char *name, const Capability &x,
                 const Capability &y) {
    if (x == y) return false;
    os << name << ": expected " << x.ToString() << " got " << y.ToString();
    return true;
  };
  for (int r = 1; r < kNumRegisters; ++r) {
    std::string name = "x" + std::to_string(r);
    if (cap(name.c_str(), e.x[r], a.x[r])) return os.str();
  }
  if (cap("pcc", e.pcc, a.pcc) || cap("mtcc", e.mtcc, a.mtcc) ||
      cap("mepcc", e.mepcc, a.mepcc)) {
    return os.str();
  }
  auto word = [&](const char *name, uint32_t x, uint32_t y) {
    if (x == y) return false;
    os << std::hex << name << ": expected " << x << " got " << y;
    return true;
  };
  if (word("mtval", e.mtval, a.mtval) || word("mcause", e.mcause, a.mcause) ||
      word("mstatus", e.mstatus(), a.mstatus())) {
    return os.str();
  }
  return "";
}

std::vector<MemWord> ReadResponses(const DataMemory &mem,
                                   const MemEventPlan &plan) {
  std::vector<MemWord> out;
  if (plan.kind != PlanKind::kRead) return out;
  for (const MemRequest &r : plan.requests) out.push_back(mem.ReadWord(r.addr));
  return out;
}

void ApplyWrites(DataMemory &mem, const MemEventPlan &plan) {
  if (plan.kind != PlanKind::kWrite) return;
  for (const MemRequest &r : plan.requests) mem.Apply(r);
}

std::vector<MemRequest> SplitAccess(uint32_t addr, unsigned width, bool we,
                                    uint32_t data) {
  const unsigned off = addr & 3u;
  const uint32_t lanes = ((1u << width) - 1) << off;
  const uint64_t bytes = width >= 4 ? data : data & ((1u << (8 * width)) - 1);
  const uint64_t shifted = we ? bytes << (8 * off) : 0;
  std::vector<MemRequest> out;
  out.push_back({addr & ~3u, static_cast<uint8_t>(lanes & 0xf),
                 static_cast<uint32_t>(shifted), false, we});
  if (lanes > 0xf) {
    out.push_back({(addr & ~3u) + 4, static_cast<uint8_t>(lanes >> 4),
                   static_cast<uint32_t>(shifted >> 32), false, we});
  }
  return out;
}

uint32_t AssembleLoad(uint32_t addr, unsigned width,
                      const std::vector<MemWord> &responses) {
  uint64_t v = responses.empty() ? 0 : responses[0].data;
  if (responses.size() > 1) v |= uint64_t{responses[1].data} << 32;
  v >>= 8 * (addr & 3u);
  return width >= 4 ? static_cast<uint32_t>(v)
                    : static_cast<uint32_t>(v & ((1u << (8 * width)) - 1));
}

}  // namespace cheriot

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

#include "cheriot/microcore.h"

#include <cstdio>
#include <stdexcept>

namespace cheriot {
namespace {

constexpr uint32_t kLoadOpcode = 0x03;

Bounds CachedBounds(const CachedCap &c) {
  return BoundsWithCorrections(c.cap, c.cor);
}

// Address change using the cached corrections for the current bounds.
CachedCap MicroSetAddress(const CachedCap &c, uint32_t addr, bool keep_cor) {
  CachedCap out = c;
  out.cap.address = addr;
  const Corrections fresh = CorrectionsOf(out.cap);
  if (BoundsWithCorrections(out.cap, fresh) != CachedBounds(c) ||
      c.cap.sealed()) {
    out.cap.tag = false;
  }
  if (!keep_cor) out.cor = fresh;
  return out;
}

std::optional<CapFault> MicroCheck(const CachedCap &c, uint32_t addr,
                                   unsigned width, AccessKind kind,
                                   bool wrap_top) {
  if (!c.cap.tag) return CapFault::kTag;
  if (c.cap.sealed()) return CapFault::kSeal;
  const PermissionSet p = c.cap.permissions();
  bool ok = false;
  switch (kind) {
    case AccessKind::kLoad: ok = p.load; break;
    case AccessKind::kStore: ok = p.store; break;
    case AccessKind::kLoadCap: ok = p.load && p.cap_access; break;
    case AccessKind::kStoreCap: ok = p.store && p.cap_access; break;
    case AccessKind::kExecute: ok = p.execute; break;
  }
  if (!ok) return CapFault::kPermission;
  const Bounds b = CachedBounds(c);
  bool in_top;
  if (wrap_top) {
    // The end address wraps, so an access running past 2^32 passes.
    in_top = uint64_t{static_cast<uint32_t>(addr + width)} <= b.top;
  } else {
    in_top = uint64_t{addr} + width <= b.top;
  }
  if (addr < b.base || !in_top) return CapFault::kBounds;
  return std::nullopt;
}

ExceptionCause FaultCause(CapFault f) { return CauseForCapFault(f); }

uint32_t SignExtend(uint32_t v, unsigned bits) {
  const unsigned shift = 32 - bits;
  return static_cast<uint32_t>(static_cast<int32_t>(v << shift) >> shift);
}

}  // namespace

std::string PortOutputs::ToString() const {
  if (!req) return "idle";
  return MemRequest{addr, be, wdata, wtag, we}.ToString();
}

MicroState MicroState::Reset() {
  const ArchState a = ArchState::Reset();
  MicroState m;
  for (int r = 0; r < kNumRegisters; ++r) m.regs[r] = CachedCap::From(a.x[r]);
  m.pcc = CachedCap::From(a.pcc);
  m.pc = a.pc();
  m.mtcc = CachedCap::From(a.mtcc);
  m.mepcc = CachedCap::From(a.mepcc);
  m.fetch_next = m.pc;
  return m;
}

Microcore::Microcore(const MicroConfig &config)
    : config_(config), m_(MicroState::Reset()) {}

PortOutputs Microcore::DataPort() const {
  const LsuState &l = m_.lsu;
  switch (l.phase) {
    case LsuPhase::kWaitGnt1: return PortOutputs::FromRequest(l.reqs[0]);
    case LsuPhase::kWaitGnt2: return PortOutputs::FromRequest(l.reqs[1]);
    default: return {};
  }
}

FetchOutputs Microcore::FetchPort() const {
  FetchOutputs f;
  const int inflight = m_.fetch_outstanding;
  if (!m_.fetch_outstanding && m_.fifo.size() + inflight < FetchFifo::kDepth) {
    f.req = true;
    f.addr = m_.fetch_next;
  }
  return f;
}

CachedCap Microcore::ReadReg(unsigned r) const {
  return r == 0 ? CachedCap{} : m_.regs[r];
}

void Microcore::Redirect(const CachedCap &pcc, uint32_t target) {
  m_.pcc = pcc;
  m_.pc = target;
  redirected_ = true;
}

void Microcore::TakeTrap(ExceptionCause cause, uint32_t mtval,
                         CycleInfo &info) {
  const bool m6 = config_.mutation == Mutation::kM6;
  if (config_.mutation == Mutation::kM2) {
    Capability c = m_.pcc.cap;
    c.address = m_.pc;
    m_.mepcc = CachedCap::From(c);
  } else {
    m_.mepcc = MicroSetAddress(m_.pcc, m_.pc, m6);
  }
  m_.mcause = McauseCode(cause);
  m_.mtval = mtval;
  m_.mpie = m_.mie;
  m_.mie = false;
  const uint32_t vec = m_.mtcc.cap.address & ~3u;
  Redirect(MicroSetAddress(m_.mtcc, vec, m6), vec);
  info.trap = cause;
}

bool Microcore::SetupMemory(const Instruction &i, CycleInfo &info) {
  const CachedCap auth = ReadReg(i.rs1);
  const uint32_t addr = auth.cap.address + static_cast<uint32_t>(i.imm);
  const bool wrap = config_.mutation == Mutation::kM1;
  LsuState l;
  l.addr = addr;
  l.width = AccessWidth(i.op);
  l.auth_perms = auth.cap.permissions();
  if (i.op == Op::kClc || i.op == Op::kCsc) {
    const CachedCap data = ReadReg(i.rs2);
    const bool is_store = i.op == Op::kCsc;
    AccessKind kind = AccessKind::kLoad;
    if (is_store) {
      kind = data.cap.tag ? AccessKind::kStoreCap : AccessKind::kStore;
    }
    if (auto f = MicroCheck(auth, addr, 8, kind, wrap)) {
      TakeTrap(FaultCause(*f), addr, info);
      return false;
    }
    if (addr & 7u) {
      TakeTrap(is_store ? ExceptionCause::kStoreMisaligned
                        : ExceptionCause::kLoadMisaligned,
               addr, info);
      return false;
    }
    const uint64_t bits = is_store ? ToBits(data.cap) : 0;
    const bool wtag = is_store && data.cap.tag;
    l.reqs[0] = {addr, 0xf, static_cast<uint32_t>(bits), wtag, is_store};
    l.reqs[1] = {addr + 4, 0xf, static_cast<uint32_t>(bits >> 32), wtag,
                 is_store};
    l.num_reqs = 2;
    l.result = is_store ? LsuResult::kNone : LsuResult::kCap;
  } else {
    const bool is_store = IsStore(i.op);
    if (auto f = MicroCheck(auth, addr, l.width,
                            is_store ? AccessKind::kStore : AccessKind::kLoad,
                            wrap)) {
      TakeTrap(FaultCause(*f), addr, info);
      return false;
    }
    const unsigned off = addr & 3u;
    const uint32_t lanes = ((1u << l.width) - 1) << off;
    uint64_t data = 0;
    if (is_store) {
      data = ReadReg(i.rs2).cap.address;
      if (l.width < 4) data &= (1u << (8 * l.width)) - 1;
      data <<= 8 * off;
    }
    l.reqs[0] = {addr & ~3u, static_cast<uint8_t>(lanes & 0xf),
                 static_cast<uint32_t>(data), false, is_store};
    l.num_reqs = 1;
    if (lanes > 0xf) {
      l.reqs[1] = {(addr & ~3u) + 4, static_cast<uint8_t>(lanes >> 4),
                   static_cast<uint32_t>(data >> 32), false, is_store};
      l.num_reqs = 2;
    }
    l.sign = i.op == Op::kLb || i.op == Op::kLh;
    l.result = is_store ? LsuResult::kNone : LsuResult::kWord;
  }
  l.phase = LsuPhase::kWaitGnt1;
  m_.lsu = l;
  return true;
}

CachedCap Microcore::CompleteLoad(const std::array<MemWord, 2> &resp) const {
  const LsuState &l = m_.lsu;
  if (l.result == LsuResult::kWord) {
    uint64_t both = resp[0].data;
    if (l.num_reqs == 2) both |= uint64_t{resp[1].data} << 32;
    uint32_t v = static_cast<uint32_t>(both >> (8 * (l.addr & 3u)));
    if (l.width < 4) {
      v &= (1u << (8 * l.width)) - 1;
      if (l.sign) v = SignExtend(v, 8 * l.width);
    }
    return CachedCap::From(Capability::Null(v));
  }
  Capability c =
      FromBits(resp[0].data | (uint64_t{resp[1].data} << 32), resp[0].tag);
  if (!l.auth_perms.cap_access) {
    c.tag = false;
  } else if (c.tag && !c.sealed() && !l.auth_perms.store) {
    if (config_.mutation == Mutation::kM3) {
      c.perms &= static_cast<uint8_t>(~0x10u);
    } else {
      PermissionSet keep = PermissionSet::All();
      keep.store = false;
      c = AndPerms(c, keep);
    }
  }
  return CachedCap::From(c);
}

std::optional<CachedCap> Microcore::AlternativeCompletion(
    const std::array<MemWord, 2> &rest) const {
  const LsuState &l = m_.lsu;
  if (l.phase == LsuPhase::kIdle || l.orphan ||
      l.result == LsuResult::kNone) {
    return std::nullopt;
  }
  std::array<MemWord, 2> resp = l.resp;
  if (l.phase == LsuPhase::kWaitGnt1 || l.phase == LsuPhase::kWaitRvalid1) {
    resp = rest;
  } else {
    resp[1] = rest[0];
  }
  return CompleteLoad(resp);
}

bool Microcore::Interruptible() const { return m_.mie; }

void Microcore::ExecuteNonMemory(const Instruction &i, CycleInfo &info) {
  const bool m6 = config_.mutation == Mutation::kM6;
  const uint32_t pc = m_.pc;
  const CachedCap c1 = ReadReg(i.rs1);
  const CachedCap c2 = ReadReg(i.rs2);
  const uint32_t a = c1.cap.address;
  const uint32_t b = c2.cap.address;
  const uint32_t imm = static_cast<uint32_t>(i.imm);
  std::optional<CachedCap> result;
  auto integer = [&](uint32_t v) {
    result = CachedCap::From(Capability::Null(v));
  };
  auto fresh = [&](const Capability &c) { result = CachedCap::From(c); };
  auto jump = [&](uint32_t target) {
    if (target & 3u) {
      TakeTrap(ExceptionCause::kMisalignedTarget, target, info);
      return false;
    }
    Redirect(m_.pcc, target);
    return true;
  };
  auto need_sysregs = [&]() {
    if (m_.pcc.cap.permissions().system_registers) return true;
    TakeTrap(ExceptionCause::kPermissionViolation, 0, info);
    return false;
  };
  auto legalize = [&](const CachedCap &c) {
    CachedCap out = MicroSetAddress(c, c.cap.address & ~3u, m6);
    if (!out.cap.permissions().execute) out.cap.tag = false;
    return out;
  };
  const Bounds bounds1 = CachedBounds(c1);

  switch (i.op) {
    case Op::kAddi: integer(a + imm); break;
    case Op::kSlti: integer(static_cast<int32_t>(a) < i.imm); break;
    case Op::kSltiu: integer(a < imm); break;
    case Op::kXori: integer(a ^ imm); break;
    case Op::kOri: integer(a | imm); break;
    case Op::kAndi: integer(a & imm); break;
    case Op::kSlli: integer(a << (imm & 31)); break;
    case Op::kSrli: integer(a >> (imm & 31)); break;
    case Op::kSrai:
      integer(static_cast<uint32_t>(static_cast<int32_t>(a) >> (imm & 31)));
      break;
    case Op::kAdd: integer(a + b); break;
    case Op::kSub: integer(a - b); break;
    case Op::kSll: integer(a << (b & 31)); break;
    case Op::kSlt:
      integer(static_cast<int32_t>(a) < static_cast<int32_t>(b));
      break;
    case Op::kSltu: integer(a < b); break;
    case Op::kXor: integer(a ^ b); break;
    case Op::kSrl: integer(a >> (b & 31)); break;
    case Op::kSra:
      integer(static_cast<uint32_t>(static_cast<int32_t>(a) >> (b & 31)));
      break;
    case Op::kOr: integer(a | b); break;
    case Op::kAnd: integer(a & b); break;
    case Op::kLui: integer(imm); break;
    case Op::kAuipcc: result = MicroSetAddress(m_.pcc, pc + imm, m6); break;
    case Op::kBeq: case Op::kBne: case Op::kBlt: case Op::kBge:
    case Op::kBltu: case Op::kBgeu: {
      bool taken = false;
      const int32_t sa = static_cast<int32_t>(a);
      const int32_t sb = static_cast<int32_t>(b);
      switch (i.op) {
        case Op::kBeq: taken = a == b; break;
        case Op::kBne: taken = a != b; break;
        case Op::kBlt: taken = sa < sb; break;
        case Op::kBge: taken = sa >= sb; break;
        case Op::kBltu: taken = a < b; break;
        default: taken = a >= b; break;
      }
      if (taken) jump(pc + imm);
      break;
    }
    case Op::kCjal: {
      const CachedCap link = MicroSetAddress(m_.pcc, pc + 4, m6);
      if (jump(pc + imm)) result = link;
      break;
    }
    case Op::kCjalr: {
      const uint32_t target = (a + imm) & ~1u;
      if (!c1.cap.tag) {
        TakeTrap(ExceptionCause::kTagViolation, target, info);
      } else if (c1.cap.sealed()) {
        TakeTrap(ExceptionCause::kSealViolation, target, info);
      } else if (!c1.cap.permissions().execute) {
        TakeTrap(ExceptionCause::kPermissionViolation, target, info);
      } else if (target & 3u) {
        TakeTrap(ExceptionCause::kMisalignedTarget, target, info);
      } else {
        result = MicroSetAddress(m_.pcc, pc + 4, m6);
        Redirect(MicroSetAddress(c1, target, m6), target);
      }
      break;
    }
    case Op::kCsrrw: case Op::kCsrrs: case Op::kCsrrc:
    case Op::kCsrrwi: case Op::kCsrrsi: case Op::kCsrrci: {
      if (!need_sysregs()) break;
      uint32_t old = 0;
      if (i.csr == kCsrMstatus) {
        old = (m_.mie ? 8u : 0u) | (m_.mpie ? 0x80u : 0u);
      } else if (i.csr == kCsrMcause) {
        old = m_.mcause;
      } else {
        old = m_.mtval;
      }
      const bool imm_form = i.op == Op::kCsrrwi || i.op == Op::kCsrrsi ||
                            i.op == Op::kCsrrci;
      const uint32_t src = imm_form ? i.rs1 : a;
      uint32_t nv;
      bool write = true;
      if (i.op == Op::kCsrrw || i.op == Op::kCsrrwi) {
        nv = src;
      } else if (i.op == Op::kCsrrs || i.op == Op::kCsrrsi) {
        nv = old | src;
        write = i.rs1 != 0;
      } else {
        nv = old & ~src;
        write = i.rs1 != 0;
      }
      if (write) {
        if (i.csr == kCsrMstatus) {
          m_.mie = nv & 8u;
          m_.mpie = nv & 0x80u;
        } else if (i.csr == kCsrMcause) {
          m_.mcause = nv;
        } else {
          m_.mtval = nv;
        }
      }
      integer(old);
      break;
    }
    case Op::kEcall: TakeTrap(ExceptionCause::kECall, 0, info); break;
    case Op::kEbreak:
      TakeTrap(ExceptionCause::kEBreak, config_.ebreak_mtval_pc ? pc : 0,
               info);
      break;
    case Op::kMret:
      if (!need_sysregs()) break;
      m_.mie = m_.mpie;
      m_.mpie = true;
      Redirect(m_.mepcc, m_.mepcc.cap.address);
      break;
    case Op::kWfi: m_.sleeping = !irq_in_; break;
    case Op::kCGetPerm: integer(c1.cap.permissions().ToMask()); break;
    case Op::kCGetType: integer(c1.cap.otype); break;
    case Op::kCGetBase: integer(bounds1.base); break;
    case Op::kCGetLen: {
      const uint64_t len =
          bounds1.top >= bounds1.base ? bounds1.top - bounds1.base : 0;
      integer(len > 0xffffffffu ? 0xffffffffu : static_cast<uint32_t>(len));
      break;
    }
    case Op::kCGetTag: integer(c1.cap.tag); break;
    case Op::kCGetTop:
      integer(bounds1.top > 0xffffffffu ? 0xffffffffu
                                        : static_cast<uint32_t>(bounds1.top));
      break;
    case Op::kCMove: result = c1; break;
    case Op::kCSetAddr: result = MicroSetAddress(c1, b, m6); break;
    case Op::kCIncAddr: result = MicroSetAddress(c1, a + b, m6); break;
    case Op::kCIncAddrImm: result = MicroSetAddress(c1, a + imm, m6); break;
    case Op::kCSetBounds:
    case Op::kCSetBoundsExact: {
      SetBoundsOptions opt;
      opt.check_below_base = config_.mutation != Mutation::kM4;
      SetBoundsResult sb = SetBounds(c1.cap, b, opt);
      if (i.op == Op::kCSetBoundsExact && !sb.exact) sb.cap.tag = false;
      fresh(sb.cap);
      break;
    }
    case Op::kCAndPerm:
      fresh(AndPerms(c1.cap, PermissionSet::FromMask(b)));
      break;
    case Op::kCSeal: fresh(Seal(c1.cap, c2.cap)); break;
    case Op::kCUnseal: fresh(Unseal(c1.cap, c2.cap)); break;
    case Op::kCSeqx:
      integer(c1.cap.tag == c2.cap.tag && ToBits(c1.cap) == ToBits(c2.cap));
      break;
    case Op::kCSpecialRw: {
      if (!need_sysregs()) break;
      CachedCap &scr = i.csr == kScrMtcc ? m_.mtcc : m_.mepcc;
      const CachedCap old = scr;
      if (i.rs1 != 0) scr = legalize(c1);
      result = old;
      break;
    }
    default:
      throw std::logic_error("memory op in non-memory path");
  }
  if (info.trap) return;
  if (result && i.rd != 0) {
    m_.wb.valid = true;
    m_.wb.rd = i.rd;
    m_.wb.known = true;
    m_.wb.value = *result;
  }
}

void Microcore::StepLsu(const CycleInputs &in, CycleInfo &info) {
  LsuState &l = m_.lsu;
  switch (l.phase) {
    case LsuPhase::kWaitGnt1:
      if (in.gnt) l.phase = LsuPhase::kWaitRvalid1;
      break;
    case LsuPhase::kWaitGnt2:
      if (in.gnt) l.phase = LsuPhase::kWaitRvalid2;
      break;
    case LsuPhase::kWaitRvalid1:
      if (!in.rvalid) break;
      info.lsu_response = true;
      l.resp[0] = in.rdata;
      if (l.num_reqs == 2) {
        l.phase = LsuPhase::kWaitGnt2;
        break;
      }
      info.lsu_final = true;
      break;
    case LsuPhase::kWaitRvalid2:
      if (!in.rvalid) break;
      info.lsu_response = true;
      l.resp[1] = in.rdata;
      info.lsu_final = true;
      break;
    case LsuPhase::kIdle:
      break;
  }
}

void Microcore::StepFetch(const CycleInputs &in, const FetchOutputs &out) {
  if (in.fetch_valid) {
    m_.fetch_outstanding = false;
    if (m_.fetch_drop) {
      m_.fetch_drop = false;
    } else if (!m_.fifo.Enqueue({in.fetch_addr, in.fetch_bits})) {
      throw std::logic_error("fetch FIFO overflow");
    }
  }
  if (out.req) {
    m_.fetch_outstanding = true;
    m_.fetch_next += 4;
  }
  if (redirected_) {
    m_.fifo.Flush();
    m_.fetch_next = m_.pc;
    m_.fetch_drop = m_.fetch_outstanding;
  }
}

CycleInfo Microcore::Step(const CycleInputs &in) {
  CycleInfo info;
  redirected_ = false;
  irq_in_ = in.irq;
  const PortOutputs port = DataPort();
  const FetchOutputs fetch0 = FetchPort();
  const LsuPhase phase0 = m_.lsu.phase;
  if (in.gnt && !port.req) throw std::logic_error("gnt without request");
  if (in.rvalid && phase0 != LsuPhase::kWaitRvalid1 &&
      phase0 != LsuPhase::kWaitRvalid2) {
    throw std::logic_error("rvalid without outstanding request");
  }
  if (in.fetch_valid && !m_.fetch_outstanding) {
    throw std::logic_error("fetch response without request");
  }

  const WbBuffer wb0 = m_.wb;
  const bool wb_free = !wb0.valid || wb0.known;
  const bool last_grant =
      in.gnt && ((phase0 == LsuPhase::kWaitGnt1 && m_.lsu.num_reqs == 1) ||
                 phase0 == LsuPhase::kWaitGnt2);

  StepLsu(in, info);
  const bool orphan_final = info.lsu_final && m_.lsu.orphan;

  // Writeback of a value known at the start of the cycle.
  if (wb0.valid && wb0.known) {
    CachedCap v = wb0.value;
    if (orphan_final) v.cap.address |= in.rdata.data;
    m_.regs[wb0.rd] = v;
    m_.wb.valid = false;
    info.wb_retire = true;
    info.wb_rd = wb0.rd;
    info.wb_value = v;
  }

  // Execute.
  if (m_.ex_mem_wait) {
    info.ex_stalled_on_memory = !last_grant;
    if (last_grant && !m_.lsu.orphan) {
      info.spec_en = true;
      info.decision_irq = m_.ex_irq_sample;
      m_.ex_mem_wait = false;
      const Instruction inst = *Decode(m_.fifo.head().bits);
      if (IsLoad(inst.op) && inst.rd != 0) {
        m_.wb = {true, inst.rd, false, {}};
      }
      m_.fifo.Dequeue();
      m_.pc += 4;
    }
  } else {
    bool go = wb_free;
    if (m_.sleeping) {
      if (in.irq) {
        m_.sleeping = false;
      } else {
        go = false;
      }
    }
    if (go && in.irq && Interruptible()) {
      info.spec_en = info.decided = info.interrupt = true;
      info.decision_irq = true;
      TakeTrap(ExceptionCause::kExternalInterrupt, 0, info);
    } else if (go && !m_.fifo.empty()) {
      const FetchEntry e = m_.fifo.head();
      if (e.addr != m_.pc) throw std::logic_error("fetch FIFO out of step");
      // Moving pcc to the pc clears the tag when the pc has left the
      // representable range; that shows up as a tag fault.
      const CachedCap at_pc = MicroSetAddress(m_.pcc, m_.pc, false);
      const std::optional<CapFault> fetch_fault =
          MicroCheck(at_pc, m_.pc, 4, AccessKind::kExecute, false);
      const std::optional<Instruction> inst = Decode(e.bits);
      const bool mem = inst && IsMemory(inst->op);
      if (mem && !fetch_fault && phase0 != LsuPhase::kIdle) {
        // Wait for the previous transaction to drain.
      } else {
        info.decided = true;
        info.decision_irq = in.irq;
        if (fetch_fault) {
          TakeTrap(*fetch_fault == CapFault::kBounds
                       ? ExceptionCause::kFetchBoundsViolation
                       : FaultCause(*fetch_fault),
                   m_.pc, info);
        } else if (!inst) {
          if (config_.mutation == Mutation::kM5 &&
              (e.bits & 0x7f) == kLoadOpcode && ((e.bits >> 12) & 7) == 7 &&
              phase0 == LsuPhase::kIdle) {
            // The decoder still hands the LSU a capability load.
            const uint32_t rs1 = (e.bits >> 15) & 0x1f;
            const uint32_t base = rs1 < kNumRegisters
                                      ? ReadReg(rs1).cap.address
                                      : 0;
            const uint32_t addr =
                (base + static_cast<uint32_t>(static_cast<int32_t>(e.bits) >>
                                              20)) &
                ~7u;
            LsuState l;
            l.reqs[0] = {addr, 0xf, 0, false, false};
            l.reqs[1] = {addr + 4, 0xf, 0, false, false};
            l.num_reqs = 2;
            l.orphan = true;
            l.phase = LsuPhase::kWaitGnt1;
            m_.lsu = l;
          }
          TakeTrap(ExceptionCause::kIllegalInstruction, e.bits, info);
        } else if (mem) {
          if (SetupMemory(*inst, info)) {
            m_.ex_mem_wait = true;
            m_.ex_irq_sample = in.irq;
          }
        } else {
          ExecuteNonMemory(*inst, info);
        }
        if (!m_.ex_mem_wait) {
          info.spec_en = true;
          if (!redirected_) {
            m_.fifo.Dequeue();
            m_.pc += 4;
          }
        }
      }
    }
  }

  // Load data lands in writeback.
  if (info.lsu_final) {
    if (m_.lsu.result != LsuResult::kNone && !m_.lsu.orphan) {
      if (m_.wb.valid && !m_.wb.known) {
        m_.wb.value = CompleteLoad(m_.lsu.resp);
        m_.wb.known = true;
      }
    }
    m_.lsu.phase = LsuPhase::kIdle;
  }

  StepFetch(in, fetch0);
  ++m_.cycle;
  return info;
}

ArchState Microcore::Abs() const {
  ArchState a;
  for (int r = 1; r < kNumRegisters; ++r) a.x[r] = m_.regs[r].cap;
  if (m_.wb.valid && m_.wb.known) a.x[m_.wb.rd] = m_.wb.value.cap;
  a.pcc = SetAddress(m_.pcc.cap, m_.pc);
  a.mtcc = m_.mtcc.cap;
  a.mepcc = m_.mepcc.cap;
  a.mtval = m_.mtval;
  a.mcause = m_.mcause;
  a.mie = m_.mie;
  a.mpie = m_.mpie;
  return a;
}

}  // namespace cheriot

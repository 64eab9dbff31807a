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

#include "cheriot/program.h"

#include <random>
#include <sstream>

#include "cheriot/capability.h"
#include "cheriot/isa.h"
#include "cheriot/isa_spec.h"

namespace cheriot {
namespace {

// Trap handler. Exceptions resume at mepc + 4 through a fresh executable
// capability; interrupts acknowledge the line and resume at mepc.
std::vector<uint32_t> Handler() {
  return {
      as::Csr(Op::kCsrrs, 14, kCsrMcause, 0),
      as::Branch(Op::kBlt, 14, 0, 28),
      as::CSpecialRw(14, kScrMepcc, 0),
      as::Addi(15, 14, 4),
      as::Auipcc(14, 0),
      as::CBinary(Op::kCSetAddr, 14, 14, 15),
      as::CSpecialRw(0, kScrMepcc, 14),
      as::Mret(),
      as::Store(Op::kSw, 0, 13, static_cast<int32_t>(kIrqAckAddr)),
      as::Mret(),
  };
}

// x13 keeps a memory root for the handler, x7 starts at the capability
// pool.
std::vector<uint32_t> Prologue(bool interrupts) {
  std::vector<uint32_t> p = {
      as::CUnary(Op::kCMove, 13, 1),
      as::Lui(7, kCapPool >> 12),
      as::CBinary(Op::kCSetAddr, 7, 1, 7),
  };
  if (interrupts) p.push_back(as::Csr(Op::kCsrrsi, 0, kCsrMstatus, 8));
  return p;
}

void FillPool(DataMemory &mem, std::mt19937_64 &rng) {
  const Capability mem_root = Capability::MemoryRoot(0);
  const Capability exec_root = Capability::ExecutableRoot(0);
  const Capability seal_root = Capability::SealingRoot(0);
  for (int k = 0; k < kCapPoolSlots; ++k) {
    const uint32_t slot = kCapPool + 8 * k;
    const uint32_t base = kCapPool + static_cast<uint32_t>(rng() % 0x200);
    const uint32_t len = static_cast<uint32_t>(1 + rng() % 0x400);
    Capability c;
    switch (rng() % 7) {
      case 0:
      case 1:
        c = SetBounds(SetAddress(mem_root, base), len).cap;
        break;
      case 2:
        c = SetBounds(SetAddress(exec_root, kResetPc), 0x1000).cap;
        break;
      case 3:
        c = SetBounds(SetAddress(seal_root, 1 + rng() % 6), 4).cap;
        break;
      case 4:
        c = AndPerms(SetBounds(SetAddress(mem_root, base), len).cap,
                     PermissionSet::FromMask(static_cast<uint32_t>(rng())));
        break;
      case 5:
        c = Seal(SetBounds(SetAddress(mem_root, base), len).cap,
                 SetAddress(seal_root, 1 + rng() % 6));
        break;
      default:
        c = FromBits(rng(), false);
        break;
    }
    mem.StoreCap(slot, c);
  }
  for (uint32_t a = kCapPool + 8 * kCapPoolSlots; a < kCapPool + 0x200;
       a += 4) {
    mem.WriteWord(a, static_cast<uint32_t>(rng()));
  }
}

class BodyGen {
 public:
  BodyGen(std::mt19937_64 &rng, const GenWeights &w) : rng_(rng), w_(w) {}

  void Emit(std::vector<uint32_t> &out) {
    const unsigned total = w_.alu + w_.branch + w_.jump + w_.load + w_.store +
                           w_.cap_load_store + w_.cap_derive + w_.cap_inspect +
                           w_.system + w_.illegal;
    unsigned pick = static_cast<unsigned>(rng_() % (total ? total : 1));
    auto take = [&](unsigned weight) {
      if (pick < weight) return true;
      pick -= weight;
      return false;
    };
    if (take(w_.alu)) return Alu(out);
    if (take(w_.branch)) return out.push_back(Branch());
    if (take(w_.jump)) return out.push_back(Jump());
    if (take(w_.load)) return out.push_back(Load());
    if (take(w_.store)) return out.push_back(Store());
    if (take(w_.cap_load_store)) return out.push_back(CapLoadStore());
    if (take(w_.cap_derive)) return out.push_back(CapDerive());
    if (take(w_.cap_inspect)) return out.push_back(CapInspect());
    if (take(w_.system)) return out.push_back(System());
    out.push_back(Illegal());
  }

 private:
  // x7 holds the pool pointer; overwriting it rarely keeps tagged stores
  // common.
  int Rd() {
    if (rng_() % 8 == 0) return 0;
    const int r = 1 + static_cast<int>(rng_() % 11);
    return r == 7 && rng_() % 8 != 0 ? 8 + static_cast<int>(rng_() % 4) : r;
  }
  int Rs() { return static_cast<int>(rng_() % kNumRegisters); }
  // Base register for memory accesses: usually the pool or the root.
  int Base() {
    switch (rng_() % 4) {
      case 0: return 7;
      case 1: return 13;
      default: return Rs();
    }
  }
  int32_t Imm12() { return static_cast<int32_t>(rng_() % 4096) - 2048; }
  int32_t SmallOffset(unsigned align) {
    int32_t off = static_cast<int32_t>(rng_() % 0x100);
    if (rng_() % 4 != 0) off &= ~static_cast<int32_t>(align - 1);
    return off;
  }
  uint32_t Interesting() {
    switch (rng_() % 6) {
      case 0: return kCapPool + static_cast<uint32_t>(rng_() % 0x200);
      case 1: return static_cast<uint32_t>(rng_() % 0x400);  // lengths
      case 2: return kResetPc + 4 * static_cast<uint32_t>(rng_() % 64);
      case 3: return static_cast<uint32_t>(rng_() % 0x100);  // perm masks
      case 4: return 0xfffffff0u + static_cast<uint32_t>(rng_() % 16);
      default: return static_cast<uint32_t>(rng_());
    }
  }

  void Alu(std::vector<uint32_t> &out) {
    static constexpr Op kImm[] = {Op::kAddi, Op::kSlti, Op::kSltiu,
                                  Op::kXori, Op::kOri,  Op::kAndi};
    static constexpr Op kShift[] = {Op::kSlli, Op::kSrli, Op::kSrai};
    static constexpr Op kReg[] = {Op::kAdd, Op::kSub, Op::kSll, Op::kSlt,
                                  Op::kSltu, Op::kXor, Op::kSrl, Op::kSra,
                                  Op::kOr,  Op::kAnd};
    switch (rng_() % 6) {
      case 0: {
        uint32_t w[2];
        as::LoadImmediate(1 + static_cast<int>(rng_() % 11), Interesting(), w);
        out.push_back(w[0]);
        out.push_back(w[1]);
        return;
      }
      case 1:
        out.push_back(as::IType(kImm[rng_() % 6], Rd(), Rs(), Imm12()));
        return;
      case 2:
        out.push_back(as::IType(kShift[rng_() % 3], Rd(), Rs(),
                                static_cast<int32_t>(rng_() % 32)));
        return;
      case 3:
        out.push_back(as::Lui(Rd(), static_cast<uint32_t>(rng_() & 0xfffff)));
        return;
      case 4:
        out.push_back(as::Auipcc(Rd(), static_cast<uint32_t>(rng_() % 4)));
        return;
      default:
        out.push_back(as::RType(kReg[rng_() % 10], Rd(), Rs(), Rs()));
        return;
    }
  }

  uint32_t Branch() {
    static constexpr Op kOps[] = {Op::kBeq, Op::kBne,  Op::kBlt,
                                  Op::kBge, Op::kBltu, Op::kBgeu};
    int32_t off = 4 * static_cast<int32_t>(1 + rng_() % 8);
    if (rng_() % 5 == 0) off = -off;
    if (rng_() % 16 == 0) off += 2;
    return as::Branch(kOps[rng_() % 6], Rs(), Rs(), off);
  }

  uint32_t Jump() {
    if (rng_() % 2) {
      int32_t off = 4 * static_cast<int32_t>(1 + rng_() % 8);
      if (rng_() % 16 == 0) off += 2;
      return as::Cjal(Rd(), off);
    }
    return as::Cjalr(Rd(), Rs(), static_cast<int32_t>(rng_() % 16));
  }

  uint32_t Load() {
    static constexpr Op kOps[] = {Op::kLb, Op::kLh, Op::kLw, Op::kLbu,
                                  Op::kLhu};
    const Op op = kOps[rng_() % 5];
    return as::Load(op, Rd(), Base(), SmallOffset(AccessWidth(op)));
  }

  uint32_t Store() {
    static constexpr Op kOps[] = {Op::kSb, Op::kSh, Op::kSw};
    const Op op = kOps[rng_() % 3];
    return as::Store(op, Rs(), Base(), SmallOffset(AccessWidth(op)));
  }

  uint32_t CapLoadStore() {
    const int32_t off = SmallOffset(8);
    const int base = rng_() % 3 ? 7 : Base();
    if (rng_() % 2) return as::Load(Op::kClc, Rd(), base, off);
    // Prefer registers likely to hold tagged values.
    static constexpr int kTagged[] = {1, 2, 7, 13};
    const int data = rng_() % 2 ? kTagged[rng_() % 4] : Rs();
    return as::Store(Op::kCsc, data, base, off);
  }

  uint32_t CapDerive() {
    static constexpr Op kOps[] = {Op::kCSetAddr,   Op::kCIncAddr,
                                  Op::kCSetBounds, Op::kCSetBoundsExact,
                                  Op::kCAndPerm,   Op::kCSeal,
                                  Op::kCUnseal};
    switch (rng_() % 9) {
      case 0:
        return as::CUnary(Op::kCMove, Rd(), Rs());
      case 1:
        return as::CIncAddrImm(Rd(), Rs(), Imm12());
      default:
        return as::CBinary(kOps[rng_() % 7], Rd(), Rs(), Rs());
    }
  }

  uint32_t CapInspect() {
    static constexpr Op kOps[] = {Op::kCGetPerm, Op::kCGetType,
                                  Op::kCGetBase, Op::kCGetLen,
                                  Op::kCGetTag,  Op::kCGetTop};
    if (rng_() % 7 == 0) return as::CBinary(Op::kCSeqx, Rd(), Rs(), Rs());
    return as::CUnary(kOps[rng_() % 6], Rd(), Rs());
  }

  uint32_t System() {
    static constexpr uint16_t kCsrs[] = {kCsrMstatus, kCsrMcause, kCsrMtval};
    switch (rng_() % 10) {
      case 0: return as::Ecall();
      case 1: return as::Ebreak();
      case 2: return as::Wfi();
      case 3:
        return as::CSpecialRw(Rd(), rng_() % 2 ? kScrMtcc : kScrMepcc, 0);
      case 4:
        // Writing mtcc would strand the handler; only mepcc is written.
        return as::CSpecialRw(Rd(), kScrMepcc, Rs());
      case 5:
        if (w_.enable_interrupts) {
          return as::Csr(rng_() % 2 ? Op::kCsrrsi : Op::kCsrrci, Rd(),
                         kCsrMstatus, 8);
        }
        [[fallthrough]];
      default:
        return as::Csr(Op::kCsrrs, Rd(), kCsrs[rng_() % 3], 0);
    }
  }

  uint32_t Illegal() {
    for (;;) {
      const uint32_t bits = static_cast<uint32_t>(rng_());
      if (!Decode(bits)) return bits;
    }
  }

  std::mt19937_64 &rng_;
  const GenWeights &w_;
};

}  // namespace

uint32_t Program::Fetch(uint32_t addr) const {
  auto it = code.find(addr);
  return it == code.end() ? kNopBits : it->second;
}

void Program::Place(uint32_t addr, const std::vector<uint32_t> &words) {
  for (uint32_t w : words) {
    code[addr] = w;
    addr += 4;
  }
}

std::string Program::Listing() const {
  std::ostringstream os;
  for (const auto &[addr, bits] : code) {
    char buf[32];
    snprintf(buf, sizeof buf, "%08x: %08x  ", addr, bits);
    os << buf;
    if (auto inst = Decode(bits)) {
      os << Disassemble(*inst);
    } else {
      os << "<illegal>";
    }
    os << "\n";
  }
  return os.str();
}

Program GenerateProgram(uint64_t seed, size_t length,
                        const GenWeights &weights) {
  std::mt19937_64 rng(seed);
  Program p;
  p.seed = seed;
  p.Place(kTrapVector, Handler());
  FillPool(p.memory, rng);
  std::vector<uint32_t> words = Prologue(weights.enable_interrupts);
  BodyGen gen(rng, weights);
  std::vector<uint32_t> body;
  while (body.size() < length) gen.Emit(body);
  body.resize(length);
  p.body_length = length;
  p.body_start = kResetPc + 4 * static_cast<uint32_t>(words.size());
  words.insert(words.end(), body.begin(), body.end());
  p.Place(kResetPc, words);
  return p;
}

Program MakeProgram(const std::vector<uint32_t> &body,
                    bool enable_interrupts) {
  Program p;
  p.Place(kTrapVector, Handler());
  std::vector<uint32_t> words = Prologue(enable_interrupts);
  p.body_start = kResetPc + 4 * static_cast<uint32_t>(words.size());
  words.insert(words.end(), body.begin(), body.end());
  p.Place(kResetPc, words);
  p.body_length = body.size();
  return p;
}

}  // namespace cheriot

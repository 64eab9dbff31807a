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

#include <cstdio>
#include <string>

#include "cheriot/isa.h"

namespace cheriot {
namespace {

constexpr uint32_t kOpcLoad = 0x03;
constexpr uint32_t kOpcOpImm = 0x13;
constexpr uint32_t kOpcAuipcc = 0x17;
constexpr uint32_t kOpcStore = 0x23;
constexpr uint32_t kOpcOp = 0x33;
constexpr uint32_t kOpcLui = 0x37;
constexpr uint32_t kOpcCheri = 0x5b;
constexpr uint32_t kOpcBranch = 0x63;
constexpr uint32_t kOpcCjalr = 0x67;
constexpr uint32_t kOpcCjal = 0x6f;
constexpr uint32_t kOpcSystem = 0x73;

constexpr uint32_t kEcallBits = 0x00000073;
constexpr uint32_t kEbreakBits = 0x00100073;
constexpr uint32_t kMretBits = 0x30200073;
constexpr uint32_t kWfiBits = 0x10500073;

// funct7 values under the CHERI opcode, funct3 = 0.
constexpr uint32_t kF7SpecialRw = 0x01;
constexpr uint32_t kF7SetBounds = 0x08;
constexpr uint32_t kF7SetBoundsExact = 0x09;
constexpr uint32_t kF7Seal = 0x0b;
constexpr uint32_t kF7Unseal = 0x0c;
constexpr uint32_t kF7AndPerm = 0x0d;
constexpr uint32_t kF7SetAddr = 0x10;
constexpr uint32_t kF7IncAddr = 0x11;
constexpr uint32_t kF7Seqx = 0x21;
constexpr uint32_t kF7Unary = 0x7f;

// rs2 selector under kF7Unary.
constexpr uint32_t kUGetPerm = 0x00;
constexpr uint32_t kUGetType = 0x01;
constexpr uint32_t kUGetBase = 0x02;
constexpr uint32_t kUGetLen = 0x03;
constexpr uint32_t kUGetTag = 0x04;
constexpr uint32_t kUMove = 0x0a;
constexpr uint32_t kUGetTop = 0x18;

uint32_t Rd(uint32_t b) { return (b >> 7) & 0x1f; }
uint32_t F3(uint32_t b) { return (b >> 12) & 0x7; }
uint32_t Rs1(uint32_t b) { return (b >> 15) & 0x1f; }
uint32_t Rs2(uint32_t b) { return (b >> 20) & 0x1f; }
uint32_t F7(uint32_t b) { return b >> 25; }

int32_t ImmI(uint32_t b) { return static_cast<int32_t>(b) >> 20; }
int32_t ImmS(uint32_t b) {
  return (static_cast<int32_t>(b & 0xfe000000) >> 20) |
         static_cast<int32_t>((b >> 7) & 0x1f);
}
int32_t ImmB(uint32_t b) {
  uint32_t v = ((b >> 31) << 12) | (((b >> 7) & 1) << 11) |
               (((b >> 25) & 0x3f) << 5) | (((b >> 8) & 0xf) << 1);
  return static_cast<int32_t>(v << 19) >> 19;
}
int32_t ImmJ(uint32_t b) {
  uint32_t v = ((b >> 31) << 20) | (((b >> 12) & 0xff) << 12) |
               (((b >> 20) & 1) << 11) | (((b >> 21) & 0x3ff) << 1);
  return static_cast<int32_t>(v << 11) >> 11;
}

uint32_t PackR(uint32_t opc, uint32_t f3, uint32_t f7, uint32_t rd,
               uint32_t rs1, uint32_t rs2) {
  return opc | (rd << 7) | (f3 << 12) | (rs1 << 15) | (rs2 << 20) |
         (f7 << 25);
}
uint32_t PackI(uint32_t opc, uint32_t f3, uint32_t rd, uint32_t rs1,
               int32_t imm) {
  return opc | (rd << 7) | (f3 << 12) | (rs1 << 15) |
         (static_cast<uint32_t>(imm) << 20);
}
uint32_t PackS(uint32_t opc, uint32_t f3, uint32_t rs1, uint32_t rs2,
               int32_t imm) {
  uint32_t u = static_cast<uint32_t>(imm);
  return opc | ((u & 0x1f) << 7) | (f3 << 12) | (rs1 << 15) | (rs2 << 20) |
         (((u >> 5) & 0x7f) << 25);
}
uint32_t PackB(uint32_t f3, uint32_t rs1, uint32_t rs2, int32_t imm) {
  uint32_t u = static_cast<uint32_t>(imm);
  return kOpcBranch | (((u >> 11) & 1) << 7) | (((u >> 1) & 0xf) << 8) |
         (f3 << 12) | (rs1 << 15) | (rs2 << 20) | (((u >> 5) & 0x3f) << 25) |
         (((u >> 12) & 1) << 31);
}
uint32_t PackJ(uint32_t rd, int32_t imm) {
  uint32_t u = static_cast<uint32_t>(imm);
  return kOpcCjal | (rd << 7) | (((u >> 12) & 0xff) << 12) |
         (((u >> 11) & 1) << 20) | (((u >> 1) & 0x3ff) << 21) |
         (((u >> 20) & 1) << 31);
}

bool RegOk(uint32_t r) { return r < kNumRegisters; }

std::optional<Instruction> Make(Op op, uint32_t rd, uint32_t rs1,
                                uint32_t rs2, int32_t imm, uint16_t csr = 0) {
  Instruction i;
  i.op = op;
  i.rd = static_cast<uint8_t>(rd);
  i.rs1 = static_cast<uint8_t>(rs1);
  i.rs2 = static_cast<uint8_t>(rs2);
  i.imm = imm;
  i.csr = csr;
  return i;
}

std::optional<Instruction> DecodeOpImm(uint32_t b) {
  uint32_t rd = Rd(b), rs1 = Rs1(b);
  if (!RegOk(rd) || !RegOk(rs1)) return std::nullopt;
  static constexpr Op kOps[8] = {Op::kAddi, Op::kSlli, Op::kSlti,
                                 Op::kSltiu, Op::kXori, Op::kSrli,
                                 Op::kOri,   Op::kAndi};
  uint32_t f3 = F3(b);
  if (f3 == 1) {
    if (F7(b) != 0) return std::nullopt;
    return Make(Op::kSlli, rd, rs1, 0, static_cast<int32_t>(Rs2(b)));
  }
  if (f3 == 5) {
    if (F7(b) == 0) return Make(Op::kSrli, rd, rs1, 0, Rs2(b));
    if (F7(b) == 0x20) return Make(Op::kSrai, rd, rs1, 0, Rs2(b));
    return std::nullopt;
  }
  return Make(kOps[f3], rd, rs1, 0, ImmI(b));
}

std::optional<Instruction> DecodeOp(uint32_t b) {
  uint32_t rd = Rd(b), rs1 = Rs1(b), rs2 = Rs2(b);
  if (!RegOk(rd) || !RegOk(rs1) || !RegOk(rs2)) return std::nullopt;
  static constexpr Op kBase[8] = {Op::kAdd, Op::kSll, Op::kSlt, Op::kSltu,
                                  Op::kXor, Op::kSrl, Op::kOr,  Op::kAnd};
  uint32_t f3 = F3(b), f7 = F7(b);
  if (f7 == 0) return Make(kBase[f3], rd, rs1, rs2, 0);
  if (f7 == 0x20 && f3 == 0) return Make(Op::kSub, rd, rs1, rs2, 0);
  if (f7 == 0x20 && f3 == 5) return Make(Op::kSra, rd, rs1, rs2, 0);
  return std::nullopt;
}

std::optional<Instruction> DecodeBranch(uint32_t b) {
  uint32_t rs1 = Rs1(b), rs2 = Rs2(b);
  if (!RegOk(rs1) || !RegOk(rs2)) return std::nullopt;
  Op op;
  switch (F3(b)) {
    case 0: op = Op::kBeq; break;
    case 1: op = Op::kBne; break;
    case 4: op = Op::kBlt; break;
    case 5: op = Op::kBge; break;
    case 6: op = Op::kBltu; break;
    case 7: op = Op::kBgeu; break;
    default: return std::nullopt;
  }
  return Make(op, 0, rs1, rs2, ImmB(b));
}

std::optional<Instruction> DecodeLoad(uint32_t b) {
  uint32_t rd = Rd(b), rs1 = Rs1(b);
  if (!RegOk(rd) || !RegOk(rs1)) return std::nullopt;
  Op op;
  switch (F3(b)) {
    case 0: op = Op::kLb; break;
    case 1: op = Op::kLh; break;
    case 2: op = Op::kLw; break;
    case 3: op = Op::kClc; break;
    case 4: op = Op::kLbu; break;
    case 5: op = Op::kLhu; break;
    default: return std::nullopt;
  }
  return Make(op, rd, rs1, 0, ImmI(b));
}

std::optional<Instruction> DecodeStore(uint32_t b) {
  uint32_t rs1 = Rs1(b), rs2 = Rs2(b);
  if (!RegOk(rs1) || !RegOk(rs2)) return std::nullopt;
  Op op;
  switch (F3(b)) {
    case 0: op = Op::kSb; break;
    case 1: op = Op::kSh; break;
    case 2: op = Op::kSw; break;
    case 3: op = Op::kCsc; break;
    default: return std::nullopt;
  }
  return Make(op, 0, rs1, rs2, ImmS(b));
}

std::optional<Instruction> DecodeSystem(uint32_t b) {
  switch (b) {
    case kEcallBits: return Make(Op::kEcall, 0, 0, 0, 0);
    case kEbreakBits: return Make(Op::kEbreak, 0, 0, 0, 0);
    case kMretBits: return Make(Op::kMret, 0, 0, 0, 0);
    case kWfiBits: return Make(Op::kWfi, 0, 0, 0, 0);
    default: break;
  }
  uint32_t rd = Rd(b), rs1 = Rs1(b);
  uint16_t csr = static_cast<uint16_t>(b >> 20);
  if (!RegOk(rd)) return std::nullopt;
  if (csr != kCsrMstatus && csr != kCsrMcause && csr != kCsrMtval) {
    return std::nullopt;
  }
  Op op;
  switch (F3(b)) {
    case 1: op = Op::kCsrrw; break;
    case 2: op = Op::kCsrrs; break;
    case 3: op = Op::kCsrrc; break;
    case 5: op = Op::kCsrrwi; break;
    case 6: op = Op::kCsrrsi; break;
    case 7: op = Op::kCsrrci; break;
    default: return std::nullopt;
  }
  if (F3(b) < 4 && !RegOk(rs1)) return std::nullopt;
  return Make(op, rd, rs1, 0, 0, csr);
}

std::optional<Instruction> DecodeCheri(uint32_t b) {
  uint32_t rd = Rd(b), rs1 = Rs1(b), rs2 = Rs2(b);
  if (!RegOk(rd) || !RegOk(rs1)) return std::nullopt;
  if (F3(b) == 1) return Make(Op::kCIncAddrImm, rd, rs1, 0, ImmI(b));
  if (F3(b) != 0) return std::nullopt;
  uint32_t f7 = F7(b);
  if (f7 == kF7Unary) {
    Op op;
    switch (rs2) {
      case kUGetPerm: op = Op::kCGetPerm; break;
      case kUGetType: op = Op::kCGetType; break;
      case kUGetBase: op = Op::kCGetBase; break;
      case kUGetLen: op = Op::kCGetLen; break;
      case kUGetTag: op = Op::kCGetTag; break;
      case kUMove: op = Op::kCMove; break;
      case kUGetTop: op = Op::kCGetTop; break;
      default: return std::nullopt;
    }
    return Make(op, rd, rs1, 0, 0);
  }
  if (f7 == kF7SpecialRw) {
    if (rs2 != kScrMtcc && rs2 != kScrMepcc) return std::nullopt;
    return Make(Op::kCSpecialRw, rd, rs1, 0, 0, static_cast<uint16_t>(rs2));
  }
  if (!RegOk(rs2)) return std::nullopt;
  Op op;
  switch (f7) {
    case kF7SetBounds: op = Op::kCSetBounds; break;
    case kF7SetBoundsExact: op = Op::kCSetBoundsExact; break;
    case kF7Seal: op = Op::kCSeal; break;
    case kF7Unseal: op = Op::kCUnseal; break;
    case kF7AndPerm: op = Op::kCAndPerm; break;
    case kF7SetAddr: op = Op::kCSetAddr; break;
    case kF7IncAddr: op = Op::kCIncAddr; break;
    case kF7Seqx: op = Op::kCSeqx; break;
    default: return std::nullopt;
  }
  return Make(op, rd, rs1, rs2, 0);
}

}  // namespace

const char *OpName(Op op) {
  static constexpr const char *kNames[] = {
      "addi",     "slti",      "sltiu",     "xori",       "ori",
      "andi",     "slli",      "srli",      "srai",       "add",
      "sub",      "sll",       "slt",       "sltu",       "xor",
      "srl",      "sra",       "or",        "and",        "lui",
      "auipcc",   "beq",       "bne",       "blt",        "bge",
      "bltu",     "bgeu",      "lb",        "lh",         "lw",
      "lbu",      "lhu",       "sb",        "sh",         "sw",
      "cjal",     "cjalr",     "csrrw",     "csrrs",      "csrrc",
      "csrrwi",   "csrrsi",    "csrrci",    "ecall",      "ebreak",
      "mret",     "wfi",       "cgetperm",  "cgettype",   "cgetbase",
      "cgetlen",  "cgettag",   "cgettop",   "cmove",      "csetaddr",
      "cincaddr", "cincaddrimm", "csetbounds", "csetboundsexact",
      "candperm", "cseal",     "cunseal",   "cseqx",      "clc",
      "csc",      "cspecialrw",
  };
  return kNames[static_cast<int>(op)];
}

std::optional<Instruction> Decode(uint32_t b) {
  switch (b & 0x7f) {
    case kOpcOpImm: return DecodeOpImm(b);
    case kOpcOp: return DecodeOp(b);
    case kOpcLui:
    case kOpcAuipcc:
      if (!RegOk(Rd(b))) return std::nullopt;
      return Make((b & 0x7f) == kOpcLui ? Op::kLui : Op::kAuipcc, Rd(b), 0, 0,
                  static_cast<int32_t>(b & 0xfffff000));
    case kOpcBranch: return DecodeBranch(b);
    case kOpcLoad: return DecodeLoad(b);
    case kOpcStore: return DecodeStore(b);
    case kOpcCjal:
      if (!RegOk(Rd(b))) return std::nullopt;
      return Make(Op::kCjal, Rd(b), 0, 0, ImmJ(b));
    case kOpcCjalr:
      if (F3(b) != 0 || !RegOk(Rd(b)) || !RegOk(Rs1(b))) return std::nullopt;
      return Make(Op::kCjalr, Rd(b), Rs1(b), 0, ImmI(b));
    case kOpcSystem: return DecodeSystem(b);
    case kOpcCheri: return DecodeCheri(b);
    default: return std::nullopt;
  }
}

uint32_t Encode(const Instruction &i) {
  const uint32_t rd = i.rd, rs1 = i.rs1, rs2 = i.rs2;
  switch (i.op) {
    case Op::kAddi: return PackI(kOpcOpImm, 0, rd, rs1, i.imm);
    case Op::kSlti: return PackI(kOpcOpImm, 2, rd, rs1, i.imm);
    case Op::kSltiu: return PackI(kOpcOpImm, 3, rd, rs1, i.imm);
    case Op::kXori: return PackI(kOpcOpImm, 4, rd, rs1, i.imm);
    case Op::kOri: return PackI(kOpcOpImm, 6, rd, rs1, i.imm);
    case Op::kAndi: return PackI(kOpcOpImm, 7, rd, rs1, i.imm);
    case Op::kSlli: return PackR(kOpcOpImm, 1, 0, rd, rs1, i.imm & 0x1f);
    case Op::kSrli: return PackR(kOpcOpImm, 5, 0, rd, rs1, i.imm & 0x1f);
    case Op::kSrai: return PackR(kOpcOpImm, 5, 0x20, rd, rs1, i.imm & 0x1f);
    case Op::kAdd: return PackR(kOpcOp, 0, 0, rd, rs1, rs2);
    case Op::kSub: return PackR(kOpcOp, 0, 0x20, rd, rs1, rs2);
    case Op::kSll: return PackR(kOpcOp, 1, 0, rd, rs1, rs2);
    case Op::kSlt: return PackR(kOpcOp, 2, 0, rd, rs1, rs2);
    case Op::kSltu: return PackR(kOpcOp, 3, 0, rd, rs1, rs2);
    case Op::kXor: return PackR(kOpcOp, 4, 0, rd, rs1, rs2);
    case Op::kSrl: return PackR(kOpcOp, 5, 0, rd, rs1, rs2);
    case Op::kSra: return PackR(kOpcOp, 5, 0x20, rd, rs1, rs2);
    case Op::kOr: return PackR(kOpcOp, 6, 0, rd, rs1, rs2);
    case Op::kAnd: return PackR(kOpcOp, 7, 0, rd, rs1, rs2);
    case Op::kLui:
      return kOpcLui | (rd << 7) | (static_cast<uint32_t>(i.imm) & 0xfffff000);
    case Op::kAuipcc:
      return kOpcAuipcc | (rd << 7) |
             (static_cast<uint32_t>(i.imm) & 0xfffff000);
    case Op::kBeq: return PackB(0, rs1, rs2, i.imm);
    case Op::kBne: return PackB(1, rs1, rs2, i.imm);
    case Op::kBlt: return PackB(4, rs1, rs2, i.imm);
    case Op::kBge: return PackB(5, rs1, rs2, i.imm);
    case Op::kBltu: return PackB(6, rs1, rs2, i.imm);
    case Op::kBgeu: return PackB(7, rs1, rs2, i.imm);
    case Op::kLb: return PackI(kOpcLoad, 0, rd, rs1, i.imm);
    case Op::kLh: return PackI(kOpcLoad, 1, rd, rs1, i.imm);
    case Op::kLw: return PackI(kOpcLoad, 2, rd, rs1, i.imm);
    case Op::kClc: return PackI(kOpcLoad, 3, rd, rs1, i.imm);
    case Op::kLbu: return PackI(kOpcLoad, 4, rd, rs1, i.imm);
    case Op::kLhu: return PackI(kOpcLoad, 5, rd, rs1, i.imm);
    case Op::kSb: return PackS(kOpcStore, 0, rs1, rs2, i.imm);
    case Op::kSh: return PackS(kOpcStore, 1, rs1, rs2, i.imm);
    case Op::kSw: return PackS(kOpcStore, 2, rs1, rs2, i.imm);
    case Op::kCsc: return PackS(kOpcStore, 3, rs1, rs2, i.imm);
    case Op::kCjal: return PackJ(rd, i.imm);
    case Op::kCjalr: return PackI(kOpcCjalr, 0, rd, rs1, i.imm);
    case Op::kCsrrw: return PackI(kOpcSystem, 1, rd, rs1, i.csr);
    case Op::kCsrrs: return PackI(kOpcSystem, 2, rd, rs1, i.csr);
    case Op::kCsrrc: return PackI(kOpcSystem, 3, rd, rs1, i.csr);
    case Op::kCsrrwi: return PackI(kOpcSystem, 5, rd, rs1, i.csr);
    case Op::kCsrrsi: return PackI(kOpcSystem, 6, rd, rs1, i.csr);
    case Op::kCsrrci: return PackI(kOpcSystem, 7, rd, rs1, i.csr);
    case Op::kEcall: return kEcallBits;
    case Op::kEbreak: return kEbreakBits;
    case Op::kMret: return kMretBits;
    case Op::kWfi: return kWfiBits;
    case Op::kCGetPerm: return PackR(kOpcCheri, 0, kF7Unary, rd, rs1, kUGetPerm);
    case Op::kCGetType: return PackR(kOpcCheri, 0, kF7Unary, rd, rs1, kUGetType);
    case Op::kCGetBase: return PackR(kOpcCheri, 0, kF7Unary, rd, rs1, kUGetBase);
    case Op::kCGetLen: return PackR(kOpcCheri, 0, kF7Unary, rd, rs1, kUGetLen);
    case Op::kCGetTag: return PackR(kOpcCheri, 0, kF7Unary, rd, rs1, kUGetTag);
    case Op::kCGetTop: return PackR(kOpcCheri, 0, kF7Unary, rd, rs1, kUGetTop);
    case Op::kCMove: return PackR(kOpcCheri, 0, kF7Unary, rd, rs1, kUMove);
    case Op::kCSetAddr: return PackR(kOpcCheri, 0, kF7SetAddr, rd, rs1, rs2);
    case Op::kCIncAddr: return PackR(kOpcCheri, 0, kF7IncAddr, rd, rs1, rs2);
    case Op::kCIncAddrImm: return PackI(kOpcCheri, 1, rd, rs1, i.imm);
    case Op::kCSetBounds:
      return PackR(kOpcCheri, 0, kF7SetBounds, rd, rs1, rs2);
    case Op::kCSetBoundsExact:
      return PackR(kOpcCheri, 0, kF7SetBoundsExact, rd, rs1, rs2);
    case Op::kCAndPerm: return PackR(kOpcCheri, 0, kF7AndPerm, rd, rs1, rs2);
    case Op::kCSeal: return PackR(kOpcCheri, 0, kF7Seal, rd, rs1, rs2);
    case Op::kCUnseal: return PackR(kOpcCheri, 0, kF7Unseal, rd, rs1, rs2);
    case Op::kCSeqx: return PackR(kOpcCheri, 0, kF7Seqx, rd, rs1, rs2);
    case Op::kCSpecialRw:
      return PackR(kOpcCheri, 0, kF7SpecialRw, rd, rs1, i.csr & 0x1f);
  }
  return 0;
}

std::string Disassemble(const Instruction &i) {
  char buf[96];
  const char *n = OpName(i.op);
  switch (i.op) {
    case Op::kLui:
    case Op::kAuipcc:
      std::snprintf(buf, sizeof buf, "%s x%d, 0x%x", n, i.rd,
                    static_cast<uint32_t>(i.imm) >> 12);
      break;
    case Op::kBeq: case Op::kBne: case Op::kBlt:
    case Op::kBge: case Op::kBltu: case Op::kBgeu:
      std::snprintf(buf, sizeof buf, "%s x%d, x%d, %d", n, i.rs1, i.rs2,
                    i.imm);
      break;
    case Op::kLb: case Op::kLh: case Op::kLw: case Op::kLbu: case Op::kLhu:
    case Op::kClc: case Op::kCjalr:
      std::snprintf(buf, sizeof buf, "%s x%d, %d(x%d)", n, i.rd, i.imm,
                    i.rs1);
      break;
    case Op::kSb: case Op::kSh: case Op::kSw: case Op::kCsc:
      std::snprintf(buf, sizeof buf, "%s x%d, %d(x%d)", n, i.rs2, i.imm,
                    i.rs1);
      break;
    case Op::kCjal:
      std::snprintf(buf, sizeof buf, "%s x%d, %d", n, i.rd, i.imm);
      break;
    case Op::kCsrrw: case Op::kCsrrs: case Op::kCsrrc:
      std::snprintf(buf, sizeof buf, "%s x%d, 0x%x, x%d", n, i.rd, i.csr,
                    i.rs1);
      break;
    case Op::kCsrrwi: case Op::kCsrrsi: case Op::kCsrrci:
      std::snprintf(buf, sizeof buf, "%s x%d, 0x%x, %d", n, i.rd, i.csr,
                    i.rs1);
      break;
    case Op::kEcall: case Op::kEbreak: case Op::kMret: case Op::kWfi:
      std::snprintf(buf, sizeof buf, "%s", n);
      break;
    case Op::kCGetPerm: case Op::kCGetType: case Op::kCGetBase:
    case Op::kCGetLen: case Op::kCGetTag: case Op::kCGetTop: case Op::kCMove:
      std::snprintf(buf, sizeof buf, "%s x%d, x%d", n, i.rd, i.rs1);
      break;
    case Op::kCSpecialRw:
      std::snprintf(buf, sizeof buf, "%s x%d, %s, x%d", n, i.rd,
                    i.csr == kScrMtcc ? "mtcc" : "mepcc", i.rs1);
      break;
    case Op::kAddi: case Op::kSlti: case Op::kSltiu: case Op::kXori:
    case Op::kOri: case Op::kAndi: case Op::kSlli: case Op::kSrli:
    case Op::kSrai: case Op::kCIncAddrImm:
      std::snprintf(buf, sizeof buf, "%s x%d, x%d, %d", n, i.rd, i.rs1,
                    i.imm);
      break;
    default:
      std::snprintf(buf, sizeof buf, "%s x%d, x%d, x%d", n, i.rd, i.rs1,
                    i.rs2);
      break;
  }
  return buf;
}

bool IsLoad(Op op) {
  switch (op) {
    case Op::kLb: case Op::kLh: case Op::kLw: case Op::kLbu: case Op::kLhu:
    case Op::kClc:
      return true;
    default:
      return false;
  }
}

bool IsStore(Op op) {
  switch (op) {
    case Op::kSb: case Op::kSh: case Op::kSw: case Op::kCsc:
      return true;
    default:
      return false;
  }
}

unsigned AccessWidth(Op op) {
  switch (op) {
    case Op::kLb: case Op::kLbu: case Op::kSb: return 1;
    case Op::kLh: case Op::kLhu: case Op::kSh: return 2;
    case Op::kLw: case Op::kSw: return 4;
    case Op::kClc: case Op::kCsc: return 8;
    default: return 0;
  }
}

namespace as {

namespace {
Instruction I(Op op, int rd, int rs1, int rs2, int32_t imm,
              uint16_t csr = 0) {
  Instruction i;
  i.op = op;
  i.rd = static_cast<uint8_t>(rd);
  i.rs1 = static_cast<uint8_t>(rs1);
  i.rs2 = static_cast<uint8_t>(rs2);
  i.imm = imm;
  i.csr = csr;
  return i;
}
}  // namespace

uint32_t RType(Op op, int rd, int rs1, int rs2) {
  return Encode(I(op, rd, rs1, rs2, 0));
}
uint32_t IType(Op op, int rd, int rs1, int32_t imm) {
  return Encode(I(op, rd, rs1, 0, imm));
}
uint32_t Lui(int rd, uint32_t upper20) {
  return Encode(I(Op::kLui, rd, 0, 0, static_cast<int32_t>(upper20 << 12)));
}
uint32_t Auipcc(int rd, uint32_t upper20) {
  return Encode(
      I(Op::kAuipcc, rd, 0, 0, static_cast<int32_t>(upper20 << 12)));
}
uint32_t Branch(Op op, int rs1, int rs2, int32_t offset) {
  return Encode(I(op, 0, rs1, rs2, offset));
}
uint32_t Load(Op op, int rd, int rs1, int32_t offset) {
  return Encode(I(op, rd, rs1, 0, offset));
}
uint32_t Store(Op op, int rs2, int rs1, int32_t offset) {
  return Encode(I(op, 0, rs1, rs2, offset));
}
uint32_t Cjal(int rd, int32_t offset) {
  return Encode(I(Op::kCjal, rd, 0, 0, offset));
}
uint32_t Cjalr(int rd, int rs1, int32_t offset) {
  return Encode(I(Op::kCjalr, rd, rs1, 0, offset));
}
uint32_t Csr(Op op, int rd, uint16_t csr, int rs1_or_zimm) {
  return Encode(I(op, rd, rs1_or_zimm, 0, 0, csr));
}
uint32_t Ecall() { return kEcallBits; }
uint32_t Ebreak() { return kEbreakBits; }
uint32_t Mret() { return kMretBits; }
uint32_t Wfi() { return kWfiBits; }
uint32_t CUnary(Op op, int rd, int rs1) {
  return Encode(I(op, rd, rs1, 0, 0));
}
uint32_t CBinary(Op op, int rd, int rs1, int rs2) {
  return Encode(I(op, rd, rs1, rs2, 0));
}
uint32_t CIncAddrImm(int rd, int rs1, int32_t imm) {
  return Encode(I(Op::kCIncAddrImm, rd, rs1, 0, imm));
}
uint32_t CSpecialRw(int rd, uint16_t scr, int rs1) {
  return Encode(I(Op::kCSpecialRw, rd, rs1, 0, 0, scr));
}

void LoadImmediate(int rd, uint32_t value, uint32_t out[2]) {
  // ADDI sign-extends, so round the upper part.
  uint32_t upper = (value + 0x800) >> 12;
  int32_t lower = static_cast<int32_t>(value << 20) >> 20;
  out[0] = Lui(rd, upper & 0xfffff);
  out[1] = Addi(rd, rd, lower);
}

}  // namespace as
}  // namespace cheriot

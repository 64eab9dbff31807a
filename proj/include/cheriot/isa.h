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

#ifndef CHERIOT_ISA_H_
#define CHERIOT_ISA_H_

// Instruction set: the decoded form, a strict decoder and an encoder for the
// implemented RV32E + CHERIoT subset.

#include <cstdint>
#include <optional>
#include <string>

namespace cheriot {

enum class Op : uint8_t {
  // Integer register-immediate.
  kAddi, kSlti, kSltiu, kXori, kOri, kAndi, kSlli, kSrli, kSrai,
  // Integer register-register.
  kAdd, kSub, kSll, kSlt, kSltu, kXor, kSrl, kSra, kOr, kAnd,
  kLui, kAuipcc,
  kBeq, kBne, kBlt, kBge, kBltu, kBgeu,
  kLb, kLh, kLw, kLbu, kLhu, kSb, kSh, kSw,
  kCjal, kCjalr,
  kCsrrw, kCsrrs, kCsrrc, kCsrrwi, kCsrrsi, kCsrrci,
  kEcall, kEbreak, kMret, kWfi,
  // Capability inspection.
  kCGetPerm, kCGetType, kCGetBase, kCGetLen, kCGetTag, kCGetTop,
  // Capability manipulation.
  kCMove, kCSetAddr, kCIncAddr, kCIncAddrImm, kCSetBounds, kCSetBoundsExact,
  kCAndPerm, kCSeal, kCUnseal, kCSeqx,
  kClc, kCsc, kCSpecialRw,
};

inline constexpr int kNumRegisters = 16;  // RV32E

// Special capability register indices for CSpecialRW.
inline constexpr uint16_t kScrMtcc = 28;
inline constexpr uint16_t kScrMepcc = 31;

// CSR numbers.
inline constexpr uint16_t kCsrMstatus = 0x300;
inline constexpr uint16_t kCsrMcause = 0x342;
inline constexpr uint16_t kCsrMtval = 0x343;

inline constexpr uint32_t kNopBits = 0x00000013;

struct Instruction {
  Op op = Op::kAddi;
  uint8_t rd = 0;
  uint8_t rs1 = 0;  // also the 5-bit immediate of CSRR*I
  uint8_t rs2 = 0;
  int32_t imm = 0;  // sign-extended; U-type holds the shifted value
  uint16_t csr = 0;  // CSR number, or SCR index for CSpecialRW

  friend bool operator==(const Instruction &, const Instruction &) = default;
};

const char *OpName(Op op);

std::optional<Instruction> Decode(uint32_t bits);
uint32_t Encode(const Instruction &inst);
std::string Disassemble(const Instruction &inst);

bool IsLoad(Op op);   // LB..LHU, CLC
bool IsStore(Op op);  // SB..SW, CSC
inline bool IsMemory(Op op) { return IsLoad(op) || IsStore(op); }
// Width in bytes of a memory access.
unsigned AccessWidth(Op op);

// Convenience builders used by the program generator and directed tests.
namespace as {

uint32_t RType(Op op, int rd, int rs1, int rs2);
uint32_t IType(Op op, int rd, int rs1, int32_t imm);
inline uint32_t Addi(int rd, int rs1, int32_t imm) {
  return IType(Op::kAddi, rd, rs1, imm);
}
uint32_t Lui(int rd, uint32_t upper20);
uint32_t Auipcc(int rd, uint32_t upper20);
uint32_t Branch(Op op, int rs1, int rs2, int32_t offset);
uint32_t Load(Op op, int rd, int rs1, int32_t offset);
uint32_t Store(Op op, int rs2, int rs1, int32_t offset);
uint32_t Cjal(int rd, int32_t offset);
uint32_t Cjalr(int rd, int rs1, int32_t offset);
uint32_t Csr(Op op, int rd, uint16_t csr, int rs1_or_zimm);
uint32_t Ecall();
uint32_t Ebreak();
uint32_t Mret();
uint32_t Wfi();
uint32_t CUnary(Op op, int rd, int rs1);  // CGet*, CMove
uint32_t CBinary(Op op, int rd, int rs1, int rs2);
uint32_t CIncAddrImm(int rd, int rs1, int32_t imm);
uint32_t CSpecialRw(int rd, uint16_t scr, int rs1);

// Loads a 32-bit constant with LUI + ADDI (two words).
void LoadImmediate(int rd, uint32_t value, uint32_t out[2]);

}  // namespace as

}  // namespace cheriot

#endif  // CHERIOT_ISA_H_

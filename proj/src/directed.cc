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

#include "cheriot/directed.h"

#include <sstream>

#include "cheriot/capability.h"
#include "cheriot/isa.h"

namespace cheriot {
namespace {

// Prologue registers: x13 is a full-space memory root, x7 points at the
// capability pool.

DirectedCase TopOfRange() {
  DirectedCase c;
  c.name = "load-top-of-address-space";
  c.target = Mutation::kM1;
  // A word load at 0xfffffffe runs two bytes past the top of memory.
  c.program = MakeProgram({as::Load(Op::kLw, 3, 13, -2),
                           as::Addi(4, 3, 1)});
  c.program.memory.WriteWord(0xfffffffc, 0x11223344);
  c.program.memory.WriteWord(0, 0x55667788);
  c.schedule = TimingSchedule::Fixed(2, 2, 1, 1, 16);
  c.spec_en = 6;
  c.expected = Checker::kFollower;
  return c;
}

DirectedCase UnrepresentableTrapPc() {
  // Executable capability over [0xff7c0000, 0xfffbc000). A jump from
  // inside it to 0xfffc0000 leaves the representable range, so the fetch
  // there faults with a pc the capability cannot hold.
  Capability code;
  code.tag = true;
  code.address = 0xfffb8000;
  code.exponent = 14;
  code.b_field = 0x1f0;
  code.t_field = 0x1ef;
  code.perms = MakePermCode(PermKind::kExecutable, 0xf);
  DirectedCase c;
  c.name = "trap-at-unrepresentable-pc";
  c.target = Mutation::kM2;
  c.program = MakeProgram({as::Load(Op::kClc, 3, 7, 0),
                           as::Cjalr(0, 3, 0)});
  c.program.memory.StoreCap(kCapPool, code);
  c.program.Place(0xfffb8000, {as::Cjal(0, 0x8000)});
  c.schedule = TimingSchedule::Fixed(1, 1, 1, 1, 16);
  c.spec_en = 10;
  c.expected = Checker::kDti;
  return c;
}

DirectedCase LoadExecutableWithoutStore() {
  DirectedCase c;
  c.name = "clc-executable-via-no-store-authority";
  c.target = Mutation::kM3;
  c.program = MakeProgram({
      as::Addi(5, 0, 0xf7),
      as::CBinary(Op::kCAndPerm, 4, 7, 5),
      as::Load(Op::kClc, 3, 4, 0),
      as::Addi(6, 0, 1),
  });
  c.program.memory.StoreCap(
      kCapPool, SetBounds(Capability::ExecutableRoot(kResetPc), 0x100).cap);
  c.schedule = TimingSchedule::Fixed(1, 2, 1, 1, 16);
  c.spec_en = 8;
  c.expected = Checker::kMonotonicity;
  return c;
}

DirectedCase SetBoundsBelowBase() {
  DirectedCase c;
  c.name = "set-bounds-below-base";
  c.target = Mutation::kM4;
  c.program = MakeProgram({
      as::Lui(3, 0x80000),
      as::CBinary(Op::kCSetAddr, 3, 13, 3),
      as::CBinary(Op::kCSetBounds, 3, 3, 3),  // [0x80000000, 2^32)
      as::Lui(4, 0x10000),
      as::CBinary(Op::kCSetAddr, 3, 3, 4),
      as::Addi(4, 0, 0x100),
      as::CBinary(Op::kCSetBounds, 5, 3, 4),
      as::Addi(6, 0, 1),
  });
  c.schedule = TimingSchedule::Fixed(1, 1, 1, 1, 16);
  c.spec_en = 12;
  c.expected = Checker::kMonotonicity;
  return c;
}

DirectedCase IllegalCapLoadCollision() {
  // LOAD with funct3 = 7 is not an instruction. The handler's first
  // instructions write registers while any stray response would arrive.
  const uint32_t illegal = (7u << 15) | (7u << 12) | 0x03;
  DirectedCase c;
  c.name = "illegal-clc-late-response";
  c.target = Mutation::kM5;
  c.program = MakeProgram({illegal, as::Addi(6, 0, 1)});
  c.program.memory.WriteWord(kCapPool, 0x00f00000);
  c.program.memory.WriteWord(kCapPool + 4, 0x00f00000);
  c.spec_en = 10;
  c.expected = Checker::kContinuity;
  // Latencies under which the second stray response meets a writeback.
  c.schedule = TimingSchedule::Fixed(1, 1, 1, 1, 16);
  for (unsigned g = 1; g <= 4; ++g) {
    for (unsigned r = 1; r <= 4; ++r) {
      for (unsigned f = 1; f <= 3; ++f) {
        TimingSchedule t = TimingSchedule::Fixed(g, r, f, 1, 16);
        c.schedule = t;
        if (RunDirected(c, Mutation::kM5).Detected(Checker::kContinuity)) {
          return c;
        }
      }
    }
  }
  return c;
}

DirectedCase MoveAcrossCorrectionBoundary() {
  // Bounds [0x1f0, 0x210) with E = 0; the base and top corrections flip
  // as the address crosses 0x200.
  DirectedCase c;
  c.name = "set-address-across-correction-boundary";
  c.target = Mutation::kM6;
  c.program = MakeProgram({
      as::Addi(3, 0, 0x1f0),
      as::CBinary(Op::kCSetAddr, 3, 13, 3),
      as::Addi(4, 0, 0x20),
      as::CBinary(Op::kCSetBounds, 3, 3, 4),
      as::CIncAddrImm(3, 3, 0x10),
      as::CIncAddrImm(3, 3, -0xb),
      as::Load(Op::kLw, 5, 3, 0),
  });
  c.schedule = TimingSchedule::Fixed(1, 1, 1, 1, 16);
  c.spec_en = 12;
  c.expected = Checker::kDti;
  return c;
}

}  // namespace

std::vector<DirectedCase> DirectedCases() {
  return {TopOfRange(),       UnrepresentableTrapPc(),
          LoadExecutableWithoutStore(), SetBoundsBelowBase(),
          IllegalCapLoadCollision(),   MoveAcrossCorrectionBoundary()};
}

RunResult RunDirected(const DirectedCase &c, Mutation m, bool record_trace) {
  RunOptions o;
  o.micro.mutation = m;
  o.max_spec_en = c.spec_en;
  o.record_trace = record_trace;
  return RunHarness(c.program, c.schedule, o);
}

bool DetectionMatrix::FullDiagonal() const {
  for (int i = 0; i < 6; ++i) {
    if (cell[i][i].passed()) return false;
  }
  return true;
}

std::string DetectionMatrix::ToString() const {
  std::ostringstream os;
  os << "mutation";
  for (int j = 0; j < 6; ++j) os << "  case" << j + 1;
  os << "\n";
  auto row = [&](const std::string &name,
                 const std::array<RunResult, 6> &cells) {
    os << name;
    for (size_t k = name.size(); k < 8; ++k) os << ' ';
    for (const RunResult &r : cells) {
      os << "  " << (r.passed() ? "  .  " : "  X  ");
    }
    os << "\n";
  };
  row("none", unmutated);
  for (int i = 0; i < 6; ++i) {
    row(std::string(MutationName(kAllMutations[i])), cell[i]);
  }
  return os.str();
}

DetectionMatrix RunDetectionMatrix(const std::vector<DirectedCase> &cases) {
  DetectionMatrix d;
  for (size_t j = 0; j < cases.size() && j < 6; ++j) {
    d.unmutated[j] = RunDirected(cases[j], Mutation::kNone);
    for (int i = 0; i < 6; ++i) {
      d.cell[i][j] = RunDirected(cases[j], kAllMutations[i]);
    }
  }
  return d;
}

}  // namespace cheriot

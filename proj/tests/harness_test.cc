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

#include <random>

#include <gtest/gtest.h>

#include "cheriot/directed.h"
#include "cheriot/driver.h"
#include "cheriot/isa.h"
#include "cheriot/program.h"
#include "liveness_oracle.h"

namespace cheriot {
namespace {

TEST(HarnessTest, RandomProgramsPassEveryChecker) {
  std::mt19937_64 rng(2026);
  for (int run = 0; run < 200; ++run) {
    const uint64_t seed = rng();
    Program p = GenerateProgram(seed, 200);
    TimingSchedule t = TimingSchedule::Random(rng, {}, 200);
    RunOptions o;
    o.max_spec_en = 200;
    RunResult r = RunHarness(p, t, o);
    ASSERT_TRUE(r.passed()) << "seed " << seed << "\n" << r.Summary();
    ASSERT_EQ(r.spec_en, 200u);
  }
}


TEST(HarnessTest, SingleAluInstructionPasses) {
  Program p = MakeProgram({as::Addi(5, 0, 42)});
  RunOptions o;
  o.max_spec_en = 8;
  RunResult r = RunHarness(p, TimingSchedule::Fixed(1, 1, 1, 1, 8), o);
  EXPECT_TRUE(r.passed()) << r.Summary();
  EXPECT_EQ(r.spec_en, 8u);
}

TEST(HarnessTest, NopProgramHasNoPortEvents) {
  Program p = MakeProgram({});
  RunOptions o;
  o.max_spec_en = 50;
  o.record_trace = true;
  RunResult r = RunHarness(p, TimingSchedule::Fixed(3, 3, 2, 1, 50), o);
  EXPECT_TRUE(r.passed()) << r.Summary();
  for (const std::string &line : r.trace) {
    EXPECT_EQ(line.find("port_out"), std::string::npos) << line;
  }
}

TEST(HarnessTest, ExpectedPortEventsNoneIsEmpty) {
  EXPECT_TRUE(ExpectedPortEvents({}, TimingSchedule{}, 0).empty());
}

TEST(HarnessTest, ExpectedPortEventsHoldsRequestUntilGrant) {
  MemEventPlan plan;
  plan.kind = PlanKind::kRead;
  plan.requests.push_back({.addr = 0x100, .be = 0xf});
  TimingSchedule t;
  t.gnt = {2};
  const std::vector<PortOutputs> ev = ExpectedPortEvents(plan, t, 0);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_EQ(ev[0], ev[1]);
  EXPECT_TRUE(ev[0].req);
  EXPECT_FALSE(ev[0].we);
  EXPECT_EQ(ev[0].addr, 0x100u);
}

TEST(HarnessTest, ExpectedPortEventsTaggedStoreIsTwoWrites) {
  MemEventPlan plan;
  plan.kind = PlanKind::kWrite;
  plan.requests.push_back(
      {.addr = 0x200, .be = 0xf, .wdata = 1, .wtag = true, .we = true});
  plan.requests.push_back(
      {.addr = 0x204, .be = 0xf, .wdata = 2, .wtag = true, .we = true});
  TimingSchedule t;
  t.gnt = {1, 1};
  const std::vector<PortOutputs> ev = ExpectedPortEvents(plan, t, 0);
  ASSERT_EQ(ev.size(), 2u);
  for (const PortOutputs &e : ev) {
    EXPECT_TRUE(e.we);
    EXPECT_TRUE(e.wtag);
  }
  EXPECT_EQ(ev[1].addr, 0x204u);
}

TEST(HarnessTest, DtiHoldsAtReset) {
  EXPECT_EQ(CheckDti(MicroState::Reset()), std::nullopt);
}

TEST(HarnessTest, DtiNamesBlockWithStaleCorrections) {
  MicroState m = MicroState::Reset();
  Capability c = Capability::MemoryRoot(0x1000);
  c = SetBounds(c, 0x40).cap;
  ASSERT_TRUE(c.tag);
  m.regs[3] = CachedCap::From(c);
  EXPECT_EQ(CheckDti(m), std::nullopt);
  m.regs[3].cor.top_cor += 1;
  const std::optional<std::string> why = CheckDti(m);
  ASSERT_TRUE(why.has_value());
  EXPECT_NE(why->find("x3"), std::string::npos) << *why;

  MicroState w = MicroState::Reset();
  w.wb.valid = true;
  w.wb.known = true;
  w.wb.rd = 4;
  w.wb.value = CachedCap::From(c);
  w.wb.value.cor.base_cor -= 1;
  const std::optional<std::string> wb = CheckDti(w);
  ASSERT_TRUE(wb.has_value());
  EXPECT_NE(wb->find("writeback"), std::string::npos) << *wb;
}

TEST(HarnessTest, DtiRejectsIllFormedTaggedCapability) {
  // Any tagged pattern the memory format check rejects.
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100000; ++i) {
    const Capability c = FromBits(rng(), true);
    if (IsMemWellformed(c)) continue;
    MicroState m = MicroState::Reset();
    m.regs[9] = CachedCap::From(c);
    EXPECT_TRUE(CheckDti(m).has_value()) << c.ToString();
    return;
  }
  FAIL() << "no ill-formed pattern found";
}

TEST(HarnessTest, MonotonicityOfPermissionMasking) {
  const Capability root = Capability::MemoryRoot(0x2000);
  PermissionSet mask = PermissionSet::All();
  mask.store = false;
  const Capability ro = AndPerms(root, mask);
  EXPECT_TRUE(IsMonotone(ro, root));
  EXPECT_FALSE(IsMonotone(root, ro));
  EXPECT_TRUE(IsMonotone(Capability::Null(5), root));
  const Capability narrow = SetBounds(root, 0x10).cap;
  EXPECT_TRUE(IsMonotone(narrow, root));
  EXPECT_FALSE(IsMonotone(root, narrow));
}

// Rules describe clears the core itself performs. Integer results are
// never tagged by the core, so a rule clearing them leaves both sides equal.
TEST(HarnessTest, ClearRuleMatchingCoreBehaviourPasses) {
  RunOptions o;
  o.max_spec_en = 300;
  o.clear_rules.push_back(
      [](const ArchState &, const ArchInput &in, const Slot &slot) {
        // An interrupt taken instead executes nothing.
        const std::optional<Instruction> inst = Decode(in.instr_bits);
        if (in.irq_pending || !inst || slot.kind != SlotKind::kReg || slot.index != inst->rd) {
          return false;
        }
        return inst->op == Op::kAddi || inst->op == Op::kAdd ||
               inst->op == Op::kLui || inst->op == Op::kXor;
      });
  std::mt19937_64 rng(11);
  for (int run = 0; run < 20; ++run) {
    Program p = GenerateProgram(rng(), 300);
    RunResult r = RunHarness(p, TimingSchedule::Random(rng, {}, 300), o);
    ASSERT_TRUE(r.passed()) << r.Summary();
  }
}

// Clearing a tag the core keeps makes the core less strict than the
// strengthened spec, which the comparison must report.
TEST(HarnessTest, ClearRuleOnLiveTagIsReported) {
  RunOptions o;
  o.max_spec_en = 20;
  o.clear_rules.push_back(
      [](const ArchState &, const ArchInput &, const Slot &slot) {
        return slot.kind == SlotKind::kReg && slot.index == 1;
      });
  RunResult r =
      RunHarness(MakeProgram({}), TimingSchedule::Fixed(1, 1, 1, 1, 20), o);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(r.Detected(Checker::kStateMatching) ||
              r.Detected(Checker::kContinuity))
      << r.Summary();
}

TEST(HarnessTest, DirectedMatrixHasFullDiagonal) {
  const DetectionMatrix m = RunDetectionMatrix(DirectedCases());
  EXPECT_TRUE(m.FullDiagonal()) << m.ToString();
  for (const RunResult &r : m.unmutated) EXPECT_TRUE(r.passed()) << r.Summary();
  EXPECT_TRUE(m.cell[1][1].Detected(Checker::kDti)) << m.ToString();
  EXPECT_TRUE(m.cell[5][5].Detected(Checker::kDti)) << m.ToString();
}

TEST(HarnessTest, LivenessBoundMatchesPathSearch) {
  const TimingBounds small{.max_gnt = 2, .max_rvalid = 3, .max_fetch = 2,
                           .max_wfi_wake = 5};
  EXPECT_EQ(testing::SearchWorstGap(small, 4).gap, LivenessBound(small));
}

TEST(HarnessTest, DefaultLivenessBound) {
  EXPECT_EQ(LivenessBound({}), 46u);
}

TEST(GeneratorTest, DeterministicInSeed) {
  EXPECT_EQ(GenerateProgram(0, 1).code, GenerateProgram(0, 1).code);
  EXPECT_EQ(GenerateProgram(9, 100).code, GenerateProgram(9, 100).code);
  EXPECT_NE(GenerateProgram(9, 100).code, GenerateProgram(10, 100).code);
}

int CountBody(const Program &p, bool (*pred)(const std::optional<Instruction> &)) {
  int n = 0;
  for (size_t k = 0; k < p.body_length; ++k) {
    n += pred(Decode(p.Fetch(p.body_start + 4 * static_cast<uint32_t>(k))));
  }
  return n;
}

TEST(GeneratorTest, WeightsSteerTheMix) {
  GenWeights w;
  w.cap_derive = 200;
  const Program p = GenerateProgram(3, 1000, w);
  const int derive = CountBody(p, [](const std::optional<Instruction> &i) {
    if (!i) return false;
    switch (i->op) {
      case Op::kCSetAddr: case Op::kCIncAddr: case Op::kCIncAddrImm:
      case Op::kCSetBounds: case Op::kCSetBoundsExact: case Op::kCAndPerm:
      case Op::kCSeal: case Op::kCUnseal: case Op::kCMove:
        return true;
      default:
        return false;
    }
  });
  EXPECT_GE(derive, 300);
}

TEST(GeneratorTest, NoIllegalWordsWithoutWeight) {
  GenWeights w;
  w.illegal = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Program p = GenerateProgram(seed, 500, w);
    EXPECT_EQ(CountBody(p, [](const std::optional<Instruction> &i) {
                return !i.has_value();
              }),
              0);
  }
}

}  // namespace
}  // namespace cheriot

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
#include "cheriot/campaign.h"

#include <gtest/gtest.h>

namespace cheriot {
namespace {

RunResult RunOne(const RunConfig &c, uint64_t seed, bool trace = true) {
  const RunSpec spec = MakeRun(c, seed);
  RunOptions o = c.options();
  o.record_trace = trace;
  return RunHarness(spec.program, spec.schedule, o);
}

TEST(CampaignTest, HeaderRoundTrip) {
  RunConfig c;
  c.insns = 77;
  c.max_gnt = 4;
  c.wfi_wake = 9;
  c.mutation = Mutation::kM4;
  c.mtval_on_ebreak_pc = true;
  RunConfig back;
  uint64_t seed = 0;
  ASSERT_TRUE(ParseTraceHeader(TraceHeader(c, 0xabc), &back, &seed));
  EXPECT_EQ(seed, 0xabcu);
  EXPECT_EQ(back.insns, 77u);
  EXPECT_EQ(back.max_gnt, 4u);
  EXPECT_EQ(back.wfi_wake, 9u);
  EXPECT_EQ(back.mutation, Mutation::kM4);
  EXPECT_TRUE(back.mtval_on_ebreak_pc);
}

TEST(CampaignTest, ReplayIsByteIdentical) {
  RunConfig c;
  c.insns = 150;
  const uint64_t seed = RunSeed(5, 3);
  const std::string a = RenderTrace(c, seed, RunOne(c, seed));
  const std::string b = RenderTrace(c, seed, RunOne(c, seed));
  EXPECT_EQ(a, b);
  EXPECT_EQ(ValidateTrace(a), std::nullopt);
}

TEST(CampaignTest, TruncatedAndUnknownTracesAreRejected) {
  RunConfig c;
  c.insns = 40;
  const std::string t = RenderTrace(c, 1, RunOne(c, 1));
  const size_t last = t.rfind("verdict");
  ASSERT_NE(last, std::string::npos);
  EXPECT_TRUE(ValidateTrace(t.substr(0, t.rfind('\n', last))).has_value());

  const size_t eol = t.find('\n');
  const std::string bogus =
      t.substr(0, eol + 1) + "3 gremlin a=1\n" + t.substr(eol + 1);
  const std::optional<std::string> why = ValidateTrace(bogus);
  ASSERT_TRUE(why.has_value());
  EXPECT_NE(why->find("unknown kind"), std::string::npos);
}

TEST(CampaignTest, ConfigRejectsLatencyAboveBound) {
  RunConfig c;
  EXPECT_EQ(c.Validate(), std::nullopt);
  c.max_gnt = 11;
  EXPECT_TRUE(c.Validate().has_value());
}

TEST(CampaignTest, ReportCountsFailures) {
  RunConfig c;
  c.insns = 100;
  std::vector<std::string> verdicts;
  verdicts.push_back(RenderVerdict(RunOne(c, 2, false), c, 2, "", Mutation::kNone));
  RunConfig m = c;
  m.mutation = Mutation::kM1;
  const std::vector<DirectedCase> cases = DirectedCases();
  verdicts.push_back(RenderVerdict(RunDirected(cases[0], Mutation::kM1), m, 0,
                                   cases[0].name, cases[0].target));
  Report r;
  ASSERT_TRUE(BuildReport(verdicts, &r));
  EXPECT_EQ(r.runs, 2u);
  EXPECT_EQ(r.failed_runs, 1u);
  EXPECT_TRUE(r.any_directed);
  EXPECT_EQ(r.detected[0][0], 1);
  EXPECT_FALSE(BuildReport({"garbage"}, &r));
}

TEST(CampaignTest, MinimizeKeepsTheFailure) {
  const std::vector<DirectedCase> cases = DirectedCases();
  RunOptions o;
  o.micro.mutation = Mutation::kM4;
  o.max_spec_en = cases[3].spec_en;
  Program p = cases[3].program;
  const RunResult before = RunHarness(p, cases[3].schedule, o);
  ASSERT_TRUE(before.Detected(cases[3].expected));
  const Minimized m = Minimize(p, cases[3].schedule, o, cases[3].expected);
  EXPECT_TRUE(m.result.Detected(cases[3].expected));
}

}  // namespace
}  // namespace cheriot

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

#include <algorithm>
#include <cerrno>
#include <cinttypes>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>

#include "cheriot/isa.h"

namespace cheriot {
namespace {

std::string Hex(uint64_t v) {
  char buf[24];
  snprintf(buf, sizeof buf, "0x%" PRIx64, v);
  return buf;
}

bool ParseU64(const std::string &s, uint64_t *out) {
  if (s.empty()) return false;
  char *end = nullptr;
  errno = 0;
  const unsigned long long v = strtoull(s.c_str(), &end, 0);
  if (errno != 0 || *end != '\0') return false;
  *out = v;
  return true;
}

// key=value tokens after the first `skip` tokens.
bool ParseFields(const std::string &line, size_t skip,
                 std::map<std::string, std::string> *out,
                 const std::string *rest_key = nullptr) {
  std::istringstream is(line);
  std::string tok;
  for (size_t k = 0; k < skip; ++k) {
    if (!(is >> tok)) return false;
  }
  while (is >> tok) {
    const size_t eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) return false;
    const std::string key = tok.substr(0, eq);
    std::string value = tok.substr(eq + 1);
    if (rest_key && key == *rest_key) {
      std::string tail;
      std::getline(is, tail);
      value += tail;
    }
    (*out)[key] = value;
  }
  return true;
}

const char *kKinds[] = {"spec_en", "port_out", "commit_rf", "commit_csr",
                        "trap",    "irq",      "verdict"};

}  // namespace

std::optional<std::string> RunConfig::Validate() const {
  auto range = [](const char *name, uint64_t v, uint64_t lo, uint64_t hi)
      -> std::optional<std::string> {
    if (v < lo || v > hi) {
      return std::string(name) + " must be in [" + std::to_string(lo) + ", " +
             std::to_string(hi) + "], got " + std::to_string(v);
    }
    return std::nullopt;
  };
  if (auto e = range("max-gnt-latency", max_gnt, 1, 10)) return e;
  if (auto e = range("max-rvalid-latency", max_rvalid, 1, 10)) return e;
  if (auto e = range("wfi-wake-bound", wfi_wake, 1, 16)) return e;
  if (auto e = range("max-fetch-latency", max_fetch, 1, 3)) return e;
  if (auto e = range("insns", insns, 1, 1u << 20)) return e;
  return std::nullopt;
}

TimingBounds RunConfig::bounds() const {
  return {max_gnt, max_rvalid, max_fetch, wfi_wake};
}

RunOptions RunConfig::options() const {
  RunOptions o;
  o.micro.mutation = mutation;
  o.micro.ebreak_mtval_pc = mtval_on_ebreak_pc;
  o.spec.ebreak_mtval_pc = mtval_on_ebreak_pc;
  o.bounds = bounds();
  o.max_spec_en = insns;
  return o;
}

uint64_t RunSeed(uint64_t campaign_seed, uint64_t index) {
  // splitmix64 over the pair.
  uint64_t z = campaign_seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

RunSpec MakeRun(const RunConfig &config, uint64_t run_seed) {
  RunSpec r;
  r.program = GenerateProgram(run_seed, config.insns);
  std::mt19937_64 rng(run_seed ^ 0x5c4ed01e5c4ed01eull);
  r.schedule = TimingSchedule::Random(rng, config.bounds(), config.insns);
  return r;
}

std::string TraceHeader(const RunConfig &c, uint64_t run_seed) {
  std::ostringstream os;
  os << "# cheriot-trace v1 seed=" << Hex(run_seed) << " insns=" << c.insns
     << " max_gnt=" << c.max_gnt << " max_rvalid=" << c.max_rvalid
     << " wfi_wake=" << c.wfi_wake << " max_fetch=" << c.max_fetch
     << " mutation=" << MutationName(c.mutation)
     << " mtval_on_ebreak=" << (c.mtval_on_ebreak_pc ? "pc" : "zero");
  return os.str();
}

bool ParseTraceHeader(const std::string &line, RunConfig *c,
                      uint64_t *run_seed) {
  if (line.rfind("# cheriot-trace v1 ", 0) != 0) return false;
  std::map<std::string, std::string> f;
  if (!ParseFields(line, 3, &f)) return false;
  uint64_t v;
  RunConfig out;
  for (const char *key : {"seed", "insns", "max_gnt", "max_rvalid",
                          "wfi_wake", "max_fetch", "mutation",
                          "mtval_on_ebreak"}) {
    if (!f.count(key)) return false;
  }
  if (!ParseU64(f["seed"], run_seed)) return false;
  if (!ParseU64(f["insns"], &out.insns)) return false;
  if (!ParseU64(f["max_gnt"], &v)) return false;
  out.max_gnt = static_cast<unsigned>(v);
  if (!ParseU64(f["max_rvalid"], &v)) return false;
  out.max_rvalid = static_cast<unsigned>(v);
  if (!ParseU64(f["wfi_wake"], &v)) return false;
  out.wfi_wake = static_cast<unsigned>(v);
  if (!ParseU64(f["max_fetch"], &v)) return false;
  out.max_fetch = static_cast<unsigned>(v);
  auto m = ParseMutation(f["mutation"]);
  if (!m) return false;
  out.mutation = *m;
  if (f["mtval_on_ebreak"] != "pc" && f["mtval_on_ebreak"] != "zero") {
    return false;
  }
  out.mtval_on_ebreak_pc = f["mtval_on_ebreak"] == "pc";
  if (out.Validate()) return false;
  *c = out;
  return true;
}

std::string RenderTrace(const RunConfig &config, uint64_t run_seed,
                        const RunResult &result) {
  std::string s = TraceHeader(config, run_seed) + "\n";
  for (const std::string &line : result.trace) s += line + "\n";
  return s;
}

std::optional<std::string> ValidateTrace(const std::string &text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) return "empty trace";
  RunConfig c;
  uint64_t seed;
  if (!ParseTraceHeader(line, &c, &seed)) return "malformed header";
  uint64_t last_cycle = 0;
  bool final_verdict = false;
  int n = 1;
  while (std::getline(is, line)) {
    ++n;
    if (final_verdict) return "records after the final verdict";
    std::istringstream ls(line);
    std::string cyc, kind;
    uint64_t cycle;
    if (!(ls >> cyc >> kind) || !ParseU64(cyc, &cycle)) {
      return "line " + std::to_string(n) + ": malformed record";
    }
    bool known = false;
    for (const char *k : kKinds) known |= kind == k;
    if (!known) return "line " + std::to_string(n) + ": unknown kind " + kind;
    if (cycle < last_cycle) return "line " + std::to_string(n) + ": out of order";
    last_cycle = cycle;
    std::map<std::string, std::string> f;
    if (!ParseFields(line, 2, &f)) {
      return "line " + std::to_string(n) + ": malformed field";
    }
    if (kind == "verdict" && f.count("spec_en")) final_verdict = true;
  }
  if (!final_verdict) return "trace is truncated (no final verdict)";
  return std::nullopt;
}

std::string RenderVerdict(const RunResult &r, const RunConfig &config,
                          uint64_t run_seed, const std::string &case_name,
                          Mutation case_target) {
  std::ostringstream os;
  os << "verdict seed=" << Hex(run_seed)
     << " mutation=" << MutationName(config.mutation)
     << " case=" << (case_name.empty() ? "random" : case_name)
     << " case_target=" << MutationName(case_target)
     << " insns=" << config.insns
     << " result=" << (r.passed() ? "pass" : "fail") << " cycles=" << r.cycles
     << " spec_en=" << r.spec_en << " max_gap=" << r.max_gap
     << " tagged_stores=" << r.tagged_stores << "\n";
  for (int k = 0; k < kNumCheckers; ++k) {
    const Checker c = static_cast<Checker>(k);
    os << "check name=" << CheckerName(c) << " count=" << r.checks[k]
       << " fail=" << (r.Detected(c) ? 1 : 0) << "\n";
  }
  for (const Failure &f : r.failures) {
    os << "failure checker=" << CheckerName(f.checker) << " cycle=" << f.cycle
       << " detail=" << f.detail << "\n";
  }
  return os.str();
}

bool BuildReport(const std::vector<std::string> &verdicts, Report *out) {
  Report rep;
  for (auto &row : rep.detected) row.fill(-1);
  const std::string detail_key = "detail";
  for (const std::string &text : verdicts) {
    std::istringstream is(text);
    std::string line;
    bool header = false;
    std::map<std::string, std::string> v;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string kind;
      ls >> kind;
      std::map<std::string, std::string> f;
      if (!ParseFields(line, 1, &f, &detail_key)) {
        return false;
      }
      if (kind == "verdict") {
        header = true;
        v = f;
      } else if (kind == "check") {
        Checker c;
        uint64_t count, fail;
        if (!ParseChecker(f["name"], &c) || !ParseU64(f["count"], &count) ||
            !ParseU64(f["fail"], &fail)) {
          return false;
        }
        if (fail) {
          ++rep.fail[static_cast<int>(c)];
        } else if (count) {
          ++rep.pass[static_cast<int>(c)];
        }
      } else if (kind != "failure") {
        return false;
      }
    }
    if (!header) return false;
    uint64_t gap;
    if (!ParseU64(v["max_gap"], &gap)) return false;
    if (v["result"] != "pass" && v["result"] != "fail") return false;
    ++rep.runs;
    rep.failed_runs += v["result"] == "fail";
    rep.max_gap = std::max(rep.max_gap, gap);
    auto m = ParseMutation(v["mutation"]);
    auto t = ParseMutation(v["case_target"]);
    if (!m || !t) return false;
    if (v["case"] != "random" && *m != Mutation::kNone &&
        *t != Mutation::kNone) {
      rep.any_directed = true;
      rep.detected[static_cast<int>(*m) - 1][static_cast<int>(*t) - 1] =
          v["result"] == "fail";
    }
  }
  *out = rep;
  return true;
}

std::string Report::ToText() const {
  std::ostringstream os;
  char buf[128];
  os << "runs " << runs << ", failed " << failed_runs << ", max spec_en gap "
     << max_gap << "\n";
  os << "checker          pass   fail\n";
  for (int k = 0; k < kNumCheckers; ++k) {
    snprintf(buf, sizeof buf, "%-15s %6" PRIu64 " %6" PRIu64 "\n",
             CheckerName(static_cast<Checker>(k)), pass[k], fail[k]);
    os << buf;
  }
  if (any_directed) {
    os << "detection (row: mutation, column: directed case for M1..M6)\n";
    for (int i = 0; i < 6; ++i) {
      os << MutationName(kAllMutations[i]);
      for (int j = 0; j < 6; ++j) {
        os << "  " << (detected[i][j] < 0 ? '-' : detected[i][j] ? 'X' : '.');
      }
      os << "\n";
    }
  }
  os << "report runs=" << runs << " failed=" << failed_runs
     << " max_gap=" << max_gap << "\n";
  for (int k = 0; k < kNumCheckers; ++k) {
    os << "report checker=" << CheckerName(static_cast<Checker>(k))
       << " pass=" << pass[k] << " fail=" << fail[k] << "\n";
  }
  if (any_directed) {
    bool diagonal = true;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        os << "report matrix mutation=" << MutationName(kAllMutations[i])
           << " case=" << MutationName(kAllMutations[j])
           << " detected=" << detected[i][j] << "\n";
      }
      diagonal &= detected[i][i] == 1;
    }
    os << "report diagonal=" << (diagonal ? "full" : "incomplete") << "\n";
  }
  return os.str();
}

Minimized Minimize(const Program &program, const TimingSchedule &schedule,
                   const RunOptions &options, Checker target, int budget) {
  Minimized m{program, schedule, RunHarness(program, schedule, options), 0, 1};
  auto still_fails = [&](const Program &p, const TimingSchedule &t,
                         RunResult *r) {
    if (m.runs >= budget) return false;
    ++m.runs;
    *r = RunHarness(p, t, options);
    return r->Detected(target);
  };
  if (!m.result.Detected(target)) return m;

  for (size_t k = 0; k < program.body_length; ++k) {
    const uint32_t addr = program.body_start + 4 * static_cast<uint32_t>(k);
    auto it = m.program.code.find(addr);
    if (it == m.program.code.end() || it->second == kNopBits) continue;
    Program trial = m.program;
    trial.code[addr] = kNopBits;
    RunResult r;
    if (still_fails(trial, m.schedule, &r)) {
      m.program = std::move(trial);
      m.result = std::move(r);
      ++m.instructions_removed;
    }
  }

  auto shrink = [&](std::vector<uint8_t> TimingSchedule::*field) {
    // Whole list first, then entry by entry.
    TimingSchedule trial = m.schedule;
    std::fill((trial.*field).begin(), (trial.*field).end(), 1);
    RunResult r;
    if (trial.*field != m.schedule.*field && still_fails(m.program, trial, &r)) {
      m.schedule = trial;
      m.result = std::move(r);
      return;
    }
    for (size_t k = 0; k < (m.schedule.*field).size(); ++k) {
      if ((m.schedule.*field)[k] == 1) continue;
      trial = m.schedule;
      (trial.*field)[k] = 1;
      if (still_fails(m.program, trial, &r)) {
        m.schedule = trial;
        m.result = std::move(r);
      }
    }
  };
  shrink(&TimingSchedule::gnt);
  shrink(&TimingSchedule::rvalid);
  shrink(&TimingSchedule::fetch);
  shrink(&TimingSchedule::wfi_wake);
  if (!m.schedule.irq_cycles.empty()) {
    TimingSchedule trial = m.schedule;
    trial.irq_cycles.clear();
    RunResult r;
    if (still_fails(m.program, trial, &r)) {
      m.schedule = trial;
      m.result = std::move(r);
    }
  }
  return m;
}

}  // namespace cheriot

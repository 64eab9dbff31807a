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

// Command-line front end: fuzz campaigns, directed mutation tests, replay
// with trace dump, and reports over verdict files.
//
// Exit codes: 0 all checks pass, 1 a checker failed, 2 usage error.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cheriot/campaign.h"
#include "cheriot/directed.h"
#include "cheriot/harness.h"

namespace fs = std::filesystem;
using namespace cheriot;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  RunConfig config;
  std::string mutation = "none";
  std::string mtval_on_ebreak = "zero";
  std::string trace_path;
  std::string out_dir;
};

void AddRunFlags(CLI::App *app, CommonFlags *f, bool campaign) {
  app->add_option("--seed", f->config.seed, "Seed (campaign or run)");
  if (campaign) {
    app->add_option("--programs", f->config.programs, "Number of programs");
  }
  app->add_option("--insns", f->config.insns, "Instructions per program");
  app->add_option("--max-gnt-latency", f->config.max_gnt, "1..10");
  app->add_option("--max-rvalid-latency", f->config.max_rvalid, "1..10");
  app->add_option("--wfi-wake-bound", f->config.wfi_wake, "1..16");
  app->add_option("--max-fetch-latency", f->config.max_fetch, "1..3");
  app->add_option("--mutation", f->mutation, "none or M1..M6");
  app->add_option("--mtval-on-ebreak", f->mtval_on_ebreak, "zero or pc");
  app->add_option("--trace-path", f->trace_path, "Write a trace here");
}

// Fills the parsed enums; prints and returns false on a bad value.
bool Finalize(CommonFlags *f) {
  auto m = ParseMutation(f->mutation);
  if (!m) {
    std::cerr << "unknown mutation '" << f->mutation << "'\n";
    return false;
  }
  f->config.mutation = *m;
  if (f->mtval_on_ebreak != "zero" && f->mtval_on_ebreak != "pc") {
    std::cerr << "--mtval-on-ebreak must be zero or pc\n";
    return false;
  }
  f->config.mtval_on_ebreak_pc = f->mtval_on_ebreak == "pc";
  if (auto e = f->config.Validate()) {
    std::cerr << *e << "\n";
    return false;
  }
  return true;
}

bool WriteFile(const std::string &path, const std::string &text) {
  std::ofstream os(path);
  os << text;
  return static_cast<bool>(os);
}

unsigned Workers() {
  if (const char *w = std::getenv("CHERIOT_FUZZ_WORKERS")) {
    const int n = std::atoi(w);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string Reproducer(const RunConfig &c, uint64_t run_seed) {
  std::ostringstream os;
  os << "cheriot replay --seed 0x" << std::hex << run_seed << std::dec
     << " --insns " << c.insns << " --max-gnt-latency " << c.max_gnt
     << " --max-rvalid-latency " << c.max_rvalid << " --wfi-wake-bound "
     << c.wfi_wake << " --max-fetch-latency " << c.max_fetch
     << " --mutation " << MutationName(c.mutation) << " --mtval-on-ebreak "
     << (c.mtval_on_ebreak_pc ? "pc" : "zero");
  return os.str();
}

int Fuzz(CommonFlags &f, bool directed, bool minimize) {
  const RunConfig &c = f.config;
  if (!f.out_dir.empty()) fs::create_directories(f.out_dir);
  int status = kExitPass;

  if (directed) {
    for (const DirectedCase &dc : DirectedCases()) {
      RunResult r = RunDirected(dc, c.mutation);
      if (!f.out_dir.empty()) {
        RunConfig dcfg = c;
        dcfg.insns = dc.spec_en;
        WriteFile(f.out_dir + "/directed-" + dc.name + "-" +
                      std::string(MutationName(c.mutation)) + ".verdict",
                  RenderVerdict(r, dcfg, 0, dc.name, dc.target));
      }
      if (!r.passed()) {
        status = kExitFail;
        std::cout << "FAIL directed " << dc.name << " (mutation "
                  << MutationName(c.mutation) << ")\n";
        for (const Failure &fl : r.failures) {
          std::cout << "  " << CheckerName(fl.checker) << " @" << fl.cycle
                    << ": " << fl.detail << "\n";
        }
      }
    }
  }

  std::vector<RunResult> results(c.programs);
  std::atomic<uint64_t> next{0};
  auto worker = [&] {
    for (uint64_t k; (k = next++) < c.programs;) {
      const uint64_t seed = RunSeed(c.seed, k);
      const RunSpec spec = MakeRun(c, seed);
      results[k] = RunHarness(spec.program, spec.schedule, c.options());
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::min<uint64_t>(Workers(), std::max<uint64_t>(1, c.programs));
  for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
  for (auto &t : pool) t.join();

  uint64_t failed = 0, max_gap = 0;
  std::optional<uint64_t> first_fail;
  for (uint64_t k = 0; k < c.programs; ++k) {
    const RunResult &r = results[k];
    const uint64_t seed = RunSeed(c.seed, k);
    max_gap = std::max(max_gap, r.max_gap);
    if (!f.out_dir.empty()) {
      std::ostringstream name;
      name << f.out_dir << "/run-" << std::hex << seed << ".verdict";
      WriteFile(name.str(), RenderVerdict(r, c, seed, "", Mutation::kNone));
    }
    if (r.passed()) continue;
    ++failed;
    if (!first_fail) first_fail = k;
    if (failed <= 5) {
      std::cout << "FAIL run " << k << " seed 0x" << std::hex << seed
                << std::dec << "\n";
      for (const Failure &fl : r.failures) {
        std::cout << "  " << CheckerName(fl.checker) << " @" << fl.cycle
                  << ": " << fl.detail << "\n";
      }
      std::cout << "  reproduce: " << Reproducer(c, seed) << "\n";
    }
  }
  if (failed) status = kExitFail;

  if (first_fail && minimize) {
    const uint64_t seed = RunSeed(c.seed, *first_fail);
    const RunSpec spec = MakeRun(c, seed);
    const Checker target = results[*first_fail].failures.front().checker;
    Minimized m = Minimize(spec.program, spec.schedule, c.options(), target);
    std::cout << "minimized counterexample (" << m.instructions_removed
              << " instructions replaced by NOP, " << m.runs
              << " runs), still failing " << CheckerName(target) << ":\n";
    for (uint32_t a = m.program.body_start;
         a < m.program.body_start + 4 * m.program.body_length; a += 4) {
      const uint32_t bits = m.program.Fetch(a);
      if (bits == 0x13) continue;
      auto inst = Decode(bits);
      std::printf("  %08x: %08x  %s\n", a, bits,
                  inst ? Disassemble(*inst).c_str() : "<illegal>");
    }
  }

  if (!f.trace_path.empty() && c.programs > 0) {
    const uint64_t k = first_fail.value_or(0);
    const uint64_t seed = RunSeed(c.seed, k);
    const RunSpec spec = MakeRun(c, seed);
    RunOptions o = c.options();
    o.record_trace = true;
    const RunResult r = RunHarness(spec.program, spec.schedule, o);
    WriteFile(f.trace_path, RenderTrace(c, seed, r));
  }

  std::cout << "fuzz: " << c.programs << " runs x " << c.insns
            << " instructions, " << failed << " failed, max spec_en gap "
            << max_gap << " (bound " << LivenessBound(c.bounds())
            << "), mutation " << MutationName(c.mutation) << "\n";
  return status;
}

int ReplayRun(const RunConfig &c, uint64_t seed, const std::string *original,
              const std::string &dump) {
  const RunSpec spec = MakeRun(c, seed);
  RunOptions o = c.options();
  o.record_trace = true;
  const RunResult r = RunHarness(spec.program, spec.schedule, o);
  const std::string trace = RenderTrace(c, seed, r);
  if (dump.empty()) {
    std::cout << trace;
  } else {
    WriteFile(dump, trace);
  }
  std::cerr << r.Summary() << "\n";
  if (original && *original != trace) {
    std::cerr << "replayed trace differs from the original\n";
    return kExitFail;
  }
  return r.passed() ? kExitPass : kExitFail;
}

int ReportCmd(const std::string &dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    std::cerr << "cannot read directory " << dir << "\n";
    return kExitUsage;
  }
  std::vector<fs::path> files;
  for (const auto &e : fs::directory_iterator(dir, ec)) {
    if (e.path().extension() == ".verdict") files.push_back(e.path());
  }
  if (ec) {
    std::cerr << "cannot read directory " << dir << "\n";
    return kExitUsage;
  }
  std::sort(files.begin(), files.end());
  std::vector<std::string> texts;
  for (const fs::path &p : files) {
    std::ifstream is(p);
    if (!is) {
      std::cerr << "cannot read " << p << "\n";
      return kExitUsage;
    }
    std::stringstream ss;
    ss << is.rdbuf();
    texts.push_back(ss.str());
  }
  cheriot::Report rep;
  if (!BuildReport(texts, &rep)) {
    std::cerr << "malformed verdict file in " << dir << "\n";
    return kExitUsage;
  }
  std::cout << rep.ToText();
  return kExitPass;
}

int Directed(const std::string &mutation, const std::string &out_dir) {
  const std::vector<DirectedCase> cases = DirectedCases();
  if (!out_dir.empty()) fs::create_directories(out_dir);
  std::vector<Mutation> muts;
  if (mutation.empty()) {
    muts.push_back(Mutation::kNone);
    muts.insert(muts.end(), kAllMutations.begin(), kAllMutations.end());
  } else {
    auto m = ParseMutation(mutation);
    if (!m) {
      std::cerr << "unknown mutation '" << mutation << "'\n";
      return kExitUsage;
    }
    muts.push_back(*m);
  }
  bool ok = true;
  std::cout << "mutation";
  for (size_t j = 0; j < cases.size(); ++j) std::cout << "  case" << j + 1;
  std::cout << "\n";
  for (Mutation m : muts) {
    std::string row(MutationName(m));
    row.resize(8, ' ');
    std::cout << row;
    for (const DirectedCase &dc : cases) {
      const RunResult r = RunDirected(dc, m);
      std::cout << "    " << (r.passed() ? '.' : 'X') << "  ";
      if (m == Mutation::kNone) ok &= r.passed();
      if (m == dc.target) ok &= r.Detected(dc.expected);
      if (!out_dir.empty()) {
        RunConfig c;
        c.mutation = m;
        c.insns = dc.spec_en;
        WriteFile(out_dir + "/directed-" + dc.name + "-" +
                      std::string(MutationName(m)) + ".verdict",
                  RenderVerdict(r, c, 0, dc.name, dc.target));
      }
    }
    std::cout << "\n";
  }
  for (size_t j = 0; j < cases.size(); ++j) {
    const DirectedCase &dc = cases[j];
    if (!mutation.empty() && ParseMutation(mutation) != dc.target) continue;
    const RunResult r = RunDirected(dc, dc.target);
    std::cout << "case" << j + 1 << " " << dc.name << " ("
              << MutationName(dc.target) << ", meant for "
              << CheckerName(dc.expected) << "):";
    for (const Failure &fl : r.failures) {
      std::cout << " " << CheckerName(fl.checker);
    }
    std::cout << "\n";
  }
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"CHERIoT capability model, microcore and verification harness"};
  app.require_subcommand(1);

  CommonFlags fuzz_flags;
  bool no_directed = false, no_minimize = false;
  auto *fuzz = app.add_subcommand("fuzz", "Random differential campaign");
  AddRunFlags(fuzz, &fuzz_flags, true);
  fuzz->add_option("--out", fuzz_flags.out_dir, "Directory for verdict files");
  fuzz->add_flag("--no-directed", no_directed, "Skip the directed corpus");
  fuzz->add_flag("--no-minimize", no_minimize, "Skip minimization");

  CommonFlags replay_flags;
  std::string replay_trace, replay_dump;
  auto *replay = app.add_subcommand("replay", "Re-run one program with a trace");
  AddRunFlags(replay, &replay_flags, false);
  replay->add_option("trace", replay_trace, "Trace file to reproduce");
  replay->add_option("--dump", replay_dump, "Write the trace here");

  std::string report_dir;
  auto *report = app.add_subcommand("report", "Summarize verdict files");
  report->add_option("dir", report_dir, "Results directory")->required();

  std::string directed_mutation, directed_out;
  auto *directed = app.add_subcommand("directed", "Mutation detection matrix");
  directed->add_option("--mutation", directed_mutation, "Only this mutation");
  directed->add_option("--out", directed_out, "Directory for verdict files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*fuzz) {
    if (!Finalize(&fuzz_flags)) return kExitUsage;
    return Fuzz(fuzz_flags, !no_directed, !no_minimize);
  }
  if (*replay) {
    if (!replay_trace.empty()) {
      std::ifstream is(replay_trace);
      if (!is) {
        std::cerr << "cannot read " << replay_trace << "\n";
        return kExitUsage;
      }
      std::stringstream ss;
      ss << is.rdbuf();
      const std::string text = ss.str();
      if (auto e = ValidateTrace(text)) {
        std::cerr << "malformed trace: " << *e << "\n";
        return kExitUsage;
      }
      RunConfig c;
      uint64_t seed = 0;
      ParseTraceHeader(text.substr(0, text.find('\n')), &c, &seed);
      return ReplayRun(c, seed, &text, replay_dump);
    }
    if (!Finalize(&replay_flags)) return kExitUsage;
    return ReplayRun(replay_flags.config, replay_flags.config.seed, nullptr,
                     replay_dump.empty() ? replay_flags.trace_path
                                         : replay_dump);
  }
  if (*report) return ReportCmd(report_dir);
  if (*directed) return Directed(directed_mutation, directed_out);
  return kExitUsage;
}

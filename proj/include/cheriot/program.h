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

#ifndef CHERIOT_PROGRAM_H_
#define CHERIOT_PROGRAM_H_

// Test programs: a code image, initial data memory, and a seeded random
// generator.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cheriot/memory.h"

namespace cheriot {

// Store to this word acknowledges (lowers) the interrupt line.
inline constexpr uint32_t kIrqAckAddr = 0x7f0;
// Pool of tagged capabilities in the initial data memory.
inline constexpr uint32_t kCapPool = 0x20000000;
inline constexpr int kCapPoolSlots = 16;

struct Program {
  std::map<uint32_t, uint32_t> code;  // word address -> instruction
  DataMemory memory;
  uint64_t seed = 0;
  size_t body_length = 0;  // instructions in the generated body
  uint32_t body_start = 0;

  // Unmapped addresses read as NOP.
  uint32_t Fetch(uint32_t addr) const;
  void Place(uint32_t addr, const std::vector<uint32_t> &words);
  std::string Listing() const;
};

struct GenWeights {
  unsigned alu = 30;
  unsigned branch = 6;
  unsigned jump = 4;
  unsigned load = 10;
  unsigned store = 10;
  unsigned cap_load_store = 8;
  unsigned cap_derive = 20;  // CSetBounds, CSetAddr, CAndPerm, ...
  unsigned cap_inspect = 5;
  unsigned system = 4;       // CSR reads, ECALL, EBREAK, WFI, CSpecialRW
  unsigned illegal = 1;
  bool enable_interrupts = true;
};

// Code at 0x80000000: a short prologue, then `length` body instructions.
// A fixed trap handler lives at 0x80010000. Deterministic in `seed`.
Program GenerateProgram(uint64_t seed, size_t length,
                        const GenWeights &weights = {});

// A program made of the handler, the prologue and the given body words.
Program MakeProgram(const std::vector<uint32_t> &body,
                    bool enable_interrupts = false);

}  // namespace cheriot

#endif  // CHERIOT_PROGRAM_H_

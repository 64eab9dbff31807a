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

#ifndef CHERIOT_MEMORY_H_
#define CHERIOT_MEMORY_H_

// Bus-level memory types and a sparse tagged data memory. Tags are kept per
// 8-byte granule.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cheriot/capability.h"

namespace cheriot {

struct MemWord {
  uint32_t data = 0;
  bool tag = false;
  friend bool operator==(const MemWord &, const MemWord &) = default;
};

// One word-aligned bus request.
struct MemRequest {
  uint32_t addr = 0;
  uint8_t be = 0;
  uint32_t wdata = 0;
  bool wtag = false;
  bool we = false;

  std::string ToString() const;
  friend bool operator==(const MemRequest &, const MemRequest &) = default;
};

inline constexpr uint32_t GranuleOf(uint32_t addr) { return addr & ~7u; }

class DataMemory {
 public:
  MemWord ReadWord(uint32_t addr) const;
  bool TagAt(uint32_t addr) const { return tagged_.count(GranuleOf(addr)); }
  // Byte-enabled write; the granule tag becomes `wtag`.
  void Apply(const MemRequest &req);

  void WriteWord(uint32_t addr, uint32_t data);
  void StoreCap(uint32_t addr, const Capability &cap);
  Capability LoadCap(uint32_t addr) const;

  const std::set<uint32_t> &tagged_granules() const { return tagged_; }
  const std::map<uint32_t, uint32_t> &words() const { return words_; }

  friend bool operator==(const DataMemory &, const DataMemory &) = default;

 private:
  std::map<uint32_t, uint32_t> words_;  // word address -> nonzero data
  std::set<uint32_t> tagged_;            // granule addresses
};

}  // namespace cheriot

#endif  // CHERIOT_MEMORY_H_

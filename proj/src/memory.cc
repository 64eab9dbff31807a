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

#include "cheriot/memory.h"

#include <cstdio>

namespace cheriot {

std::string MemRequest::ToString() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s addr=%08x be=%x wdata=%08x wtag=%d",
                we ? "W" : "R", addr, be, wdata, wtag ? 1 : 0);
  return buf;
}

MemWord DataMemory::ReadWord(uint32_t addr) const {
  addr &= ~3u;
  MemWord w;
  auto it = words_.find(addr);
  if (it != words_.end()) w.data = it->second;
  w.tag = TagAt(addr);
  return w;
}

void DataMemory::WriteWord(uint32_t addr, uint32_t data) {
  addr &= ~3u;
  if (data == 0) {
    words_.erase(addr);
  } else {
    words_[addr] = data;
  }
}

void DataMemory::Apply(const MemRequest &req) {
  if (!req.we) return;
  uint32_t old = ReadWord(req.addr).data;
  uint32_t mask = 0;
  for (int lane = 0; lane < 4; ++lane) {
    if (req.be & (1u << lane)) mask |= 0xffu << (8 * lane);
  }
  WriteWord(req.addr, (old & ~mask) | (req.wdata & mask));
  if (req.wtag) {
    tagged_.insert(GranuleOf(req.addr));
  } else {
    tagged_.erase(GranuleOf(req.addr));
  }
}

void DataMemory::StoreCap(uint32_t addr, const Capability &cap) {
  uint64_t bits = ToBits(cap);
  WriteWord(addr, static_cast<uint32_t>(bits));
  WriteWord(addr + 4, static_cast<uint32_t>(bits >> 32));
  if (cap.tag) {
    tagged_.insert(GranuleOf(addr));
  } else {
    tagged_.erase(GranuleOf(addr));
  }
}

Capability DataMemory::LoadCap(uint32_t addr) const {
  addr = GranuleOf(addr);
  uint64_t bits = ReadWord(addr).data |
                  (uint64_t{ReadWord(addr + 4).data} << 32);
  return FromBits(bits, TagAt(addr));
}

}  // namespace cheriot

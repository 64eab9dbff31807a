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

#include "cheriot/fetch_fifo.h"

namespace cheriot {

bool FetchFifo::Enqueue(const FetchEntry &e) {
  if (full()) return false;
  const int tail = (head_ + count_) % kDepth;
  slots_[tail] = e;
  ++count_;
  if (tracing_) pending_.push_back(e.addr);
  return true;
}

bool FetchFifo::Dequeue(FetchEntry *out) {
  if (empty()) return false;
  if (out != nullptr) *out = slots_[head_];
  if (tracing_ && !pending_.empty()) {
    trace_.push_back({pending_.front(), slots_[head_].addr});
    pending_.pop_front();
  }
  head_ = (head_ + 1) % kDepth;
  --count_;
  return true;
}

void FetchFifo::Flush() {
  head_ = 0;
  count_ = 0;
  pending_.clear();
}

bool FifoTraceConsistent(const std::vector<FetchFifo::Pair> &trace) {
  for (const auto &p : trace) {
    if (p.enq_addr != p.deq_addr) return false;
  }
  return true;
}

}  // namespace cheriot

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

#ifndef CHERIOT_FETCH_FIFO_H_
#define CHERIOT_FETCH_FIFO_H_

// Fixed-depth instruction fetch FIFO with a record of enqueue/dequeue
// addresses.

#include <array>
#include <cstdint>
#include <deque>
#include <vector>

namespace cheriot {

struct FetchEntry {
  uint32_t addr = 0;
  uint32_t bits = 0;
  friend bool operator==(const FetchEntry &, const FetchEntry &) = default;
};

class FetchFifo {
 public:
  static constexpr int kDepth = 3;

  int size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool full() const { return count_ == kDepth; }
  const FetchEntry &head() const { return slots_[head_]; }

  // Both return false (and do nothing) on overflow / underflow.
  bool Enqueue(const FetchEntry &e);
  bool Dequeue(FetchEntry *out = nullptr);
  void Flush();

  // Enqueue and dequeue addresses paired up in FIFO order by an observer
  // that does not look at the storage. Flushed entries produce no pair.
  struct Pair {
    uint32_t enq_addr = 0;
    uint32_t deq_addr = 0;
  };
  void set_tracing(bool on) { tracing_ = on; }
  const std::vector<Pair> &trace() const { return trace_; }

 private:
  std::array<FetchEntry, kDepth> slots_{};
  int head_ = 0;
  int count_ = 0;
  bool tracing_ = false;
  std::deque<uint32_t> pending_;
  std::vector<Pair> trace_;
};

// True iff every recorded pair has equal addresses.
bool FifoTraceConsistent(const std::vector<FetchFifo::Pair> &trace);

}  // namespace cheriot

#endif  // CHERIOT_FETCH_FIFO_H_

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

#include "cheriot/mutation.h"

#include <cctype>
#include <string>

namespace cheriot {

std::string_view MutationName(Mutation m) {
  switch (m) {
    case Mutation::kNone: return "none";
    case Mutation::kM1: return "M1";
    case Mutation::kM2: return "M2";
    case Mutation::kM3: return "M3";
    case Mutation::kM4: return "M4";
    case Mutation::kM5: return "M5";
    case Mutation::kM6: return "M6";
  }
  return "?";
}

std::string_view MutationDescription(Mutation m) {
  switch (m) {
    case Mutation::kNone: return "unmodified";
    case Mutation::kM1: return "access top check wraps at 2^32";
    case Mutation::kM2: return "mepcc written on trap without representability";
    case Mutation::kM3: return "CLC permission strip clears a raw bit";
    case Mutation::kM4: return "set-bounds below the base keeps the tag";
    case Mutation::kM5: return "illegal CLC response ORed into writeback";
    case Mutation::kM6: return "set-address keeps stale corrections";
  }
  return "?";
}

std::optional<Mutation> ParseMutation(std::string_view text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::toupper(c));
  if (t == "NONE") return Mutation::kNone;
  for (Mutation m : kAllMutations) {
    if (t == MutationName(m)) return m;
  }
  return std::nullopt;
}

}  // namespace cheriot

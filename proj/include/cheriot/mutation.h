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

#ifndef CHERIOT_MUTATION_H_
#define CHERIOT_MUTATION_H_

// Deliberate bugs that can be switched into the microcore, one at a time.

#include <array>
#include <optional>
#include <string_view>

namespace cheriot {

enum class Mutation : uint8_t {
  kNone,
  kM1,  // memory access top check computed modulo 2^32
  kM2,  // trap writes mepcc without the representability check
  kM3,  // CLC store stripping clears a raw permission-code bit
  kM4,  // set-bounds keeps the tag when the address is below the base
  kM5,  // illegal CLC encoding still issues its loads; the late response is
        // ORed into whatever value writeback holds
  kM6,  // set-address keeps the old cached corrections
};

inline constexpr std::array<Mutation, 6> kAllMutations = {
    Mutation::kM1, Mutation::kM2, Mutation::kM3,
    Mutation::kM4, Mutation::kM5, Mutation::kM6};

std::string_view MutationName(Mutation m);  // "none", "M1".."M6"
std::string_view MutationDescription(Mutation m);
// Accepts "M1".."M6" (either case) and "none".
std::optional<Mutation> ParseMutation(std::string_view text);

}  // namespace cheriot

#endif  // CHERIOT_MUTATION_H_

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

#ifndef CHERIOT_CAPABILITY_H_
#define CHERIOT_CAPABILITY_H_

// Bit-exact model of 32-bit compressed capabilities: bounds decompression,
// set-bounds encoding, representability, the compressed permission lattice,
// sealing and memory access checks.

#include <cstdint>
#include <optional>
#include <string>

namespace cheriot {

inline constexpr uint64_t kAddressSpaceTop = uint64_t{1} << 32;
inline constexpr int kFullSpaceExponent = 24;
inline constexpr int kMaxSmallExponent = 14;

// True for the exponents a capability may carry: 0..14 and 24.
constexpr bool IsLegalExponent(int e) {
  return (e >= 0 && e <= kMaxSmallExponent) || e == kFullSpaceExponent;
}

// Decoded bounds. `base` is a 32-bit address, `top` is 33 bits wide so that a
// region may end exactly at 2^32.
struct Bounds {
  uint32_t base = 0;
  uint64_t top = 0;

  bool Contains(const Bounds &other) const {
    return base <= other.base && other.top <= top;
  }
  friend bool operator==(const Bounds &, const Bounds &) = default;
};

// Expanded permissions.
struct PermissionSet {
  bool global = false;
  bool execute = false;
  bool load = false;
  bool store = false;
  bool cap_access = false;
  bool seal = false;
  bool unseal = false;
  bool system_registers = false;

  // Bit layout used by CAndPerm / CGetPerm: bit 0 global, 1 execute, 2 load,
  // 3 store, 4 cap_access, 5 seal, 6 unseal, 7 system_registers.
  static PermissionSet FromMask(uint32_t mask);
  uint32_t ToMask() const;
  static PermissionSet All() { return FromMask(0xff); }

  int Count() const;
  bool SubsetOf(const PermissionSet &other) const {
    return (ToMask() & ~other.ToMask()) == 0;
  }
  PermissionSet Intersect(const PermissionSet &other) const {
    return FromMask(ToMask() & other.ToMask());
  }
  std::string ToString() const;
  friend bool operator==(const PermissionSet &,
                         const PermissionSet &) = default;
};

// Compressed permissions: a 6-bit code, kind in bits [5:4], flags in [3:0].
//   kind 0 memory:     flags {load, store, cap_access, global}
//   kind 1 executable: execute + flags {load, cap_access, system_registers,
//                      global}
//   kind 2 sealing:    flags {seal, unseal, global, reserved}
//   kind 3 null:       decodes to the empty set
enum class PermKind : uint8_t {
  kMemory = 0,
  kExecutable = 1,
  kSealing = 2,
  kNull = 3
};

constexpr uint8_t MakePermCode(PermKind kind, uint8_t flags) {
  return static_cast<uint8_t>((static_cast<uint8_t>(kind) << 4) |
                              (flags & 0xf));
}
constexpr PermKind PermCodeKind(uint8_t code) {
  return static_cast<PermKind>((code >> 4) & 0x3);
}
constexpr uint8_t PermCodeFlags(uint8_t code) { return code & 0xf; }

inline constexpr uint8_t kNullPermCode = MakePermCode(PermKind::kNull, 0);

PermissionSet PermsDecode(uint8_t code);
// The code whose decoded set is the largest representable subset of `perms`.
// Ties go to the highest kind, then the lowest flags, so the empty set
// encodes as the null kind.
uint8_t PermsEncode(const PermissionSet &perms);
bool IsCanonicalPermCode(uint8_t code);

struct Corrections {
  int base_cor = 0;  // c_b in {-1, 0}
  int top_cor = 0;   // c_t in {-1, 0, 1}
  friend bool operator==(const Corrections &, const Corrections &) = default;
};

struct Capability {
  bool tag = false;
  uint32_t address = 0;
  uint16_t t_field = 0;  // 9 bits
  uint16_t b_field = 0;  // 9 bits
  uint8_t exponent = 0;
  uint8_t perms = 0;  // 6-bit PermCode
  uint8_t otype = 0;  // 3 bits, 0 = unsealed

  bool sealed() const { return otype != 0; }
  PermissionSet permissions() const { return PermsDecode(perms); }

  // Untagged capability carrying only an integer.
  static Capability Null(uint32_t address = 0) {
    Capability c;
    c.address = address;
    return c;
  }
  static Capability ExecutableRoot(uint32_t address);
  static Capability MemoryRoot(uint32_t address);
  static Capability SealingRoot(uint32_t address);

  std::string ToString() const;
  friend bool operator==(const Capability &, const Capability &) = default;
};

Bounds BoundsOf(const Capability &cap);
Corrections CorrectionsOf(const Capability &cap);
// Bounds computed from externally supplied (possibly stale) corrections, the
// way a datapath with cached corrections does it.
Bounds BoundsWithCorrections(const Capability &cap, const Corrections &cor);

bool IsRepresentable(const Capability &cap, uint32_t new_address);
Capability SetAddress(const Capability &cap, uint32_t new_address);

struct SetBoundsOptions {
  // Clear the tag when the address lies below the existing base.
  bool check_below_base = true;
};

struct SetBoundsResult {
  Capability cap;
  bool exact = false;
};
SetBoundsResult SetBounds(const Capability &cap, uint32_t requested_length,
                          const SetBoundsOptions &options = {});

Capability AndPerms(const Capability &cap, const PermissionSet &mask);
Capability Seal(const Capability &cap, const Capability &auth);
Capability Unseal(const Capability &cap, const Capability &auth);

enum class AccessKind { kLoad, kStore, kLoadCap, kStoreCap, kExecute };

enum class CapFault { kTag, kSeal, kPermission, kBounds };
const char *CapFaultName(CapFault fault);

std::optional<CapFault> CheckAccess(const Capability &cap, uint32_t addr,
                                    unsigned width, AccessKind kind);
// Same as CheckAccess but with the caller's view of the bounds.
std::optional<CapFault> CheckAccessWithBounds(const Capability &cap,
                                              const Bounds &bounds,
                                              uint32_t addr, unsigned width,
                                              AccessKind kind);

// Memory layout, most-significant first:
//   perms(6) | otype(3) | exponent_code(5) | T(9) | B(9) | address(32)
// exponent_code is E for 0..14 and 31 for E = 24.
uint64_t ToBits(const Capability &cap);
Capability FromBits(uint64_t bits, bool tag);

bool IsMemWellformed(const Capability &cap);

// c1 agrees with c2 on every field except the tag, and c1.tag implies c2.tag.
bool CapStricterThan(const Capability &c1, const Capability &c2);

}  // namespace cheriot

#endif  // CHERIOT_CAPABILITY_H_

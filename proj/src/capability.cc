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

#include "cheriot/capability.h"

#include <array>
#include <cstdio>

namespace cheriot {
namespace {

constexpr uint64_t kMask32 = 0xffff'ffffULL;
constexpr uint64_t kMask33 = 0x1'ffff'ffffULL;
constexpr uint8_t kFullSpaceExponentCode = 31;

// Decoded set for each of the 64 raw codes, built once.
struct PermTable {
  std::array<PermissionSet, 64> decoded;
  std::array<uint8_t, 256> encoded;  // indexed by expanded mask
};

PermissionSet DecodeRaw(uint8_t code) {
  PermissionSet p;
  const uint8_t f = PermCodeFlags(code);
  switch (PermCodeKind(code)) {
    case PermKind::kMemory:
      p.load = f & 1;
      p.store = f & 2;
      p.cap_access = f & 4;
      p.global = f & 8;
      break;
    case PermKind::kExecutable:
      p.execute = true;
      p.load = f & 1;
      p.cap_access = f & 2;
      p.system_registers = f & 4;
      p.global = f & 8;
      break;
    case PermKind::kSealing:
      p.seal = f & 1;
      p.unseal = f & 2;
      p.global = f & 4;
      break;
    case PermKind::kNull:
      break;
  }
  return p;
}

PermTable BuildPermTable() {
  PermTable table;
  for (uint8_t code = 0; code < 64; ++code) {
    table.decoded[code] = DecodeRaw(code);
  }
  for (uint32_t mask = 0; mask < 256; ++mask) {
    const PermissionSet want = PermissionSet::FromMask(mask);
    uint8_t best = kNullPermCode;
    int best_count = 0;
    // Ties go to the highest kind, then the lowest flags. This keeps
    // execute over store for {X, R, W} and sends the empty set to the null
    // kind.
    for (int kind = 3; kind >= 0; --kind) {
      for (uint8_t flags = 0; flags < 16; ++flags) {
        const uint8_t code = MakePermCode(static_cast<PermKind>(kind), flags);
        const PermissionSet &have = table.decoded[code];
        if (!have.SubsetOf(want)) continue;
        const int count = have.Count();
        if (count > best_count) {
          best = code;
          best_count = count;
        }
      }
    }
    table.encoded[mask] = best;
  }
  return table;
}

const PermTable &Table() {
  static const PermTable table = BuildPermTable();
  return table;
}

}  // namespace

PermissionSet PermissionSet::FromMask(uint32_t mask) {
  PermissionSet p;
  p.global = mask & 0x01;
  p.execute = mask & 0x02;
  p.load = mask & 0x04;
  p.store = mask & 0x08;
  p.cap_access = mask & 0x10;
  p.seal = mask & 0x20;
  p.unseal = mask & 0x40;
  p.system_registers = mask & 0x80;
  return p;
}

uint32_t PermissionSet::ToMask() const {
  return (global ? 0x01 : 0) | (execute ? 0x02 : 0) | (load ? 0x04 : 0) |
         (store ? 0x08 : 0) | (cap_access ? 0x10 : 0) | (seal ? 0x20 : 0) |
         (unseal ? 0x40 : 0) | (system_registers ? 0x80 : 0);
}

int PermissionSet::Count() const { return __builtin_popcount(ToMask()); }

std::string PermissionSet::ToString() const {
  std::string s;
  if (global) s += 'G';
  if (execute) s += 'X';
  if (load) s += 'R';
  if (store) s += 'W';
  if (cap_access) s += 'C';
  if (seal) s += 'S';
  if (unseal) s += 'U';
  if (system_registers) s += 'A';
  return s.empty() ? "-" : s;
}

PermissionSet PermsDecode(uint8_t code) { return Table().decoded[code & 0x3f]; }

uint8_t PermsEncode(const PermissionSet &perms) {
  return Table().encoded[perms.ToMask()];
}

bool IsCanonicalPermCode(uint8_t code) {
  return code < 64 && PermsEncode(PermsDecode(code)) == code;
}

Capability Capability::ExecutableRoot(uint32_t address) {
  Capability c;
  c.tag = true;
  c.address = address;
  c.exponent = kFullSpaceExponent;
  c.t_field = 0x100;
  c.perms = MakePermCode(PermKind::kExecutable, 0xf);
  return c;
}

Capability Capability::MemoryRoot(uint32_t address) {
  Capability c = ExecutableRoot(address);
  c.perms = MakePermCode(PermKind::kMemory, 0xf);
  return c;
}

Capability Capability::SealingRoot(uint32_t address) {
  Capability c = ExecutableRoot(address);
  c.perms = MakePermCode(PermKind::kSealing, 0x7);
  return c;
}

std::string Capability::ToString() const {
  const Bounds b = BoundsOf(*this);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "{tag=%d addr=0x%08x E=%u B=0x%03x T=0x%03x perms=0x%02x(%s) "
                "otype=%u bounds=[0x%08x,0x%09llx)}",
                tag ? 1 : 0, address, exponent, b_field, t_field, perms,
                permissions().ToString().c_str(), otype, b.base,
                static_cast<unsigned long long>(b.top));
  return buf;
}

Corrections CorrectionsOf(const Capability &cap) {
  const uint32_t a_mid = (uint64_t{cap.address} >> cap.exponent) & 0x1ff;
  const int a_hi = a_mid < cap.b_field ? 1 : 0;
  const int t_hi = cap.t_field < cap.b_field ? 1 : 0;
  return Corrections{-a_hi, t_hi - a_hi};
}

Bounds BoundsWithCorrections(const Capability &cap, const Corrections &cor) {
  const int e = cap.exponent;
  const int64_t a_top = static_cast<int64_t>(uint64_t{cap.address} >> (e + 9));
  const int64_t b = ((a_top + cor.base_cor) * 512 + cap.b_field) * (int64_t{1} << e);
  const int64_t t = ((a_top + cor.top_cor) * 512 + cap.t_field) * (int64_t{1} << e);
  return Bounds{static_cast<uint32_t>(static_cast<uint64_t>(b) & kMask32),
                static_cast<uint64_t>(t) & kMask33};
}

Bounds BoundsOf(const Capability &cap) {
  return BoundsWithCorrections(cap, CorrectionsOf(cap));
}

bool IsRepresentable(const Capability &cap, uint32_t new_address) {
  Capability moved = cap;
  moved.address = new_address;
  return BoundsOf(moved) == BoundsOf(cap);
}

Capability SetAddress(const Capability &cap, uint32_t new_address) {
  Capability out = cap;
  out.address = new_address;
  if (!cap.tag || cap.sealed() || !IsRepresentable(cap, new_address)) {
    out.tag = false;
  }
  return out;
}

SetBoundsResult SetBounds(const Capability &cap, uint32_t requested_length,
                          const SetBoundsOptions &options) {
  const uint64_t req_base = cap.address;
  const uint64_t req_top = req_base + requested_length;

  Capability out = cap;
  for (int e = 0; e <= kFullSpaceExponent; ++e) {
    if (!IsLegalExponent(e)) continue;
    const uint64_t granule = uint64_t{1} << e;
    const uint64_t base = req_base & ~(granule - 1);
    const uint64_t top = (req_top + granule - 1) & ~(granule - 1);
    Capability candidate = cap;
    candidate.exponent = static_cast<uint8_t>(e);
    candidate.b_field = static_cast<uint16_t>((base >> e) & 0x1ff);
    candidate.t_field = static_cast<uint16_t>((top >> e) & 0x1ff);
    const Bounds decoded = BoundsOf(candidate);
    if (decoded.base == base && decoded.top == top) {
      out = candidate;
      break;
    }
    // E = 24 is address-independent and reproduces any aligned region whose
    // top fits in 33 bits; only a request ending past 2^33 can fall through.
    if (e == kFullSpaceExponent) out = candidate;
  }

  const Bounds old_bounds = BoundsOf(cap);
  const Bounds new_bounds = BoundsOf(out);
  const bool exact = new_bounds.base == req_base && new_bounds.top == req_top;
  if (!cap.tag || cap.sealed() || req_top > old_bounds.top ||
      req_top > kAddressSpaceTop ||
      (options.check_below_base && req_base < old_bounds.base)) {
    out.tag = false;
  }
  return SetBoundsResult{out, exact};
}

Capability AndPerms(const Capability &cap, const PermissionSet &mask) {
  Capability out = cap;
  out.perms = PermsEncode(PermsDecode(cap.perms).Intersect(mask));
  if (cap.sealed()) out.tag = false;
  return out;
}

namespace {

bool AddressInBounds(const Capability &cap) {
  const Bounds b = BoundsOf(cap);
  return cap.address >= b.base && uint64_t{cap.address} < b.top;
}

}  // namespace

Capability Seal(const Capability &cap, const Capability &auth) {
  const uint8_t otype = auth.address & 0x7;
  Capability out = cap;
  const bool ok = cap.tag && auth.tag && !cap.sealed() && !auth.sealed() &&
                  auth.permissions().seal && AddressInBounds(auth) &&
                  otype != 0;
  if (ok) {
    out.otype = otype;
  } else {
    out.tag = false;
  }
  return out;
}

Capability Unseal(const Capability &cap, const Capability &auth) {
  Capability out = cap;
  const bool ok = cap.tag && auth.tag && cap.sealed() && !auth.sealed() &&
                  auth.permissions().unseal && AddressInBounds(auth) &&
                  auth.address == cap.otype;
  if (!ok) {
    out.tag = false;
    return out;
  }
  out.otype = 0;
  if (!auth.permissions().global) {
    PermissionSet keep = PermissionSet::All();
    keep.global = false;
    out.perms = PermsEncode(PermsDecode(cap.perms).Intersect(keep));
  }
  return out;
}

const char *CapFaultName(CapFault fault) {
  switch (fault) {
    case CapFault::kTag:
      return "TagViolation";
    case CapFault::kSeal:
      return "SealViolation";
    case CapFault::kPermission:
      return "PermissionViolation";
    case CapFault::kBounds:
      return "BoundsViolation";
  }
  return "?";
}

std::optional<CapFault> CheckAccessWithBounds(const Capability &cap,
                                              const Bounds &bounds,
                                              uint32_t addr, unsigned width,
                                              AccessKind kind) {
  if (!cap.tag) return CapFault::kTag;
  if (cap.sealed()) return CapFault::kSeal;
  const PermissionSet p = cap.permissions();
  bool allowed = false;
  switch (kind) {
    case AccessKind::kLoad:
      allowed = p.load;
      break;
    case AccessKind::kStore:
      allowed = p.store;
      break;
    case AccessKind::kLoadCap:
      allowed = p.load && p.cap_access;
      break;
    case AccessKind::kStoreCap:
      allowed = p.store && p.cap_access;
      break;
    case AccessKind::kExecute:
      allowed = p.execute;
      break;
  }
  if (!allowed) return CapFault::kPermission;
  if (addr < bounds.base || uint64_t{addr} + width > bounds.top) {
    return CapFault::kBounds;
  }
  return std::nullopt;
}

std::optional<CapFault> CheckAccess(const Capability &cap, uint32_t addr,
                                    unsigned width, AccessKind kind) {
  return CheckAccessWithBounds(cap, BoundsOf(cap), addr, width, kind);
}

uint64_t ToBits(const Capability &cap) {
  const uint64_t exp_code = cap.exponent == kFullSpaceExponent
                                ? kFullSpaceExponentCode
                                : cap.exponent & 0x1f;
  return (uint64_t{cap.perms & 0x3fu} << 58) |
         (uint64_t{cap.otype & 0x7u} << 55) | (exp_code << 50) |
         (uint64_t{cap.t_field & 0x1ffu} << 41) |
         (uint64_t{cap.b_field & 0x1ffu} << 32) | cap.address;
}

Capability FromBits(uint64_t bits, bool tag) {
  Capability c;
  c.tag = tag;
  c.address = static_cast<uint32_t>(bits);
  c.b_field = (bits >> 32) & 0x1ff;
  c.t_field = (bits >> 41) & 0x1ff;
  const uint8_t exp_code = (bits >> 50) & 0x1f;
  c.otype = (bits >> 55) & 0x7;
  c.perms = (bits >> 58) & 0x3f;
  if (exp_code == kFullSpaceExponentCode) {
    c.exponent = kFullSpaceExponent;
  } else if (exp_code <= kMaxSmallExponent) {
    c.exponent = exp_code;
  } else {
    c.exponent = 0;
    c.tag = false;
  }
  return c;
}

bool IsMemWellformed(const Capability &cap) {
  if (!cap.tag) return true;
  if (!IsLegalExponent(cap.exponent) || !IsCanonicalPermCode(cap.perms)) {
    return false;
  }
  const Bounds b = BoundsOf(cap);
  return b.top <= kAddressSpaceTop && b.base <= b.top;
}

bool CapStricterThan(const Capability &c1, const Capability &c2) {
  Capability a = c1;
  Capability b = c2;
  a.tag = b.tag = false;
  return a == b && (!c1.tag || c2.tag);
}

}  // namespace cheriot

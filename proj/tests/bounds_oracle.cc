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

#include "bounds_oracle.h"

namespace cheriot::testing {

OracleBounds OracleDecode(uint32_t a, uint32_t b_field, uint32_t t_field,
                          uint32_t e) {
  using Wide = __int128;
  const Wide A = a;
  const Wide a_mid = (A >> e) & 0x1FF;
  const Wide a_hi = (a_mid < Wide{b_field}) ? 1 : 0;
  const Wide t_hi = (Wide{t_field} < Wide{b_field}) ? 1 : 0;
  const Wide c_b = -a_hi;
  const Wide c_t = t_hi - a_hi;
  const Wide a_top = A >> (e + 9);
  // Left shifts of negative values are expressed as multiplication; the
  // results are then reduced modulo 2^32 and 2^33.
  const Wide pow_e = Wide{1} << e;
  Wide b = ((a_top + c_b) * 512 + Wide{b_field}) * pow_e;
  Wide t = ((a_top + c_t) * 512 + Wide{t_field}) * pow_e;
  const Wide mod32 = Wide{1} << 32;
  const Wide mod33 = Wide{1} << 33;
  b %= mod32;
  if (b < 0) b += mod32;
  t %= mod33;
  if (t < 0) t += mod33;
  return OracleBounds{static_cast<uint64_t>(b), static_cast<uint64_t>(t),
                      static_cast<int>(c_b), static_cast<int>(c_t)};
}

}  // namespace cheriot::testing

/* Copyright 2026 The fasta2a Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FASTA2A_ERROR_HPP_
#define FASTA2A_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fasta2a {

using Bytes = std::uint64_t;

// Bad input: malformed files, out-of-range parameters, mismatched shapes.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structural guarantee of the scheduler was broken (residual no longer
// doubly stochastic, bytes not conserved). Never repaired silently.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Overflow-checked accumulation of byte counts.
inline Bytes checked_add(Bytes a, Bytes b) {
  Bytes out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw ValidationError("byte count overflows 64 bits");
  }
  return out;
}

}  // namespace fasta2a

#endif  // FASTA2A_ERROR_HPP_

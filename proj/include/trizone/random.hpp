/* Copyright 2026 The Trizone Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef TRIZONE_RANDOM_HPP_
#define TRIZONE_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace trizone {

// Seeded generator with platform-independent draws. std::mt19937_64 output
// is fully specified by the standard; the distributions are not, so the
// conversions to doubles and normals are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  // Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// First eight bytes (big-endian) of SHA-256("<run_seed>:<key>").
std::uint64_t DeriveSeed(std::uint64_t run_seed, std::string_view key);

}  // namespace trizone

#endif  // TRIZONE_RANDOM_HPP_

// Copyright 2026 The Privometer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVOMETER_RNG_HPP_
#define PRIVOMETER_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace privometer {

// SplitMix64 finalizer. Used to scramble seeds and to derive independent
// child streams; the constants are the reference ones from Steele et al.
std::uint64_t splitmix64(std::uint64_t x);

// FNV-1a 64-bit hash, used for stream tags and config fingerprints.
std::uint64_t fnv1a64(std::string_view s);

// Deterministic random source for every sampling decision in the library.
//
// Reproducibility contract: all draws come from std::mt19937_64, whose output
// sequence is fully specified by the C++ standard, and all derived quantities
// (bounded integers, unit reals, samples, shuffles) are computed with the
// hand-rolled, platform-independent algorithms below. std::<random>
// distributions are deliberately avoided because their output is
// implementation-defined. Identical seeds therefore produce identical results
// on every conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // The seed this stream was created with (not the engine state).
  std::uint64_t seed() const { return seed_; }

  // Next raw 64-bit value from the engine.
  std::uint64_t next_u64();

  // Uniform integer in [0, bound) by rejection sampling (unbiased).
  // bound must be >= 1.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double unit_real();

  // True with probability p (p <= 0 never, p >= 1 always).
  bool bernoulli(double p);

  // Child stream derived from this stream's seed and a tag. Forking depends
  // only on (seed, tag[, index]), never on how many values were drawn, so
  // call order cannot perturb sibling streams.
  Rng fork(std::string_view tag) const;
  Rng fork(std::string_view tag, std::uint64_t index) const;

  // k distinct indices drawn uniformly from {0, ..., n-1} via a partial
  // Fisher-Yates pass, returned sorted ascending. Requires k <= n.
  std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n,
                                                        std::uint32_t k);

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    if (v.size() < 2) return;
    for (std::size_t i = v.size() - 1; i > 0; --i) {
      std::size_t j = static_cast<std::size_t>(below(i + 1));
      std::swap(v[i], v[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace privometer

#endif  // PRIVOMETER_RNG_HPP_

// Copyright 2026 The DPSC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPSC_RNG_H_
#define DPSC_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dpsc {

// SplitMix64 finalizer. Used to turn structured coordinates (master seed,
// cell index, repetition index) into well-separated stream seeds.
constexpr std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// A seeded random stream that remembers its seed so results can carry their
// provenance. Samplers take an Rng& and never touch global state.
class Rng {
 public:
  using Engine = std::mt19937_64;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  // Stream for a coordinate path below `master`. Same path, same stream.
  static Rng Derive(std::uint64_t master,
                    std::initializer_list<std::uint64_t> path) {
    return Rng(DeriveSeed(master, path));
  }

  static std::uint64_t DeriveSeed(std::uint64_t master,
                                  std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = MixSeed(master);
    for (std::uint64_t p : path) s = MixSeed(s ^ MixSeed(p + 1));
    return s;
  }

  std::uint64_t seed() const { return seed_; }
  Engine& engine() { return engine_; }

  // Fresh seed drawn from this stream, for handing out child streams.
  std::uint64_t NextSeed() { return MixSeed(engine_()); }

 private:
  std::uint64_t seed_;
  Engine engine_;
};

}  // namespace dpsc

#endif  // DPSC_RNG_H_

//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_RNG_H_
#define ASEMOL_RNG_H_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace asemol {

using Rng = std::mt19937_64;

// Independent stream seeds derived from one run seed.
enum class SeedStream : std::uint64_t {
  kInit = 1,
  kShuffle = 2,
  kRoutingNoise = 3,
  kSplit = 4,
};

std::uint64_t derive_seed(std::uint64_t seed, SeedStream stream);

Rng make_rng(std::uint64_t seed, SeedStream stream);

std::string serialize_rng(const Rng &rng);
Rng deserialize_rng(std::string_view text);

// Standard normal draw via Box-Muller on raw engine output, so the sequence
// depends only on the engine and not on the standard library's distribution.
double normal_draw(Rng &rng);
double uniform_draw(Rng &rng, double lo, double hi);

}  // namespace asemol

#endif  // ASEMOL_RNG_H_

//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/rng.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "asemol/error.h"

namespace asemol {

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_open(Rng &rng) {
  // 53 random bits mapped into (0, 1).
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, SeedStream stream) {
  return mix(mix(seed) ^ static_cast<std::uint64_t>(stream));
}

Rng make_rng(std::uint64_t seed, SeedStream stream) {
  return Rng(derive_seed(seed, stream));
}

std::string serialize_rng(const Rng &rng) {
  std::ostringstream os;
  os << rng;
  return os.str();
}

Rng deserialize_rng(std::string_view text) {
  std::istringstream is{std::string(text)};
  Rng rng;
  is >> rng;
  if (is.fail()) throw IntegrityError("malformed random generator state");
  return rng;
}

double normal_draw(Rng &rng) {
  const double u1 = unit_open(rng);
  const double u2 = unit_open(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double uniform_draw(Rng &rng, double lo, double hi) {
  return lo + (hi - lo) * unit_open(rng);
}

}  // namespace asemol

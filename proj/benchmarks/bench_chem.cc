//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <benchmark/benchmark.h>

#include "asemol/brics.h"
#include "asemol/scaffold.h"
#include "asemol/smiles.h"

namespace {

constexpr const char *kMolecule = "CC(C)Cc1ccc(cc1)C(C)C(=O)NCc1ccc2OCOc2c1";

void BM_ParseSmiles(benchmark::State &state) {
  for (auto _ : state) benchmark::DoNotOptimize(asemol::parse_smiles(kMolecule));
}
BENCHMARK(BM_ParseSmiles);

void BM_CanonicalSmiles(benchmark::State &state) {
  const auto g = asemol::parse_smiles(kMolecule);
  for (auto _ : state) benchmark::DoNotOptimize(asemol::canonical_smiles(g));
}
BENCHMARK(BM_CanonicalSmiles);

void BM_BricsDecompose(benchmark::State &state) {
  const auto g = asemol::parse_smiles(kMolecule);
  for (auto _ : state) benchmark::DoNotOptimize(asemol::brics_decompose(g));
}
BENCHMARK(BM_BricsDecompose);

void BM_MurckoScaffold(benchmark::State &state) {
  const auto g = asemol::parse_smiles(kMolecule);
  for (auto _ : state) benchmark::DoNotOptimize(asemol::murcko_scaffold(g));
}
BENCHMARK(BM_MurckoScaffold);

}  // namespace

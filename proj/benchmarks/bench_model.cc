//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <vector>

#include <benchmark/benchmark.h>

#include "asemol/batch.h"
#include "asemol/config.h"
#include "asemol/dataset.h"
#include "asemol/model.h"
#include "asemol/moe.h"
#include "asemol/tensor.h"

namespace {

const std::vector<asemol::Record> &records() {
  static const std::vector<asemol::Record> r = [] {
    const char *smiles[] = {"CC(=O)Nc1ccc(O)cc1", "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
                            "COc1ccc(CCN)cc1", "CN1CCC(CC1)OC(=O)c1ccccc1",
                            "Clc1ccc(cc1)C(=O)NCCN"};
    std::vector<asemol::Record> out;
    for (int rep = 0; rep < 8; ++rep)
      for (const char *s : smiles) out.push_back(asemol::make_record(s, {1}));
    return out;
  }();
  return r;
}

asemol::TrainConfig config(std::int64_t dim) {
  asemol::TrainConfig cfg;
  cfg.encoder.hidden_dim = static_cast<std::size_t>(dim);
  cfg.encoder.num_layers = 3;
  return cfg;
}

void BM_Matmul(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = asemol::Tensor::full({n, n}, 0.5);
  const auto b = asemol::Tensor::full({n, n}, 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(asemol::matmul(a, b));
}
BENCHMARK(BM_Matmul)->Arg(64)->Arg(128)->Arg(256);

void BM_ExpertForwardBackward(benchmark::State &state) {
  const auto cfg = config(state.range(0));
  asemol::Model model(asemol::model_spec(cfg, 1), 1);
  std::vector<const asemol::Record *> recs;
  std::vector<const asemol::MolecularGraph *> graphs;
  for (const auto &r : records()) {
    recs.push_back(&r);
    graphs.push_back(&r.graph);
  }
  const auto motifs = asemol::recognize_motifs(recs, model.encoder(), model.recognition_head(),
                                               cfg.psi, true, 64);
  std::vector<const asemol::MotifAssignment *> mp;
  for (const auto &m : motifs) mp.push_back(&m);
  const auto batch = asemol::make_batch(graphs);
  for (auto _ : state) {
    const auto out = asemol::expert_forward(model, batch, mp, nullptr);
    auto loss = asemol::importance_loss(out.prediction, 0.0);
    loss.backward();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(recs.size()));
}
BENCHMARK(BM_ExpertForwardBackward)->Arg(32)->Arg(128);

void BM_RecognizeMotifs(benchmark::State &state) {
  const auto cfg = config(state.range(0));
  asemol::Model model(asemol::model_spec(cfg, 1), 1);
  std::vector<const asemol::Record *> recs;
  for (const auto &r : records()) recs.push_back(&r);
  for (auto _ : state)
    benchmark::DoNotOptimize(asemol::recognize_motifs(recs, model.encoder(),
                                                      model.recognition_head(), cfg.psi, true, 64));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(recs.size()));
}
BENCHMARK(BM_RecognizeMotifs)->Arg(32)->Arg(128);

}  // namespace

//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "asemol/batch.h"
#include "asemol/encoder.h"
#include "asemol/error.h"
#include "asemol/features.h"
#include "asemol/rng.h"
#include "asemol/smiles.h"
#include "gradcheck.h"

namespace asemol {
namespace {

MolecularGraph mol(std::string_view smiles) {
  auto g = parse_smiles(smiles);
  featurize(g);
  return g;
}

Encoder make_encoder(EncoderVariant v, ReadoutKind r, std::size_t d = 16,
                     std::size_t layers = 3, std::uint64_t seed = 5) {
  EncoderConfig cfg;
  cfg.variant = v;
  cfg.readout = r;
  cfg.hidden_dim = d;
  cfg.num_layers = layers;
  Rng rng(seed);
  return Encoder(cfg, rng);
}

TEST(Batch, DisjointUnionLayout) {
  auto a = mol("CCO");
  auto b = mol("c1ccccc1");
  const MolecularGraph *gs[] = {&a, &b};
  auto batch = make_batch(gs);
  EXPECT_EQ(batch.num_graphs, 2u);
  EXPECT_EQ(batch.num_nodes, 9u);
  EXPECT_EQ(batch.node_offset, (std::vector<std::size_t>{0, 3, 9}));
  EXPECT_EQ(batch.num_edges(), 2 * (a.num_bonds() + b.num_bonds()));
  EXPECT_EQ(batch.atom_features.shape(), (Shape{9, kAtomFeatureDim}));
  EXPECT_EQ(batch.edge_features.shape(), (Shape{batch.num_edges(), kBondFeatureDim}));
  for (std::size_t e = 0; e < batch.num_edges(); ++e)
    EXPECT_EQ(batch.node_graph[batch.edge_src[e]], batch.node_graph[batch.edge_dst[e]]);
  EXPECT_DOUBLE_EQ(batch.inv_degree_plus_one.at(1, 0), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(batch.inv_degree_plus_one.at(3, 0), 1.0 / 3.0);
}

TEST(Batch, RequiresFeatures) {
  auto g = parse_smiles("CC");
  EXPECT_THROW(make_batch(g), ContractError);
}

TEST(Readout, SegmentMeanSumMax) {
  auto x = Tensor::from_values({3, 2}, {1, 4, 3, -2, 5, 0});
  const std::size_t ids[] = {0, 1, 2};
  const std::size_t seg[] = {0, 0, 1};
  auto m = segment_readout(x, ids, seg, 2, ReadoutKind::kMean);
  EXPECT_DOUBLE_EQ(m.at(0, 0), 2);
  EXPECT_DOUBLE_EQ(m.at(0, 1), 1);
  EXPECT_DOUBLE_EQ(m.at(1, 0), 5);
  auto s = segment_readout(x, ids, seg, 2, ReadoutKind::kSum);
  EXPECT_DOUBLE_EQ(s.at(0, 0), 4);
  auto mx = segment_readout(x, ids, seg, 2, ReadoutKind::kMax);
  EXPECT_DOUBLE_EQ(mx.at(0, 1), 4);
  EXPECT_DOUBLE_EQ(mx.at(1, 1), 0);
}

TEST(Readout, FullMaskMatchesReadoutExactly) {
  auto g = mol("CC(=O)Nc1ccc(O)cc1");
  for (auto kind : {ReadoutKind::kMean, ReadoutKind::kSum, ReadoutKind::kMax}) {
    auto enc = make_encoder(EncoderVariant::kGin, kind);
    auto batch = make_batch(g);
    auto e = enc.encode(batch);
    std::vector<std::uint8_t> mask(g.num_atoms(), 1);
    auto masked = readout_masked(e.nodes, mask, kind);
    ASSERT_EQ(masked.shape(), e.graphs.shape());
    for (std::size_t j = 0; j < masked.numel(); ++j)
      EXPECT_EQ(masked.values()[j], e.graphs.values()[j]);
  }
}

TEST(Readout, MaskValidation) {
  auto x = Tensor::zeros({3, 2});
  const std::uint8_t none[] = {0, 0, 0};
  const std::uint8_t short_mask[] = {1, 1};
  EXPECT_THROW(readout_masked(x, none, ReadoutKind::kMean), ContractError);
  EXPECT_THROW(readout_masked(x, short_mask, ReadoutKind::kMean), ContractError);
}

class EncoderInvariance
    : public ::testing::TestWithParam<std::tuple<EncoderVariant, ReadoutKind>> {};

TEST_P(EncoderInvariance, AtomOrderDoesNotChangeGraphEmbedding) {
  auto [variant, kind] = GetParam();
  auto enc = make_encoder(variant, kind);
  auto g = mol("CC(=O)Nc1ccc(O)cc1");
  auto ref = enc.encode(make_batch(g)).graphs;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto p = mol(random_smiles(g, seed));
    auto h = enc.encode(make_batch(p)).graphs;
    for (std::size_t j = 0; j < ref.numel(); ++j)
      EXPECT_NEAR(h.values()[j], ref.values()[j], 1e-9);
  }
}

TEST_P(EncoderInvariance, BatchMatchesSingles) {
  auto [variant, kind] = GetParam();
  auto enc = make_encoder(variant, kind);
  auto a = mol("CCO");
  auto b = mol("c1ccncc1C(=O)O");
  auto c = mol("C");
  const MolecularGraph *gs[] = {&a, &b, &c};
  auto joint = enc.encode(make_batch(gs)).graphs;
  for (std::size_t g = 0; g < 3; ++g) {
    auto single = enc.encode(make_batch(*gs[g])).graphs;
    for (std::size_t j = 0; j < single.numel(); ++j)
      EXPECT_NEAR(joint.at(g, j), single.values()[j], 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(
    Variants, EncoderInvariance,
    ::testing::Combine(::testing::Values(EncoderVariant::kGcn, EncoderVariant::kGin),
                       ::testing::Values(ReadoutKind::kMean, ReadoutKind::kSum,
                                         ReadoutKind::kMax)));

TEST(Encoder, ParameterNames) {
  auto enc = make_encoder(EncoderVariant::kGin, ReadoutKind::kMean, 8, 2);
  ParameterList params;
  enc.collect(params, "encoder");
  std::vector<std::string> names;
  for (const auto &p : params) names.push_back(p.name);
  EXPECT_NE(std::find(names.begin(), names.end(), "encoder.input.weight"), names.end());
  EXPECT_NE(std::find(names.begin(), names.end(), "encoder.layer1.eps"), names.end());
  EXPECT_NE(std::find(names.begin(), names.end(), "encoder.layer0.bond_proj"), names.end());
}

TEST(Encoder, ParameterGradients) {
  for (auto v : {EncoderVariant::kGcn, EncoderVariant::kGin}) {
    auto enc = make_encoder(v, ReadoutKind::kMean, 4, 2);
    auto g = mol("CC(=O)N");
    auto batch = make_batch(g);
    ParameterList params;
    enc.collect(params, "e");
    std::vector<Tensor> inputs;
    for (const auto &p : params) inputs.push_back(p.tensor);
    auto loss = [&] {
      auto h = enc.encode(batch).graphs;
      return sum(mul(h, h));
    };
    auto r = testing::check_gradients(loss, inputs, 1e-5);
    EXPECT_LT(r.max_rel_error, 1e-4) << to_string(v);
  }
}

TEST(Encoder, NamesParse) {
  EXPECT_EQ(parse_encoder_variant("gin"), EncoderVariant::kGin);
  EXPECT_EQ(parse_readout_kind(to_string(ReadoutKind::kMax)), ReadoutKind::kMax);
  EXPECT_THROW(parse_encoder_variant("gat"), ConfigError);
  EncoderConfig bad;
  bad.num_layers = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
}

}  // namespace
}  // namespace asemol

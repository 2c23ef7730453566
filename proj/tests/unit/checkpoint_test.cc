//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cstring>
#include <filesystem>

#include <gtest/gtest.h>

#include "asemol/checkpoint.h"
#include "asemol/error.h"
#include "asemol/train.h"
#include "synthetic.h"

namespace asemol {
namespace {

Checkpoint sample() {
  Checkpoint c;
  c.add_tensor("w", Tensor::from_values({2, 2}, {1.0, -0.0, 3.5e-300, 1e300}));
  c.add_text("note", "hello");
  c.add_tensor("s", Tensor::scalar(7.0));
  return c;
}

TEST(Checkpoint, RoundTripIsByteIdentical) {
  const auto bytes = encode_checkpoint(sample());
  EXPECT_EQ(bytes.substr(0, 8), kCheckpointMagic);
  auto back = decode_checkpoint(bytes);
  ASSERT_EQ(back.blocks.size(), 3u);
  EXPECT_EQ(back.require("note", BlockKind::kText).text, "hello");
  EXPECT_EQ(back.require("w", BlockKind::kTensor).shape, (Shape{2, 2}));
  EXPECT_TRUE(std::signbit(back.require("w", BlockKind::kTensor).values[1]));
  EXPECT_EQ(encode_checkpoint(back), bytes);
}

TEST(Checkpoint, VersionBumpIsRejected) {
  auto bytes = encode_checkpoint(sample());
  const std::uint32_t next = kCheckpointVersion + 1;
  std::memcpy(bytes.data() + 8, &next, 4);
  EXPECT_THROW(decode_checkpoint(bytes), UnsupportedVersionError);
}

TEST(Checkpoint, TruncationAndCorruptionAreRejected) {
  const auto bytes = encode_checkpoint(sample());
  for (std::size_t n : {std::size_t{0}, std::size_t{5}, std::size_t{12}, bytes.size() / 2,
                        bytes.size() - 1}) {
    EXPECT_THROW(decode_checkpoint(bytes.substr(0, n)), IntegrityError) << n;
  }
  auto flipped = bytes;
  flipped[20] ^= 0x01;
  EXPECT_THROW(decode_checkpoint(flipped), IntegrityError);
  auto magic = bytes;
  magic[0] = 'X';
  EXPECT_THROW(decode_checkpoint(magic), IntegrityError);
}

TEST(Checkpoint, RequireChecksKind) {
  auto c = sample();
  EXPECT_THROW(c.require("note", BlockKind::kTensor), IntegrityError);
  EXPECT_THROW(c.require("absent", BlockKind::kText), IntegrityError);
  EXPECT_EQ(c.find("absent"), nullptr);
}

TEST(Checkpoint, ModelRoundTripPredictsIdentically) {
  auto ds = testing::planted_amide_dataset(60, 2);
  TrainConfig cfg;
  cfg.encoder.variant = EncoderVariant::kGin;
  cfg.encoder.hidden_dim = 8;
  cfg.encoder.num_layers = 2;
  cfg.num_experts = 3;
  cfg.epochs_rec = 2;
  cfg.epochs_total = 2;
  cfg.optimizer = OptimizerKind::kAdamW;
  cfg.split = SplitKind::kRandom;
  auto result = train(ds, cfg, make_split(ds, cfg));

  ModelMeta meta;
  meta.config = cfg;
  meta.task_names = ds.task_names;
  meta.phase = result.final_phase;
  for (std::size_t i = 0; i < ds.size(); ++i) meta.motifs[ds.records[i].smiles] = result.motifs[i];
  meta.shuffle_rng = serialize_rng(make_rng(cfg.seed, SeedStream::kShuffle));
  meta.noise_rng = serialize_rng(make_rng(cfg.seed, SeedStream::kRoutingNoise));
  meta.optimizer_state = result.optimizer_state;
  const auto bytes = encode_checkpoint(make_model_checkpoint(result.model, meta));

  const auto path = std::filesystem::temp_directory_path() / "asemol_ckpt_test.bin";
  save_checkpoint(path, decode_checkpoint(bytes));
  auto loaded = restore_model(load_checkpoint(path));
  std::filesystem::remove(path);

  EXPECT_EQ(loaded.meta.task_names, ds.task_names);
  EXPECT_EQ(loaded.meta.phase, Phase::kExperts);
  EXPECT_EQ(loaded.meta.motifs.size(), meta.motifs.size());
  EXPECT_EQ(loaded.meta.motifs.at(ds.records[0].smiles), result.motifs[0]);
  EXPECT_EQ(loaded.meta.optimizer_state.size(), meta.optimizer_state.size());
  EXPECT_EQ(encode_checkpoint(make_model_checkpoint(loaded.model, loaded.meta)), bytes);

  std::vector<const Record *> recs;
  std::vector<const MotifAssignment *> motifs;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    recs.push_back(&ds.records[i]);
    motifs.push_back(&result.motifs[i]);
  }
  EXPECT_EQ(predict_logits(result.model, recs, motifs, 32),
            predict_logits(loaded.model, recs, motifs, 32));
}

TEST(Checkpoint, MotifJsonRoundTrip) {
  std::map<std::string, MotifAssignment> m;
  m["CCO"] = MotifAssignment{{1}, {0}, {2}, {0, 1}, false};
  m["C"] = MotifAssignment{{0}, {0}, {0}, {0}, true};
  EXPECT_EQ(motifs_from_json(motifs_to_json(m)), m);
}

}  // namespace
}  // namespace asemol

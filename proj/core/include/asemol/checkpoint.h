//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_CHECKPOINT_H_
#define ASEMOL_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "asemol/attribution.h"
#include "asemol/config.h"
#include "asemol/model.h"
#include "asemol/tensor.h"
#include "asemol/train.h"

namespace asemol {

inline constexpr std::string_view kCheckpointMagic = "ASEMOLCK";
inline constexpr std::uint32_t kCheckpointVersion = 1;

enum class BlockKind : std::uint8_t { kTensor = 1, kText = 2 };

struct CheckpointBlock {
  std::string name;
  BlockKind kind = BlockKind::kTensor;
  Shape shape;                 // tensor blocks
  std::vector<double> values;  // tensor blocks
  std::string text;            // text blocks
};

/// Ordered named blocks. Layout (little-endian), see docs/checkpoint.md:
///   magic "ASEMOLCK" | u32 version | u32 block count | blocks | u64 FNV-1a
/// where each block is u32 name length, name, u8 kind, then for tensors
/// u32 rank, u64 dims, f64 values, and for text u64 length, bytes.
struct Checkpoint {
  std::vector<CheckpointBlock> blocks;

  void add_tensor(std::string name, const Tensor &t);
  void add_text(std::string name, std::string text);
  const CheckpointBlock *find(std::string_view name) const;
  // Throws IntegrityError when absent or of the wrong kind.
  const CheckpointBlock &require(std::string_view name, BlockKind kind) const;
};

std::string encode_checkpoint(const Checkpoint &ckpt);
/// Throws UnsupportedVersionError for another format version (checked before
/// the checksum) and IntegrityError for bad magic, checksum, truncation or
/// inconsistent shapes.
Checkpoint decode_checkpoint(std::string_view bytes);

void save_checkpoint(const std::filesystem::path &path, const Checkpoint &ckpt);
Checkpoint load_checkpoint(const std::filesystem::path &path);

// Everything besides parameters that a trained model carries.
struct ModelMeta {
  TrainConfig config;
  std::vector<std::string> task_names;
  Phase phase = Phase::kRecognition;
  // Frozen motifs by source SMILES.
  std::map<std::string, MotifAssignment> motifs;
  std::string shuffle_rng;
  std::string noise_rng;
  ParameterList optimizer_state;
};

Checkpoint make_model_checkpoint(const Model &model, const ModelMeta &meta);

struct LoadedModel {
  Model model;
  ModelMeta meta;
};

// Rebuilds the model from its config and copies every parameter in.
LoadedModel restore_model(const Checkpoint &ckpt);

std::string motifs_to_json(const std::map<std::string, MotifAssignment> &motifs);
std::map<std::string, MotifAssignment> motifs_from_json(std::string_view json);

}  // namespace asemol

#endif  // ASEMOL_CHECKPOINT_H_

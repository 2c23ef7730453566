//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "asemol/error.h"

namespace asemol {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Writer {
 public:
  template <typename T>
  void put(T value) {
    static_assert(std::is_integral_v<T>);
    for (std::size_t i = 0; i < sizeof(T); ++i)
      out_ += static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff);
  }
  void put_double(double v) { put(std::bit_cast<std::uint64_t>(v)); }
  void put_bytes(std::string_view s) { out_.append(s); }
  std::string &str() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  double get_double() { return std::bit_cast<double>(get<std::uint64_t>()); }
  std::string_view get_bytes(std::size_t n) {
    need(n);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (n > bytes_.size() - pos_)
      throw IntegrityError("checkpoint truncated at byte " + std::to_string(pos_));
  }
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

json motif_to_json(const MotifAssignment &m) {
  return json{{"positive_fragments", m.positive_fragments},
              {"negative_fragments", m.negative_fragments},
              {"positive_nodes", m.positive_nodes},
              {"negative_nodes", m.negative_nodes},
              {"degenerate", m.degenerate}};
}

}  // namespace

void Checkpoint::add_tensor(std::string name, const Tensor &t) {
  CheckpointBlock b;
  b.name = std::move(name);
  b.kind = BlockKind::kTensor;
  b.shape = t.shape();
  b.values.assign(t.values().begin(), t.values().end());
  blocks.push_back(std::move(b));
}

void Checkpoint::add_text(std::string name, std::string text) {
  CheckpointBlock b;
  b.name = std::move(name);
  b.kind = BlockKind::kText;
  b.text = std::move(text);
  blocks.push_back(std::move(b));
}

const CheckpointBlock *Checkpoint::find(std::string_view name) const {
  for (const auto &b : blocks)
    if (b.name == name) return &b;
  return nullptr;
}

const CheckpointBlock &Checkpoint::require(std::string_view name, BlockKind kind) const {
  const CheckpointBlock *b = find(name);
  if (b == nullptr) throw IntegrityError("checkpoint lacks block '" + std::string(name) + "'");
  if (b->kind != kind) throw IntegrityError("checkpoint block '" + std::string(name) + "' has the wrong kind");
  return *b;
}

std::string encode_checkpoint(const Checkpoint &ckpt) {
  Writer w;
  w.put_bytes(kCheckpointMagic);
  w.put(kCheckpointVersion);
  w.put(static_cast<std::uint32_t>(ckpt.blocks.size()));
  for (const auto &b : ckpt.blocks) {
    w.put(static_cast<std::uint32_t>(b.name.size()));
    w.put_bytes(b.name);
    w.put(static_cast<std::uint8_t>(b.kind));
    if (b.kind == BlockKind::kTensor) {
      w.put(static_cast<std::uint32_t>(b.shape.size()));
      for (std::size_t d : b.shape) w.put(static_cast<std::uint64_t>(d));
      for (double v : b.values) w.put_double(v);
    } else {
      w.put(static_cast<std::uint64_t>(b.text.size()));
      w.put_bytes(b.text);
    }
  }
  const std::uint64_t sum = fnv1a(w.str());
  w.put(sum);
  return std::move(w.str());
}

Checkpoint decode_checkpoint(std::string_view bytes) {
  Reader r(bytes);
  if (r.get_bytes(kCheckpointMagic.size()) != kCheckpointMagic)
    throw IntegrityError("not a checkpoint (bad magic)");
  const auto version = r.get<std::uint32_t>();
  if (version != kCheckpointVersion)
    throw UnsupportedVersionError("checkpoint format version " + std::to_string(version)
                                  + " is not supported (expected "
                                  + std::to_string(kCheckpointVersion) + ")");
  if (bytes.size() < kCheckpointMagic.size() + 8 + 8)
    throw IntegrityError("checkpoint truncated");
  const std::string_view body = bytes.substr(0, bytes.size() - 8);
  Reader tail(bytes.substr(bytes.size() - 8));
  if (tail.get<std::uint64_t>() != fnv1a(body)) throw IntegrityError("checkpoint checksum mismatch");

  Reader br(body);
  br.get_bytes(kCheckpointMagic.size());
  br.get<std::uint32_t>();
  const auto count = br.get<std::uint32_t>();
  Checkpoint ckpt;
  for (std::uint32_t i = 0; i < count; ++i) {
    CheckpointBlock b;
    b.name = std::string(br.get_bytes(br.get<std::uint32_t>()));
    const auto kind = br.get<std::uint8_t>();
    if (kind == static_cast<std::uint8_t>(BlockKind::kTensor)) {
      b.kind = BlockKind::kTensor;
      const auto rank = br.get<std::uint32_t>();
      if (rank > 8) throw IntegrityError("block '" + b.name + "' has implausible rank");
      std::uint64_t numel = 1;
      for (std::uint32_t k = 0; k < rank; ++k) {
        const auto d = br.get<std::uint64_t>();
        b.shape.push_back(static_cast<std::size_t>(d));
        numel *= d;
      }
      if (numel > br.remaining() / 8)
        throw IntegrityError("block '" + b.name + "' shape exceeds payload");
      b.values.resize(static_cast<std::size_t>(numel));
      for (double &v : b.values) v = br.get_double();
    } else if (kind == static_cast<std::uint8_t>(BlockKind::kText)) {
      b.kind = BlockKind::kText;
      const auto n = br.get<std::uint64_t>();
      if (n > br.remaining()) throw IntegrityError("block '" + b.name + "' length exceeds payload");
      b.text = std::string(br.get_bytes(static_cast<std::size_t>(n)));
    } else {
      throw IntegrityError("block '" + b.name + "' has unknown kind");
    }
    ckpt.blocks.push_back(std::move(b));
  }
  if (br.remaining() != 0) throw IntegrityError("trailing bytes after the block table");
  return ckpt;
}

void save_checkpoint(const std::filesystem::path &path, const Checkpoint &ckpt) {
  const std::string bytes = encode_checkpoint(ckpt);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write checkpoint '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing checkpoint '" + path.string() + "'");
}

Checkpoint load_checkpoint(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open checkpoint '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return decode_checkpoint(ss.str());
}

std::string motifs_to_json(const std::map<std::string, MotifAssignment> &motifs) {
  json j = json::object();
  for (const auto &[smiles, m] : motifs) j[smiles] = motif_to_json(m);
  return j.dump();
}

std::map<std::string, MotifAssignment> motifs_from_json(std::string_view text) {
  std::map<std::string, MotifAssignment> out;
  try {
    const json j = json::parse(text);
    for (const auto &[smiles, v] : j.items()) {
      MotifAssignment m;
      m.positive_fragments = v.at("positive_fragments").get<std::vector<std::size_t>>();
      m.negative_fragments = v.at("negative_fragments").get<std::vector<std::size_t>>();
      m.positive_nodes = v.at("positive_nodes").get<std::vector<int>>();
      m.negative_nodes = v.at("negative_nodes").get<std::vector<int>>();
      m.degenerate = v.at("degenerate").get<bool>();
      out.emplace(smiles, std::move(m));
    }
  } catch (const json::exception &e) {
    throw IntegrityError(std::string("malformed motif block: ") + e.what());
  }
  return out;
}

Checkpoint make_model_checkpoint(const Model &model, const ModelMeta &meta) {
  Checkpoint c;
  c.add_text("config", config_to_json(meta.config));
  c.add_text("meta", json{{"phase", static_cast<int>(meta.phase)},
                          {"task_names", meta.task_names}}.dump());
  c.add_text("rng/shuffle", meta.shuffle_rng);
  c.add_text("rng/noise", meta.noise_rng);
  for (const auto &p : model.parameters()) c.add_tensor("param/" + p.name, p.tensor);
  for (const auto &p : meta.optimizer_state) c.add_tensor("optim/" + p.name, p.tensor);
  c.add_text("motifs", motifs_to_json(meta.motifs));
  return c;
}

LoadedModel restore_model(const Checkpoint &ckpt) {
  ModelMeta meta;
  try {
    meta.config = config_from_json(ckpt.require("config", BlockKind::kText).text);
    const json m = json::parse(ckpt.require("meta", BlockKind::kText).text);
    meta.phase = static_cast<Phase>(m.at("phase").get<int>());
    meta.task_names = m.at("task_names").get<std::vector<std::string>>();
  } catch (const json::exception &e) {
    throw IntegrityError(std::string("malformed checkpoint metadata: ") + e.what());
  } catch (const ConfigError &e) {
    throw IntegrityError(std::string("checkpoint config rejected: ") + e.what());
  }
  if (meta.task_names.empty()) throw IntegrityError("checkpoint has no tasks");
  meta.shuffle_rng = ckpt.require("rng/shuffle", BlockKind::kText).text;
  meta.noise_rng = ckpt.require("rng/noise", BlockKind::kText).text;
  meta.motifs = motifs_from_json(ckpt.require("motifs", BlockKind::kText).text);

  Model model(model_spec(meta.config, meta.task_names.size()), meta.config.seed);
  for (auto &p : model.parameters()) {
    const auto &b = ckpt.require("param/" + p.name, BlockKind::kTensor);
    if (b.shape != p.tensor.shape())
      throw IntegrityError("parameter '" + p.name + "' has shape " + shape_string(b.shape)
                           + ", model expects " + shape_string(p.tensor.shape()));
    auto dst = p.tensor.mutable_values();
    std::copy(b.values.begin(), b.values.end(), dst.begin());
  }
  for (const auto &b : ckpt.blocks) {
    if (b.name.rfind("optim/", 0) != 0 || b.kind != BlockKind::kTensor) continue;
    meta.optimizer_state.push_back(
        {b.name.substr(6), Tensor::from_values(b.shape, b.values)});
  }
  return {std::move(model), std::move(meta)};
}

}  // namespace asemol

//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "corpus.h"

#include <fstream>
#include <stdexcept>

#include "asemol/dataset.h"
#include "synthetic.h"

namespace asemol::testing {

namespace {

std::vector<std::vector<std::string>> read_tsv(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(split_delimited(line, '\t'));
  }
  return rows;
}

}  // namespace

std::filesystem::path data_dir() { return ASEMOL_TEST_DATA_DIR; }

std::vector<std::string> drug_sample() {
  std::vector<std::string> out;
  for (auto &row : read_tsv(data_dir() / "drug_sample.tsv")) out.push_back(row.at(0));
  return out;
}

std::vector<std::pair<std::string, std::string>> rewrite_pairs() {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto &row : read_tsv(data_dir() / "rewrite_pairs.tsv")) out.emplace_back(row.at(0), row.at(1));
  return out;
}

std::vector<std::string> fixture_corpus(std::size_t size) {
  std::vector<std::string> out = drug_sample();
  if (out.size() >= size) {
    out.resize(size);
    return out;
  }
  for (const auto &m : planted_amide_set(size - out.size(), 20261016)) out.push_back(m.smiles);
  return out;
}

}  // namespace asemol::testing

//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ASEMOL_DATASET_H_
#define ASEMOL_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "asemol/brics.h"
#include "asemol/metrics.h"
#include "asemol/molecule.h"

namespace asemol {

struct Record {
  std::string smiles;
  MolecularGraph graph;  // featurized
  std::vector<std::int8_t> labels;  // 0, 1 or kMissingLabel
  std::string scaffold;
  std::vector<Fragment> fragments;
  std::size_t source_row = 0;  // 1-based data row in the input file
};

// Parses, featurizes and precomputes scaffold and fragments. Throws
// ParseError for invalid SMILES.
Record make_record(std::string_view smiles, std::vector<std::int8_t> labels);

struct Dataset {
  std::vector<std::string> task_names;
  std::vector<Record> records;
  std::size_t dropped_invalid = 0;    // unparseable SMILES
  std::size_t dropped_unlabeled = 0;  // no observed label

  std::size_t num_tasks() const { return task_names.size(); }
  std::size_t size() const { return records.size(); }
};

struct IngestOptions {
  // Explicit task columns; when empty every column other than "smiles"
  // whose cells are all in {0, 1, empty} is a task.
  std::vector<std::string> task_columns;
  // When false, rows without any observed label are kept (used for
  // inference on unlabeled files).
  bool require_label = true;
};

/// Reads a delimited table with a header row. The delimiter is a tab when
/// the header contains one, else a comma; fields may be double-quoted. The
/// "smiles" column is matched case-insensitively. Throws FormatError on an
/// empty file, a missing smiles column, ragged rows or bad label cells.
Dataset ingest(std::istream &in, const IngestOptions &options = {});
Dataset ingest(const std::filesystem::path &path, const IngestOptions &options = {});

// Splits one delimited line, honoring double quotes.
std::vector<std::string> split_delimited(std::string_view line, char delimiter);

}  // namespace asemol

#endif  // ASEMOL_DATASET_H_

//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "asemol/dataset.h"

#include <algorithm>
#include <fstream>
#include <optional>

#include "asemol/error.h"
#include "asemol/features.h"
#include "asemol/log.h"
#include "asemol/scaffold.h"
#include "asemol/smiles.h"

namespace asemol {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  for (char &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::optional<std::int8_t> label_value(std::string_view cell) {
  const std::string v = trim(cell);
  if (v.empty()) return kMissingLabel;
  if (v == "0" || v == "0.0") return 0;
  if (v == "1" || v == "1.0") return 1;
  return std::nullopt;
}

}  // namespace

std::vector<std::string> split_delimited(std::string_view line, char delimiter) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

Record make_record(std::string_view smiles, std::vector<std::int8_t> labels) {
  Record r;
  r.smiles = std::string(smiles);
  r.graph = parse_smiles(smiles);
  featurize(r.graph);
  r.labels = std::move(labels);
  r.scaffold = murcko_scaffold(r.graph);
  r.fragments = brics_decompose(r.graph);
  return r;
}

Dataset ingest(std::istream &in, const IngestOptions &options) {
  std::string header_line;
  while (std::getline(in, header_line)) {
    if (!trim(header_line).empty()) break;
  }
  if (trim(header_line).empty()) throw FormatError("dataset is empty");
  const char delim = header_line.find('\t') != std::string::npos ? '\t' : ',';
  std::vector<std::string> header = split_delimited(header_line, delim);
  for (auto &h : header) h = trim(h);

  std::optional<std::size_t> smiles_col;
  for (std::size_t c = 0; c < header.size(); ++c)
    if (lower(header[c]) == "smiles") smiles_col = c;
  if (!smiles_col) throw FormatError("dataset header has no 'smiles' column");

  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_delimited(line, delim);
    if (cells.size() != header.size())
      throw FormatError("line " + std::to_string(line_no) + " has " + std::to_string(cells.size())
                        + " fields, header has " + std::to_string(header.size()));
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw FormatError("dataset has a header but no rows");

  std::vector<std::size_t> task_cols;
  if (!options.task_columns.empty()) {
    for (const auto &name : options.task_columns) {
      auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) throw FormatError("task column '" + name + "' not in header");
      task_cols.push_back(static_cast<std::size_t>(it - header.begin()));
    }
  } else {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c == *smiles_col) continue;
      const bool is_label = std::all_of(rows.begin(), rows.end(), [&](const auto &r) {
        return label_value(r[c]).has_value();
      });
      if (is_label) {
        task_cols.push_back(c);
      } else {
        log_info("ingest: column '" + header[c] + "' is not a 0/1 label column; ignored");
      }
    }
  }
  if (task_cols.empty()) throw FormatError("dataset has no label columns");

  Dataset ds;
  for (std::size_t c : task_cols) ds.task_names.push_back(header[c]);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto &row = rows[i];
    std::vector<std::int8_t> labels;
    for (std::size_t c : task_cols) {
      const auto v = label_value(row[c]);
      if (!v) throw FormatError("row " + std::to_string(i + 1) + ", column '" + header[c]
                                + "': label must be 0, 1 or empty");
      labels.push_back(*v);
    }
    if (options.require_label
        && std::none_of(labels.begin(), labels.end(), [](std::int8_t y) { return y >= 0; })) {
      ++ds.dropped_unlabeled;
      continue;
    }
    const std::string smiles = trim(row[*smiles_col]);
    try {
      Record r = make_record(smiles, std::move(labels));
      r.source_row = i + 1;
      if (!r.graph.warnings.empty() || r.graph.dropped_components > 0)
        log_debug("ingest: row " + std::to_string(i + 1) + " '" + smiles + "' parsed with "
                  + std::to_string(r.graph.warnings.size()) + " warnings");
      ds.records.push_back(std::move(r));
    } catch (const ParseError &e) {
      log_debug("ingest: row " + std::to_string(i + 1) + " dropped: " + e.what());
      ++ds.dropped_invalid;
    }
  }
  log_info("ingest: kept " + std::to_string(ds.records.size()) + ", dropped "
           + std::to_string(ds.dropped_invalid) + " invalid and "
           + std::to_string(ds.dropped_unlabeled) + " unlabeled rows; "
           + std::to_string(ds.num_tasks()) + " tasks");
  if (ds.dropped_invalid > 0)
    log_warn("ingest: " + std::to_string(ds.dropped_invalid) + " rows with unparseable SMILES dropped");
  return ds;
}

Dataset ingest(const std::filesystem::path &path, const IngestOptions &options) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open dataset '" + path.string() + "'");
  return ingest(in, options);
}

}  // namespace asemol

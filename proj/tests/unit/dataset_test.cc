//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <sstream>

#include <gtest/gtest.h>

#include "asemol/dataset.h"
#include "asemol/error.h"
#include "asemol/metrics.h"

namespace asemol {
namespace {

Dataset from_text(const std::string &text, const IngestOptions &opt = {}) {
  std::istringstream in(text);
  return ingest(in, opt);
}

TEST(Ingest, InvalidSmilesIsDropped) {
  auto ds = from_text("smiles,label\nCCO,1\nC(,0\nc1ccccc1,0\n");
  EXPECT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.dropped_invalid, 1u);
  EXPECT_EQ(ds.task_names, (std::vector<std::string>{"label"}));
  EXPECT_EQ(ds.records[1].source_row, 3u);
  EXPECT_EQ(ds.records[1].labels, (std::vector<std::int8_t>{0}));
}

TEST(Ingest, RecordsArePrepared) {
  auto ds = from_text("smiles,y\nCC(=O)Nc1ccccc1,1\n");
  const Record &r = ds.records[0];
  EXPECT_TRUE(r.graph.has_features());
  EXPECT_EQ(r.fragments.size(), 2u);
  EXPECT_FALSE(r.scaffold.empty());
}

TEST(Ingest, ToxStyleHeaderWithMissingCells) {
  const std::string header =
      "NR-AR,NR-AR-LBD,NR-AhR,NR-Aromatase,NR-ER,NR-ER-LBD,NR-PPAR-gamma,SR-ARE,"
      "SR-ATAD5,SR-HSE,SR-MMP,SR-p53,mol_id,smiles\n";
  auto ds = from_text(header + "0,0,1,,,0,0,1,0,0,0,0,TOX3021,CCOc1ccccc1\n"
                      + "0.0,,,,,,,,,,,1.0,TOX3022,CCN\n");
  EXPECT_EQ(ds.num_tasks(), 12u);
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.records[0].labels[3], kMissingLabel);
  EXPECT_EQ(ds.records[0].labels[2], 1);
  EXPECT_EQ(ds.records[1].labels[0], 0);
  EXPECT_EQ(ds.records[1].labels[11], 1);
}

TEST(Ingest, NonBinaryColumnsAreIgnored) {
  auto ds = from_text("num,name,p_np,smiles\n1,a,1,CCO\n2,\"b, c\",0,CCN\n3,d,1,CCC\n");
  EXPECT_EQ(ds.task_names, (std::vector<std::string>{"p_np"}));
  EXPECT_EQ(ds.size(), 3u);
}

TEST(Ingest, ExplicitTaskColumns) {
  IngestOptions opt;
  opt.task_columns = {"b"};
  auto ds = from_text("smiles,a,b\nCC,1,0\nCO,0,1\n", opt);
  EXPECT_EQ(ds.task_names, (std::vector<std::string>{"b"}));
  EXPECT_EQ(ds.records[1].labels, (std::vector<std::int8_t>{1}));
  opt.task_columns = {"missing"};
  EXPECT_THROW(from_text("smiles,a\nCC,1\n", opt), FormatError);
  opt.task_columns = {"a"};
  EXPECT_THROW(from_text("smiles,a\nCC,2\n", opt), FormatError);
}

TEST(Ingest, UnlabeledRowsDroppedUnlessAllowed) {
  const std::string text = "smiles,y\nCC,\nCO,1\n";
  auto ds = from_text(text);
  EXPECT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds.dropped_unlabeled, 1u);
  IngestOptions opt;
  opt.require_label = false;
  EXPECT_EQ(from_text(text, opt).size(), 2u);
}

TEST(Ingest, TabDelimitedAndCaseInsensitiveHeader) {
  auto ds = from_text("SMILES\tactive\nCCO\t1\nCC\t0\n");
  EXPECT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.task_names, (std::vector<std::string>{"active"}));
}

TEST(Ingest, FormatErrors) {
  EXPECT_THROW(from_text(""), FormatError);
  EXPECT_THROW(from_text("name,y\nx,1\n"), FormatError);
  EXPECT_THROW(from_text("smiles,y\nCC,1,7\n"), FormatError);
}

TEST(SplitDelimited, HonoursQuotes) {
  EXPECT_EQ(split_delimited("a,\"b,c\",d", ','),
            (std::vector<std::string>{"a", "b,c", "d"}));
  EXPECT_EQ(split_delimited("a,,", ','), (std::vector<std::string>{"a", "", ""}));
  EXPECT_EQ(split_delimited("\"say \"\"hi\"\"\"", ','),
            (std::vector<std::string>{"say \"hi\""}));
}

}  // namespace
}  // namespace asemol

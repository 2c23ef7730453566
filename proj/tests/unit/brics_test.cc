//
// Project asemol - Copyright 2026 The asemol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include "asemol/brics.h"
#include "asemol/smiles.h"
#include "corpus.h"
#include "partition.h"

namespace asemol {
namespace {

std::vector<std::vector<int>> node_sets(const std::vector<Fragment> &fs) {
  std::vector<std::vector<int>> out;
  for (const auto &f : fs) out.push_back(f.node_indices);
  return out;
}

struct Fixture {
  const char *smiles;
  std::vector<std::vector<int>> fragments;
  std::vector<std::string> rules;  // rule ids of the first fragment
};

class BricsFixture : public ::testing::TestWithParam<Fixture> {};

TEST_P(BricsFixture, Decomposes) {
  const auto &p = GetParam();
  auto g = parse_smiles(p.smiles);
  auto fs = brics_decompose(g);
  EXPECT_EQ(node_sets(fs), p.fragments) << p.smiles;
  ASSERT_FALSE(fs.empty());
  EXPECT_EQ(fs[0].rule_ids, p.rules) << p.smiles;
  EXPECT_EQ(testing::partition_fault(g, fs), "");
}

INSTANTIATE_TEST_SUITE_P(
    Rules, BricsFixture,
    ::testing::Values(
        Fixture{"C", {{0}}, {}},
        Fixture{"C1CCCCC1", {{0, 1, 2, 3, 4, 5}}, {}},
        Fixture{"CC(=O)NC", {{0, 1, 2}, {3, 4}}, {"amide-CN"}},
        Fixture{"CC(=O)Nc1ccccc1", {{0, 1, 2}, {3, 4, 5, 6, 7, 8, 9}}, {"amide-CN"}},
        Fixture{"CC(=O)OC", {{0, 1, 2}, {3, 4}}, {"ester-CO"}},
        Fixture{"CCOCC", {{0, 1}, {2}, {3, 4}}, {"ether-CO"}},
        Fixture{"CCNCC", {{0, 1}, {2}, {3, 4}}, {"amine-CN"}},
        Fixture{"c1ccccc1CC", {{0, 1, 2, 3, 4, 5}, {6, 7}}, {"aryl-alkyl"}},
        Fixture{"c1ccccc1C", {{0, 1, 2, 3, 4, 5, 6}}, {}},
        Fixture{"c1ccccc1-c1ccccc1",
                {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}},
                {"biaryl"}},
        Fixture{"CS(=O)(=O)NC", {{0, 1, 2, 3}, {4, 5}}, {"sulfonamide-SN"}},
        Fixture{"C=CCC", {{0, 1}, {2, 3}}, {"olefin-alkyl"}},
        Fixture{"c1ccccc1OCC", {{0, 1, 2, 3, 4, 5, 6, 7, 8}}, {}}));

TEST(Brics, RuleTableOrder) {
  std::vector<std::string> ids;
  for (const auto &r : rule_table()) ids.push_back(r.id);
  const std::vector<std::string> expect = {"amide-CN",  "ester-CO", "ether-CO",
                                           "amine-CN",  "aryl-alkyl", "biaryl",
                                           "sulfonamide-SN", "olefin-alkyl"};
  EXPECT_EQ(ids, expect);
}

TEST(Brics, MatchBondSkipsRingAndMultipleBonds) {
  auto g = parse_smiles("CC(=O)NC");
  EXPECT_EQ(match_bond(g, 0), "");
  EXPECT_EQ(match_bond(g, 1), "");  // C=O
  EXPECT_EQ(match_bond(g, 2), "amide-CN");
  EXPECT_EQ(match_bond(g, 3), "");  // amide N is not an amine
  auto ring = parse_smiles("C1CCNCC1");
  for (std::size_t b = 0; b < ring.num_bonds(); ++b)
    EXPECT_EQ(match_bond(ring, static_cast<int>(b)), "");
}

TEST(Brics, FirstMatchingRuleWins) {
  // The ester C(=O)-O bond also has an sp3 partner on the far side of the
  // oxygen; only the ester rule may claim it.
  auto g = parse_smiles("CC(=O)OCC");
  auto fs = brics_decompose(g);
  ASSERT_EQ(fs.size(), 2u);
  EXPECT_EQ(fs[1].rule_ids, (std::vector<std::string>{"ester-CO"}));
}

TEST(Brics, DrugSampleIsPartitioned) {
  for (const auto &smi : testing::drug_sample()) {
    auto g = parse_smiles(smi);
    EXPECT_EQ(testing::partition_fault(g, brics_decompose(g)), "") << smi;
  }
}

TEST(Brics, FragmentsInvariantUnderRewriting) {
  for (const auto &[a, b] : testing::rewrite_pairs()) {
    auto ga = parse_smiles(a);
    auto gb = parse_smiles(b);
    EXPECT_EQ(testing::fragment_multiset(ga, brics_decompose(ga)),
              testing::fragment_multiset(gb, brics_decompose(gb)))
        << a;
  }
}

TEST(Brics, PartitionCheckerDetectsFaults) {
  auto g = parse_smiles("CCOCC");
  std::vector<Fragment> overlap = {{{0, 1, 2}, {}}, {{2, 3, 4}, {}}};
  EXPECT_NE(testing::partition_fault(g, overlap), "");
  std::vector<Fragment> gap = {{{0, 1}, {}}, {{3, 4}, {}}};
  EXPECT_NE(testing::partition_fault(g, gap), "");
  std::vector<Fragment> split = {{{0, 4}, {}}, {{1, 2, 3}, {}}};
  EXPECT_NE(testing::partition_fault(g, split), "");
}

}  // namespace
}  // namespace asemol

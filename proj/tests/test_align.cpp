/* Copyright 2026 The CLEME Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <gtest/gtest.h>

#include "cleme/align.hpp"
#include "cleme/corpus_io.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace cleme;

namespace {
std::vector<AlignKind> kinds(const std::vector<AlignOp>& ops) {
  std::vector<AlignKind> out;
  for (const auto& op : ops) out.push_back(op.kind);
  return out;
}
}  // namespace

TEST(Align, Identity) {
  const TokenSeq s{"a", "b", "c"};
  EXPECT_EQ(kinds(align(s, s)),
            (std::vector{AlignKind::kMatch, AlignKind::kMatch, AlignKind::kMatch}));
}

TEST(Align, SingleSubstitution) {
  EXPECT_EQ(kinds(align(TokenSeq{"a"}, TokenSeq{"b"})), std::vector{AlignKind::kSubstitute});
}

TEST(Align, FragmentTieBreak) {
  const TokenSeq src{"the", "technologies", "were"};
  const TokenSeq tgt{"technologies", "have"};
  const auto ops = align(src, tgt);
  EXPECT_EQ(kinds(ops), (std::vector{AlignKind::kDelete, AlignKind::kMatch,
                                     AlignKind::kSubstitute}));
  EXPECT_EQ(ops, oracle::preferred_alignment(src, tgt));
}

TEST(Align, MatchesExhaustivePathOracle) {
  // Every pair over a 2-letter alphabet up to length 4 / 4.
  std::vector<TokenSeq> all{{}};
  for (std::size_t len = 1; len <= 4; ++len) {
    std::vector<TokenSeq> next;
    for (const auto& s : all) {
      if (s.size() + 1 != len) continue;
      for (const char* t : {"a", "b"}) {
        auto n = s;
        n.push_back(t);
        next.push_back(n);
      }
    }
    all.insert(all.end(), next.begin(), next.end());
  }
  std::size_t checked = 0;
  for (const auto& src : all) {
    if (src.empty()) continue;
    for (const auto& tgt : all) {
      ASSERT_EQ(align(src, tgt), oracle::preferred_alignment(src, tgt))
          << join_tokens(src) << " -> " << join_tokens(tgt);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 30u * 31u);
}

TEST(Align, OpsTileBothSequences) {
  gen::Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto src = gen::tokens(rng, 1, 9, 3);
    const auto tgt = gen::tokens(rng, 0, 9, 3);
    std::size_t s = 0, t = 0;
    for (const auto& op : align(src, tgt)) {
      ASSERT_EQ(op.src.start, s);
      ASSERT_EQ(op.tgt.start, t);
      switch (op.kind) {
        case AlignKind::kMatch:
        case AlignKind::kSubstitute:
          ASSERT_EQ(op.src.size(), 1u);
          ASSERT_EQ(op.tgt.size(), 1u);
          break;
        case AlignKind::kDelete:
          ASSERT_EQ(op.tgt.size(), 0u);
          ASSERT_EQ(op.src.size(), 1u);
          break;
        case AlignKind::kInsert:
          ASSERT_EQ(op.src.size(), 0u);
          ASSERT_EQ(op.tgt.size(), 1u);
          break;
      }
      s = op.src.end;
      t = op.tgt.end;
    }
    EXPECT_EQ(s, src.size());
    EXPECT_EQ(t, tgt.size());
  }
}

TEST(OpsToEdits, FragmentEdits) {
  const TokenSeq src{"the", "technologies", "were"};
  const TokenSeq tgt{"technologies", "have"};
  const auto e = ops_to_edits(align(src, tgt), tgt);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0], (Edit{0, 1, {}, std::nullopt, 0}));
  EXPECT_EQ(e[1], (Edit{2, 3, {"have"}, std::nullopt, 0}));
}

TEST(OpsToEdits, AllMatchIsEmpty) {
  const TokenSeq s{"a", "b"};
  EXPECT_TRUE(ops_to_edits(align(s, s), s).empty());
}

TEST(OpsToEdits, MergesNonMatchRuns) {
  const TokenSeq tgt{"a", "x", "y"};
  const std::vector<AlignOp> ops{{AlignKind::kMatch, {0, 1}, {0, 1}},
                                 {AlignKind::kSubstitute, {1, 2}, {1, 2}},
                                 {AlignKind::kInsert, {2, 2}, {2, 3}}};
  const auto e = ops_to_edits(ops, tgt, 5);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0], (Edit{1, 2, {"x", "y"}, std::nullopt, 5}));
  EXPECT_EQ(apply_edits(TokenSeq{"a", "b"}, e), tgt);
}

TEST(ExtractEdits, Deterministic) {
  gen::Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto src = gen::tokens(rng, 1, 10);
    const auto tgt = gen::tokens(rng, 0, 10);
    EXPECT_EQ(extract_edits(src, tgt), extract_edits(src, tgt));
  }
}

TEST(ExtractEdits, ReExtractionRoundTrip) {
  // apply(extract(source, apply(source, E))) == apply(source, E).
  gen::Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    const auto s = gen::sample(rng, 1);
    const auto& edits = s.annotations.begin()->second;
    const auto tgt = apply_edits(s.source, edits);
    EXPECT_EQ(apply_edits(s.source, extract_edits(s.source, tgt)), tgt);
  }
}

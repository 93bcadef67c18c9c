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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cleme/analysis.hpp"
#include "cleme/errors.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace cleme;

TEST(BoundaryStats, IdenticalAnnotatorsAllInChanged) {
  AnnotatedSample s{{"a", "b", "c", "d"},
                    {{0, {{1, 2, {"x"}, std::nullopt, 0}, {3, 3, {"y"}, std::nullopt, 0}}},
                     {1, {{1, 2, {"x"}, std::nullopt, 1}, {3, 3, {"y"}, std::nullopt, 1}}}}};
  const auto st = boundary_stats(std::span(&s, 1));
  EXPECT_EQ(st.edits_total, 4u);
  EXPECT_DOUBLE_EQ(st.icc, 1.0);
  EXPECT_DOUBLE_EQ(st.iuc, 0.0);
  EXPECT_DOUBLE_EQ(st.cc, 0.0);
}

TEST(BoundaryStats, DisjointSingleTokenEditsAllInUnchanged) {
  // Every pair of non-touching single-token edits on 5-token sources.
  const TokenSeq src{"a", "b", "c", "d", "e"};
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 2; j < 5; ++j) {
      AnnotatedSample s{src,
                        {{0, {{i, i + 1, {"x"}, std::nullopt, 0}}},
                         {1, {{j, j + 1, {"y"}, std::nullopt, 1}}}}};
      const auto st = boundary_stats(std::span(&s, 1));
      EXPECT_EQ(st.in_unchanged, 2u) << i << "," << j;
      EXPECT_DOUBLE_EQ(st.iuc, 1.0);
    }
  }
}

TEST(BoundaryStats, CrossingEdit) {
  AnnotatedSample s{{"a", "b", "c", "d"},
                    {{0, {{1, 2, {"x"}, std::nullopt, 0}}},
                     {1, {{0, 3, {"y"}, std::nullopt, 1}}}}};
  const auto st = boundary_stats(std::span(&s, 1));
  EXPECT_EQ(st.in_changed, 1u);  // [1,2) inside [0,3)
  EXPECT_EQ(st.crossing, 1u);    // [0,3) crosses the [1,2) slot
}

TEST(BoundaryStats, InsertionOnSlotBorderCountsAsChanged) {
  AnnotatedSample s{{"a", "b", "c"},
                    {{0, {{1, 1, {"x"}, std::nullopt, 0}}},
                     {1, {{1, 2, {"y"}, std::nullopt, 1}}}}};
  const auto st = boundary_stats(std::span(&s, 1));
  EXPECT_EQ(st.in_changed, 1u);    // the insertion touches the [1,2) slot
  EXPECT_EQ(st.in_unchanged, 1u);  // [1,2) sits in the chunk after the [1,1) slot
}

TEST(BoundaryStats, Errors) {
  AnnotatedSample one{{"a"}, {{0, {{0, 1, {"x"}, std::nullopt, 0}}}}};
  EXPECT_THROW(boundary_stats(std::span(&one, 1)), TooFewAnnotatorsError);
  AnnotatedSample none{{"a"}, {{0, {}}, {1, {}}}};
  EXPECT_THROW(boundary_stats(std::span(&none, 1)), NoChunksError);
}

TEST(BoundaryStats, AnnotatorOrderInvariance) {
  gen::Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    auto s = gen::sample(rng, 4);
    if (s.annotations.size() < 2) continue;
    std::size_t edits = 0;
    for (const auto& [id, e] : s.annotations) edits += e.size();
    if (edits == 0) continue;
    // Relabel annotators in reverse order.
    AnnotatedSample r{s.source, {}};
    int next = 100;
    for (auto it = s.annotations.rbegin(); it != s.annotations.rend(); ++it) {
      auto e = it->second;
      for (auto& x : e) x.annotator_id = next;
      r.annotations[next--] = e;
    }
    const auto a = boundary_stats(std::span(&s, 1));
    const auto b = boundary_stats(std::span(&r, 1));
    EXPECT_EQ(a.in_changed, b.in_changed);
    EXPECT_EQ(a.in_unchanged, b.in_unchanged);
    EXPECT_EQ(a.crossing, b.crossing);
  }
}

TEST(ReferenceSummary, Counts) {
  AnnotatedSample s{{"a", "b", "c", "d"},
                    {{0, {{1, 2, {"x"}, std::nullopt, 0}}},
                     {1, {{1, 2, {"y"}, std::nullopt, 1}, {3, 4, {}, std::nullopt, 1}}}}};
  const auto sum = summarize_references(std::span(&s, 1));
  EXPECT_EQ(sum.sentences, 1u);
  EXPECT_EQ(sum.references, 2u);
  EXPECT_EQ(sum.edits, 3u);
  EXPECT_DOUBLE_EQ(sum.sentence_length, 4.0);
  EXPECT_DOUBLE_EQ(sum.reference_length, 3.5);
  EXPECT_EQ(sum.changed_chunks, 3u);
}

TEST(Pearson, Examples) {
  const std::vector<double> x{1, 2, 3}, y{1, 2, 4};
  EXPECT_NEAR(pearson(x, y), 0.9820, 1e-4);
  EXPECT_NEAR(pearson(x, y), oracle::pearson(x, y), 1e-12);
  EXPECT_NEAR(pearson(x, x), 1.0, 1e-12);
  const std::vector<double> neg{-1, -2, -3};
  EXPECT_NEAR(pearson(x, neg), -1.0, 1e-12);
  const std::vector<double> flat{2, 2, 2};
  EXPECT_THROW(pearson(x, flat), DegenerateError);
  const std::vector<double> two{1, 2};
  EXPECT_THROW(pearson(two, two), DegenerateError);
  EXPECT_THROW(pearson(x, two), LengthMismatchError);
}

TEST(Pearson, RandomAgainstOracle) {
  gen::Rng rng(32);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> x(3 + i % 10), y(x.size());
    for (auto& v : x) v = nd(rng);
    for (auto& v : y) v = nd(rng);
    EXPECT_NEAR(pearson(x, y), oracle::pearson(x, y), 1e-9);
  }
}

TEST(Spearman, RanksAndExamples) {
  const std::vector<double> x{1, 2, 2, 3};
  EXPECT_EQ(fractional_ranks(x), (std::vector<double>{1, 2.5, 2.5, 4}));
  const std::vector<double> a{1, 5, 2, 9}, mono{2, 125, 8, 729}, rev{-1, -5, -2, -9};
  EXPECT_NEAR(spearman(a, mono), 1.0, 1e-12);
  EXPECT_NEAR(spearman(a, rev), -1.0, 1e-12);
}

TEST(Spearman, RankInvarianceUnderIncreasingMaps) {
  gen::Rng rng(33);
  std::uniform_int_distribution<int> d(0, 6);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> x(4 + i % 8), y(x.size());
    for (auto& v : x) v = d(rng);
    for (auto& v : y) v = d(rng);
    if (std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) == x.end()) continue;
    if (std::adjacent_find(y.begin(), y.end(), std::not_equal_to<>()) == y.end()) continue;
    std::vector<double> fx(x.size());
    std::transform(x.begin(), x.end(), fx.begin(), [](double v) { return std::exp(v) + v * v * v; });
    EXPECT_NEAR(spearman(x, y), spearman(fx, y), 1e-12);
  }
}

TEST(HumanTable, Parse) {
  const auto t = parse_human_table("system\tscore\nA\t0.5\nB\t-1\n\nC\t2e-1\n", "EW");
  EXPECT_EQ(t.method, "EW");
  EXPECT_EQ(t.scores.size(), 3u);
  EXPECT_DOUBLE_EQ(t.scores.at("C"), 0.2);
  EXPECT_THROW(parse_human_table("sys\tscore\nA\t1\n"), ParseError);
  EXPECT_THROW(parse_human_table("system\tscore\nA\t1\nA\t2\n"), ParseError);
  EXPECT_THROW(parse_human_table("system\tscore\nA\tx\n"), ParseError);
}

TEST(Correlate, AlignsBySystemAndChecksSets) {
  HumanTable h{"EW", {{"a", 1}, {"b", 2}, {"c", 3}, {"d", 5}}};
  const std::map<std::string, double> m{{"d", 5}, {"c", 3}, {"b", 2}, {"a", 1}};
  const auto c = correlate(m, h);
  EXPECT_NEAR(c.pearson, 1.0, 1e-12);
  EXPECT_NEAR(c.spearman, 1.0, 1e-12);
  EXPECT_EQ(c.systems, (std::vector<std::string>{"a", "b", "c", "d"}));
  std::map<std::string, double> bad = m;
  bad.erase("a");
  bad["z"] = 1;
  try {
    correlate(bad, h);
    FAIL();
  } catch (const SystemMismatchError& e) {
    EXPECT_NE(std::string(e.what()).find("a, z"), std::string::npos);
  }
}

TEST(Correlate, InsertionOrderInvariant) {
  gen::Rng rng(34);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 200; ++i) {
    std::vector<std::pair<std::string, double>> rows;
    HumanTable h;
    for (int k = 0; k < 6; ++k) {
      const std::string name = "sys" + std::to_string(k);
      rows.push_back({name, nd(rng)});
      h.scores[name] = nd(rng);
    }
    std::map<std::string, double> m1(rows.begin(), rows.end());
    std::shuffle(rows.begin(), rows.end(), rng);
    std::map<std::string, double> m2;
    for (const auto& r : rows) m2.insert(r);
    const auto a = correlate(m1, h), b = correlate(m2, h);
    EXPECT_EQ(a.pearson, b.pearson);
    EXPECT_EQ(a.spearman, b.spearman);
  }
}

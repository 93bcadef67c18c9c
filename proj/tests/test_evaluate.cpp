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

#include "cleme/errors.hpp"
#include "cleme/evaluate.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace cleme;

namespace {

std::vector<AnnotatedSample> case_refs() {
  return {fixtures::case_refs(), fixtures::fragment()};
}

std::vector<std::string_view> lines(const std::vector<std::string>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

TEST(Evaluate, HypEqualToReferenceScoresOne) {
  gen::Rng rng(41);
  std::vector<AnnotatedSample> refs;
  for (int i = 0; i < 40; ++i) refs.push_back(gen::sample(rng, 3));
  std::vector<std::vector<Edit>> hyp;
  for (const auto& s : refs) hyp.push_back(s.annotations.begin()->second);
  const auto samples = build_chunked(refs, hyp);
  EvalOptions opts;
  opts.variants.assign(std::begin(kAllVariants), std::end(kAllVariants));
  const auto ev = evaluate(samples, opts, 2.0, "ref0");
  for (const auto& r : ev.results) {
    if (is_dependent(r.variant)) {
      EXPECT_DOUBLE_EQ(r.scores.f_beta, 1.0) << to_string(r.variant);
      EXPECT_DOUBLE_EQ(r.scores.accuracy, 1.0) << to_string(r.variant);
    } else {
      EXPECT_DOUBLE_EQ(r.scores.f_beta, 1.0) << to_string(r.variant);
    }
  }
}

TEST(Evaluate, DoNothingSystem) {
  const auto refs = case_refs();
  std::vector<std::string> src;
  for (const auto& s : refs) src.push_back(join_tokens(s.source));
  const auto hyp = hyp_edits_from_text(refs, lines(src));
  const auto samples = build_chunked(refs, hyp);
  EvalOptions opts;
  const auto ev = evaluate(samples, opts, reference_ell(refs), "input");
  for (const auto& r : ev.results) {
    EXPECT_EQ(r.counts.tp_n, 0u);
    EXPECT_EQ(r.counts.fp_n, 0u);
    if (!is_sentence_level(r.variant)) EXPECT_EQ(r.scores.f_beta, 0.0);
  }
}

TEST(Evaluate, SentenceLevelIsMeanOfSentenceScores) {
  gen::Rng rng(42);
  std::vector<AnnotatedSample> refs;
  std::vector<std::vector<Edit>> hyp;
  for (int i = 0; i < 30; ++i) {
    refs.push_back(gen::sample(rng, 3));
    hyp.push_back(gen::hypothesis(rng, refs.back()));
  }
  const auto samples = build_chunked(refs, hyp);
  auto cfg = default_weights(Variant::kSentDep);
  cfg.ell = 2.0;
  const auto res = evaluate_variant(samples, Variant::kSentDep, cfg, FnOnMismatch::kFpOnly);
  double sum = 0;
  for (const auto& cs : samples) {
    sum += scores_from_counts(score_sentence_dependent(cs, cfg).counts, 0.5).f_beta;
  }
  EXPECT_NEAR(res.scores.f_beta, sum / 30.0, 1e-12);
  EXPECT_EQ(res.chosen.size(), 30u);
}

TEST(Evaluate, OverridesAndRawFallback) {
  WeightOverrides o;
  o.alpha_tp = 4;
  o.clip_fp = Clip{0.5, 2};
  o.ell = 3.5;
  const auto cfg = resolve_weights(Variant::kIndep, o, 2.0);
  EXPECT_EQ(cfg.alpha_tp, 4);
  EXPECT_EQ(cfg.alpha_fp, 2);
  EXPECT_EQ(cfg.clip_fp, (Clip{0.5, 2}));
  EXPECT_EQ(cfg.ell, 3.5);
  o.alpha_fn = 0.5;
  EXPECT_THROW(resolve_weights(Variant::kIndep, o, 2.0), Error);

  std::vector<AnnotatedSample> refs{{{"a", "b"}, {{0, {}}}}};
  EXPECT_THROW(reference_ell(refs), NoChunksError);
  const std::vector<std::vector<Edit>> hyp{{{0, 1, {"x"}, std::nullopt, 0}}};
  const auto ev = evaluate(build_chunked(refs, hyp), EvalOptions{}, std::nullopt, "s");
  EXPECT_TRUE(ev.raw_fallback);
  EXPECT_FALSE(ev.warnings.empty());
  for (const auto& r : ev.results) {
    EXPECT_EQ(r.weights.clip_tp, (Clip{1, 1}));
    EXPECT_DOUBLE_EQ(r.counts.fp_w, 1.0);
  }
}

TEST(Evaluate, InputValidation) {
  const auto refs = case_refs();
  const std::vector<std::string> one{"x"};
  EXPECT_THROW(hyp_edits_from_text(refs, lines(one)), LengthMismatchError);
  std::vector<AnnotatedSample> other = refs;
  other[0].source[0] = "Off";
  EXPECT_THROW(hyp_edits_from_m2(refs, other), LengthMismatchError);
  std::vector<AnnotatedSample> bare{{{"a"}, {}}};
  const std::vector<std::vector<Edit>> hyp{{}};
  EXPECT_THROW(build_chunked(bare, hyp), Error);
}

TEST(Report, TsvAndJsonRoundTrip) {
  const auto refs = case_refs();
  const std::vector<std::vector<Edit>> hyp{fixtures::case_hyp(), {}};
  const auto samples = build_chunked(refs, hyp);
  EvalOptions opts;
  opts.variants.assign(std::begin(kAllVariants), std::end(kAllVariants));
  const std::vector<Evaluation> evals{evaluate(samples, opts, reference_ell(refs), "sysA")};
  const std::string tsv = report_tsv(evals, {});
  EXPECT_EQ(tsv.rfind("# dependent-selection=per-sentence fn-on-mismatch=fp-only\n", 0), 0u);
  const auto a = parse_report(tsv);
  const auto b = parse_report(report_json(evals, {}));
  ASSERT_EQ(a.size(), 8u);
  ASSERT_EQ(b.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(a[i].variant, b[i].variant);
    EXPECT_EQ(a[i].counts.tp_n, b[i].counts.tp_n);
    EXPECT_NEAR(a[i].scores.f_beta, b[i].scores.f_beta, 1e-6);
    EXPECT_NEAR(a[i].counts.fp_w, b[i].counts.fp_w, 1e-4);
  }
  EXPECT_EQ(primary_score(a[4]), a[4].scores.accuracy);
  EXPECT_EQ(primary_score(a[0]), a[0].scores.f_beta);
}

TEST(Report, MetricScoresSelection) {
  const std::string tsv =
      "system\tvariant\ttp_w\tfp_w\tfn_w\ttn_w\ttp_n\tfp_n\tfn_n\ttn_n\tP\tR\tF_beta\tAcc\n"
      "a\tdep\t1\t0\t0\t0\t1\t0\t0\t0\t1\t1\t0.9\t0.8\n"
      "a\tdep-acc\t1\t0\t0\t0\t1\t0\t0\t0\t1\t1\t0.9\t0.8\n"
      "b\tdep\t1\t0\t0\t0\t1\t0\t0\t0\t1\t1\t0.5\t0.4\n";
  EXPECT_THROW(read_metric_scores(tsv, std::nullopt), Error);
  const auto dep = read_metric_scores(tsv, Variant::kDep);
  EXPECT_EQ(dep.at("b"), 0.5);
  const auto acc = read_metric_scores(tsv, Variant::kDepAcc);
  EXPECT_EQ(acc.at("a"), 0.8);
  EXPECT_THROW(read_metric_scores(tsv, Variant::kIndep), Error);
  const auto plain = read_metric_scores("system\tscore\nx\t1\ny\t2\n", std::nullopt);
  EXPECT_EQ(plain.size(), 2u);
  EXPECT_THROW(parse_report("system\tvariant\n"), ParseError);
}

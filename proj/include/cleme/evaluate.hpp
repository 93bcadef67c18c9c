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

#ifndef CLEME_EVALUATE_HPP_
#define CLEME_EVALUATE_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cleme/chunker.hpp"
#include "cleme/scorer.hpp"

namespace cleme {

// User overrides on top of the per-variant defaults.
struct WeightOverrides {
  std::optional<double> alpha_tp, alpha_fp, alpha_fn;
  std::optional<Clip> clip_tp, clip_fp, clip_fn;
  std::optional<double> ell;
  std::optional<double> beta;
};

struct EvalOptions {
  std::vector<Variant> variants{Variant::kDep, Variant::kIndep,
                                Variant::kSentDep, Variant::kSentIndep};
  WeightOverrides overrides;
  FnOnMismatch fn_on_mismatch = FnOnMismatch::kFpOnly;
};

struct VariantResult {
  Variant variant = Variant::kDep;
  WeightConfig weights;
  OutcomeCounts counts;  // summed over sentences, also for sentence level
  Scores scores;
  std::vector<OutcomeCounts> per_sentence_counts;
  std::vector<AnnotatorId> chosen;  // dependent variants only
};

struct Evaluation {
  std::string system;
  double ell = 1.0;
  bool raw_fallback = false;
  std::vector<std::string> warnings;
  std::vector<VariantResult> results;
};

// Hypothesis edits per sample from plain text lines (one per sample).
std::vector<std::vector<Edit>> hyp_edits_from_text(
    std::span<const AnnotatedSample> refs, std::span<const std::string_view> lines);

// Hypothesis edits from an M2 file; each record's lowest annotator is used and
// its source must match the reference record.
std::vector<std::vector<Edit>> hyp_edits_from_m2(
    std::span<const AnnotatedSample> refs, std::span<const AnnotatedSample> hyp);

std::vector<ChunkedSample> build_chunked(std::span<const AnnotatedSample> refs,
                                         std::span<const std::vector<Edit>> hyp_edits);

// Average chunk length of the reference set alone, independent of any system.
double reference_ell(std::span<const AnnotatedSample> refs);

WeightConfig resolve_weights(Variant v, const WeightOverrides& overrides,
                             double ell);

VariantResult evaluate_variant(std::span<const ChunkedSample> samples,
                               Variant variant, const WeightConfig& weights,
                               FnOnMismatch mode);

// Full pipeline for one system. `ell` is the reference-set average chunk
// length (nullopt when the references contain no changes).
Evaluation evaluate(std::span<const ChunkedSample> samples,
                    const EvalOptions& options, std::optional<double> ell,
                    std::string system);

// Score report ------------------------------------------------------------

struct ReportRow {
  std::string system;
  Variant variant = Variant::kDep;
  OutcomeCounts counts;
  Scores scores;
};

struct ReportMeta {
  FnOnMismatch fn_on_mismatch = FnOnMismatch::kFpOnly;
};

std::string report_tsv(std::span<const Evaluation> evals, const ReportMeta& meta);
std::string report_json(std::span<const Evaluation> evals, const ReportMeta& meta);

// Accepts either report format.
std::vector<ReportRow> parse_report(std::string_view text);

// The ranking score of a variant: accuracy for -acc variants, F_beta otherwise.
double primary_score(const ReportRow& row);

// Per-system scores from a report (filtered by `variant`, required when the
// report holds more than one) or from a plain `system<TAB>score` table.
std::map<std::string, double> read_metric_scores(std::string_view text,
                                                 std::optional<Variant> variant);

}  // namespace cleme

#endif  // CLEME_EVALUATE_HPP_

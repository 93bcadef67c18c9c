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

#ifndef CLEME_SCORER_HPP_
#define CLEME_SCORER_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cleme/chunker.hpp"

namespace cleme {

enum class Outcome { kTP, kFP, kFN, kTN };

struct Clip {
  double min = 1.0;
  double max = 1.0;
  friend bool operator==(const Clip&, const Clip&) = default;
};

// Length-weighting hyperparameters. TN weights are always clipped by
// clip_tn, which is (1, 1) in every shipped configuration; alpha_tn is kept
// only so configurations can be round-tripped.
struct WeightConfig {
  double alpha_tp = 2.0;
  double alpha_fp = 2.0;
  double alpha_fn = 2.0;
  std::optional<double> alpha_tn;
  Clip clip_tp{0.75, 1.25};
  Clip clip_fp{0.75, 1.25};
  Clip clip_fn{0.75, 1.25};
  Clip clip_tn{1.0, 1.0};
  double ell = 1.0;
  double beta = 0.5;

  // Throws cleme::Error on alpha <= 1, bad clip bounds, ell <= 0 or beta <= 0.
  void validate() const;
};

// Every clip pinned to (1, 1): classical unweighted counting.
WeightConfig raw_count_config(double beta = 0.5);

// Whether a hypothesis chunk that corrects a slot differently from a
// reference that also corrected it is charged a false negative besides the
// false positive.
enum class FnOnMismatch { kFpOnly, kBoth };

std::string_view to_string(FnOnMismatch mode);
FnOnMismatch parse_fn_on_mismatch(std::string_view text);

struct OutcomeCounts {
  double tp_w = 0, fp_w = 0, fn_w = 0, tn_w = 0;
  std::size_t tp_n = 0, fp_n = 0, fn_n = 0, tn_n = 0;

  void add(Outcome outcome, double weight);
  OutcomeCounts& operator+=(const OutcomeCounts& other);
  friend bool operator==(const OutcomeCounts&, const OutcomeCounts&) = default;
};

struct Scores {
  double precision = 1.0;
  double recall = 1.0;
  double f_beta = 1.0;
  double accuracy = 1.0;
};

// The logistic curve before clipping. TP and FN rise with x, FP falls; all
// pass through 1 at x == ell. TN is constant 1.
double raw_length_weight(double x, double alpha, double ell, Outcome outcome);

double length_weight(double x, const WeightConfig& cfg, Outcome outcome);

// Mean chunk_length over every chunk in which a reference differs from the
// source. Throws NoChunksError if there is none.
double compute_ell(std::span<const ChunkedSample> dataset);

// Per-slot outcome of one hypothesis entry. More than one flag may be set
// (FP together with FN under FnOnMismatch::kBoth).
struct OutcomeFlags {
  bool tp = false, fp = false, fn = false, tn = false;
  friend bool operator==(const OutcomeFlags&, const OutcomeFlags&) = default;
};

OutcomeFlags classify_dependent(const SlotEntry& hyp, const SlotEntry& ref,
                                FnOnMismatch mode);

// Any-of matching: the hypothesis entry is correct when it equals the entry of
// at least one reference, kept entries included.
OutcomeFlags classify_independent(const SlotEntry& hyp,
                                  std::span<const SlotEntry> refs,
                                  FnOnMismatch mode);

// Counts of `cs` against every reference, one element per reference in
// cs.ref_chunks order.
std::vector<OutcomeCounts> score_against_each_reference(
    const ChunkedSample& cs, const WeightConfig& cfg,
    FnOnMismatch mode = FnOnMismatch::kFpOnly);

struct DependentResult {
  OutcomeCounts counts;
  AnnotatorId chosen = 0;
};

// Best single reference by sentence F_beta; ties go to the higher tp_w, then
// to the lower annotator id.
DependentResult score_sentence_dependent(const ChunkedSample& cs,
                                         const WeightConfig& cfg,
                                         FnOnMismatch mode = FnOnMismatch::kFpOnly);

OutcomeCounts score_sentence_independent(const ChunkedSample& cs,
                                         const WeightConfig& cfg,
                                         FnOnMismatch mode = FnOnMismatch::kFpOnly);

double f_beta_formula(double p, double r, double beta);

// P = 1 on an empty hypothesis side and R = 1 on an empty reference side.
std::pair<double, double> precision_recall(const OutcomeCounts& counts);

double accuracy(const OutcomeCounts& counts);

Scores scores_from_counts(const OutcomeCounts& counts, double beta);

// Sums in the given order.
OutcomeCounts sum_counts(std::span<const OutcomeCounts> per_sentence);

Scores aggregate_corpus(std::span<const OutcomeCounts> per_sentence,
                        double beta);

Scores aggregate_sentence(std::span<const Scores> per_sentence);

enum class Variant {
  kDep,
  kIndep,
  kSentDep,
  kSentIndep,
  kDepAcc,
  kIndepAcc,
  kSentDepAcc,
  kSentIndepAcc,
};

inline constexpr Variant kAllVariants[] = {
    Variant::kDep,       Variant::kIndep,      Variant::kSentDep,
    Variant::kSentIndep, Variant::kDepAcc,     Variant::kIndepAcc,
    Variant::kSentDepAcc, Variant::kSentIndepAcc,
};

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);
bool is_dependent(Variant v);
bool is_sentence_level(Variant v);
bool is_accuracy(Variant v);

// Published hyperparameters per variant; `ell` is left at 1 and must be set
// by the caller.
WeightConfig default_weights(Variant v);

}  // namespace cleme

#endif  // CLEME_SCORER_HPP_

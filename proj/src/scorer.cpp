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

#include "cleme/scorer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cleme {

namespace {

SlotEntry entry_of(const Chunk& c, const TokenSeq& source) {
  return {is_changed(c, source) ? SlotStatus::kChanged : SlotStatus::kKept,
          c.segment};
}

void check_clip(const Clip& c, const char* name) {
  if (!(c.min > 0.0) || !(c.min <= c.max)) {
    throw Error(std::string("invalid clip bounds for ") + name);
  }
}

void add_flags(OutcomeCounts& counts, const OutcomeFlags& f,
               const WeightConfig& cfg, double hyp_len, double ref_len) {
  if (f.tp) counts.add(Outcome::kTP, length_weight(hyp_len, cfg, Outcome::kTP));
  if (f.fp) counts.add(Outcome::kFP, length_weight(hyp_len, cfg, Outcome::kFP));
  if (f.fn) counts.add(Outcome::kFN, length_weight(ref_len, cfg, Outcome::kFN));
  if (f.tn) counts.add(Outcome::kTN, length_weight(hyp_len, cfg, Outcome::kTN));
}

void require_references(const ChunkedSample& cs) {
  if (cs.ref_chunks.empty()) throw Error("sample has no references");
}

}  // namespace

void WeightConfig::validate() const {
  if (!(alpha_tp > 1.0) || !(alpha_fp > 1.0) || !(alpha_fn > 1.0)) {
    throw Error("scale factors must be greater than 1");
  }
  check_clip(clip_tp, "TP");
  check_clip(clip_fp, "FP");
  check_clip(clip_fn, "FN");
  check_clip(clip_tn, "TN");
  if (!(ell > 0.0)) throw Error("average chunk length must be positive");
  if (!(beta > 0.0)) throw Error("beta must be positive");
}

WeightConfig raw_count_config(double beta) {
  WeightConfig cfg;
  cfg.clip_tp = cfg.clip_fp = cfg.clip_fn = cfg.clip_tn = {1.0, 1.0};
  cfg.beta = beta;
  return cfg;
}

std::string_view to_string(FnOnMismatch mode) {
  return mode == FnOnMismatch::kBoth ? "both" : "fp-only";
}

FnOnMismatch parse_fn_on_mismatch(std::string_view text) {
  if (text == "both") return FnOnMismatch::kBoth;
  if (text == "fp-only") return FnOnMismatch::kFpOnly;
  throw Error("unknown fn-on-mismatch mode: " + std::string(text));
}

void OutcomeCounts::add(Outcome outcome, double weight) {
  switch (outcome) {
    case Outcome::kTP: tp_w += weight; ++tp_n; break;
    case Outcome::kFP: fp_w += weight; ++fp_n; break;
    case Outcome::kFN: fn_w += weight; ++fn_n; break;
    case Outcome::kTN: tn_w += weight; ++tn_n; break;
  }
}

OutcomeCounts& OutcomeCounts::operator+=(const OutcomeCounts& o) {
  tp_w += o.tp_w;
  fp_w += o.fp_w;
  fn_w += o.fn_w;
  tn_w += o.tn_w;
  tp_n += o.tp_n;
  fp_n += o.fp_n;
  fn_n += o.fn_n;
  tn_n += o.tn_n;
  return *this;
}

double raw_length_weight(double x, double alpha, double ell, Outcome outcome) {
  switch (outcome) {
    case Outcome::kTP:
    case Outcome::kFN:
      return alpha / (1.0 + (alpha - 1.0) * std::exp(ell - x));
    case Outcome::kFP:
      return alpha / (1.0 + (alpha - 1.0) * std::exp(x - ell));
    case Outcome::kTN:
      return 1.0;
  }
  return 1.0;
}

double length_weight(double x, const WeightConfig& cfg, Outcome outcome) {
  switch (outcome) {
    case Outcome::kTP:
      return std::clamp(raw_length_weight(x, cfg.alpha_tp, cfg.ell, outcome),
                        cfg.clip_tp.min, cfg.clip_tp.max);
    case Outcome::kFP:
      return std::clamp(raw_length_weight(x, cfg.alpha_fp, cfg.ell, outcome),
                        cfg.clip_fp.min, cfg.clip_fp.max);
    case Outcome::kFN:
      return std::clamp(raw_length_weight(x, cfg.alpha_fn, cfg.ell, outcome),
                        cfg.clip_fn.min, cfg.clip_fn.max);
    case Outcome::kTN:
      return std::clamp(1.0, cfg.clip_tn.min, cfg.clip_tn.max);
  }
  return 1.0;
}

double compute_ell(std::span<const ChunkedSample> dataset) {
  std::size_t total = 0;
  std::size_t count = 0;
  for (const auto& cs : dataset) {
    for (const auto& [id, chunks] : cs.ref_chunks) {
      for (const auto& c : chunks) {
        if (!cs.boundaries[c.index].changed_slot || !is_changed(c, cs.source)) {
          continue;
        }
        total += chunk_length(c);
        ++count;
      }
    }
  }
  if (count == 0) throw NoChunksError("no corrected or dummy reference chunks");
  return static_cast<double>(total) / static_cast<double>(count);
}

OutcomeFlags classify_dependent(const SlotEntry& hyp, const SlotEntry& ref,
                                FnOnMismatch mode) {
  OutcomeFlags f;
  if (hyp.segment == ref.segment) {
    (hyp.changed() ? f.tp : f.tn) = true;
  } else if (hyp.changed()) {
    f.fp = true;
    f.fn = ref.changed() && mode == FnOnMismatch::kBoth;
  } else {
    f.fn = true;
  }
  return f;
}

OutcomeFlags classify_independent(const SlotEntry& hyp,
                                  std::span<const SlotEntry> refs,
                                  FnOnMismatch mode) {
  OutcomeFlags f;
  const bool matched = std::any_of(refs.begin(), refs.end(), [&](const SlotEntry& r) {
    return r.segment == hyp.segment;
  });
  const bool all_changed =
      !refs.empty() && std::all_of(refs.begin(), refs.end(),
                                   [](const SlotEntry& r) { return r.changed(); });
  if (matched) {
    (hyp.changed() ? f.tp : f.tn) = true;
  } else if (hyp.changed()) {
    f.fp = true;
    f.fn = all_changed && mode == FnOnMismatch::kBoth;
  } else if (all_changed) {
    f.fn = true;
  } else {
    f.tn = true;  // no references at all
  }
  return f;
}

std::vector<OutcomeCounts> score_against_each_reference(const ChunkedSample& cs,
                                                        const WeightConfig& cfg,
                                                        FnOnMismatch mode) {
  std::vector<OutcomeCounts> out;
  out.reserve(cs.ref_chunks.size());
  for (const auto& [id, ref] : cs.ref_chunks) {
    OutcomeCounts counts;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const Chunk& h = cs.hyp_chunks[i];
      const auto hyp_len = static_cast<double>(chunk_length(h));
      if (!cs.boundaries[i].changed_slot) {
        counts.add(Outcome::kTN, length_weight(hyp_len, cfg, Outcome::kTN));
        continue;
      }
      const auto flags = classify_dependent(entry_of(h, cs.source),
                                            entry_of(ref[i], cs.source), mode);
      add_flags(counts, flags, cfg, hyp_len,
                static_cast<double>(chunk_length(ref[i])));
    }
    out.push_back(counts);
  }
  return out;
}

DependentResult score_sentence_dependent(const ChunkedSample& cs,
                                         const WeightConfig& cfg,
                                         FnOnMismatch mode) {
  require_references(cs);
  const auto per_ref = score_against_each_reference(cs, cfg, mode);
  std::size_t best = 0;
  double best_f = -1.0;
  for (std::size_t r = 0; r < per_ref.size(); ++r) {
    const double f = scores_from_counts(per_ref[r], cfg.beta).f_beta;
    const bool better =
        f > best_f ||
        (f == best_f && (per_ref[r].tp_w > per_ref[best].tp_w ||
                         (per_ref[r].tp_w == per_ref[best].tp_w &&
                          cs.ref_chunks[r].first < cs.ref_chunks[best].first)));
    if (better) {
      best = r;
      best_f = f;
    }
  }
  return {per_ref[best], cs.ref_chunks[best].first};
}

OutcomeCounts score_sentence_independent(const ChunkedSample& cs,
                                         const WeightConfig& cfg,
                                         FnOnMismatch mode) {
  require_references(cs);
  OutcomeCounts counts;
  std::vector<SlotEntry> refs;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const Chunk& h = cs.hyp_chunks[i];
    const auto hyp_len = static_cast<double>(chunk_length(h));
    if (!cs.boundaries[i].changed_slot) {
      counts.add(Outcome::kTN, length_weight(hyp_len, cfg, Outcome::kTN));
      continue;
    }
    refs.clear();
    // Shortest changed reference chunk; keeps independent FN weight at or
    // below the weight any single reference would give.
    std::size_t fn_len = std::numeric_limits<std::size_t>::max();
    for (const auto& [id, chunks] : cs.ref_chunks) {
      refs.push_back(entry_of(chunks[i], cs.source));
      if (refs.back().changed()) fn_len = std::min(fn_len, chunk_length(chunks[i]));
    }
    const auto flags = classify_independent(entry_of(h, cs.source), refs, mode);
    add_flags(counts, flags, cfg, hyp_len, static_cast<double>(fn_len));
  }
  return counts;
}

double f_beta_formula(double p, double r, double beta) {
  const double b2 = beta * beta;
  const double num = (1.0 + b2) * p * r;
  if (num == 0.0) return 0.0;
  return num / (b2 * p + r);
}

std::pair<double, double> precision_recall(const OutcomeCounts& c) {
  const double p_den = c.tp_w + c.fp_w;
  const double r_den = c.tp_w + c.fn_w;
  return {p_den == 0.0 ? 1.0 : c.tp_w / p_den,
          r_den == 0.0 ? 1.0 : c.tp_w / r_den};
}

double accuracy(const OutcomeCounts& c) {
  const double den = c.tp_w + c.fp_w + c.fn_w + c.tn_w;
  return den == 0.0 ? 1.0 : (c.tp_w + c.tn_w) / den;
}

Scores scores_from_counts(const OutcomeCounts& counts, double beta) {
  const auto [p, r] = precision_recall(counts);
  return {p, r, f_beta_formula(p, r, beta), accuracy(counts)};
}

OutcomeCounts sum_counts(std::span<const OutcomeCounts> per_sentence) {
  OutcomeCounts total;
  for (const auto& c : per_sentence) total += c;
  return total;
}

Scores aggregate_corpus(std::span<const OutcomeCounts> per_sentence,
                        double beta) {
  return scores_from_counts(sum_counts(per_sentence), beta);
}

Scores aggregate_sentence(std::span<const Scores> per_sentence) {
  Scores mean{0, 0, 0, 0};
  if (per_sentence.empty()) return Scores{};
  for (const auto& s : per_sentence) {
    mean.precision += s.precision;
    mean.recall += s.recall;
    mean.f_beta += s.f_beta;
    mean.accuracy += s.accuracy;
  }
  const auto n = static_cast<double>(per_sentence.size());
  mean.precision /= n;
  mean.recall /= n;
  mean.f_beta /= n;
  mean.accuracy /= n;
  return mean;
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kDep: return "dep";
    case Variant::kIndep: return "indep";
    case Variant::kSentDep: return "sent-dep";
    case Variant::kSentIndep: return "sent-indep";
    case Variant::kDepAcc: return "dep-acc";
    case Variant::kIndepAcc: return "indep-acc";
    case Variant::kSentDepAcc: return "sent-dep-acc";
    case Variant::kSentIndepAcc: return "sent-indep-acc";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  for (Variant v : kAllVariants) {
    if (to_string(v) == name) return v;
  }
  throw Error("unknown variant: " + std::string(name));
}

bool is_dependent(Variant v) {
  return v == Variant::kDep || v == Variant::kSentDep ||
         v == Variant::kDepAcc || v == Variant::kSentDepAcc;
}

bool is_sentence_level(Variant v) {
  return v == Variant::kSentDep || v == Variant::kSentIndep ||
         v == Variant::kSentDepAcc || v == Variant::kSentIndepAcc;
}

bool is_accuracy(Variant v) {
  return v == Variant::kDepAcc || v == Variant::kIndepAcc ||
         v == Variant::kSentDepAcc || v == Variant::kSentIndepAcc;
}

WeightConfig default_weights(Variant v) {
  WeightConfig cfg;  // corpus-level defaults: alpha 2, clips (0.75, 1.25)
  if (!is_sentence_level(v)) return cfg;
  cfg.alpha_tp = cfg.alpha_fp = cfg.alpha_fn = 10.0;
  cfg.clip_fn = {1.0, 1.0};
  if (is_dependent(v)) {
    cfg.clip_tp = {1.0, 10.0};
    cfg.clip_fp = {0.25, 10.0};
  } else {
    cfg.clip_tp = {2.5, 10.0};
    cfg.clip_fp = {0.25, 1.0};
  }
  return cfg;
}

}  // namespace cleme

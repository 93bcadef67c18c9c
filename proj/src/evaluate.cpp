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

#include "cleme/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "cleme/align.hpp"
#include "cleme/analysis.hpp"
#include "json.hpp"

namespace cleme {

namespace {

using nlohmann::json;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

constexpr std::string_view kColumns[] = {
    "system", "variant", "tp_w", "fp_w", "fn_w", "tn_w", "tp_n",
    "fp_n",   "fn_n",    "tn_n", "P",    "R",    "F_beta", "Acc"};

double to_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line, "invalid number '" + s + "'");
}

std::size_t to_count(const std::string& s, std::size_t line) {
  const double v = to_double(s, line);
  if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw ParseError(line, "invalid count '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

std::vector<ReportRow> parse_report_tsv(std::string_view text) {
  std::vector<ReportRow> rows;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto f = tokenize(lines[i]);
    if (f.empty() || f[0].starts_with("#")) continue;
    if (f[0] == "system") {
      if (f.size() != std::size(kColumns) ||
          !std::equal(f.begin(), f.end(), std::begin(kColumns))) {
        throw ParseError(i + 1, "unexpected report header");
      }
      continue;
    }
    if (f.size() != std::size(kColumns)) {
      throw ParseError(i + 1, "expected " + std::to_string(std::size(kColumns)) +
                                  " columns");
    }
    ReportRow r;
    const std::size_t ln = i + 1;
    r.system = f[0];
    try {
      r.variant = parse_variant(f[1]);
    } catch (const Error& e) {
      throw ParseError(ln, e.what());
    }
    r.counts.tp_w = to_double(f[2], ln);
    r.counts.fp_w = to_double(f[3], ln);
    r.counts.fn_w = to_double(f[4], ln);
    r.counts.tn_w = to_double(f[5], ln);
    r.counts.tp_n = to_count(f[6], ln);
    r.counts.fp_n = to_count(f[7], ln);
    r.counts.fn_n = to_count(f[8], ln);
    r.counts.tn_n = to_count(f[9], ln);
    r.scores = {to_double(f[10], ln), to_double(f[11], ln),
                to_double(f[12], ln), to_double(f[13], ln)};
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ReportRow> parse_report_json(std::string_view text) {
  std::vector<ReportRow> rows;
  json doc;
  try {
    doc = json::parse(text);
    for (const auto& j : doc.at("rows")) {
      ReportRow r;
      r.system = j.at("system").get<std::string>();
      r.variant = parse_variant(j.at("variant").get<std::string>());
      r.counts.tp_w = j.at("tp_w").get<double>();
      r.counts.fp_w = j.at("fp_w").get<double>();
      r.counts.fn_w = j.at("fn_w").get<double>();
      r.counts.tn_w = j.at("tn_w").get<double>();
      r.counts.tp_n = j.at("tp_n").get<std::size_t>();
      r.counts.fp_n = j.at("fp_n").get<std::size_t>();
      r.counts.fn_n = j.at("fn_n").get<std::size_t>();
      r.counts.tn_n = j.at("tn_n").get<std::size_t>();
      r.scores = {j.at("P").get<double>(), j.at("R").get<double>(),
                  j.at("F_beta").get<double>(), j.at("Acc").get<double>()};
      rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("invalid JSON report: ") + e.what());
  }
  return rows;
}

}  // namespace

std::vector<std::vector<Edit>> hyp_edits_from_text(
    std::span<const AnnotatedSample> refs, std::span<const std::string_view> lines) {
  if (lines.size() != refs.size()) {
    throw LengthMismatchError("hypothesis has " + std::to_string(lines.size()) +
                              " lines but the reference file has " +
                              std::to_string(refs.size()) + " samples");
  }
  std::vector<std::vector<Edit>> out;
  out.reserve(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    out.push_back(extract_edits(refs[i].source, tokenize(lines[i])));
  }
  return out;
}

std::vector<std::vector<Edit>> hyp_edits_from_m2(
    std::span<const AnnotatedSample> refs, std::span<const AnnotatedSample> hyp) {
  if (hyp.size() != refs.size()) {
    throw LengthMismatchError("hypothesis has " + std::to_string(hyp.size()) +
                              " samples but the reference file has " +
                              std::to_string(refs.size()));
  }
  std::vector<std::vector<Edit>> out;
  out.reserve(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (hyp[i].source != refs[i].source) {
      throw LengthMismatchError("hypothesis sample " + std::to_string(i + 1) +
                                " has a different source sentence");
    }
    out.push_back(hyp[i].annotations.empty()
                      ? std::vector<Edit>{}
                      : hyp[i].annotations.begin()->second);
  }
  return out;
}

std::vector<ChunkedSample> build_chunked(std::span<const AnnotatedSample> refs,
                                         std::span<const std::vector<Edit>> hyp_edits) {
  if (hyp_edits.size() != refs.size()) {
    throw LengthMismatchError("hypothesis and reference counts differ");
  }
  std::vector<ChunkedSample> out;
  out.reserve(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (refs[i].annotations.empty()) {
      throw Error("reference sample " + std::to_string(i + 1) +
                  " has no annotators");
    }
    out.push_back(partition(refs[i], hyp_edits[i]));
  }
  return out;
}

double reference_ell(std::span<const AnnotatedSample> refs) {
  std::vector<ChunkedSample> ref_only;
  ref_only.reserve(refs.size());
  for (const auto& s : refs) ref_only.push_back(partition(s, {}));
  return compute_ell(ref_only);
}

WeightConfig resolve_weights(Variant v, const WeightOverrides& o, double ell) {
  WeightConfig cfg = default_weights(v);
  if (o.alpha_tp) cfg.alpha_tp = *o.alpha_tp;
  if (o.alpha_fp) cfg.alpha_fp = *o.alpha_fp;
  if (o.alpha_fn) cfg.alpha_fn = *o.alpha_fn;
  if (o.clip_tp) cfg.clip_tp = *o.clip_tp;
  if (o.clip_fp) cfg.clip_fp = *o.clip_fp;
  if (o.clip_fn) cfg.clip_fn = *o.clip_fn;
  if (o.beta) cfg.beta = *o.beta;
  cfg.ell = o.ell.value_or(ell);
  cfg.validate();
  return cfg;
}

VariantResult evaluate_variant(std::span<const ChunkedSample> samples,
                               Variant variant, const WeightConfig& weights,
                               FnOnMismatch mode) {
  VariantResult res;
  res.variant = variant;
  res.weights = weights;
  res.per_sentence_counts.reserve(samples.size());
  for (const auto& cs : samples) {
    if (is_dependent(variant)) {
      auto dep = score_sentence_dependent(cs, weights, mode);
      res.per_sentence_counts.push_back(dep.counts);
      res.chosen.push_back(dep.chosen);
    } else {
      res.per_sentence_counts.push_back(
          score_sentence_independent(cs, weights, mode));
    }
  }
  res.counts = sum_counts(res.per_sentence_counts);
  if (is_sentence_level(variant)) {
    std::vector<Scores> per_sentence;
    per_sentence.reserve(samples.size());
    for (const auto& c : res.per_sentence_counts) {
      per_sentence.push_back(scores_from_counts(c, weights.beta));
    }
    res.scores = aggregate_sentence(per_sentence);
  } else {
    res.scores = scores_from_counts(res.counts, weights.beta);
  }
  return res;
}

Evaluation evaluate(std::span<const ChunkedSample> samples,
                    const EvalOptions& options, std::optional<double> ell,
                    std::string system) {
  Evaluation ev;
  ev.system = std::move(system);
  if (samples.empty()) throw Error("no samples to evaluate");
  const bool have_ell = ell.has_value() || options.overrides.ell.has_value();
  if (!have_ell) {
    ev.raw_fallback = true;
    ev.warnings.push_back(
        "references contain no corrected or dummy chunks; average chunk length "
        "is undefined, so all weights are pinned to 1");
  }
  ev.ell = options.overrides.ell.value_or(ell.value_or(1.0));
  for (Variant v : options.variants) {
    WeightConfig cfg = resolve_weights(v, options.overrides, ev.ell);
    if (ev.raw_fallback) {
      cfg.clip_tp = cfg.clip_fp = cfg.clip_fn = cfg.clip_tn = {1.0, 1.0};
    }
    ev.results.push_back(evaluate_variant(samples, v, cfg, options.fn_on_mismatch));
  }
  return ev;
}

std::string report_tsv(std::span<const Evaluation> evals, const ReportMeta& meta) {
  std::ostringstream os;
  os << "# dependent-selection=per-sentence fn-on-mismatch="
     << to_string(meta.fn_on_mismatch) << '\n';
  for (const auto& ev : evals) {
    os << "# system=" << ev.system << " ell=" << fixed(ev.ell, 6)
       << (ev.raw_fallback ? " weights=raw" : "") << '\n';
  }
  for (std::size_t c = 0; c < std::size(kColumns); ++c) {
    os << (c ? "\t" : "") << kColumns[c];
  }
  os << '\n';
  for (const auto& ev : evals) {
    for (const auto& r : ev.results) {
      const auto& k = r.counts;
      os << ev.system << '\t' << to_string(r.variant) << '\t' << fixed(k.tp_w, 4)
         << '\t' << fixed(k.fp_w, 4) << '\t' << fixed(k.fn_w, 4) << '\t'
         << fixed(k.tn_w, 4) << '\t' << k.tp_n << '\t' << k.fp_n << '\t'
         << k.fn_n << '\t' << k.tn_n << '\t' << fixed(r.scores.precision, 6)
         << '\t' << fixed(r.scores.recall, 6) << '\t'
         << fixed(r.scores.f_beta, 6) << '\t' << fixed(r.scores.accuracy, 6)
         << '\n';
    }
  }
  return os.str();
}

std::string report_json(std::span<const Evaluation> evals, const ReportMeta& meta) {
  json doc;
  doc["meta"] = {{"dependent_selection", "per-sentence"},
                 {"fn_on_mismatch", std::string(to_string(meta.fn_on_mismatch))}};
  doc["systems"] = json::array();
  doc["rows"] = json::array();
  for (const auto& ev : evals) {
    doc["systems"].push_back({{"system", ev.system},
                              {"ell", ev.ell},
                              {"raw_fallback", ev.raw_fallback},
                              {"warnings", ev.warnings}});
    for (const auto& r : ev.results) {
      const auto& k = r.counts;
      const auto& w = r.weights;
      doc["rows"].push_back({
          {"system", ev.system},
          {"variant", std::string(to_string(r.variant))},
          {"tp_w", k.tp_w}, {"fp_w", k.fp_w}, {"fn_w", k.fn_w}, {"tn_w", k.tn_w},
          {"tp_n", k.tp_n}, {"fp_n", k.fp_n}, {"fn_n", k.fn_n}, {"tn_n", k.tn_n},
          {"P", r.scores.precision}, {"R", r.scores.recall},
          {"F_beta", r.scores.f_beta}, {"Acc", r.scores.accuracy},
          {"weights",
           {{"alpha_tp", w.alpha_tp}, {"alpha_fp", w.alpha_fp},
            {"alpha_fn", w.alpha_fn},
            {"clip_tp", {w.clip_tp.min, w.clip_tp.max}},
            {"clip_fp", {w.clip_fp.min, w.clip_fp.max}},
            {"clip_fn", {w.clip_fn.min, w.clip_fn.max}},
            {"clip_tn", {w.clip_tn.min, w.clip_tn.max}},
            {"ell", w.ell}, {"beta", w.beta}}},
      });
    }
  }
  return doc.dump(2) + "\n";
}

std::vector<ReportRow> parse_report(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    return parse_report_json(text);
  }
  return parse_report_tsv(text);
}

double primary_score(const ReportRow& row) {
  return is_accuracy(row.variant) ? row.scores.accuracy : row.scores.f_beta;
}

std::map<std::string, double> read_metric_scores(std::string_view text,
                                                 std::optional<Variant> variant) {
  for (std::string_view line : split_lines(text)) {
    const auto f = tokenize(line);
    if (f.empty() || f[0].starts_with("#")) continue;
    if (f.size() == 2 && f[0] == "system" && f[1] == "score") {
      return parse_human_table(text).scores;
    }
    break;
  }
  const auto rows = parse_report(text);
  if (!variant) {
    for (const auto& r : rows) {
      if (r.variant != rows.front().variant) {
        throw Error("report holds several variants; select one with --variant");
      }
    }
    if (!rows.empty()) variant = rows.front().variant;
  }
  std::map<std::string, double> out;
  for (const auto& r : rows) {
    if (r.variant != *variant) continue;
    if (!out.emplace(r.system, primary_score(r)).second) {
      throw Error("duplicate system '" + r.system + "' in score report");
    }
  }
  if (out.empty()) throw Error("score report has no rows for the chosen variant");
  return out;
}

}  // namespace cleme

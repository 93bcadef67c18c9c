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

#include "cleme/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cleme/chunker.hpp"

namespace cleme {

namespace {

enum class Placement { kChanged, kUnchanged, kCrossing };

Placement place(const Edit& e, const std::vector<Boundary>& boundaries) {
  if (e.is_insertion()) {
    bool in_unchanged = false;
    for (const auto& b : boundaries) {
      if (b.src.start <= e.start && e.start <= b.src.end) {
        if (b.changed_slot) return Placement::kChanged;
        in_unchanged = true;
      }
    }
    return in_unchanged ? Placement::kUnchanged : Placement::kCrossing;
  }
  for (const auto& b : boundaries) {
    if (b.src.start <= e.start && e.end <= b.src.end) {
      return b.changed_slot ? Placement::kChanged : Placement::kUnchanged;
    }
  }
  return Placement::kCrossing;
}

double mean_or_zero(double total, std::size_t n) {
  return n == 0 ? 0.0 : total / static_cast<double>(n);
}

}  // namespace

BoundaryStats boundary_stats(std::span<const AnnotatedSample> samples) {
  BoundaryStats stats;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& sample = samples[s];
    if (sample.annotations.size() < 2) {
      throw TooFewAnnotatorsError("sample " + std::to_string(s + 1) + " has " +
                                  std::to_string(sample.annotations.size()) +
                                  " annotator(s); at least 2 are required");
    }
    for (const auto& [held_out, held_edits] : sample.annotations) {
      std::vector<RefEdits> others;
      for (const auto& [id, edits] : sample.annotations) {
        if (id != held_out) others.push_back({id, edits});
      }
      const ChunkedSample cs = partition(sample.source, {}, std::move(others));
      for (const Edit& e : held_edits) {
        switch (place(e, cs.boundaries)) {
          case Placement::kChanged: ++stats.in_changed; break;
          case Placement::kUnchanged: ++stats.in_unchanged; break;
          case Placement::kCrossing: ++stats.crossing; break;
        }
        ++stats.edits_total;
      }
    }
  }
  if (stats.edits_total == 0) {
    throw NoChunksError("no held-out edits; boundary statistics are undefined");
  }
  const auto m = static_cast<double>(stats.edits_total);
  stats.icc = static_cast<double>(stats.in_changed) / m;
  stats.iuc = static_cast<double>(stats.in_unchanged) / m;
  stats.cc = static_cast<double>(stats.crossing) / m;
  return stats;
}

ReferenceSetSummary summarize_references(std::span<const AnnotatedSample> samples) {
  ReferenceSetSummary sum;
  double sent_tokens = 0, ref_tokens = 0, edit_tokens = 0;
  double unchanged_tokens = 0, changed_tokens = 0;
  for (const auto& sample : samples) {
    ++sum.sentences;
    sent_tokens += static_cast<double>(sample.source.size());
    for (const auto& [id, edits] : sample.annotations) {
      ++sum.references;
      ref_tokens += static_cast<double>(apply_edits(sample.source, edits).size());
      for (const Edit& e : edits) {
        ++sum.edits;
        edit_tokens += static_cast<double>(e.end - e.start);
      }
    }
    if (sample.annotations.empty()) continue;
    const ChunkedSample cs = partition(sample, {});
    for (const auto& [id, chunks] : cs.ref_chunks) {
      for (const Chunk& c : chunks) {
        if (cs.boundaries[c.index].changed_slot && is_changed(c, cs.source)) {
          ++sum.changed_chunks;
          changed_tokens += static_cast<double>(chunk_length(c));
        } else if (!c.src.empty()) {
          // Kept text, whether or not another reference edited the span.
          ++sum.unchanged_chunks;
          unchanged_tokens += static_cast<double>(chunk_length(c));
        }
      }
    }
  }
  sum.sentence_length = mean_or_zero(sent_tokens, sum.sentences);
  sum.reference_length = mean_or_zero(ref_tokens, sum.references);
  sum.edit_length = mean_or_zero(edit_tokens, sum.edits);
  sum.unchanged_length = mean_or_zero(unchanged_tokens, sum.unchanged_chunks);
  sum.changed_length = mean_or_zero(changed_tokens, sum.changed_chunks);
  return sum;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw LengthMismatchError("correlation inputs differ in length");
  }
  if (xs.size() < 3) throw DegenerateError("at least 3 points are required");
  const auto n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateError("constant input");
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> fractional_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw LengthMismatchError("correlation inputs differ in length");
  }
  const auto rx = fractional_ranks(xs);
  const auto ry = fractional_ranks(ys);
  return pearson(rx, ry);
}

HumanTable parse_human_table(std::string_view text, std::string method) {
  HumanTable table;
  table.method = std::move(method);
  const auto lines = split_lines(text);
  bool header_seen = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = tokenize(lines[i]);
    if (fields.empty() || fields[0].starts_with("#")) continue;
    if (!header_seen) {
      header_seen = true;
      if (fields.size() < 2 || fields[0] != "system" || fields[1] != "score") {
        throw ParseError(i + 1, "expected header 'system<TAB>score'");
      }
      continue;
    }
    if (fields.size() != 2) throw ParseError(i + 1, "expected 2 columns");
    double value = 0;
    try {
      std::size_t used = 0;
      value = std::stod(fields[1], &used);
      if (used != fields[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(i + 1, "invalid score '" + fields[1] + "'");
    }
    if (!table.scores.emplace(fields[0], value).second) {
      throw ParseError(i + 1, "duplicate system '" + fields[0] + "'");
    }
  }
  if (!header_seen) throw ParseError(1, "empty human score table");
  return table;
}

Correlation correlate(const std::map<std::string, double>& metric_scores,
                      const HumanTable& human) {
  std::vector<std::string> missing;
  for (const auto& [sys, v] : metric_scores) {
    if (!human.scores.contains(sys)) missing.push_back(sys);
  }
  for (const auto& [sys, v] : human.scores) {
    if (!metric_scores.contains(sys)) missing.push_back(sys);
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    std::string list;
    for (const auto& s : missing) list += (list.empty() ? "" : ", ") + s;
    throw SystemMismatchError("systems not present in both tables: " + list);
  }
  Correlation out;
  for (const auto& [sys, v] : metric_scores) {  // std::map: ascending order
    out.systems.push_back(sys);
    out.metric.push_back(v);
    out.human.push_back(human.scores.at(sys));
  }
  out.pearson = pearson(out.metric, out.human);
  out.spearman = spearman(out.metric, out.human);
  return out;
}

}  // namespace cleme

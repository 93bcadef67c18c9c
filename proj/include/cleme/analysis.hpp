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

#ifndef CLEME_ANALYSIS_HPP_
#define CLEME_ANALYSIS_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cleme/corpus_io.hpp"

namespace cleme {

// Where held-out edits fall relative to a partition built from the other
// references: inside a changed slot (icc), inside an unchanged chunk (iuc), or
// across a boundary (cc).
struct BoundaryStats {
  double icc = 0, iuc = 0, cc = 0;
  std::size_t in_changed = 0;
  std::size_t in_unchanged = 0;
  std::size_t crossing = 0;
  std::size_t edits_total = 0;
};

// Hold-one-out over every annotator of every sample. Edits are pooled over all
// passes before dividing. An insertion on the border between an unchanged
// chunk and a changed slot counts as inside the slot.
BoundaryStats boundary_stats(std::span<const AnnotatedSample> samples);

// Corpus-level counts over a partition of all references of each sample.
struct ReferenceSetSummary {
  std::size_t sentences = 0;
  double sentence_length = 0;
  std::size_t references = 0;
  double reference_length = 0;
  std::size_t edits = 0;
  double edit_length = 0;
  std::size_t unchanged_chunks = 0;
  double unchanged_length = 0;
  std::size_t changed_chunks = 0;
  double changed_length = 0;
};

ReferenceSetSummary summarize_references(std::span<const AnnotatedSample> samples);

double pearson(std::span<const double> xs, std::span<const double> ys);

// Fractional ranks, 1-based; ties share the mean of their positions.
std::vector<double> fractional_ranks(std::span<const double> xs);

double spearman(std::span<const double> xs, std::span<const double> ys);

struct HumanTable {
  std::string method;  // e.g. "EW" or "TS"
  std::map<std::string, double> scores;
};

// Reads `system<TAB>score` rows after a header line.
HumanTable parse_human_table(std::string_view text, std::string method = "");

struct Correlation {
  double pearson = 0;
  double spearman = 0;
  std::vector<std::string> systems;  // ascending
  std::vector<double> metric;
  std::vector<double> human;
};

Correlation correlate(const std::map<std::string, double>& metric_scores,
                      const HumanTable& human);

}  // namespace cleme

#endif  // CLEME_ANALYSIS_HPP_

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

#ifndef CLEME_CORPUS_IO_HPP_
#define CLEME_CORPUS_IO_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cleme/errors.hpp"

namespace cleme {

// Whitespace-delimited tokens of one sentence.
using TokenSeq = std::vector<std::string>;

using AnnotatorId = int;

// Replacement of source tokens [start, end) by `replacement`.
// start == end is a pure insertion; an empty replacement is a deletion.
struct Edit {
  std::size_t start = 0;
  std::size_t end = 0;
  TokenSeq replacement;
  std::optional<std::string> type_label;
  AnnotatorId annotator_id = 0;

  bool is_insertion() const noexcept { return start == end; }

  friend bool operator==(const Edit&, const Edit&) = default;
};

// One M2 record: a source sentence and the edit list of every annotator.
// Annotators with an empty edit list come from explicit noop records.
struct AnnotatedSample {
  TokenSeq source;
  std::map<AnnotatorId, std::vector<Edit>> annotations;

  friend bool operator==(const AnnotatedSample&, const AnnotatedSample&) = default;
};

TokenSeq tokenize(std::string_view text);

std::string join_tokens(std::span<const std::string> tokens);

// Orders edits by (start, end). Stable, so equal keys keep input order.
void sort_edits(std::vector<Edit>& edits);

// Checks the Edit invariants, bounds and pairwise overlap of an edit list
// that is already sorted. Throws BoundsError or OverlapError.
void validate_edits(std::size_t source_len, std::span<const Edit> edits);

// Splices every edit into `source`, left to right. Edits need not be sorted.
TokenSeq apply_edits(std::span<const std::string> source,
                     std::vector<Edit> edits);

std::vector<AnnotatedSample> parse_m2(std::string_view text);

std::string emit_m2(std::span<const AnnotatedSample> samples);

// Pairs line i of both streams. CRLF and LF are treated alike; a final
// newline does not start an extra line.
std::vector<std::pair<TokenSeq, TokenSeq>> load_parallel(
    std::string_view src_text, std::string_view tgt_text);

// Splits text into lines with CR stripped; no trailing empty line is
// produced for a terminating newline.
std::vector<std::string_view> split_lines(std::string_view text);

// Removes annotators whose edit list is empty, unless every annotator of the
// sample is empty, in which case the sample is left untouched.
void drop_unchanged_refs(std::vector<AnnotatedSample>& samples);

}  // namespace cleme

#endif  // CLEME_CORPUS_IO_HPP_

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

#ifndef CLEME_ALIGN_HPP_
#define CLEME_ALIGN_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cleme/corpus_io.hpp"

namespace cleme {

// Half-open token interval.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - start; }
  bool empty() const noexcept { return start == end; }
  friend bool operator==(const Span&, const Span&) = default;
};

enum class AlignKind { kMatch, kSubstitute, kDelete, kInsert };

struct AlignOp {
  AlignKind kind;
  Span src;
  Span tgt;

  friend bool operator==(const AlignOp&, const AlignOp&) = default;
};

// Unit-cost Levenshtein alignment. At every backtrace cell the first optimal
// move in the order match, substitute, delete, insert is taken, so the path is
// unique.
std::vector<AlignOp> align(std::span<const std::string> source,
                           std::span<const std::string> target);

// Merges maximal runs of non-match ops into single edits. `target` supplies
// the replacement tokens referenced by the ops' target spans.
std::vector<Edit> ops_to_edits(std::span<const AlignOp> ops,
                               std::span<const std::string> target,
                               AnnotatorId annotator = 0);

// align + ops_to_edits.
std::vector<Edit> extract_edits(std::span<const std::string> source,
                                std::span<const std::string> target,
                                AnnotatorId annotator = 0);

}  // namespace cleme

#endif  // CLEME_ALIGN_HPP_

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

#include "cleme/align.hpp"

#include <algorithm>

namespace cleme {

std::vector<AlignOp> align(std::span<const std::string> source,
                           std::span<const std::string> target) {
  const std::size_t n = source.size();
  const std::size_t m = target.size();
  const std::size_t cols = m + 1;
  std::vector<std::size_t> cost((n + 1) * cols);
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& {
    return cost[i * cols + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag =
          at(i - 1, j - 1) + (source[i - 1] == target[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  std::vector<AlignOp> ops;
  ops.reserve(std::max(n, m));
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::size_t here = at(i, j);
    if (i > 0 && j > 0 && source[i - 1] == target[j - 1] &&
        at(i - 1, j - 1) == here) {
      ops.push_back({AlignKind::kMatch, {i - 1, i}, {j - 1, j}});
      --i, --j;
    } else if (i > 0 && j > 0 && source[i - 1] != target[j - 1] &&
               at(i - 1, j - 1) + 1 == here) {
      ops.push_back({AlignKind::kSubstitute, {i - 1, i}, {j - 1, j}});
      --i, --j;
    } else if (i > 0 && at(i - 1, j) + 1 == here) {
      ops.push_back({AlignKind::kDelete, {i - 1, i}, {j, j}});
      --i;
    } else {
      ops.push_back({AlignKind::kInsert, {i, i}, {j - 1, j}});
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

std::vector<Edit> ops_to_edits(std::span<const AlignOp> ops,
                               std::span<const std::string> target,
                               AnnotatorId annotator) {
  std::vector<Edit> edits;
  std::size_t k = 0;
  while (k < ops.size()) {
    if (ops[k].kind == AlignKind::kMatch) {
      ++k;
      continue;
    }
    Edit e;
    e.start = ops[k].src.start;
    e.annotator_id = annotator;
    std::size_t tgt_start = ops[k].tgt.start;
    std::size_t tgt_end = tgt_start;
    while (k < ops.size() && ops[k].kind != AlignKind::kMatch) {
      e.end = ops[k].src.end;
      tgt_end = ops[k].tgt.end;
      ++k;
    }
    e.replacement.assign(target.begin() + tgt_start, target.begin() + tgt_end);
    edits.push_back(std::move(e));
  }
  return edits;
}

std::vector<Edit> extract_edits(std::span<const std::string> source,
                                std::span<const std::string> target,
                                AnnotatorId annotator) {
  return ops_to_edits(align(source, target), target, annotator);
}

}  // namespace cleme

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

#ifndef CLEME_CHUNKER_HPP_
#define CLEME_CHUNKER_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cleme/align.hpp"
#include "cleme/corpus_io.hpp"

namespace cleme {

// unchanged: same text as the source over a non-empty span.
// corrected: non-empty text that differs from the source.
// dummy:     empty text, either at an insertion point or where a sequence
//            deleted the whole span.
enum class ChunkKind { kUnchanged, kCorrected, kDummy };

struct Chunk {
  std::size_t index = 0;
  Span src;
  TokenSeq segment;
  ChunkKind kind = ChunkKind::kUnchanged;

  friend bool operator==(const Chunk&, const Chunk&) = default;
};

// Column of the chunk grid shared by all sequences. `changed_slot` marks the
// columns where at least one sequence edited.
struct Boundary {
  Span src;
  bool changed_slot = false;

  friend bool operator==(const Boundary&, const Boundary&) = default;
};

struct ChunkedSample {
  TokenSeq source;
  std::vector<Chunk> hyp_chunks;
  std::vector<std::pair<AnnotatorId, std::vector<Chunk>>> ref_chunks;
  std::vector<Boundary> boundaries;

  std::size_t size() const noexcept { return boundaries.size(); }
};

struct RefEdits {
  AnnotatorId annotator = 0;
  std::vector<Edit> edits;
};

// Merges the closed source intervals of every edit (hypothesis and all
// references) into connected components; each component becomes a changed
// slot, and the gaps between slots become unchanged chunks. Every sequence is
// then cut along the same boundaries.
ChunkedSample partition(const TokenSeq& source, std::vector<Edit> hyp_edits,
                        std::vector<RefEdits> ref_edit_sets);

// Convenience overload taking the references of an M2 record.
ChunkedSample partition(const AnnotatedSample& refs, std::vector<Edit> hyp_edits);

// Only the merged slot spans, in source order.
std::vector<Span> merge_edit_intervals(std::size_t source_len,
                                       std::span<const Edit> edits);

enum class SlotStatus { kKept, kChanged };

struct SlotEntry {
  SlotStatus status = SlotStatus::kKept;
  TokenSeq segment;

  bool changed() const noexcept { return status == SlotStatus::kChanged; }
  friend bool operator==(const SlotEntry&, const SlotEntry&) = default;
};

struct ChangedSlot {
  std::size_t index = 0;
  Span src;
  SlotEntry hyp;
  std::vector<std::pair<AnnotatorId, SlotEntry>> refs;
};

std::vector<ChangedSlot> changed_slots(const ChunkedSample& cs);

// max(source span length, segment length).
std::size_t chunk_length(const Chunk& c);

// Whether the chunk's text differs from the source over its span.
bool is_changed(const Chunk& c, const TokenSeq& source);

struct ChunkTable {
  struct Row {
    std::string label;
    std::vector<std::string> cells;
  };
  std::vector<std::size_t> columns;  // chunk indices, ascending
  std::vector<bool> flagged;
  std::vector<Row> rows;  // Source, Hyp., then one row per reference
};

ChunkTable chunk_table(const ChunkedSample& cs, bool only_changed = false);

std::string render_tsv(const ChunkTable& table);
std::string render_text(const ChunkTable& table);

}  // namespace cleme

#endif  // CLEME_CHUNKER_HPP_

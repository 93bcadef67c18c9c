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

#include "cleme/chunker.hpp"

#include <algorithm>
#include <sstream>

namespace cleme {

namespace {

ChunkKind classify(const Span& src, const TokenSeq& segment,
                   const TokenSeq& source) {
  if (segment.empty()) return ChunkKind::kDummy;
  if (std::equal(segment.begin(), segment.end(), source.begin() + src.start,
                 source.begin() + src.end)) {
    return ChunkKind::kUnchanged;
  }
  return ChunkKind::kCorrected;
}

// Cuts one sequence, given by its sorted edits, along `boundaries`.
std::vector<Chunk> cut(const TokenSeq& source, const std::vector<Edit>& edits,
                       const std::vector<Boundary>& boundaries) {
  std::vector<Chunk> chunks;
  chunks.reserve(boundaries.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    const Span span = boundaries[i].src;
    Chunk c;
    c.index = i;
    c.src = span;
    std::size_t pos = span.start;
    // An edit belongs to this column iff its closed interval lies in it.
    while (k < edits.size() && edits[k].start >= span.start &&
           edits[k].end <= span.end && boundaries[i].changed_slot) {
      const Edit& e = edits[k];
      c.segment.insert(c.segment.end(), source.begin() + pos,
                       source.begin() + e.start);
      c.segment.insert(c.segment.end(), e.replacement.begin(),
                       e.replacement.end());
      pos = e.end;
      ++k;
    }
    c.segment.insert(c.segment.end(), source.begin() + pos,
                     source.begin() + span.end);
    c.kind = classify(span, c.segment, source);
    chunks.push_back(std::move(c));
  }
  if (k != edits.size()) {
    throw BoundsError("edit not covered by any changed slot");
  }
  return chunks;
}

std::vector<Edit> checked(std::vector<Edit> edits, std::size_t source_len) {
  sort_edits(edits);
  validate_edits(source_len, edits);
  return edits;
}

// Display width in code points.
std::size_t text_width(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char ch) { return (ch & 0xC0) != 0x80; }));
}

}  // namespace

std::vector<Span> merge_edit_intervals(std::size_t source_len,
                                       std::span<const Edit> edits) {
  std::vector<Span> intervals;
  intervals.reserve(edits.size());
  for (const Edit& e : edits) {
    if (e.end < e.start || e.end > source_len) {
      throw BoundsError("edit interval exceeds source length");
    }
    intervals.push_back({e.start, e.end});
  }
  std::sort(intervals.begin(), intervals.end(), [](const Span& a, const Span& b) {
    return std::pair(a.start, a.end) < std::pair(b.start, b.end);
  });
  std::vector<Span> merged;
  for (const Span& s : intervals) {
    // Closed intervals [start, end] connect when they share any point.
    if (!merged.empty() && s.start <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, s.end);
    } else {
      merged.push_back(s);
    }
  }
  return merged;
}

ChunkedSample partition(const TokenSeq& source, std::vector<Edit> hyp_edits,
                        std::vector<RefEdits> ref_edit_sets) {
  if (source.empty()) throw EmptySourceError("cannot partition an empty source");
  hyp_edits = checked(std::move(hyp_edits), source.size());
  std::vector<Edit> all = hyp_edits;
  for (auto& ref : ref_edit_sets) {
    ref.edits = checked(std::move(ref.edits), source.size());
    all.insert(all.end(), ref.edits.begin(), ref.edits.end());
  }

  ChunkedSample cs;
  cs.source = source;
  std::size_t pos = 0;
  for (const Span& slot : merge_edit_intervals(source.size(), all)) {
    if (pos < slot.start) cs.boundaries.push_back({{pos, slot.start}, false});
    cs.boundaries.push_back({slot, true});
    pos = slot.end;
  }
  if (pos < source.size()) cs.boundaries.push_back({{pos, source.size()}, false});

  cs.hyp_chunks = cut(source, hyp_edits, cs.boundaries);
  cs.ref_chunks.reserve(ref_edit_sets.size());
  for (const auto& ref : ref_edit_sets) {
    cs.ref_chunks.emplace_back(ref.annotator,
                               cut(source, ref.edits, cs.boundaries));
  }
  return cs;
}

ChunkedSample partition(const AnnotatedSample& refs,
                        std::vector<Edit> hyp_edits) {
  std::vector<RefEdits> sets;
  sets.reserve(refs.annotations.size());
  for (const auto& [id, edits] : refs.annotations) sets.push_back({id, edits});
  return partition(refs.source, std::move(hyp_edits), std::move(sets));
}

bool is_changed(const Chunk& c, const TokenSeq& source) {
  return !std::equal(c.segment.begin(), c.segment.end(),
                     source.begin() + c.src.start, source.begin() + c.src.end);
}

std::vector<ChangedSlot> changed_slots(const ChunkedSample& cs) {
  auto entry = [&](const Chunk& c) {
    return SlotEntry{is_changed(c, cs.source) ? SlotStatus::kChanged
                                              : SlotStatus::kKept,
                     c.segment};
  };
  std::vector<ChangedSlot> slots;
  for (std::size_t i = 0; i < cs.boundaries.size(); ++i) {
    if (!cs.boundaries[i].changed_slot) continue;
    ChangedSlot slot;
    slot.index = i;
    slot.src = cs.boundaries[i].src;
    slot.hyp = entry(cs.hyp_chunks[i]);
    for (const auto& [id, chunks] : cs.ref_chunks) {
      slot.refs.emplace_back(id, entry(chunks[i]));
    }
    slots.push_back(std::move(slot));
  }
  return slots;
}

std::size_t chunk_length(const Chunk& c) {
  return std::max(c.src.size(), c.segment.size());
}

ChunkTable chunk_table(const ChunkedSample& cs, bool only_changed) {
  ChunkTable table;
  for (std::size_t i = 0; i < cs.boundaries.size(); ++i) {
    if (only_changed && !cs.boundaries[i].changed_slot) continue;
    table.columns.push_back(i);
    table.flagged.push_back(cs.boundaries[i].changed_slot);
  }
  auto row = [&](std::string label, auto&& segment_at) {
    ChunkTable::Row r;
    r.label = std::move(label);
    for (std::size_t i : table.columns) r.cells.push_back(join_tokens(segment_at(i)));
    table.rows.push_back(std::move(r));
  };
  row("Source", [&](std::size_t i) {
    const Span s = cs.boundaries[i].src;
    return std::span<const std::string>(cs.source).subspan(s.start, s.size());
  });
  row("Hyp.", [&](std::size_t i) {
    return std::span<const std::string>(cs.hyp_chunks[i].segment);
  });
  for (const auto& [id, chunks] : cs.ref_chunks) {
    row("Ref. " + std::to_string(id), [&](std::size_t i) {
      return std::span<const std::string>(chunks[i].segment);
    });
  }
  return table;
}

std::string render_tsv(const ChunkTable& table) {
  std::ostringstream os;
  os << "sequence";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << "\tchunk_" << table.columns[c] + 1 << (table.flagged[c] ? "*" : "");
  }
  os << '\n';
  for (const auto& r : table.rows) {
    os << r.label;
    for (const auto& cell : r.cells) os << '\t' << cell;
    os << '\n';
  }
  return os.str();
}

std::string render_text(const ChunkTable& table) {
  std::vector<std::string> header{""};
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    header.push_back("Chunk " + std::to_string(table.columns[c] + 1) +
                     (table.flagged[c] ? " *" : ""));
  }
  std::vector<std::vector<std::string>> grid{header};
  for (const auto& r : table.rows) {
    std::vector<std::string> line{r.label};
    line.insert(line.end(), r.cells.begin(), r.cells.end());
    grid.push_back(std::move(line));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : grid) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      width[c] = std::max(width[c], text_width(line[c]));
    }
  }
  std::ostringstream os;
  for (const auto& line : grid) {
    std::string out;
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) out += " | ";
      out += line[c];
      if (c + 1 < line.size()) out.append(width[c] - text_width(line[c]), ' ');
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    os << out << '\n';
  }
  return os.str();
}

}  // namespace cleme

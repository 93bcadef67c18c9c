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

#include "cleme/corpus_io.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace cleme {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

constexpr std::string_view kFieldSep = "|||";
constexpr std::string_view kNone = "-NONE-";

std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(kFieldSep, pos);
    if (next == std::string_view::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + kFieldSep.size();
  }
}

std::optional<long long> parse_int(std::string_view s) {
  long long v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || s.empty()) return std::nullopt;
  return v;
}

struct RecordBuilder {
  AnnotatedSample sample;
  std::map<AnnotatorId, std::vector<std::size_t>> edit_lines;
};

void finish_record(RecordBuilder& rec, std::vector<AnnotatedSample>& out) {
  for (auto& [id, edits] : rec.sample.annotations) {
    std::vector<std::size_t> order(edits.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::pair(edits[a].start, edits[a].end) <
             std::pair(edits[b].start, edits[b].end);
    });
    std::vector<Edit> sorted;
    sorted.reserve(edits.size());
    for (std::size_t i : order) sorted.push_back(std::move(edits[i]));
    edits = std::move(sorted);
    try {
      validate_edits(rec.sample.source.size(), edits);
    } catch (const OverlapError& e) {
      const auto& lines = rec.edit_lines[id];
      const std::size_t line = lines.empty() ? 0 : lines.front();
      throw OverlapError("record starting near line " + std::to_string(line) +
                         ", annotator " + std::to_string(id) + ": " + e.what());
    }
  }
  out.push_back(std::move(rec.sample));
}

}  // namespace

TokenSeq tokenize(std::string_view text) {
  TokenSeq out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

void sort_edits(std::vector<Edit>& edits) {
  std::stable_sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) {
    return std::pair(a.start, a.end) < std::pair(b.start, b.end);
  });
}

void validate_edits(std::size_t source_len, std::span<const Edit> edits) {
  for (std::size_t i = 0; i < edits.size(); ++i) {
    const Edit& e = edits[i];
    if (e.end < e.start || e.end > source_len) {
      throw BoundsError("edit [" + std::to_string(e.start) + ", " +
                        std::to_string(e.end) + ") exceeds source length " +
                        std::to_string(source_len));
    }
    if (e.is_insertion() && e.replacement.empty()) {
      throw BoundsError("empty insertion at " + std::to_string(e.start));
    }
    if (i == 0) continue;
    const Edit& prev = edits[i - 1];
    if (std::pair(prev.start, prev.end) > std::pair(e.start, e.end)) {
      throw OverlapError("edits are not sorted by (start, end)");
    }
    const bool overlap =
        e.start < prev.end ||
        (prev.is_insertion() && e.is_insertion() && prev.start == e.start);
    if (overlap) {
      throw OverlapError("edits [" + std::to_string(prev.start) + ", " +
                         std::to_string(prev.end) + ") and [" +
                         std::to_string(e.start) + ", " +
                         std::to_string(e.end) + ") overlap");
    }
  }
}

TokenSeq apply_edits(std::span<const std::string> source,
                     std::vector<Edit> edits) {
  sort_edits(edits);
  validate_edits(source.size(), edits);
  TokenSeq out;
  out.reserve(source.size());
  std::size_t pos = 0;
  for (const Edit& e : edits) {
    out.insert(out.end(), source.begin() + pos, source.begin() + e.start);
    out.insert(out.end(), e.replacement.begin(), e.replacement.end());
    pos = e.end;
  }
  out.insert(out.end(), source.begin() + pos, source.end());
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

std::vector<AnnotatedSample> parse_m2(std::string_view text) {
  std::vector<AnnotatedSample> out;
  std::optional<RecordBuilder> rec;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const std::string_view line = lines[i];
    if (tokenize(line).empty()) {
      if (rec) {
        finish_record(*rec, out);
        rec.reset();
      }
      continue;
    }
    if (line.starts_with("S ") || line == "S") {
      if (rec) finish_record(*rec, out);
      rec.emplace();
      rec->sample.source = tokenize(line.substr(1));
      if (rec->sample.source.empty()) {
        throw ParseError(lineno, "empty source sentence");
      }
      continue;
    }
    if (!line.starts_with("A ")) {
      throw ParseError(lineno, "expected an 'S' or 'A' record");
    }
    if (!rec) throw ParseError(lineno, "'A' record before any 'S' record");

    const auto fields = split_fields(line.substr(2));
    if (fields.size() != 6) {
      throw ParseError(lineno, "expected 6 '|||'-separated fields, got " +
                                   std::to_string(fields.size()));
    }
    const TokenSeq span = tokenize(fields[0]);
    if (span.size() != 2) throw ParseError(lineno, "malformed edit span");
    const auto start = parse_int(span[0]);
    const auto end = parse_int(span[1]);
    if (!start || !end) throw ParseError(lineno, "non-integer edit span");
    const TokenSeq id_tok = tokenize(fields[5]);
    const auto id = id_tok.size() == 1 ? parse_int(id_tok[0]) : std::nullopt;
    if (!id || *id < 0) throw ParseError(lineno, "invalid annotator id");
    const auto annotator = static_cast<AnnotatorId>(*id);

    auto& edits = rec->sample.annotations[annotator];
    if (*start == -1 && *end == -1) continue;  // noop: annotator, no edits
    const auto len = static_cast<long long>(rec->sample.source.size());
    if (*start < 0 || *end < *start || *end > len) {
      throw ParseError(lineno, "edit span [" + std::to_string(*start) + ", " +
                                   std::to_string(*end) +
                                   ") outside source of length " +
                                   std::to_string(len));
    }
    Edit e;
    e.start = static_cast<std::size_t>(*start);
    e.end = static_cast<std::size_t>(*end);
    const TokenSeq repl = tokenize(fields[2]);
    if (!(repl.size() == 1 && repl[0] == kNone)) e.replacement = repl;
    const TokenSeq type = tokenize(fields[1]);
    if (!type.empty()) e.type_label = join_tokens(type);
    e.annotator_id = annotator;
    if (e.is_insertion() && e.replacement.empty()) {
      throw ParseError(lineno, "insertion with empty replacement");
    }
    edits.push_back(std::move(e));
    rec->edit_lines[annotator].push_back(lineno);
  }
  if (rec) finish_record(*rec, out);
  return out;
}

std::string emit_m2(std::span<const AnnotatedSample> samples) {
  std::ostringstream os;
  for (const auto& sample : samples) {
    os << "S " << join_tokens(sample.source) << '\n';
    for (const auto& [id, edits_in] : sample.annotations) {
      if (edits_in.empty()) {
        os << "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||" << id << '\n';
        continue;
      }
      std::vector<Edit> edits = edits_in;
      sort_edits(edits);
      for (const Edit& e : edits) {
        os << "A " << e.start << ' ' << e.end << kFieldSep
           << e.type_label.value_or("") << kFieldSep
           << (e.replacement.empty() ? std::string(kNone)
                                     : join_tokens(e.replacement))
           << kFieldSep << "REQUIRED" << kFieldSep << kNone << kFieldSep << id
           << '\n';
      }
    }
    os << '\n';
  }
  return os.str();
}

std::vector<std::pair<TokenSeq, TokenSeq>> load_parallel(
    std::string_view src_text, std::string_view tgt_text) {
  const auto src = split_lines(src_text);
  const auto tgt = split_lines(tgt_text);
  if (src.size() != tgt.size()) {
    throw LengthMismatchError("source has " + std::to_string(src.size()) +
                              " lines but target has " +
                              std::to_string(tgt.size()));
  }
  std::vector<std::pair<TokenSeq, TokenSeq>> out;
  out.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    TokenSeq s = tokenize(src[i]);
    if (s.empty()) {
      throw EmptySourceError("source line " + std::to_string(i + 1) +
                             " is empty");
    }
    out.emplace_back(std::move(s), tokenize(tgt[i]));
  }
  return out;
}

void drop_unchanged_refs(std::vector<AnnotatedSample>& samples) {
  for (auto& sample : samples) {
    const bool any_changed =
        std::any_of(sample.annotations.begin(), sample.annotations.end(),
                    [](const auto& kv) { return !kv.second.empty(); });
    if (!any_changed) continue;
    std::erase_if(sample.annotations,
                  [](const auto& kv) { return kv.second.empty(); });
  }
}

}  // namespace cleme

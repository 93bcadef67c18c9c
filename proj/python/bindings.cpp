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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "cleme/align.hpp"
#include "cleme/analysis.hpp"
#include "cleme/chunker.hpp"
#include "cleme/corpus_io.hpp"
#include "cleme/evaluate.hpp"
#include "cleme/scorer.hpp"
#include "json.hpp"

namespace py = pybind11;
using namespace cleme;

namespace {

std::vector<AnnotatedSample> load_refs(const std::string& m2, bool drop_unchanged) {
  auto refs = parse_m2(m2);
  if (drop_unchanged) drop_unchanged_refs(refs);
  return refs;
}

std::vector<std::vector<Edit>> hyp_from_lines(std::span<const AnnotatedSample> refs,
                                              const std::vector<std::string>& lines) {
  std::vector<std::string_view> views(lines.begin(), lines.end());
  return hyp_edits_from_text(refs, views);
}

std::string evaluate_json(const std::string& ref_m2,
                          const std::vector<std::string>& hyp_lines,
                          const std::vector<std::string>& variants,
                          const std::string& fn_on_mismatch,
                          std::optional<double> ell_override,
                          std::optional<double> beta, bool drop_unchanged,
                          const std::string& system) {
  const auto refs = load_refs(ref_m2, drop_unchanged);
  const auto samples = build_chunked(refs, hyp_from_lines(refs, hyp_lines));
  EvalOptions opts;
  if (!variants.empty()) {
    opts.variants.clear();
    for (const auto& v : variants) opts.variants.push_back(parse_variant(v));
  }
  opts.fn_on_mismatch = parse_fn_on_mismatch(fn_on_mismatch);
  opts.overrides.ell = ell_override;
  opts.overrides.beta = beta;
  std::optional<double> ell;
  try {
    ell = reference_ell(refs);
  } catch (const NoChunksError&) {
  }
  const Evaluation ev = evaluate(samples, opts, ell, system);
  return report_json(std::span(&ev, 1), ReportMeta{opts.fn_on_mismatch});
}

py::dict chunk_to_dict(const Chunk& c) {
  py::dict d;
  d["index"] = c.index;
  d["span"] = py::make_tuple(c.src.start, c.src.end);
  d["segment"] = c.segment;
  d["kind"] = c.kind == ChunkKind::kUnchanged   ? "unchanged"
              : c.kind == ChunkKind::kCorrected ? "corrected"
                                                : "dummy";
  return d;
}

}  // namespace

PYBIND11_MODULE(_cleme, m) {
  m.doc() = "Chunk-level multi-reference GEC evaluation (native core)";

  py::register_exception<Error>(m, "CLEMEError", PyExc_ValueError);

  py::class_<Edit>(m, "Edit")
      .def(py::init([](std::size_t start, std::size_t end, TokenSeq repl,
                       std::optional<std::string> type, AnnotatorId annotator) {
             return Edit{start, end, std::move(repl), std::move(type), annotator};
           }),
           py::arg("start"), py::arg("end"), py::arg("replacement"),
           py::arg("type_label") = std::nullopt, py::arg("annotator_id") = 0)
      .def_readwrite("start", &Edit::start)
      .def_readwrite("end", &Edit::end)
      .def_readwrite("replacement", &Edit::replacement)
      .def_readwrite("type_label", &Edit::type_label)
      .def_readwrite("annotator_id", &Edit::annotator_id)
      .def("__eq__", [](const Edit& a, const Edit& b) { return a == b; })
      .def("__repr__", [](const Edit& e) {
        return "Edit(" + std::to_string(e.start) + ", " + std::to_string(e.end) +
               ", '" + join_tokens(e.replacement) + "')";
      });

  py::class_<AnnotatedSample>(m, "AnnotatedSample")
      .def_readonly("source", &AnnotatedSample::source)
      .def_readonly("annotations", &AnnotatedSample::annotations);

  m.def("tokenize", &tokenize, py::arg("text"));
  m.def("apply_edits",
        [](const TokenSeq& src, std::vector<Edit> edits) { return apply_edits(src, std::move(edits)); },
        py::arg("source"), py::arg("edits"));
  m.def("extract_edits",
        [](const TokenSeq& src, const TokenSeq& tgt, AnnotatorId a) { return extract_edits(src, tgt, a); },
        py::arg("source"), py::arg("target"), py::arg("annotator_id") = 0);
  m.def("parse_m2", &parse_m2, py::arg("text"));
  m.def("emit_m2", [](const std::vector<AnnotatedSample>& s) { return emit_m2(s); },
        py::arg("samples"));

  m.def(
      "partition",
      [](const TokenSeq& src, std::vector<Edit> hyp,
         const std::map<AnnotatorId, std::vector<Edit>>& refs) {
        std::vector<RefEdits> sets;
        for (const auto& [id, edits] : refs) sets.push_back({id, edits});
        const ChunkedSample cs = partition(src, std::move(hyp), std::move(sets));
        py::dict out;
        py::list spans, flags, hyp_chunks;
        for (const auto& b : cs.boundaries) {
          spans.append(py::make_tuple(b.src.start, b.src.end));
          flags.append(b.changed_slot);
        }
        for (const auto& c : cs.hyp_chunks) hyp_chunks.append(chunk_to_dict(c));
        py::dict ref_chunks;
        for (const auto& [id, chunks] : cs.ref_chunks) {
          py::list l;
          for (const auto& c : chunks) l.append(chunk_to_dict(c));
          ref_chunks[py::int_(id)] = l;
        }
        out["spans"] = spans;
        out["changed"] = flags;
        out["hyp"] = hyp_chunks;
        out["refs"] = ref_chunks;
        return out;
      },
      py::arg("source"), py::arg("hyp_edits"), py::arg("ref_edits"));

  m.def(
      "chunk_tables",
      [](const std::string& ref_m2, const std::vector<std::string>& hyp_lines,
         bool only_changed, const std::string& format) {
        const auto refs = parse_m2(ref_m2);
        std::vector<std::vector<Edit>> hyp(refs.size());
        if (!hyp_lines.empty()) hyp = hyp_from_lines(refs, hyp_lines);
        std::vector<std::string> out;
        for (const auto& cs : build_chunked(refs, hyp)) {
          const auto t = chunk_table(cs, only_changed);
          out.push_back(format == "tsv" ? render_tsv(t) : render_text(t));
        }
        return out;
      },
      py::arg("ref_m2"), py::arg("hyp_lines") = std::vector<std::string>{},
      py::arg("only_changed") = false, py::arg("format") = "text");

  m.def("evaluate_json", &evaluate_json, py::arg("ref_m2"), py::arg("hyp_lines"),
        py::arg("variants") = std::vector<std::string>{},
        py::arg("fn_on_mismatch") = "fp-only", py::arg("ell") = std::nullopt,
        py::arg("beta") = std::nullopt, py::arg("drop_unchanged_refs") = false,
        py::arg("system") = "system");

  m.def(
      "length_weight",
      [](double x, double alpha, double ell, const std::string& outcome,
         std::pair<double, double> clip) {
        WeightConfig cfg;
        cfg.alpha_tp = cfg.alpha_fp = cfg.alpha_fn = alpha;
        cfg.ell = ell;
        cfg.clip_tp = cfg.clip_fp = cfg.clip_fn = Clip{clip.first, clip.second};
        const Outcome o = outcome == "tp"   ? Outcome::kTP
                          : outcome == "fp" ? Outcome::kFP
                          : outcome == "fn" ? Outcome::kFN
                          : outcome == "tn" ? Outcome::kTN
                                            : throw Error("unknown outcome '" + outcome + "'");
        return length_weight(x, cfg, o);
      },
      py::arg("x"), py::arg("alpha"), py::arg("ell"), py::arg("outcome"),
      py::arg("clip") = std::make_pair(0.75, 1.25));
  m.def("f_beta", &f_beta_formula, py::arg("p"), py::arg("r"), py::arg("beta") = 0.5);

  m.def(
      "boundary_stats",
      [](const std::string& ref_m2) {
        const auto s = boundary_stats(parse_m2(ref_m2));
        py::dict d;
        d["icc"] = s.icc;
        d["iuc"] = s.iuc;
        d["cc"] = s.cc;
        d["in_changed"] = s.in_changed;
        d["in_unchanged"] = s.in_unchanged;
        d["crossing"] = s.crossing;
        d["edits_total"] = s.edits_total;
        return d;
      },
      py::arg("ref_m2"));
  m.def("pearson", [](const std::vector<double>& x, const std::vector<double>& y) { return pearson(x, y); });
  m.def("spearman", [](const std::vector<double>& x, const std::vector<double>& y) { return spearman(x, y); });
}

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

#include "cleme/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cleme/align.hpp"
#include "cleme/analysis.hpp"
#include "cleme/chunker.hpp"
#include "cleme/corpus_io.hpp"
#include "cleme/evaluate.hpp"
#include "cleme/scorer.hpp"
#include "json.hpp"

namespace cleme {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Re-throws a data error with the offending path in front.
template <typename F>
auto with_path(const std::string& path, F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::vector<AnnotatedSample> load_m2(const std::string& path) {
  const std::string text = read_file(path);
  return with_path(path, [&] { return parse_m2(text); });
}

void write_output(const std::string& path, const std::string& data,
                  std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(path + ": cannot open for writing");
  f << data;
}

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string pct(std::size_t n, std::size_t total) {
  return total == 0 ? "-" : fmt(100.0 * static_cast<double>(n) /
                                    static_cast<double>(total), 2) + "%";
}

Clip parse_clip(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw CLI::ValidationError("clip", "expected 'min,max', got '" + text + "'");
  }
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("clip", "expected 'min,max', got '" + text + "'");
  }
}

struct HypInputs {
  std::vector<std::string> paths;
  std::vector<std::string> names;
  std::string format = "auto";
  std::string ref_path;
  bool drop_unchanged = false;
};

bool looks_like_m2(const std::string& path, const std::string& text) {
  if (fs::path(path).extension() == ".m2") return true;
  for (std::string_view line : split_lines(text)) {
    if (tokenize(line).empty()) continue;
    return line.starts_with("S ");
  }
  return false;
}

std::vector<std::vector<Edit>> load_hypothesis(
    const std::string& path, const std::string& format,
    std::span<const AnnotatedSample> refs) {
  const std::string text = read_file(path);
  return with_path(path, [&] {
    const bool m2 = format == "m2" || (format == "auto" && looks_like_m2(path, text));
    if (m2) return hyp_edits_from_m2(refs, parse_m2(text));
    const auto lines = split_lines(text);
    return hyp_edits_from_text(refs, lines);
  });
}

std::vector<AnnotatedSample> load_refs(const HypInputs& in) {
  auto refs = load_m2(in.ref_path);
  if (in.drop_unchanged) drop_unchanged_refs(refs);
  return refs;
}

// --- extract ---------------------------------------------------------------

struct ExtractArgs {
  std::string src, tgt, out;
};

int cmd_extract(const ExtractArgs& a, std::ostream& out) {
  const std::string src = read_file(a.src);
  const std::string tgt = read_file(a.tgt);
  const auto pairs = with_path(a.src, [&] { return load_parallel(src, tgt); });
  std::vector<AnnotatedSample> samples;
  samples.reserve(pairs.size());
  for (const auto& [s, t] : pairs) {
    AnnotatedSample sample;
    sample.source = s;
    sample.annotations[0] = extract_edits(s, t, 0);
    samples.push_back(std::move(sample));
  }
  write_output(a.out, emit_m2(samples), out);
  return kExitOk;
}

// --- evaluate --------------------------------------------------------------

struct EvaluateArgs {
  HypInputs inputs;
  std::vector<std::string> variants;
  std::optional<double> alpha_tp, alpha_fp, alpha_fn, ell, beta;
  std::optional<std::string> clip_tp, clip_fp, clip_fn;
  std::string fn_on_mismatch = "fp-only";
  std::string format = "tsv";
  std::string out;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  EvalOptions opts;
  if (!a.variants.empty()) {
    opts.variants.clear();
    for (const auto& v : a.variants) opts.variants.push_back(parse_variant(v));
  }
  opts.fn_on_mismatch = parse_fn_on_mismatch(a.fn_on_mismatch);
  auto& o = opts.overrides;
  o.alpha_tp = a.alpha_tp;
  o.alpha_fp = a.alpha_fp;
  o.alpha_fn = a.alpha_fn;
  o.ell = a.ell;
  o.beta = a.beta;
  if (a.clip_tp) o.clip_tp = parse_clip(*a.clip_tp);
  if (a.clip_fp) o.clip_fp = parse_clip(*a.clip_fp);
  if (a.clip_fn) o.clip_fn = parse_clip(*a.clip_fn);

  const auto refs = load_refs(a.inputs);
  std::optional<double> ell;
  try {
    ell = reference_ell(refs);
  } catch (const NoChunksError&) {
  }

  if (!a.inputs.names.empty() && a.inputs.names.size() != a.inputs.paths.size()) {
    throw CLI::ValidationError("--name", "give one --name per --hyp");
  }
  std::vector<Evaluation> evals;
  for (std::size_t i = 0; i < a.inputs.paths.size(); ++i) {
    const auto& path = a.inputs.paths[i];
    const auto hyp = load_hypothesis(path, a.inputs.format, refs);
    const auto samples = with_path(path, [&] { return build_chunked(refs, hyp); });
    const std::string name = a.inputs.names.empty()
                                 ? fs::path(path).stem().string()
                                 : a.inputs.names[i];
    evals.push_back(evaluate(samples, opts, ell, name));
    for (const auto& w : evals.back().warnings) {
      err << "warning: " << name << ": " << w << '\n';
    }
  }
  const ReportMeta meta{opts.fn_on_mismatch};
  write_output(a.out, a.format == "json" ? report_json(evals, meta)
                                         : report_tsv(evals, meta),
               out);
  return kExitOk;
}

// --- chunks ----------------------------------------------------------------

struct ChunksArgs {
  HypInputs inputs;
  bool only_changed = false;
  std::string format = "text";
  std::string out;
};

int cmd_chunks(const ChunksArgs& a, std::ostream& out) {
  const auto refs = load_refs(a.inputs);
  std::vector<std::vector<Edit>> hyp(refs.size());
  if (!a.inputs.paths.empty()) {
    hyp = load_hypothesis(a.inputs.paths.front(), a.inputs.format, refs);
  }
  const auto samples = with_path(a.inputs.ref_path, [&] { return build_chunked(refs, hyp); });
  std::string data;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto table = chunk_table(samples[i], a.only_changed);
    if (i) data += '\n';
    data += a.format == "tsv" ? render_tsv(table) : render_text(table);
  }
  write_output(a.out, data, out);
  return kExitOk;
}

// --- stats -----------------------------------------------------------------

struct StatsArgs {
  std::string ref_path;
  std::string format = "tsv";
  bool drop_unchanged = false;
  std::string out;
};

int cmd_stats(const StatsArgs& a, std::ostream& out) {
  auto refs = load_m2(a.ref_path);
  if (a.drop_unchanged) drop_unchanged_refs(refs);
  const auto stats = with_path(a.ref_path, [&] { return boundary_stats(refs); });
  const auto sum = with_path(a.ref_path, [&] { return summarize_references(refs); });
  const std::size_t chunks = sum.unchanged_chunks + sum.changed_chunks;
  std::string data;
  if (a.format == "json") {
    nlohmann::json j = {
        {"sentences", {{"count", sum.sentences}, {"length", sum.sentence_length}}},
        {"references", {{"count", sum.references}, {"length", sum.reference_length}}},
        {"edits", {{"count", sum.edits}, {"length", sum.edit_length}}},
        {"unchanged_chunks",
         {{"count", sum.unchanged_chunks}, {"length", sum.unchanged_length}}},
        {"corrected_dummy_chunks",
         {{"count", sum.changed_chunks}, {"length", sum.changed_length}}},
        {"icc", {{"count", stats.in_changed}, {"ratio", stats.icc}}},
        {"iuc", {{"count", stats.in_unchanged}, {"ratio", stats.iuc}}},
        {"cc", {{"count", stats.crossing}, {"ratio", stats.cc}}},
        {"held_out_edits", stats.edits_total},
    };
    data = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "item\tnumber\tpercent\tlength\n"
       << "sentences\t" << sum.sentences << "\t-\t" << fmt(sum.sentence_length, 1) << '\n'
       << "references\t" << sum.references << "\t-\t" << fmt(sum.reference_length, 1) << '\n'
       << "edits\t" << sum.edits << "\t-\t" << fmt(sum.edit_length, 1) << '\n'
       << "unchanged_chunks\t" << sum.unchanged_chunks << '\t'
       << pct(sum.unchanged_chunks, chunks) << '\t' << fmt(sum.unchanged_length, 1) << '\n'
       << "corrected_dummy_chunks\t" << sum.changed_chunks << '\t'
       << pct(sum.changed_chunks, chunks) << '\t' << fmt(sum.changed_length, 1) << '\n'
       << "ICC\t" << stats.in_changed << '\t' << pct(stats.in_changed, stats.edits_total) << "\t-\n"
       << "IUC\t" << stats.in_unchanged << '\t' << pct(stats.in_unchanged, stats.edits_total) << "\t-\n"
       << "CC\t" << stats.crossing << '\t' << pct(stats.crossing, stats.edits_total) << "\t-\n"
       << "held_out_edits\t" << stats.edits_total << "\t-\t-\n";
    data = os.str();
  }
  write_output(a.out, data, out);
  return kExitOk;
}

// --- correlate -------------------------------------------------------------

struct CorrelateArgs {
  std::string scores_path, human_path;
  std::optional<std::string> variant;
  std::string method;
  std::string format = "tsv";
  std::string out;
};

int cmd_correlate(const CorrelateArgs& a, std::ostream& out) {
  const std::string scores_text = read_file(a.scores_path);
  const std::string human_text = read_file(a.human_path);
  std::optional<Variant> variant;
  if (a.variant) variant = parse_variant(*a.variant);
  const auto metric =
      with_path(a.scores_path, [&] { return read_metric_scores(scores_text, variant); });
  const std::string method =
      a.method.empty() ? fs::path(a.human_path).stem().string() : a.method;
  const auto human =
      with_path(a.human_path, [&] { return parse_human_table(human_text, method); });
  const auto corr = correlate(metric, human);
  std::string data;
  if (a.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < corr.systems.size(); ++i) {
      rows.push_back({{"system", corr.systems[i]},
                      {"metric", corr.metric[i]},
                      {"human", corr.human[i]}});
    }
    nlohmann::json j = {{"method", human.method},
                        {"pearson", corr.pearson},
                        {"spearman", corr.spearman},
                        {"systems", rows}};
    data = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "system\tmetric\thuman\n";
    for (std::size_t i = 0; i < corr.systems.size(); ++i) {
      os << corr.systems[i] << '\t' << fmt(corr.metric[i], 6) << '\t'
         << fmt(corr.human[i], 6) << '\n';
    }
    os << "\n# method=" << human.method << '\n'
       << "pearson\t" << fmt(corr.pearson, 4) << '\n'
       << "spearman\t" << fmt(corr.spearman, 4) << '\n';
    data = os.str();
  }
  write_output(a.out, data, out);
  return kExitOk;
}

// --- config file -----------------------------------------------------------

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<std::string> config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].starts_with("--config=")) return args[i].substr(9);
  }
  return std::nullopt;
}

bool flag_given(const std::vector<std::string>& args, const std::string& key) {
  const std::string opt = "--" + key;
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == opt || a.starts_with(opt + "=");
  });
}

// Expands `key=value` lines into flags for the chosen subcommand. Keys already
// given on the command line are skipped, so flags win; keys the subcommand
// does not know are ignored.
std::vector<std::string> config_args(const std::string& path,
                                     const std::vector<std::string>& args,
                                     const CLI::App& sub) {
  std::vector<std::string> extra;
  const std::string text = read_file(path);
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string line = trim(lines[i]);
    if (line.empty() || line[0] == '#' || line[0] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(i + 1, path + ": expected key=value");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    std::replace(key.begin(), key.end(), '_', '-');
    const CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr || flag_given(args, key) || key == "config") continue;
    if (opt->get_expected_min() == 0) {
      if (value == "true" || value == "1" || value == "yes") extra.push_back("--" + key);
      continue;
    }
    std::stringstream items(value);
    std::string item;
    if (opt->get_expected_max() > 1) {
      while (std::getline(items, item, ',')) extra.push_back("--" + key + "=" + trim(item));
    } else {
      extra.push_back("--" + key + "=" + value);
    }
  }
  return extra;
}

void add_hyp_ref_options(CLI::App* sub, HypInputs& in, bool hyp_required) {
  auto* hyp = sub->add_option("--hyp", in.paths,
                              "Hypothesis file: one corrected sentence per line, or M2");
  if (hyp_required) hyp->required();
  sub->add_option("--ref", in.ref_path, "Reference M2 file")->required();
  sub->add_option("--hyp-format", in.format, "Hypothesis format")
      ->check(CLI::IsMember({"auto", "text", "m2"}));
  sub->add_flag("--drop-unchanged-refs", in.drop_unchanged,
                "Ignore annotators without edits in samples where another "
                "annotator made changes");
}

}  // namespace

int run_cli(const std::vector<std::string>& args_in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Chunk-level multi-reference evaluation for grammatical error correction",
               "cleme"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string config;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config, "key=value file mirroring the flags");
  };

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "Extract edits from parallel text into M2");
  extract->add_option("src", ex.src, "Source sentences, one per line")->required();
  extract->add_option("tgt", ex.tgt, "Corrected sentences, one per line")->required();
  extract->add_option("-o,--output", ex.out, "Output path (default: stdout)");
  add_config(extract);

  EvaluateArgs ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score hypotheses against references");
  add_hyp_ref_options(evaluate_cmd, ev.inputs, true);
  evaluate_cmd->add_option("--name", ev.inputs.names, "System name per --hyp (default: file stem)");
  evaluate_cmd->add_option("--variant", ev.variants,
                           "dep, indep, sent-dep, sent-indep, dep-acc, indep-acc, "
                           "sent-dep-acc, sent-indep-acc (repeatable)");
  evaluate_cmd->add_option("--alpha-tp", ev.alpha_tp, "TP scale factor");
  evaluate_cmd->add_option("--alpha-fp", ev.alpha_fp, "FP scale factor");
  evaluate_cmd->add_option("--alpha-fn", ev.alpha_fn, "FN scale factor");
  evaluate_cmd->add_option("--clip-tp", ev.clip_tp, "TP weight bounds as min,max");
  evaluate_cmd->add_option("--clip-fp", ev.clip_fp, "FP weight bounds as min,max");
  evaluate_cmd->add_option("--clip-fn", ev.clip_fn, "FN weight bounds as min,max");
  evaluate_cmd->add_option("--ell", ev.ell, "Average chunk length (default: from references)");
  evaluate_cmd->add_option("--beta", ev.beta, "F-beta weighting (default 0.5)");
  evaluate_cmd->add_option("--fn-on-mismatch", ev.fn_on_mismatch,
                           "Charge an FN besides the FP on a wrong correction")
      ->check(CLI::IsMember({"both", "fp-only"}));
  evaluate_cmd->add_option("--format", ev.format, "Report format")
      ->check(CLI::IsMember({"tsv", "json"}));
  evaluate_cmd->add_option("-o,--output", ev.out, "Output path (default: stdout)");
  add_config(evaluate_cmd);

  ChunksArgs ch;
  auto* chunks = app.add_subcommand("chunks", "Print the chunk partition of every sample");
  add_hyp_ref_options(chunks, ch.inputs, false);
  chunks->add_flag("--only-changed", ch.only_changed, "Show changed columns only");
  chunks->add_option("--format", ch.format, "Table format")
      ->check(CLI::IsMember({"text", "tsv"}));
  chunks->add_option("-o,--output", ch.out, "Output path (default: stdout)");
  add_config(chunks);

  StatsArgs st;
  auto* stats = app.add_subcommand("stats", "Boundary statistics of a multi-reference M2 file");
  stats->add_option("ref", st.ref_path, "Reference M2 file")->required();
  stats->add_flag("--drop-unchanged-refs", st.drop_unchanged, "Ignore annotators without edits");
  stats->add_option("--format", st.format, "Output format")
      ->check(CLI::IsMember({"tsv", "json"}));
  stats->add_option("-o,--output", st.out, "Output path (default: stdout)");
  add_config(stats);

  CorrelateArgs co;
  auto* correlate_cmd = app.add_subcommand("correlate", "Correlate metric scores with human scores");
  correlate_cmd->add_option("scores", co.scores_path, "Score report or system<TAB>score table")
      ->required();
  correlate_cmd->add_option("human", co.human_path, "Human table: system<TAB>score")->required();
  correlate_cmd->add_option("--variant", co.variant, "Report variant to correlate");
  correlate_cmd->add_option("--method", co.method, "Human ranking label (default: file stem)");
  correlate_cmd->add_option("--format", co.format, "Output format")
      ->check(CLI::IsMember({"tsv", "json"}));
  correlate_cmd->add_option("-o,--output", co.out, "Output path (default: stdout)");
  add_config(correlate_cmd);

  for (auto* sub : app.get_subcommands({})) {
    for (auto* opt : sub->get_options()) {
      if (opt->get_expected_max() <= 1) {
        opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
      }
    }
  }

  try {
    std::vector<std::string> args = args_in;
    if (auto path = config_path(args); path && !args.empty()) {
      if (CLI::App* sub = app.get_subcommand_no_throw(args.front())) {
        auto extra = config_args(*path, args, *sub);
        args.insert(args.begin() + 1, extra.begin(), extra.end());
      }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }

  try {
    if (extract->parsed()) return cmd_extract(ex, out);
    if (evaluate_cmd->parsed()) return cmd_evaluate(ev, out, err);
    if (chunks->parsed()) return cmd_chunks(ch, out);
    if (stats->parsed()) return cmd_stats(st, out);
    if (correlate_cmd->parsed()) return cmd_correlate(co, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace cleme

// Copyright 2026 The Semsplit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "semsplit/cli.h"
#include "semsplit/error.h"
#include "semsplit/human_eval.h"
#include "semsplit/metrics.h"
#include "semsplit/passage.h"
#include "semsplit/simplifier.h"
#include "semsplit/splitter.h"

namespace semsplit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonFlags {
  std::string manifest;
  std::string config;
  std::string out;
  bool strict = false;
};

class RecordFailures : public std::runtime_error {
 public:
  explicit RecordFailures(int n)
      : std::runtime_error(std::to_string(n) + " record(s) failed") {}
};

std::string read_text(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMalformedInput, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// All files go through here, once per command, after every record is done.
void write_file(const fs::path &path, const std::string &content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  out << content;
}

std::string join_lines(const std::vector<std::string> &lines) {
  std::string out;
  for (const auto &l : lines) out += l + '\n';
  return out;
}

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

ToolConfig load_config(const std::string &path) {
  return path.empty() ? ToolConfig{} : parse_tool_config(read_text(path));
}

fs::path output_dir(const CommonFlags &flags, const CorpusManifest &manifest) {
  return flags.out.empty() ? manifest.output_dir : fs::path(flags.out);
}

// Passages and every reference file must line up with the source.
void check_alignment(const CorpusManifest &manifest, std::size_t source_lines,
                     const std::vector<std::pair<std::string, std::size_t>> &others) {
  auto check = [&](const std::string &name, std::size_t n) {
    if (n == source_lines) return;
    throw Error(ErrorCode::kLengthMismatch,
                name + " has " + std::to_string(n) + " lines, " +
                    manifest.source.string() + " has " + std::to_string(source_lines) +
                    "; line " + std::to_string(std::min(n, source_lines) + 1) +
                    " has no counterpart");
  };
  for (const auto &[name, n] : others) check(name, n);
  for (const fs::path &r : manifest.references) check(r.string(), read_lines(r).size());
}

SplitterOptions splitter_options(const ToolConfig &config) {
  SplitterOptions options;
  if (config.relative_pronouns) options.relative_pronouns = *config.relative_pronouns;
  return options;
}

json config_snapshot(const ToolConfig &config, const CommonFlags &flags) {
  return {{"backend", config.backend},
          {"n_hypotheses", config.n_hypotheses},
          {"select", config.select},
          {"parallelism", config.parallelism},
          {"relative_pronouns",
           config.relative_pronouns ? *config.relative_pronouns
                                    : SplitterOptions{}.relative_pronouns},
          {"cache", config.cache},
          {"strict", flags.strict}};
}

json run_log(const std::string &command, json config, json records,
             std::chrono::steady_clock::time_point start, const std::string &started) {
  auto elapsed = std::chrono::duration<double, std::milli>(
      std::chrono::steady_clock::now() - start);
  return {{"tool", "semsplit"},
          {"version", SEMSPLIT_VERSION},
          {"command", command},
          {"config", std::move(config)},
          {"records", std::move(records)},
          {"timing", {{"started", started}, {"elapsed_ms", elapsed.count()}}}};
}

struct LoadedPassages {
  std::vector<std::string> source;
  std::vector<std::optional<Passage>> passages;
  std::vector<std::string> errors;
};

LoadedPassages load_passages(const CorpusManifest &manifest) {
  if (!manifest.passages) {
    throw Error(ErrorCode::kMalformedInput, "manifest has no 'passages' file");
  }
  LoadedPassages out;
  out.source = read_lines(manifest.source);
  std::vector<std::string> lines = read_lines(*manifest.passages);
  if (out.source.empty() && lines.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, manifest.source.string() + " has no lines");
  }
  check_alignment(manifest, out.source.size(),
                  {{manifest.passages->string(), lines.size()}});
  for (const std::string &line : lines) {
    try {
      out.passages.push_back(parse_passage(line));
      out.errors.emplace_back();
    } catch (const Error &e) {
      out.passages.push_back(std::nullopt);
      out.errors.push_back(e.what());
    }
  }
  return out;
}

int cmd_split(const CommonFlags &flags, std::ostream &out, std::ostream &err) {
  auto start = std::chrono::steady_clock::now();
  std::string started = utc_now();
  CorpusManifest manifest = load_manifest(flags.manifest);
  ToolConfig config = load_config(flags.config);
  SplitterOptions options = splitter_options(config);
  LoadedPassages loaded = load_passages(manifest);

  std::vector<std::string> jsonl, text;
  json statuses = json::array();
  int n_split = 0, n_unchanged = 0, n_failed = 0, n_parallel = 0, n_elaborator = 0;
  for (std::size_t i = 0; i < loaded.passages.size(); ++i) {
    const std::string &source = loaded.source[i];
    json status = {{"line", i + 1}};
    std::string error = loaded.errors[i];
    if (loaded.passages[i]) {
      const Passage &p = *loaded.passages[i];
      status["id"] = p.id();
      try {
        SplitResult r = split_passage(p, options);
        jsonl.push_back(json{{"id", p.id()},
                             {"source", source},
                             {"split", r.rendered},
                             {"n_parallel", r.n_parallel},
                             {"n_elaborator", r.n_elaborator}}
                            .dump());
        text.push_back(r.text());
        (r.was_split ? n_split : n_unchanged) += 1;
        n_parallel += r.n_parallel;
        n_elaborator += r.n_elaborator;
        status["status"] = "ok";
        statuses.push_back(status);
        continue;
      } catch (const Error &e) {
        error = e.what();
      }
    }
    ++n_failed;
    err << "line " << i + 1 << ": " << error << '\n';
    jsonl.push_back(json{{"id", status.value("id", std::to_string(i + 1))},
                         {"source", source},
                         {"error", error}}
                        .dump());
    text.push_back(source);
    status["status"] = "failed";
    status["error"] = error;
    statuses.push_back(status);
  }

  fs::path dir = output_dir(flags, manifest);
  write_file(dir / "split.jsonl", join_lines(jsonl));
  write_file(dir / "split.txt", join_lines(text));
  write_file(dir / "split.runlog.json",
             run_log("split", config_snapshot(config, flags), statuses, start, started)
                     .dump(2) +
                 "\n");
  out << "records " << loaded.passages.size() << "  #Split " << n_split
      << "  unchanged " << n_unchanged << "  failed " << n_failed
      << "  parallel scenes " << n_parallel << "  elaborator scenes " << n_elaborator
      << '\n';
  if (flags.strict && n_failed > 0) throw RecordFailures(n_failed);
  return kExitOk;
}

std::unique_ptr<Backend> make_backend(const ToolConfig &config) {
  if (config.backend == "identity") return std::make_unique<IdentityBackend>();
  if (!config.backend.empty()) return std::make_unique<HttpBackend>(config.backend);
  return HttpBackend::from_environment();
}

int cmd_simplify(const CommonFlags &flags, const std::string &mode_name,
                 std::optional<int> select, std::ostream &out, std::ostream &err) {
  auto start = std::chrono::steady_clock::now();
  std::string started = utc_now();
  CorpusManifest manifest = load_manifest(flags.manifest);
  ToolConfig config = load_config(flags.config);
  if (select) config.select = *select;

  PipelineConfig pipeline;
  pipeline.mode = parse_pipeline_mode(mode_name);
  pipeline.n_hypotheses = config.n_hypotheses;
  pipeline.select = config.select;
  pipeline.parallelism = config.parallelism;
  pipeline.splitter = splitter_options(config);

  std::vector<PipelineInput> inputs;
  std::vector<std::string> parse_errors;
  if (pipeline.mode == PipelineMode::kBackendOnly) {
    std::vector<std::string> source = read_lines(manifest.source);
    if (source.empty()) {
      throw Error(ErrorCode::kEmptyCorpus, manifest.source.string() + " has no lines");
    }
    check_alignment(manifest, source.size(), {});
    for (std::size_t i = 0; i < source.size(); ++i) {
      inputs.push_back({std::to_string(i + 1), std::nullopt, source[i]});
    }
    parse_errors.resize(source.size());
  } else {
    LoadedPassages loaded = load_passages(manifest);
    for (std::size_t i = 0; i < loaded.passages.size(); ++i) {
      std::string id = loaded.passages[i] ? loaded.passages[i]->id() : std::to_string(i + 1);
      inputs.push_back({id, loaded.passages[i], loaded.source[i]});
    }
    parse_errors = loaded.errors;
  }

  std::unique_ptr<Backend> backend;
  if (pipeline.mode != PipelineMode::kDss) {
    backend = make_backend(config);
    if (!backend) {
      throw Error(ErrorCode::kBackendUnavailable,
                  std::string("no backend configured; set 'backend' in the config or ") +
                      kBackendUrlVariable);
    }
  }
  HypothesisCache cache(config.cache);
  std::vector<PipelineOutput> results =
      run_pipeline(pipeline, inputs, backend.get(), &cache);

  std::vector<std::string> text;
  json statuses = json::array();
  int n_failed = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const PipelineOutput &r = results[i];
    text.push_back(r.output);
    json status = {{"line", i + 1}, {"id", r.id}, {"status", r.failed ? "failed" : "ok"}};
    if (r.failed) {
      ++n_failed;
      std::string error = parse_errors[i].empty() ? r.error : parse_errors[i];
      status["error"] = error;
      err << "line " << i + 1 << ": " << error << '\n';
    }
    statuses.push_back(status);
  }
  for (const std::string &w : cache.warnings()) err << w << '\n';

  json snapshot = config_snapshot(config, flags);
  snapshot["mode"] = pipeline_mode_name(pipeline.mode);
  fs::path dir = output_dir(flags, manifest);
  std::string stem = manifest.system + "." + std::string(pipeline_mode_name(pipeline.mode));
  write_file(dir / (stem + ".txt"), join_lines(text));
  write_file(dir / (stem + ".runlog.json"),
             run_log("simplify", snapshot, statuses, start, started).dump(2) + "\n");
  out << "records " << results.size() << "  mode " << pipeline_mode_name(pipeline.mode)
      << "  hypothesis h" << config.select + 1 << "  failed " << n_failed << '\n';
  if (flags.strict && n_failed > 0) throw RecordFailures(n_failed);
  return kExitOk;
}

json metric_json(const std::string &system, const MetricReport &m) {
  return {{"system", system},         {"bleu", m.bleu},
          {"sari", m.sari.sari},      {"f_add", m.sari.f_add},
          {"f_keep", m.sari.f_keep},  {"p_del", m.sari.p_del},
          {"pct_same", m.pct_same},   {"ld_sc", m.ld_sc},
          {"n_split", m.n_split},     {"n_records", m.n_records}};
}

int cmd_evaluate(const CommonFlags &flags, const std::vector<std::string> &outputs,
                 const std::string &records_path, std::ostream &out) {
  std::vector<std::pair<std::string, MetricReport>> rows;
  fs::path dir = flags.out;
  if (!records_path.empty()) {
    std::vector<EvalRecord> records = parse_eval_records_jsonl(read_text(records_path));
    rows.emplace_back(fs::path(records_path).stem().string(), evaluate_corpus(records));
    if (dir.empty()) dir = ".";
  }
  if (!outputs.empty()) {
    CorpusManifest manifest = load_manifest(flags.manifest);
    if (dir.empty()) dir = manifest.output_dir;
    for (const std::string &arg : outputs) {
      // LABEL=PATH, or a bare path labelled by the manifest system (single
      // output) or the file stem.
      std::string label, path = arg;
      if (auto eq = arg.find('='); eq != std::string::npos) {
        label = arg.substr(0, eq);
        path = arg.substr(eq + 1);
      } else {
        label = outputs.size() == 1 ? manifest.system : fs::path(arg).stem().string();
      }
      std::vector<EvalRecord> records = load_eval_records(manifest, read_lines(path), path);
      rows.emplace_back(label, evaluate_corpus(records));
    }
  }
  if (rows.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "nothing to evaluate; pass --output or --records");
  }
  json doc = {{"rows", json::array()}};
  for (const auto &[label, m] : rows) doc["rows"].push_back(metric_json(label, m));
  std::string table = format_metric_table(rows);
  write_file(dir / "metrics.json", doc.dump(2) + "\n");
  write_file(dir / "metrics.txt", table);
  out << table;
  return kExitOk;
}

JudgmentSet load_judgments(const std::string &path, const std::string &format) {
  std::string text = read_text(path);
  std::string fmt = format;
  if (fmt.empty()) {
    std::string ext = fs::path(path).extension().string();
    fmt = ext == ".tsv" ? "tsv" : ext == ".csv" ? "csv" : "jsonl";
  }
  std::vector<RawJudgment> raw = fmt == "jsonl" ? parse_judgments_jsonl(text)
                                 : fmt == "tsv" ? parse_judgments_delimited(text, '\t')
                                                : parse_judgments_delimited(text, ',');
  JudgmentSet set;
  for (const RawJudgment &r : raw) set.add(r);
  if (set.empty()) throw Error(ErrorCode::kEmptyCorpus, path + " has no judgments");
  return set;
}

json agreement_json(const AgreementReport &report) {
  json doc = {{"annotator_pairs", report.annotator_pairs}};
  for (Parameter p : kAllParameters) {
    auto k = report.of(p);
    doc[std::string(parameter_name(p))] = k ? json(*k) : json(nullptr);
  }
  return doc;
}

int cmd_report(const std::string &judgments, const std::string &format, bool kappa,
               const std::string &out_dir, std::ostream &out) {
  JudgmentSet set = load_judgments(judgments, format);
  std::vector<SystemScore> rows;
  json doc = {{"systems", json::array()}};
  for (const std::string &system : set.systems()) {
    SystemScore s = aggregate_scores(set.judgments(), system);
    doc["systems"].push_back({{"system", s.system},
                              {"G", s.g},
                              {"M", s.m},
                              {"S", s.s},
                              {"StS", s.sts},
                              {"items", s.items},
                              {"annotators", s.annotators}});
    rows.push_back(std::move(s));
  }
  std::string text = format_human_table(rows);
  if (kappa) {
    AgreementReport report = annotator_agreement(set.judgments());
    doc["agreement"] = agreement_json(report);
    text += "\n" + format_agreement(report);
  }
  fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  write_file(dir / "human_eval.json", doc.dump(2) + "\n");
  write_file(dir / "human_eval.txt", text);
  out << text;
  return kExitOk;
}

int cmd_agreement(const std::string &judgments, const std::string &format,
                  std::ostream &out) {
  JudgmentSet set = load_judgments(judgments, format);
  out << format_agreement(annotator_agreement(set.judgments()));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Semantic sentence splitting and simplification evaluation", "semsplit"};
  app.set_version_flag("--version", SEMSPLIT_VERSION);
  app.require_subcommand(1);

  CommonFlags flags;
  auto add_corpus_flags = [&](CLI::App *cmd) {
    cmd->add_option("--manifest", flags.manifest, "Corpus manifest (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--config", flags.config, "Tool config (JSON)")->check(CLI::ExistingFile);
    cmd->add_option("--out", flags.out, "Output directory (overrides the manifest)");
    cmd->add_flag("--strict", flags.strict, "Exit with status 2 if any record fails");
  };

  CLI::App *split = app.add_subcommand("split", "Split every passage with DSS");
  add_corpus_flags(split);

  CLI::App *simplify = app.add_subcommand("simplify", "Run a pipeline over the corpus");
  add_corpus_flags(simplify);
  std::string mode = "dss";
  std::optional<int> select;
  simplify->add_option("--mode", mode, "dss, backend or sents")
      ->check(CLI::IsMember({"dss", "backend", "sents"}));
  simplify->add_option("--select", select, "Beam hypothesis to keep (0 = h1)")
      ->check(CLI::Range(0, 4));

  CLI::App *evaluate = app.add_subcommand("evaluate", "Automatic metrics table");
  std::vector<std::string> outputs;
  std::string records;
  evaluate->add_option("--manifest", flags.manifest, "Corpus manifest (JSON)")
      ->check(CLI::ExistingFile);
  evaluate->add_option("--output", outputs, "System output file, optionally LABEL=PATH");
  evaluate->add_option("--records", records, "JSON-lines evaluation records")
      ->check(CLI::ExistingFile);
  evaluate->add_option("--out", flags.out, "Output directory");

  std::string judgments, format, report_out;
  bool kappa = false;
  auto add_judgment_flags = [&](CLI::App *cmd) {
    cmd->add_option("--judgments", judgments, "Human judgments file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--format", format, "jsonl, tsv or csv (default: by extension)")
        ->check(CLI::IsMember({"jsonl", "tsv", "csv"}));
  };
  CLI::App *report = app.add_subcommand("report", "Human evaluation table");
  add_judgment_flags(report);
  report->add_flag("--kappa", kappa, "Append inter-annotator agreement");
  report->add_option("--out", report_out, "Output directory");

  CLI::App *agreement = app.add_subcommand("agreement", "Inter-annotator agreement");
  add_judgment_flags(agreement);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (split->parsed()) return cmd_split(flags, out, err);
    if (simplify->parsed()) return cmd_simplify(flags, mode, select, out, err);
    if (evaluate->parsed()) {
      if (!outputs.empty() && flags.manifest.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "--output needs --manifest");
      }
      return cmd_evaluate(flags, outputs, records, out);
    }
    if (report->parsed()) return cmd_report(judgments, format, kappa, report_out, out);
    if (agreement->parsed()) return cmd_agreement(judgments, format, out);
  } catch (const RecordFailures &e) {
    err << "semsplit: " << e.what() << '\n';
    return kExitRecordFailures;
  } catch (const std::exception &e) {
    err << "semsplit: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace semsplit

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

#ifndef SEMSPLIT_CLI_H_
#define SEMSPLIT_CLI_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semsplit/human_eval.h"
#include "semsplit/metrics.h"

namespace semsplit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRecordFailures = 2;

// Line-aligned corpus description. Relative paths are resolved against the
// manifest's directory.
struct CorpusManifest {
  std::filesystem::path source;
  std::optional<std::filesystem::path> passages;
  std::vector<std::filesystem::path> references;
  std::filesystem::path output_dir;
  std::string system;
};

// Fields: source, passages (optional), references (at least one),
// output_dir (default "."), system (default "system"). Throws
// MalformedInput or EmptyReferenceSet.
CorpusManifest parse_manifest(std::string_view json,
                              const std::filesystem::path &base_dir);
CorpusManifest load_manifest(const std::filesystem::path &path);

struct ToolConfig {
  // An http:// endpoint, "identity", or empty to read SEMSPLIT_BACKEND_URL.
  std::string backend;
  int n_hypotheses = 5;
  int select = 0;
  int parallelism = 1;
  std::optional<std::vector<std::string>> relative_pronouns;
  // Hypothesis cache file; empty keeps the cache in memory.
  std::string cache;
};

// JSON with the ToolConfig field names; unknown fields are rejected.
ToolConfig parse_tool_config(std::string_view json);

// Lines without terminators. A final newline does not add an empty line.
std::vector<std::string> read_lines(const std::filesystem::path &path);

// Pairs the manifest's source and references with system outputs. Throws
// LengthMismatch naming the file and the first line without a counterpart,
// EmptyCorpus when the source is empty.
std::vector<EvalRecord> load_eval_records(const CorpusManifest &manifest,
                                          const std::vector<std::string> &outputs,
                                          const std::string &outputs_name);

// JSON-lines records with fields id (optional), source, output, references.
std::vector<EvalRecord> parse_eval_records_jsonl(std::string_view text);

// Column layouts for the automatic and human evaluation tables, two
// decimals.
std::string format_metric_table(
    const std::vector<std::pair<std::string, MetricReport>> &rows);
std::string format_human_table(const std::vector<SystemScore> &rows);
std::string format_agreement(const AgreementReport &report);

// Entry point shared by the semsplit binary and the tests. `args` excludes
// the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err);

}  // namespace semsplit

#endif  // SEMSPLIT_CLI_H_

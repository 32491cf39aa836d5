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

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "semsplit/cli.h"
#include "semsplit/error.h"

namespace semsplit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json parse_object(std::string_view text, std::string_view what) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::kMalformedInput, std::string(what) + " is not a JSON object");
  }
  return doc;
}

void reject_unknown(const json &doc, std::initializer_list<std::string_view> known,
                    std::string_view what) {
  for (const auto &[key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(ErrorCode::kMalformedInput,
                  std::string(what) + ": unknown field '" + key + "'");
    }
  }
}

std::string string_field(const json &doc, const char *key, std::string_view what) {
  const json &v = doc.at(key);
  if (!v.is_string()) {
    throw Error(ErrorCode::kMalformedInput,
                std::string(what) + ": '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

int int_field(const json &doc, const char *key, int fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_number_integer()) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("config: '") + key + "' must be an integer");
  }
  return doc[key].get<int>();
}

fs::path resolve(const fs::path &base, const std::string &p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string pad_left(const std::string &s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string &s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

CorpusManifest parse_manifest(std::string_view text, const fs::path &base_dir) {
  json doc = parse_object(text, "manifest");
  reject_unknown(doc, {"source", "passages", "references", "output_dir", "system"},
                 "manifest");
  if (!doc.contains("source")) {
    throw Error(ErrorCode::kMalformedInput, "manifest: missing 'source'");
  }
  CorpusManifest m;
  m.source = resolve(base_dir, string_field(doc, "source", "manifest"));
  if (doc.contains("passages")) {
    m.passages = resolve(base_dir, string_field(doc, "passages", "manifest"));
  }
  if (doc.contains("references")) {
    if (!doc["references"].is_array()) {
      throw Error(ErrorCode::kMalformedInput, "manifest: 'references' must be a list");
    }
    for (const json &r : doc["references"]) {
      if (!r.is_string()) {
        throw Error(ErrorCode::kMalformedInput, "manifest: reference paths must be strings");
      }
      m.references.push_back(resolve(base_dir, r.get<std::string>()));
    }
  }
  if (m.references.empty()) {
    throw Error(ErrorCode::kEmptyReferenceSet, "manifest lists no reference files");
  }
  m.output_dir = resolve(base_dir, doc.contains("output_dir")
                                       ? string_field(doc, "output_dir", "manifest")
                                       : ".");
  m.system = doc.contains("system") ? string_field(doc, "system", "manifest") : "system";
  return m;
}

CorpusManifest load_manifest(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMalformedInput, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.parent_path());
}

ToolConfig parse_tool_config(std::string_view text) {
  json doc = parse_object(text, "config");
  reject_unknown(doc,
                 {"backend", "n_hypotheses", "select", "parallelism",
                  "relative_pronouns", "cache"},
                 "config");
  ToolConfig c;
  if (doc.contains("backend")) c.backend = string_field(doc, "backend", "config");
  if (doc.contains("cache")) c.cache = string_field(doc, "cache", "config");
  c.n_hypotheses = int_field(doc, "n_hypotheses", c.n_hypotheses);
  c.select = int_field(doc, "select", c.select);
  c.parallelism = int_field(doc, "parallelism", c.parallelism);
  if (c.parallelism < 1) {
    throw Error(ErrorCode::kMalformedInput, "config: 'parallelism' must be positive");
  }
  if (doc.contains("relative_pronouns")) {
    const json &list = doc["relative_pronouns"];
    if (!list.is_array()) {
      throw Error(ErrorCode::kMalformedInput, "config: 'relative_pronouns' must be a list");
    }
    c.relative_pronouns.emplace();
    for (const json &w : list) {
      if (!w.is_string()) {
        throw Error(ErrorCode::kMalformedInput, "config: pronouns must be strings");
      }
      c.relative_pronouns->push_back(w.get<std::string>());
    }
  }
  return c;
}

std::vector<std::string> read_lines(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMalformedInput, "cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<EvalRecord> load_eval_records(const CorpusManifest &manifest,
                                          const std::vector<std::string> &outputs,
                                          const std::string &outputs_name) {
  std::vector<std::string> source = read_lines(manifest.source);
  if (source.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, manifest.source.string() + " has no lines");
  }
  auto check = [&](std::size_t n, const std::string &name) {
    if (n == source.size()) return;
    std::size_t line = std::min(n, source.size()) + 1;
    throw Error(ErrorCode::kLengthMismatch,
                name + " has " + std::to_string(n) + " lines, " +
                    manifest.source.string() + " has " + std::to_string(source.size()) +
                    "; line " + std::to_string(line) + " has no counterpart");
  };
  check(outputs.size(), outputs_name);
  std::vector<std::vector<std::string>> refs;
  for (const fs::path &r : manifest.references) {
    refs.push_back(read_lines(r));
    check(refs.back().size(), r.string());
  }
  std::vector<EvalRecord> records(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    records[i].id = std::to_string(i + 1);
    records[i].source = source[i];
    records[i].output = outputs[i];
    for (const auto &r : refs) records[i].references.push_back(r[i]);
  }
  return records;
}

std::vector<EvalRecord> parse_eval_records_jsonl(std::string_view text) {
  std::vector<EvalRecord> records;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string where = "line " + std::to_string(line_no);
    json doc = parse_object(line, where);
    reject_unknown(doc, {"id", "source", "output", "references"}, where);
    EvalRecord r;
    try {
      r.id = doc.contains("id") ? (doc["id"].is_string() ? doc["id"].get<std::string>()
                                                         : doc["id"].dump())
                                : std::to_string(records.size() + 1);
      r.source = doc.at("source").get<std::string>();
      r.output = doc.at("output").get<std::string>();
      r.references = doc.at("references").get<std::vector<std::string>>();
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kMalformedInput, where + ": " + e.what());
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::string format_metric_table(
    const std::vector<std::pair<std::string, MetricReport>> &rows) {
  std::size_t width = 6;
  for (const auto &[name, report] : rows) width = std::max(width, name.size());
  std::ostringstream out;
  out << pad_right("System", width);
  for (const char *h : {"BLEU", "SARI", "F_add", "F_keep", "P_del", "%Same", "LD_SC",
                        "#Split"}) {
    out << ' ' << pad_left(h, 7);
  }
  out << '\n';
  for (const auto &[name, m] : rows) {
    out << pad_right(name, width);
    for (double v : {m.bleu, m.sari.sari, m.sari.f_add, m.sari.f_keep, m.sari.p_del,
                     m.pct_same, m.ld_sc}) {
      out << ' ' << pad_left(fixed2(v), 7);
    }
    out << ' ' << pad_left(std::to_string(m.n_split), 7) << '\n';
  }
  return out.str();
}

std::string format_human_table(const std::vector<SystemScore> &rows) {
  std::size_t width = 6;
  for (const auto &s : rows) width = std::max(width, s.system.size());
  std::ostringstream out;
  out << pad_right("System", width);
  for (Parameter p : kAllParameters) out << ' ' << pad_left(std::string(parameter_name(p)), 6);
  out << '\n';
  for (const auto &s : rows) {
    out << pad_right(s.system, width);
    for (Parameter p : kAllParameters) out << ' ' << pad_left(fixed2(s.mean(p)), 6);
    out << '\n';
  }
  return out.str();
}

std::string format_agreement(const AgreementReport &report) {
  std::ostringstream out;
  out << "Quadratic weighted kappa over " << report.annotator_pairs
      << " annotator pairs\n";
  for (Parameter p : kAllParameters) {
    auto k = report.of(p);
    out << pad_right(std::string(parameter_name(p)), 4) << ' '
        << (k ? pad_left(fixed2(*k), 6) : pad_left("n/a", 6)) << '\n';
  }
  return out.str();
}

}  // namespace semsplit

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

#include "semsplit/human_eval.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "json.hpp"
#include "semsplit/error.h"

namespace semsplit {

using nlohmann::json;

Scale scale_of(Parameter parameter) {
  switch (parameter) {
    case Parameter::kGrammaticality:
    case Parameter::kMeaning:
      return {1, 5};
    case Parameter::kSimplicity:
    case Parameter::kStructural:
      return {-2, 2};
  }
  return {1, 5};
}

std::string_view parameter_name(Parameter parameter) {
  switch (parameter) {
    case Parameter::kGrammaticality: return "G";
    case Parameter::kMeaning: return "M";
    case Parameter::kSimplicity: return "S";
    case Parameter::kStructural: return "StS";
  }
  return "?";
}

std::string_view elicitation_question(Parameter parameter) {
  switch (parameter) {
    case Parameter::kGrammaticality:
      return "Is the output fluent and grammatical?";
    case Parameter::kMeaning:
      return "Does the output preserve the meaning of the input?";
    case Parameter::kSimplicity:
      return "Is the output simpler than the input?";
    case Parameter::kStructural:
      return "Is the output simpler than the input, ignoring the complexity "
             "of the words?";
  }
  return "";
}

int Judgment::value(Parameter parameter) const {
  switch (parameter) {
    case Parameter::kGrammaticality: return g;
    case Parameter::kMeaning: return m;
    case Parameter::kSimplicity: return s;
    case Parameter::kStructural: return sts;
  }
  return 0;
}

double SystemScore::mean(Parameter parameter) const {
  switch (parameter) {
    case Parameter::kGrammaticality: return g;
    case Parameter::kMeaning: return m;
    case Parameter::kSimplicity: return s;
    case Parameter::kStructural: return sts;
  }
  return 0;
}

std::optional<double> AgreementReport::of(Parameter parameter) const {
  return kappa[static_cast<std::size_t>(parameter)];
}

namespace {

std::string format_number(double value) {
  std::ostringstream out;
  out << value;
  return out.str();
}

int checked_rating(const RawJudgment &raw, Parameter parameter, double value) {
  Scale scale = scale_of(parameter);
  bool integral = std::isfinite(value) && std::floor(value) == value;
  if (!integral || value < scale.lowest || value > scale.highest) {
    throw Error(ErrorCode::kOutOfScale,
                std::string(parameter_name(parameter)) + "=" +
                    format_number(value) + " for record '" + raw.record_id +
                    "', annotator '" + raw.annotator_id + "' (allowed " +
                    std::to_string(scale.lowest) + ".." +
                    std::to_string(scale.highest) + ", integers only)");
  }
  return static_cast<int>(value);
}

}  // namespace

Judgment validate_judgment(const RawJudgment &raw) {
  Judgment j;
  j.system = raw.system;
  j.record_id = raw.record_id;
  j.annotator_id = raw.annotator_id;
  j.g = checked_rating(raw, Parameter::kGrammaticality, raw.g);
  j.m = checked_rating(raw, Parameter::kMeaning, raw.m);
  j.s = checked_rating(raw, Parameter::kSimplicity, raw.s);
  j.sts = checked_rating(raw, Parameter::kStructural, raw.sts);
  return j;
}

void JudgmentSet::add(const RawJudgment &raw) {
  Judgment judgment = validate_judgment(raw);
  auto key = std::make_tuple(judgment.system, judgment.record_id,
                             judgment.annotator_id);
  if (seen_.count(key)) {
    throw Error(ErrorCode::kDuplicateJudgment,
                "record '" + judgment.record_id + "' rated twice by '" +
                    judgment.annotator_id + "' for system '" +
                    judgment.system + "'");
  }
  seen_.insert(std::move(key));
  if (std::find(systems_.begin(), systems_.end(), judgment.system) ==
      systems_.end()) {
    systems_.push_back(judgment.system);
  }
  judgments_.push_back(std::move(judgment));
}

SystemScore aggregate_scores(std::span<const Judgment> judgments,
                             std::string_view system) {
  std::set<std::string> records, annotators;
  std::set<std::pair<std::string, std::string>> cells;
  SystemScore score;
  score.system = std::string(system);
  for (const Judgment &j : judgments) {
    if (j.system != system) continue;
    if (!cells.emplace(j.record_id, j.annotator_id).second) {
      throw Error(ErrorCode::kDuplicateJudgment,
                  "record '" + j.record_id + "' rated twice by '" +
                      j.annotator_id + "'");
    }
    records.insert(j.record_id);
    annotators.insert(j.annotator_id);
    score.g += j.g;
    score.m += j.m;
    score.s += j.s;
    score.sts += j.sts;
  }
  if (cells.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no judgments for system '" + std::string(system) + "'");
  }
  for (const std::string &record : records) {
    for (const std::string &annotator : annotators) {
      if (!cells.count({record, annotator})) {
        throw Error(ErrorCode::kIncompleteGrid,
                    "system '" + std::string(system) + "': record '" + record +
                        "' has no judgment from annotator '" + annotator + "'");
      }
    }
  }
  double n = static_cast<double>(cells.size());
  score.g /= n;
  score.m /= n;
  score.s /= n;
  score.sts /= n;
  score.items = static_cast<int>(records.size());
  score.annotators = static_cast<int>(annotators.size());
  return score;
}

double quadratic_weighted_kappa(std::span<const int> a, std::span<const int> b,
                                int k, int lowest) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                    " ratings");
  }
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "kappa needs k >= 2");
  if (a.empty()) throw Error(ErrorCode::kInvalidArgument, "no ratings");

  std::vector<double> observed(static_cast<std::size_t>(k * k), 0.0);
  std::vector<double> row(k, 0.0), col(k, 0.0);
  auto category = [k, lowest](int rating) {
    int c = rating - lowest;
    if (c < 0 || c >= k) {
      throw Error(ErrorCode::kOutOfScale,
                  "rating " + std::to_string(rating) + " outside " +
                      std::to_string(lowest) + ".." +
                      std::to_string(lowest + k - 1));
    }
    return c;
  };
  for (std::size_t n = 0; n < a.size(); ++n) {
    int i = category(a[n]);
    int j = category(b[n]);
    observed[i * k + j] += 1.0;
    row[i] += 1.0;
    col[j] += 1.0;
  }
  double total = static_cast<double>(a.size());
  double denom = static_cast<double>(k - 1) * (k - 1);
  double weighted_observed = 0.0, weighted_expected = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      double w = static_cast<double>((i - j) * (i - j)) / denom;
      weighted_observed += w * observed[i * k + j];
      weighted_expected += w * row[i] * col[j] / total;
    }
  }
  if (weighted_expected == 0.0) {
    throw Error(ErrorCode::kDegenerateMarginals,
                "chance disagreement is zero; kappa is undefined");
  }
  return 1.0 - weighted_observed / weighted_expected;
}

AgreementReport annotator_agreement(std::span<const Judgment> judgments) {
  using Item = std::pair<std::string, std::string>;
  std::map<std::string, std::map<Item, const Judgment *>> by_annotator;
  for (const Judgment &j : judgments) {
    by_annotator[j.annotator_id][{j.system, j.record_id}] = &j;
  }

  AgreementReport report;
  std::array<double, 4> sums{};
  std::array<bool, 4> defined;
  defined.fill(true);
  for (auto first = by_annotator.begin(); first != by_annotator.end(); ++first) {
    for (auto second = std::next(first); second != by_annotator.end();
         ++second) {
      std::array<std::vector<int>, 4> left, right;
      for (const auto &[item, judgment] : first->second) {
        auto other = second->second.find(item);
        if (other == second->second.end()) continue;
        for (Parameter p : kAllParameters) {
          left[static_cast<std::size_t>(p)].push_back(judgment->value(p));
          right[static_cast<std::size_t>(p)].push_back(other->second->value(p));
        }
      }
      if (left[0].empty()) continue;
      ++report.annotator_pairs;
      for (Parameter p : kAllParameters) {
        auto index = static_cast<std::size_t>(p);
        if (!defined[index]) continue;
        Scale scale = scale_of(p);
        try {
          sums[index] += quadratic_weighted_kappa(
              left[index], right[index], scale.categories(), scale.lowest);
        } catch (const Error &e) {
          if (e.code() != ErrorCode::kDegenerateMarginals) throw;
          defined[index] = false;
        }
      }
    }
  }
  for (std::size_t index = 0; index < 4; ++index) {
    if (defined[index] && report.annotator_pairs > 0) {
      report.kappa[index] = sums[index] / report.annotator_pairs;
    }
  }
  return report;
}

namespace {

[[noreturn]] void bad_line(std::size_t line, const std::string &what) {
  throw Error(ErrorCode::kMalformedInput,
              "judgments line " + std::to_string(line) + ": " + what);
}

double parse_rating(std::string_view text, std::size_t line,
                    std::string_view field) {
  std::string value(text);
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    bad_line(line, "field " + std::string(field) + " is not a number: '" +
                       value + "'");
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace

std::vector<RawJudgment> parse_judgments_jsonl(std::string_view text) {
  std::vector<RawJudgment> out;
  std::size_t number = 0;
  for (std::string_view line : lines_of(text)) {
    ++number;
    if (trim(line).empty()) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error &e) {
      bad_line(number, e.what());
    }
    if (!doc.is_object()) bad_line(number, "expected an object");
    RawJudgment raw;
    auto text_field = [&](const char *name, std::string &dest, bool required) {
      auto it = doc.find(name);
      if (it == doc.end()) {
        if (required) bad_line(number, std::string("missing ") + name);
        return;
      }
      if (it->is_string()) {
        dest = it->get<std::string>();
      } else if (it->is_number_integer()) {
        dest = std::to_string(it->get<long long>());
      } else {
        bad_line(number, std::string(name) + " must be a string");
      }
    };
    auto number_field = [&](const char *name, double &dest) {
      auto it = doc.find(name);
      if (it == doc.end()) bad_line(number, std::string("missing ") + name);
      if (!it->is_number()) bad_line(number, std::string(name) + " must be a number");
      dest = it->get<double>();
    };
    text_field("system", raw.system, false);
    text_field("record_id", raw.record_id, true);
    text_field("annotator_id", raw.annotator_id, true);
    number_field("G", raw.g);
    number_field("M", raw.m);
    number_field("S", raw.s);
    number_field("StS", raw.sts);
    out.push_back(std::move(raw));
  }
  return out;
}

std::vector<RawJudgment> parse_judgments_delimited(std::string_view text,
                                                   char delimiter) {
  auto split = [delimiter](std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
      std::size_t end = line.find(delimiter, start);
      if (end == std::string_view::npos) {
        cells.push_back(trim(line.substr(start)));
        return cells;
      }
      cells.push_back(trim(line.substr(start, end - start)));
      start = end + 1;
    }
  };

  std::vector<std::string_view> lines = lines_of(text);
  std::size_t header_line = 0;
  while (header_line < lines.size() && trim(lines[header_line]).empty()) {
    ++header_line;
  }
  if (header_line == lines.size()) return {};
  std::vector<std::string_view> header = split(lines[header_line]);
  auto column = [&](std::string_view name, bool required) -> int {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      if (required) {
        bad_line(header_line + 1, "header lacks column " + std::string(name));
      }
      return -1;
    }
    return static_cast<int>(it - header.begin());
  };
  int system = column("system", false);
  int record = column("record_id", true);
  int annotator = column("annotator_id", true);
  int g = column("G", true), m = column("M", true), s = column("S", true),
      sts = column("StS", true);

  std::vector<RawJudgment> out;
  for (std::size_t i = header_line + 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    std::vector<std::string_view> cells = split(lines[i]);
    if (cells.size() != header.size()) {
      bad_line(i + 1, "expected " + std::to_string(header.size()) +
                          " cells, found " + std::to_string(cells.size()));
    }
    RawJudgment raw;
    if (system >= 0) raw.system = std::string(cells[system]);
    raw.record_id = std::string(cells[record]);
    raw.annotator_id = std::string(cells[annotator]);
    raw.g = parse_rating(cells[g], i + 1, "G");
    raw.m = parse_rating(cells[m], i + 1, "M");
    raw.s = parse_rating(cells[s], i + 1, "S");
    raw.sts = parse_rating(cells[sts], i + 1, "StS");
    out.push_back(std::move(raw));
  }
  return out;
}

}  // namespace semsplit

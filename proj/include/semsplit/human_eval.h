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

#ifndef SEMSPLIT_HUMAN_EVAL_H_
#define SEMSPLIT_HUMAN_EVAL_H_

#include <array>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace semsplit {

enum class Parameter { kGrammaticality, kMeaning, kSimplicity, kStructural };

inline constexpr std::array<Parameter, 4> kAllParameters = {
    Parameter::kGrammaticality, Parameter::kMeaning, Parameter::kSimplicity,
    Parameter::kStructural};

struct Scale {
  int lowest;
  int highest;

  int categories() const { return highest - lowest + 1; }
  bool contains(int value) const { return value >= lowest && value <= highest; }
};

// G and M: 1..5. S and StS: -2..+2.
Scale scale_of(Parameter parameter);

// "G", "M", "S", "StS".
std::string_view parameter_name(Parameter parameter);

// The question shown to annotators for the parameter.
std::string_view elicitation_question(Parameter parameter);

// A judgment as read from input, before scale checks. Ratings are kept as
// doubles so that non-integer input can be reported rather than truncated.
struct RawJudgment {
  std::string system = "system";
  std::string record_id;
  std::string annotator_id;
  double g = 0, m = 0, s = 0, sts = 0;
};

struct Judgment {
  std::string system;
  std::string record_id;
  std::string annotator_id;
  int g = 0, m = 0, s = 0, sts = 0;

  int value(Parameter parameter) const;
};

// Throws OutOfScale naming the parameter and offending value.
Judgment validate_judgment(const RawJudgment &raw);

// Validated judgments with (system, record, annotator) uniqueness.
class JudgmentSet {
 public:
  // Throws OutOfScale or DuplicateJudgment; the set is unchanged on error.
  void add(const RawJudgment &raw);

  std::span<const Judgment> judgments() const { return judgments_; }
  // Systems in first-seen order.
  const std::vector<std::string> &systems() const { return systems_; }
  bool empty() const { return judgments_.empty(); }

 private:
  std::vector<Judgment> judgments_;
  std::vector<std::string> systems_;
  std::set<std::tuple<std::string, std::string, std::string>> seen_;
};

struct SystemScore {
  std::string system;
  double g = 0, m = 0, s = 0, sts = 0;
  int items = 0;
  int annotators = 0;

  double mean(Parameter parameter) const;
};

// Per-parameter means over every (record, annotator) cell of one system.
// Throws IncompleteGrid naming the first missing cell, DuplicateJudgment,
// or InvalidArgument when the system has no judgments.
SystemScore aggregate_scores(std::span<const Judgment> judgments,
                             std::string_view system);

// Cohen's kappa with quadratic weights (i-j)^2/(k-1)^2 over k ordered
// categories lowest..lowest+k-1. Throws LengthMismatch, OutOfScale,
// InvalidArgument (k < 2 or no ratings) and DegenerateMarginals when the
// chance-weighted disagreement is zero.
double quadratic_weighted_kappa(std::span<const int> a, std::span<const int> b,
                                int k, int lowest = 1);

struct AgreementReport {
  // Unweighted mean over annotator pairs; nullopt when undefined for some
  // pair (degenerate marginals) or when no pair shares an item.
  std::array<std::optional<double>, 4> kappa;
  int annotator_pairs = 0;

  std::optional<double> of(Parameter parameter) const;
};

// Items are (system, record) pairs; each annotator pair is compared on the
// items both rated.
AgreementReport annotator_agreement(std::span<const Judgment> judgments);

// JSON-lines with fields record_id, annotator_id, G, M, S, StS and an
// optional system. Throws MalformedInput with the line number.
std::vector<RawJudgment> parse_judgments_jsonl(std::string_view text);

// Delimited text with a header row naming the same fields.
std::vector<RawJudgment> parse_judgments_delimited(std::string_view text,
                                                   char delimiter);

}  // namespace semsplit

#endif  // SEMSPLIT_HUMAN_EVAL_H_

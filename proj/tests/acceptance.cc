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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.h"
#include "semsplit/error.h"
#include "semsplit/human_eval.h"
#include "semsplit/metrics.h"
#include "semsplit/simplifier.h"
#include "semsplit/splitter.h"
#include "test_support.h"

namespace semsplit {
namespace {

using testing::fixture;
using testing::fixtures;

struct Outcome {
  bool pass;
  std::string detail;
};

constexpr double kOracleTolerance = 1e-9;
constexpr double kKappaTolerance = 1e-12;
constexpr double kRule1LimitMs = 1.0;

std::string joined_tokens(const Passage &p) {
  std::string text;
  for (const auto &t : p.tokens()) text += (text.empty() ? "" : " ") + t;
  return text;
}

Outcome rule1_golden() {
  const Passage &p = fixture("rule1");
  const std::string want = "He came back home. He played piano.";
  constexpr int kRuns = 200;
  std::string got;
  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < kRuns; ++i) got = split_passage(p).text();
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count() /
              kRuns;
  char detail[160];
  std::snprintf(detail, sizeof detail, "\"%s\", %.4f ms per split (limit %.0f ms)",
                got.c_str(), ms, kRule1LimitMs);
  return {got == want && ms < kRule1LimitMs, detail};
}

Outcome rule2_golden() {
  std::string got = split_passage(fixture("rule2")).text();
  return {got == "He observed the planet. Planet has 14 known satellites.",
          "\"" + got + "\""};
}

Outcome participant_gate() {
  SplitResult r = split_passage(fixture("participant"));
  return {!r.was_split && r.text() == "His arrival surprised everyone.",
          "was_split=" + std::string(r.was_split ? "true" : "false") + ", \"" +
              r.text() + "\""};
}

Outcome identity_signature() {
  std::vector<EvalRecord> records;
  for (const Passage &p : fixtures()) {
    std::string source = joined_tokens(p);
    records.push_back({p.id(), source, source, {split_passage(p).text()}});
  }
  MetricReport m = evaluate_corpus(records);
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "%d records: F_add %.2f, P_del %.2f, %%Same %.2f, LD_SC %.2f, #Split %d "
                "(exact)",
                m.n_records, m.sari.f_add, m.sari.p_del, m.pct_same, m.ld_sc, m.n_split);
  return {m.sari.f_add == 0.0 && m.sari.p_del == 0.0 && m.pct_same == 100.0 &&
              m.ld_sc == 0.0 && m.n_split == 0,
          detail};
}

Tokens random_sentence(std::mt19937 &rng) {
  static const Tokens vocab = {"a", "b", "c", "the", "cat", "sat", "mat", "."};
  Tokens out(1 + rng() % 12);
  for (auto &w : out) w = vocab[rng() % vocab.size()];
  return out;
}

Outcome sari_bleu_oracle() {
  std::mt19937 rng(2024);
  constexpr int kRecords = 200;
  double worst = 0.0;
  std::vector<Tokens> outputs;
  std::vector<std::vector<Tokens>> references;
  for (int i = 0; i < kRecords; ++i) {
    Tokens source = random_sentence(rng), output = random_sentence(rng);
    std::vector<Tokens> refs;
    for (std::size_t k = 0, n = 1 + rng() % 4; k < n; ++k) refs.push_back(random_sentence(rng));
    SariReport got = sari(source, output, refs);
    oracle::SariParts want = oracle::sari(source, output, refs);
    for (double d : {got.sari - want.sari, got.f_add - want.f_add,
                     got.f_keep - want.f_keep, got.p_del - want.p_del}) {
      worst = std::max(worst, std::fabs(d));
    }
    outputs.push_back(output);
    references.push_back(refs);
  }
  double bleu_gap =
      std::fabs(corpus_bleu(outputs, references) - oracle::corpus_bleu(outputs, references));
  std::vector<std::vector<Tokens>> self;
  for (const Tokens &o : outputs) self.push_back({o});
  double self_bleu = corpus_bleu(outputs, self);
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "%d records, max SARI gap %.2e, BLEU gap %.2e (tol %.0e), self BLEU %.12f",
                kRecords, worst, bleu_gap, kOracleTolerance, self_bleu);
  return {worst <= kOracleTolerance && bleu_gap <= kOracleTolerance &&
              std::fabs(self_bleu - 100.0) <= kOracleTolerance,
          detail};
}

Outcome levenshtein_properties() {
  std::mt19937 rng(99);
  auto word = [&] {
    std::string s;
    for (std::size_t i = 0, n = rng() % 12; i < n; ++i) s += "abcd"[rng() % 4];
    return s;
  };
  constexpr int kTriples = 1000;
  int violations = 0;
  for (int i = 0; i < kTriples; ++i) {
    std::string a = word(), b = word(), c = word();
    std::size_t ab = levenshtein(a, b);
    if (ab != levenshtein(b, a)) ++violations;
    if (levenshtein(a, a) != 0) ++violations;
    if (levenshtein(a, c) > ab + levenshtein(b, c)) ++violations;
    if (ab != oracle::edit_distance(a, b)) ++violations;
  }
  std::size_t kitten = levenshtein("kitten", "sitting");
  std::size_t kitten_oracle = oracle::edit_distance("kitten", "sitting");
  return {violations == 0 && kitten == 3 && kitten_oracle == 3,
          std::to_string(kTriples) + " triples, " + std::to_string(violations) +
              " violations; kitten/sitting = " + std::to_string(kitten) + " (oracle " +
              std::to_string(kitten_oracle) + ")"};
}

Outcome token_conservation() {
  int mismatches = 0;
  std::string first_bad;
  for (const Passage &p : fixtures()) {
    SplitResult r = split_passage(p);
    if (testing::actual_token_multiset(r) != testing::expected_token_multiset(p)) {
      if (mismatches++ == 0) first_bad = p.id();
    }
  }
  return {mismatches == 0,
          std::to_string(fixtures().size()) + " passages, " + std::to_string(mismatches) +
              " mismatches" + (first_bad.empty() ? "" : " (first: " + first_bad + ")")};
}

Outcome pipeline_composition() {
  std::vector<PipelineInput> inputs;
  for (const Passage &p : fixtures()) inputs.push_back({p.id(), p, joined_tokens(p)});
  PipelineConfig dss;
  PipelineConfig sents;
  sents.mode = PipelineMode::kSents;
  IdentityBackend identity;
  auto a = run_pipeline(dss, inputs);
  auto b = run_pipeline(sents, inputs, &identity);
  int differing = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].output != b[i].output || a[i].failed || b[i].failed) ++differing;
  }
  return {differing == 0 && a.size() == b.size(),
          std::to_string(a.size()) + " passages, " + std::to_string(differing) +
              " differ (byte comparison)"};
}

Outcome weighted_kappa() {
  std::vector<int> a = {1, 2, 3, 4, 5, 3, 2};
  double self = quadratic_weighted_kappa(a, a, 5);
  std::vector<int> f1a = {1, 2, 3, 4, 5}, f1b = {5, 4, 3, 2, 1};
  std::vector<int> f2a = {1, 1, 2, 2}, f2b = {2, 2, 3, 3};
  double k1 = quadratic_weighted_kappa(f1a, f1b, 5);
  double k2 = quadratic_weighted_kappa(f2a, f2b, 5);
  double gap1 = std::fabs(k1 - oracle::pairwise_quadratic_kappa(f1a, f1b));
  double gap2 = std::fabs(k2 - oracle::pairwise_quadratic_kappa(f2a, f2b));
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "k(a,a) = %.15f; fixtures %.6f, %.6f; oracle gaps %.1e, %.1e (tol %.0e)",
                self, k1, k2, gap1, gap2, kKappaTolerance);
  return {std::fabs(self - 1.0) <= kKappaTolerance && gap1 <= kKappaTolerance &&
              gap2 <= kKappaTolerance,
          detail};
}

}  // namespace
}  // namespace semsplit

int main() {
  using semsplit::Outcome;
  const std::vector<std::pair<const char *, std::function<Outcome()>>> checks = {
      {"rule1-golden", semsplit::rule1_golden},
      {"rule2-golden", semsplit::rule2_golden},
      {"participant-gate", semsplit::participant_gate},
      {"identity-metric-signature", semsplit::identity_signature},
      {"sari-bleu-oracle", semsplit::sari_bleu_oracle},
      {"levenshtein-properties", semsplit::levenshtein_properties},
      {"token-conservation", semsplit::token_conservation},
      {"pipeline-composition", semsplit::pipeline_composition},
      {"weighted-kappa", semsplit::weighted_kappa},
  };
  int failures = 0;
  for (const auto &[name, check] : checks) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s  %-26s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(checks.size()) - failures,
              checks.size());
  return failures == 0 ? 0 : 1;
}

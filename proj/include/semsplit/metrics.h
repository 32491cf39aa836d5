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

#ifndef SEMSPLIT_METRICS_H_
#define SEMSPLIT_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semsplit {

using Tokens = std::vector<std::string>;

struct EvalRecord {
  std::string id;
  std::string source;
  std::string output;
  std::vector<std::string> references;
};

// Throws EmptyReferenceSet without references and MalformedInput when any
// string is blank.
void validate_record(const EvalRecord &record);

struct SariReport {
  double sari = 0.0;
  double f_add = 0.0;
  double f_keep = 0.0;
  double p_del = 0.0;
};

struct MetricReport {
  double bleu = 0.0;
  SariReport sari;
  double pct_same = 0.0;
  double ld_sc = 0.0;
  int n_split = 0;
  int n_records = 0;
};

struct ConservatismStats {
  double pct_same = 0.0;
  double ld_sc = 0.0;
  int n_split = 0;
};

// Whitespace split, then leading and trailing ASCII punctuation characters
// are peeled off each word as one-character tokens. Case is preserved.
Tokens tokenize(std::string_view text);

Tokens lowercase(const Tokens &tokens);

// Corpus BLEU (n = 1..4, uniform weights, no smoothing) on a 0-100 scale.
// Matching is exact; callers lowercase beforehand if wanted. The reference
// length for the brevity penalty is the closest one per sentence, ties
// going to the shorter. Throws LengthMismatch.
double corpus_bleu(const std::vector<Tokens> &outputs,
                   const std::vector<std::vector<Tokens>> &references);

// SARI for one sentence over already tokenized input. Components are
// averaged over n = 1..4 and scaled to 0-100. Throws EmptyReferenceSet.
SariReport sari(const Tokens &source, const Tokens &output,
                const std::vector<Tokens> &references);

// Tokenizes and lowercases the record's strings, then scores them.
SariReport sari(const EvalRecord &record);

// Unit-cost edit distance over Unicode code points (invalid UTF-8 bytes
// count as one symbol each).
std::size_t levenshtein(std::string_view a, std::string_view b);

// Sentences delimited by . ! or ? followed by whitespace or end of text;
// blank segments are ignored.
int count_sentences(std::string_view text);

// Throws EmptyCorpus.
ConservatismStats conservatism_stats(std::span<const EvalRecord> records);

// Every automatic metric for a corpus. SARI components are per-record
// averages; BLEU is computed over lowercased tokens. Throws EmptyCorpus.
MetricReport evaluate_corpus(std::span<const EvalRecord> records);

}  // namespace semsplit

#endif  // SEMSPLIT_METRICS_H_

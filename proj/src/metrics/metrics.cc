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

#include "semsplit/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "semsplit/error.h"

namespace semsplit {

namespace {

constexpr int kMaxOrder = 4;

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), is_space);
}

// N-grams keyed by their space-joined form.
using NgramCounts = std::map<std::string, double>;

NgramCounts count_ngrams(const Tokens &tokens, int n) {
  NgramCounts counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int k = 1; k < n; ++k) key += ' ' + tokens[i + k];
    counts[key] += 1.0;
  }
  return counts;
}

double get(const NgramCounts &counts, const std::string &key) {
  auto it = counts.find(key);
  return it == counts.end() ? 0.0 : it->second;
}

double f1(double precision, double recall) {
  if (precision > 0.0 || recall > 0.0) {
    return 2.0 * precision * recall / (precision + recall);
  }
  return 0.0;
}

struct OrderScores {
  double keep = 0.0;
  double del = 0.0;
  double add = 0.0;
};

// One n-gram order of SARI. Input and output counts are scaled by the
// number of references so they compare directly with reference counts
// summed over all references.
OrderScores sari_order(const NgramCounts &source, const NgramCounts &output,
                       const NgramCounts &refs, double num_refs) {
  OrderScores scores;

  // Keep.
  NgramCounts keep, keep_good, keep_all;
  for (const auto &[gram, s] : source) {
    double s_rep = s * num_refs;
    double r = get(refs, gram);
    double c_rep = get(output, gram) * num_refs;
    double kept = std::min(s_rep, c_rep);
    if (kept > 0) {
      keep[gram] = kept;
      double good = std::min(kept, r);
      if (good > 0) keep_good[gram] = good;
    }
    double all = std::min(s_rep, r);
    if (all > 0) keep_all[gram] = all;
  }
  double keep_p_sum = 0.0, keep_r_sum = 0.0;
  for (const auto &[gram, good] : keep_good) {
    keep_p_sum += good / keep.at(gram);
    keep_r_sum += good / keep_all.at(gram);
  }
  double keep_precision = keep.empty() ? 0.0 : keep_p_sum / keep.size();
  double keep_recall = keep_all.empty() ? 0.0 : keep_r_sum / keep_all.size();
  scores.keep = f1(keep_precision, keep_recall);

  // Deletion (precision only).
  NgramCounts deleted;
  double del_sum = 0.0;
  for (const auto &[gram, s] : source) {
    double d = s * num_refs - get(output, gram) * num_refs;
    if (d <= 0) continue;
    deleted[gram] = d;
    double good = d - get(refs, gram);
    if (good > 0) del_sum += good / d;
  }
  scores.del = deleted.empty() ? 0.0 : del_sum / deleted.size();

  // Addition, on n-gram types.
  std::size_t added = 0, added_good = 0, addable = 0;
  for (const auto &[gram, c] : output) {
    if (source.count(gram)) continue;
    ++added;
    if (refs.count(gram)) ++added_good;
  }
  for (const auto &[gram, r] : refs) {
    if (!source.count(gram)) ++addable;
  }
  double add_precision =
      added == 0 ? 0.0 : static_cast<double>(added_good) / added;
  double add_recall =
      addable == 0 ? 0.0 : static_cast<double>(added_good) / addable;
  scores.add = f1(add_precision, add_recall);
  return scores;
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char lead = static_cast<unsigned char>(text[i]);
    int extra = -1;
    if (lead < 0x80) {
      extra = 0;
    } else if ((lead >> 5) == 0x6) {
      extra = 1;
    } else if ((lead >> 4) == 0xE) {
      extra = 2;
    } else if ((lead >> 3) == 0x1E) {
      extra = 3;
    }
    bool ok = extra >= 0 && i + static_cast<std::size_t>(extra) < text.size();
    for (int k = 1; ok && k <= extra; ++k) {
      ok = (static_cast<unsigned char>(text[i + k]) & 0xC0) == 0x80;
    }
    if (!ok) {
      out.push_back(0xDC00 + lead);  // lone byte, kept distinct
      ++i;
      continue;
    }
    char32_t cp = extra == 0 ? lead : lead & (0x3F >> extra);
    for (int k = 1; k <= extra; ++k) {
      cp = (cp << 6) | (static_cast<unsigned char>(text[i + k]) & 0x3F);
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

}  // namespace

void validate_record(const EvalRecord &record) {
  if (record.references.empty()) {
    throw Error(ErrorCode::kEmptyReferenceSet,
                "record '" + record.id + "' has no references");
  }
  auto check = [&record](std::string_view value, std::string_view what) {
    if (is_blank(value)) {
      throw Error(ErrorCode::kMalformedInput, "record '" + record.id +
                                                  "' has a blank " +
                                                  std::string(what));
    }
  };
  check(record.source, "source");
  check(record.output, "output");
  for (const std::string &ref : record.references) check(ref, "reference");
}

Tokens tokenize(std::string_view text) {
  Tokens tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    std::string_view word = text.substr(start, i - start);
    if (word.empty()) continue;

    std::size_t lead = 0;
    while (lead < word.size() && is_punct(word[lead])) ++lead;
    if (lead == word.size()) {
      for (char c : word) tokens.emplace_back(1, c);
      continue;
    }
    std::size_t tail = word.size();
    while (tail > lead && is_punct(word[tail - 1])) --tail;
    for (std::size_t k = 0; k < lead; ++k) tokens.emplace_back(1, word[k]);
    tokens.emplace_back(word.substr(lead, tail - lead));
    for (std::size_t k = tail; k < word.size(); ++k) {
      tokens.emplace_back(1, word[k]);
    }
  }
  return tokens;
}

Tokens lowercase(const Tokens &tokens) {
  Tokens out = tokens;
  for (std::string &token : out) {
    std::transform(token.begin(), token.end(), token.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  }
  return out;
}

double corpus_bleu(const std::vector<Tokens> &outputs,
                   const std::vector<std::vector<Tokens>> &references) {
  if (outputs.size() != references.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(outputs.size()) + " outputs vs " +
                    std::to_string(references.size()) + " reference sets");
  }
  double matches[kMaxOrder] = {};
  double totals[kMaxOrder] = {};
  double output_length = 0.0;
  double reference_length = 0.0;

  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const Tokens &hyp = outputs[i];
    const auto &refs = references[i];
    if (refs.empty()) {
      throw Error(ErrorCode::kEmptyReferenceSet,
                  "record " + std::to_string(i) + " has no references");
    }
    output_length += hyp.size();

    std::size_t closest = refs.front().size();
    for (const Tokens &ref : refs) {
      auto distance = [&hyp](std::size_t len) {
        return len > hyp.size() ? len - hyp.size() : hyp.size() - len;
      };
      std::size_t d = distance(ref.size()), best = distance(closest);
      if (d < best || (d == best && ref.size() < closest)) closest = ref.size();
    }
    reference_length += closest;

    for (int n = 1; n <= kMaxOrder; ++n) {
      NgramCounts hyp_counts = count_ngrams(hyp, n);
      NgramCounts max_ref;
      for (const Tokens &ref : refs) {
        for (const auto &[gram, count] : count_ngrams(ref, n)) {
          max_ref[gram] = std::max(max_ref[gram], count);
        }
      }
      for (const auto &[gram, count] : hyp_counts) {
        matches[n - 1] += std::min(count, get(max_ref, gram));
        totals[n - 1] += count;
      }
    }
  }

  double log_precision = 0.0;
  for (int n = 0; n < kMaxOrder; ++n) {
    if (totals[n] == 0.0 || matches[n] == 0.0) return 0.0;
    log_precision += std::log(matches[n] / totals[n]) / kMaxOrder;
  }
  double log_bp = output_length < reference_length
                      ? 1.0 - reference_length / output_length
                      : 0.0;
  return 100.0 * std::exp(log_precision + log_bp);
}

SariReport sari(const Tokens &source, const Tokens &output,
                const std::vector<Tokens> &references) {
  if (references.empty()) {
    throw Error(ErrorCode::kEmptyReferenceSet, "SARI needs references");
  }
  double keep = 0.0, del = 0.0, add = 0.0;
  double num_refs = static_cast<double>(references.size());
  for (int n = 1; n <= kMaxOrder; ++n) {
    NgramCounts refs;
    for (const Tokens &ref : references) {
      for (const auto &[gram, count] : count_ngrams(ref, n)) refs[gram] += count;
    }
    OrderScores order =
        sari_order(count_ngrams(source, n), count_ngrams(output, n), refs,
                   num_refs);
    keep += order.keep;
    del += order.del;
    add += order.add;
  }
  SariReport report;
  report.f_keep = 100.0 * keep / kMaxOrder;
  report.p_del = 100.0 * del / kMaxOrder;
  report.f_add = 100.0 * add / kMaxOrder;
  report.sari = (report.f_add + report.f_keep + report.p_del) / 3.0;
  return report;
}

SariReport sari(const EvalRecord &record) {
  if (record.references.empty()) {
    throw Error(ErrorCode::kEmptyReferenceSet,
                "record '" + record.id + "' has no references");
  }
  std::vector<Tokens> refs;
  refs.reserve(record.references.size());
  for (const std::string &ref : record.references) {
    refs.push_back(lowercase(tokenize(ref)));
  }
  return sari(lowercase(tokenize(record.source)),
              lowercase(tokenize(record.output)), refs);
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::u32string s = decode_utf8(a);
  std::u32string t = decode_utf8(b);
  if (s.size() < t.size()) std::swap(s, t);
  std::vector<std::size_t> row(t.size() + 1);
  for (std::size_t j = 0; j <= t.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= t.size(); ++j) {
      std::size_t above = row[j];
      std::size_t substitute = diagonal + (s[i - 1] == t[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitute});
      diagonal = above;
    }
  }
  return row[t.size()];
}

int count_sentences(std::string_view text) {
  int count = 0;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    if (!is_blank(text.substr(start, end - start))) ++count;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (i + 1 == text.size() || is_space(text[i + 1])) {
      // The terminator belongs to its sentence; only what precedes it
      // decides whether the segment is blank.
      flush(i);
      start = i + 1;
    }
  }
  flush(text.size());
  return count;
}

ConservatismStats conservatism_stats(std::span<const EvalRecord> records) {
  if (records.empty()) throw Error(ErrorCode::kEmptyCorpus, "no records");
  ConservatismStats stats;
  std::size_t same = 0;
  double distance = 0.0;
  for (const EvalRecord &record : records) {
    if (tokenize(record.output) == tokenize(record.source)) ++same;
    distance += static_cast<double>(levenshtein(record.source, record.output));
    if (count_sentences(record.source) == 1 &&
        count_sentences(record.output) >= 2) {
      ++stats.n_split;
    }
  }
  double n = static_cast<double>(records.size());
  stats.pct_same = 100.0 * static_cast<double>(same) / n;
  stats.ld_sc = distance / n;
  return stats;
}

MetricReport evaluate_corpus(std::span<const EvalRecord> records) {
  if (records.empty()) throw Error(ErrorCode::kEmptyCorpus, "no records");
  MetricReport report;
  report.n_records = static_cast<int>(records.size());

  std::vector<Tokens> outputs;
  std::vector<std::vector<Tokens>> references;
  double add = 0.0, keep = 0.0, del = 0.0;
  for (const EvalRecord &record : records) {
    SariReport s = sari(record);
    add += s.f_add;
    keep += s.f_keep;
    del += s.p_del;
    outputs.push_back(lowercase(tokenize(record.output)));
    std::vector<Tokens> refs;
    for (const std::string &ref : record.references) {
      refs.push_back(lowercase(tokenize(ref)));
    }
    references.push_back(std::move(refs));
  }
  double n = static_cast<double>(records.size());
  report.sari.f_add = add / n;
  report.sari.f_keep = keep / n;
  report.sari.p_del = del / n;
  report.sari.sari =
      (report.sari.f_add + report.sari.f_keep + report.sari.p_del) / 3.0;
  report.bleu = corpus_bleu(outputs, references);

  ConservatismStats stats = conservatism_stats(records);
  report.pct_same = stats.pct_same;
  report.ld_sc = stats.ld_sc;
  report.n_split = stats.n_split;
  return report;
}

}  // namespace semsplit

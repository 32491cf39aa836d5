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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace semsplit::oracle {

namespace {

using Gram = std::vector<std::string>;

std::vector<Gram> grams_of(const Words &words, std::size_t n) {
  std::vector<Gram> out;
  for (std::size_t i = 0; i + n <= words.size(); ++i) {
    out.emplace_back(words.begin() + i, words.begin() + i + n);
  }
  return out;
}

double occurrences(const std::vector<Gram> &grams, const Gram &g) {
  double count = 0;
  for (const Gram &x : grams) {
    if (x == g) count += 1;
  }
  return count;
}

std::vector<Gram> distinct(const std::vector<Gram> &grams) {
  std::vector<Gram> out;
  for (const Gram &g : grams) {
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  }
  return out;
}

Words lower(const Words &words) {
  Words out = words;
  for (auto &w : out) {
    for (auto &c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

double harmonic(double p, double r) {
  return (p > 0 || r > 0) ? 2 * p * r / (p + r) : 0.0;
}

}  // namespace

SariParts sari(const Words &source_in, const Words &output_in,
               const std::vector<Words> &references_in) {
  Words source = lower(source_in);
  Words output = lower(output_in);
  std::vector<Words> references;
  for (const auto &r : references_in) references.push_back(lower(r));
  const double num_refs = static_cast<double>(references.size());

  double keep_total = 0, del_total = 0, add_total = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<Gram> s = grams_of(source, n);
    std::vector<Gram> o = grams_of(output, n);
    std::vector<std::vector<Gram>> rs;
    for (const auto &r : references) rs.push_back(grams_of(r, n));
    auto ref_fraction = [&](const Gram &g) {
      double total = 0;
      for (const auto &r : rs) total += occurrences(r, g);
      return total / num_refs;
    };
    auto in_any_ref = [&](const Gram &g) {
      for (const auto &r : rs) {
        if (occurrences(r, g) > 0) return true;
      }
      return false;
    };

    // Keep.
    double keep_sets = 0, all_sets = 0, p_sum = 0, r_sum = 0;
    for (const Gram &g : distinct(s)) {
      double cs = occurrences(s, g), co = occurrences(o, g), cr = ref_fraction(g);
      double kept = std::min(cs, co);
      double all = std::min(cs, cr);
      if (kept > 0) keep_sets += 1;
      if (all > 0) all_sets += 1;
      double good = std::min(kept, cr);
      if (kept > 0 && good > 0) {
        p_sum += good / kept;
        r_sum += good / all;
      }
    }
    double kp = keep_sets > 0 ? p_sum / keep_sets : 0;
    double kr = all_sets > 0 ? r_sum / all_sets : 0;
    keep_total += harmonic(kp, kr);

    // Deletion.
    double del_sets = 0, d_sum = 0;
    for (const Gram &g : distinct(s)) {
      double d = occurrences(s, g) - occurrences(o, g);
      if (d <= 0) continue;
      del_sets += 1;
      double good = d - ref_fraction(g);
      if (good > 0) d_sum += good / d;
    }
    del_total += del_sets > 0 ? d_sum / del_sets : 0;

    // Addition over types.
    double added = 0, added_good = 0, addable = 0;
    for (const Gram &g : distinct(o)) {
      if (occurrences(s, g) > 0) continue;
      added += 1;
      if (in_any_ref(g)) added_good += 1;
    }
    std::vector<Gram> all_refs;
    for (const auto &r : rs) all_refs.insert(all_refs.end(), r.begin(), r.end());
    for (const Gram &g : distinct(all_refs)) {
      if (occurrences(s, g) == 0) addable += 1;
    }
    double ap = added > 0 ? added_good / added : 0;
    double ar = addable > 0 ? added_good / addable : 0;
    add_total += harmonic(ap, ar);
  }
  SariParts parts;
  parts.f_keep = 25.0 * keep_total;
  parts.p_del = 25.0 * del_total;
  parts.f_add = 25.0 * add_total;
  parts.sari = (parts.f_keep + parts.p_del + parts.f_add) / 3.0;
  return parts;
}

double corpus_bleu(const std::vector<Words> &outputs,
                   const std::vector<std::vector<Words>> &references) {
  double matched[4] = {0, 0, 0, 0};
  double proposed[4] = {0, 0, 0, 0};
  double hyp_len = 0, ref_len = 0;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const Words &hyp = outputs[i];
    hyp_len += static_cast<double>(hyp.size());
    double best_len = -1, best_gap = std::numeric_limits<double>::infinity();
    for (const Words &ref : references[i]) {
      double len = static_cast<double>(ref.size());
      double gap = std::fabs(len - static_cast<double>(hyp.size()));
      if (gap < best_gap || (gap == best_gap && len < best_len)) {
        best_gap = gap;
        best_len = len;
      }
    }
    ref_len += best_len;
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<Gram> h = grams_of(hyp, n);
      proposed[n - 1] += static_cast<double>(h.size());
      for (const Gram &g : distinct(h)) {
        double clip = 0;
        for (const Words &ref : references[i]) {
          clip = std::max(clip, occurrences(grams_of(ref, n), g));
        }
        matched[n - 1] += std::min(occurrences(h, g), clip);
      }
    }
  }
  double product = 1;
  for (int n = 0; n < 4; ++n) {
    if (matched[n] == 0 || proposed[n] == 0) return 0;
    product *= matched[n] / proposed[n];
  }
  double bp = hyp_len >= ref_len ? 1.0 : std::exp(1.0 - ref_len / hyp_len);
  return 100.0 * bp * std::pow(product, 0.25);
}

std::size_t edit_distance(const std::string &a, const std::string &b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
    }
  }
  return d[a.size()][b.size()];
}

double pairwise_quadratic_kappa(const std::vector<int> &a,
                                const std::vector<int> &b) {
  double n = static_cast<double>(a.size());
  double observed = 0, chance = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    observed += static_cast<double>((a[i] - b[i]) * (a[i] - b[i]));
    for (std::size_t j = 0; j < b.size(); ++j) {
      chance += static_cast<double>((a[i] - b[j]) * (a[i] - b[j]));
    }
  }
  return 1.0 - observed / (chance / n);
}

}  // namespace semsplit::oracle

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

#ifndef SEMSPLIT_TESTS_ORACLES_H_
#define SEMSPLIT_TESTS_ORACLES_H_

// Deliberately naive reference implementations used only by tests. They
// share no code with the library: n-grams are token vectors compared by
// linear scan, reference counts are fractional, and edit distance is a
// full-matrix recurrence.

#include <cstddef>
#include <string>
#include <vector>

namespace semsplit::oracle {

using Words = std::vector<std::string>;

struct SariParts {
  double f_add = 0, f_keep = 0, p_del = 0, sari = 0;
};

SariParts sari(const Words &source, const Words &output,
               const std::vector<Words> &references);

double corpus_bleu(const std::vector<Words> &outputs,
                   const std::vector<std::vector<Words>> &references);

std::size_t edit_distance(const std::string &a, const std::string &b);

// 1 - sum_n (a_n - b_n)^2 / ((1/N) sum_n sum_m (a_n - b_m)^2), the
// pairwise form of quadratic-weighted kappa. No contingency tables.
double pairwise_quadratic_kappa(const std::vector<int> &a,
                                const std::vector<int> &b);

}  // namespace semsplit::oracle

#endif  // SEMSPLIT_TESTS_ORACLES_H_

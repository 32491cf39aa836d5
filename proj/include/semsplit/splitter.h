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

#ifndef SEMSPLIT_SPLITTER_H_
#define SEMSPLIT_SPLITTER_H_

#include <string>
#include <string_view>
#include <vector>

#include "semsplit/passage.h"

namespace semsplit {

struct Provenance {
  enum class Kind { kOriginal, kParallelScene, kElaboratorScene };

  Kind kind = Kind::kOriginal;
  // Extraction order within the kind; 0 for kOriginal.
  int index = 0;

  bool operator==(const Provenance &) const = default;
};

std::string provenance_label(const Provenance &provenance);

struct SplitSentence {
  TokenSpan tokens;
  Provenance provenance;
  // Unit the sentence was extracted from (the root for kOriginal).
  std::string source_unit;
};

struct SplitResult {
  std::vector<SplitSentence> sentences;
  std::vector<std::string> rendered;
  int n_parallel = 0;
  int n_elaborator = 0;
  bool was_split = false;

  // Rendered sentences joined by single spaces.
  std::string text() const;
};

struct SplitterOptions {
  // Compared against lowercased token forms.
  std::vector<std::string> relative_pronouns = {"who", "which", "that", "whom",
                                                "whose"};
};

// Rule #1: one sentence per Parallel Scene, each carrying shared arguments
// reached through remote edges. Material attached beside the Parallel
// Scenes (Linkers, Grounds, punctuation) is dropped. Without Parallel
// Scenes the whole passage comes back as a single kOriginal sentence.
std::vector<SplitSentence> apply_rule1(const Passage &passage);

// Rule #2 on one sentence: the residual S - U(Sc_i - C_i) first, then every
// outermost Elaborator Scene below sentence.source_unit in token order,
// with relative pronouns removed. Elaborator provenance indices start at
// first_elaborator_index. A sentence without Elaborator Scenes is returned
// unchanged.
std::vector<SplitSentence> apply_rule2(const Passage &passage,
                                       const SplitSentence &sentence,
                                       const SplitterOptions &options = {},
                                       int first_elaborator_index = 0);

// Outermost Elaborator Scenes under `unit` (primary edges only), ordered by
// first token. Search continues inside Participant Scenes.
std::vector<std::string> elaborator_scenes(const Passage &passage,
                                           std::string_view unit);

// Drops tokens whose lowercase form is a listed pronoun and which hang
// below `scene` through an R or F edge.
TokenSpan remove_relative_pronouns(const Passage &passage,
                                   const TokenSpan &span,
                                   std::string_view scene,
                                   const SplitterOptions &options = {});

// Both rules, then ordering: every residual Parallel Scene in order of
// appearance, followed by every Elaborator Scene in extraction order.
SplitResult split_passage(const Passage &passage,
                          const SplitterOptions &options = {});

// Surface form of a span: single spaces, punctuation glued to the previous
// token, punctuation stripped from the span edges (terminal . ! ? kept),
// first character uppercased, "." appended when no terminal punctuation.
// Throws EmptySpan when nothing but punctuation remains.
std::string render_sentence(const TokenSpan &span);

}  // namespace semsplit

#endif  // SEMSPLIT_SPLITTER_H_

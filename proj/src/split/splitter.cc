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

#include "semsplit/splitter.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "semsplit/error.h"

namespace semsplit {

std::string provenance_label(const Provenance &provenance) {
  switch (provenance.kind) {
    case Provenance::Kind::kOriginal:
      return "Original";
    case Provenance::Kind::kParallelScene:
      return "ParallelScene(" + std::to_string(provenance.index) + ")";
    case Provenance::Kind::kElaboratorScene:
      return "ElaboratorScene(" + std::to_string(provenance.index) + ")";
  }
  return "Original";
}

std::string SplitResult::text() const {
  std::string out;
  for (const std::string &sentence : rendered) {
    if (!out.empty()) out += ' ';
    out += sentence;
  }
  return out;
}

std::vector<SplitSentence> apply_rule1(const Passage &passage) {
  std::vector<std::string> scenes = top_parallel_scenes(passage);
  std::vector<SplitSentence> out;
  if (scenes.empty()) {
    out.push_back({unit_yield(passage, passage.root(), true),
                   {Provenance::Kind::kOriginal, 0},
                   passage.root()});
    return out;
  }
  for (std::size_t k = 0; k < scenes.size(); ++k) {
    out.push_back({unit_yield(passage, scenes[k], true),
                   {Provenance::Kind::kParallelScene, static_cast<int>(k)},
                   scenes[k]});
  }
  return out;
}

namespace {

bool is_elaborator_scene(const Passage &passage, const Edge &edge) {
  return !edge.remote && edge.category == category::kElaborator &&
         passage.find_unit(edge.child) != nullptr &&
         is_scene(passage, edge.child);
}

void find_elaborators(const Passage &passage, const Unit &unit,
                      std::vector<std::string> &out) {
  for (const Edge &edge : unit.edges) {
    if (edge.remote) continue;
    const Unit *child = passage.find_unit(edge.child);
    if (child == nullptr) continue;
    if (is_elaborator_scene(passage, edge)) {
      out.push_back(edge.child);
    } else {
      find_elaborators(passage, *child, out);
    }
  }
}

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

// True when the terminal hangs below `scene` and some primary edge on the
// way down is an R or F edge.
bool attached_as_relator(const Passage &passage, std::string_view scene,
                         int token) {
  std::string node = Passage::terminal_id(token);
  bool relator = false;
  while (node != scene) {
    const Edge *edge = passage.primary_parent_edge(node);
    if (edge == nullptr) return false;
    if (edge->category == category::kRelator ||
        edge->category == category::kFunction) {
      relator = true;
    }
    node = passage.primary_parent(node)->id;
  }
  return relator;
}

}  // namespace

std::vector<std::string> elaborator_scenes(const Passage &passage,
                                           std::string_view unit) {
  std::vector<std::string> found;
  const Unit *start = passage.find_unit(unit);
  if (start == nullptr) return found;
  find_elaborators(passage, *start, found);
  std::vector<std::pair<int, std::string>> keyed;
  for (auto &scene : found) {
    keyed.emplace_back(first_token_index(passage, scene), std::move(scene));
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto &a, const auto &b) { return a.first < b.first; });
  found.clear();
  for (auto &[first, scene] : keyed) found.push_back(std::move(scene));
  return found;
}

TokenSpan remove_relative_pronouns(const Passage &passage,
                                   const TokenSpan &span,
                                   std::string_view scene,
                                   const SplitterOptions &options) {
  const auto &pronouns = options.relative_pronouns;
  TokenSpan out;
  out.reserve(span.size());
  for (const TokenRef &token : span) {
    bool listed = std::find(pronouns.begin(), pronouns.end(),
                            lowercase(token.form)) != pronouns.end();
    if (listed && attached_as_relator(passage, scene, token.index)) continue;
    out.push_back(token);
  }
  return out;
}

std::vector<SplitSentence> apply_rule2(const Passage &passage,
                                       const SplitSentence &sentence,
                                       const SplitterOptions &options,
                                       int first_elaborator_index) {
  std::vector<std::string> scenes =
      elaborator_scenes(passage, sentence.source_unit);
  if (scenes.empty()) return {sentence};

  std::set<int> removed;
  for (const std::string &scene : scenes) {
    std::string center =
        minimal_center(passage, passage.primary_parent(scene)->id);
    int center_index = *Passage::terminal_index(center);
    for (const TokenRef &token : unit_yield(passage, scene, false)) {
      if (token.index != center_index) removed.insert(token.index);
    }
  }

  std::vector<SplitSentence> out;
  SplitSentence residual{{}, sentence.provenance, sentence.source_unit};
  for (const TokenRef &token : sentence.tokens) {
    if (!removed.count(token.index)) residual.tokens.push_back(token);
  }
  if (!residual.tokens.empty()) out.push_back(std::move(residual));

  int index = first_elaborator_index;
  for (const std::string &scene : scenes) {
    TokenSpan span = remove_relative_pronouns(
        passage, unit_yield(passage, scene, true), scene, options);
    out.push_back({std::move(span),
                   {Provenance::Kind::kElaboratorScene, index++},
                   scene});
  }
  return out;
}

SplitResult split_passage(const Passage &passage,
                          const SplitterOptions &options) {
  SplitResult result;
  result.n_parallel = static_cast<int>(top_parallel_scenes(passage).size());

  std::vector<SplitSentence> residuals;
  std::vector<SplitSentence> elaborators;
  for (const SplitSentence &sentence : apply_rule1(passage)) {
    int next = static_cast<int>(elaborators.size());
    for (SplitSentence &piece : apply_rule2(passage, sentence, options, next)) {
      if (piece.provenance.kind == Provenance::Kind::kElaboratorScene) {
        elaborators.push_back(std::move(piece));
      } else {
        residuals.push_back(std::move(piece));
      }
    }
  }
  result.n_elaborator = static_cast<int>(elaborators.size());

  for (auto *group : {&residuals, &elaborators}) {
    for (SplitSentence &sentence : *group) {
      if (sentence.tokens.empty()) continue;
      bool renderable = std::any_of(
          sentence.tokens.begin(), sentence.tokens.end(),
          [](const TokenRef &t) { return !is_punctuation(t.form); });
      if (!renderable) continue;
      result.rendered.push_back(render_sentence(sentence.tokens));
      result.sentences.push_back(std::move(sentence));
    }
  }
  result.was_split = result.sentences.size() > 1;
  return result;
}

std::string render_sentence(const TokenSpan &span) {
  auto is_terminal_mark = [](std::string_view form) {
    return is_punctuation(form) &&
           form.find_first_not_of(".!?") == std::string_view::npos;
  };
  auto begin = span.begin();
  auto end = span.end();
  while (begin != end && is_punctuation(begin->form)) ++begin;
  while (end != begin && is_punctuation((end - 1)->form) &&
         !is_terminal_mark((end - 1)->form)) {
    --end;
  }
  if (begin == end) {
    throw Error(ErrorCode::kEmptySpan, "nothing to render");
  }

  std::string out;
  for (auto it = begin; it != end; ++it) {
    if (it != begin && !is_punctuation(it->form)) out += ' ';
    out += it->form;
  }
  if (std::islower(static_cast<unsigned char>(out[0]))) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  }
  char last = out.back();
  if (last != '.' && last != '!' && last != '?') out += '.';
  return out;
}

}  // namespace semsplit

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

#include "semsplit/passage.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "json.hpp"
#include "semsplit/error.h"

namespace semsplit {

using nlohmann::json;

std::string_view scene_role_name(SceneRole role) {
  switch (role) {
    case SceneRole::kParallel: return "Parallel";
    case SceneRole::kElaborator: return "Elaborator";
    case SceneRole::kParticipant: return "Participant";
    case SceneRole::kOther: return "Other";
  }
  return "Other";
}

bool is_punctuation(std::string_view token) {
  if (token.empty()) return false;
  return std::all_of(token.begin(), token.end(), [](char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
  });
}

std::string Passage::terminal_id(int index) {
  return "t" + std::to_string(index);
}

std::optional<int> Passage::terminal_index(std::string_view node) {
  if (node.size() < 2 || node[0] != 't') return std::nullopt;
  std::string_view digits = node.substr(1);
  // Canonical form only, so ids round-trip: no sign, no leading zeros.
  if (digits.size() > 1 && digits[0] == '0') return std::nullopt;
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    return std::nullopt;
  }
  return value;
}

bool Passage::is_terminal(std::string_view node) const {
  auto index = terminal_index(node);
  return index && *index < static_cast<int>(tokens_.size());
}

bool Passage::contains(std::string_view node) const {
  return is_terminal(node) || unit_index_.count(std::string(node)) > 0;
}

const Unit *Passage::find_unit(std::string_view id) const {
  auto it = unit_index_.find(std::string(id));
  return it == unit_index_.end() ? nullptr : &units_[it->second];
}

void Passage::require(std::string_view node) const {
  if (!contains(node)) {
    throw Error(ErrorCode::kUnknownUnit,
                "passage '" + id_ + "' has no node '" + std::string(node) + "'");
  }
}

const Edge *Passage::primary_parent_edge(std::string_view node) const {
  require(node);
  auto it = primary_parent_.find(std::string(node));
  if (it == primary_parent_.end()) return nullptr;
  return &units_[it->second.unit].edges[it->second.edge];
}

const Unit *Passage::primary_parent(std::string_view node) const {
  require(node);
  auto it = primary_parent_.find(std::string(node));
  if (it == primary_parent_.end()) return nullptr;
  return &units_[it->second.unit];
}

Passage Passage::build(std::string id, std::vector<std::string> tokens,
                       std::string root, std::vector<Unit> units) {
  Passage passage;
  passage.id_ = std::move(id);
  passage.tokens_ = std::move(tokens);
  passage.root_ = std::move(root);
  passage.units_ = std::move(units);
  passage.index_and_validate();
  return passage;
}

void Passage::index_and_validate() {
  auto fail = [this](ErrorCode code, const std::string &what) {
    throw Error(code, "passage '" + id_ + "': " + what);
  };

  for (std::size_t i = 0; i < units_.size(); ++i) {
    const Unit &unit = units_[i];
    if (unit.id.empty()) fail(ErrorCode::kMalformedInput, "empty unit id");
    if (terminal_index(unit.id)) {
      fail(ErrorCode::kMalformedInput,
           "unit id '" + unit.id + "' collides with terminal naming");
    }
    if (!unit_index_.emplace(unit.id, i).second) {
      fail(ErrorCode::kMalformedInput, "duplicate unit id '" + unit.id + "'");
    }
  }
  if (!unit_index_.count(root_)) {
    fail(ErrorCode::kDanglingReference,
         "root '" + root_ + "' is not a listed unit");
  }

  for (std::size_t u = 0; u < units_.size(); ++u) {
    for (std::size_t e = 0; e < units_[u].edges.size(); ++e) {
      const Edge &edge = units_[u].edges[e];
      if (edge.category.empty()) {
        fail(ErrorCode::kMalformedInput,
             "edge from '" + units_[u].id + "' has an empty category");
      }
      if (!contains(edge.child)) {
        fail(ErrorCode::kDanglingReference,
             "edge " + units_[u].id + " -> '" + edge.child +
                 "' points to an undefined node");
      }
      if (edge.remote) continue;
      if (!primary_parent_.emplace(edge.child, ParentLink{u, e}).second) {
        fail(ErrorCode::kMultipleParents,
             "'" + edge.child + "' has more than one primary parent");
      }
    }
  }

  // Primary and remote edges together must stay acyclic.
  enum class Mark { kNew, kActive, kDone };
  std::vector<Mark> marks(units_.size(), Mark::kNew);
  for (std::size_t start = 0; start < units_.size(); ++start) {
    if (marks[start] != Mark::kNew) continue;
    // Iterative DFS: (unit, next edge position).
    std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
    marks[start] = Mark::kActive;
    while (!stack.empty()) {
      auto &[u, pos] = stack.back();
      if (pos == units_[u].edges.size()) {
        marks[u] = Mark::kDone;
        stack.pop_back();
        continue;
      }
      const Edge &edge = units_[u].edges[pos++];
      auto child = unit_index_.find(edge.child);
      if (child == unit_index_.end()) continue;
      if (marks[child->second] == Mark::kActive) {
        fail(ErrorCode::kCycleDetected,
             "cycle through edge " + units_[u].id + " -> " + edge.child);
      }
      if (marks[child->second] == Mark::kNew) {
        marks[child->second] = Mark::kActive;
        stack.emplace_back(child->second, 0);
      }
    }
  }

  if (primary_parent_.count(root_)) {
    fail(ErrorCode::kMalformedInput, "root '" + root_ + "' has a parent");
  }
  for (const Unit &unit : units_) {
    for (const Edge &edge : unit.edges) {
      if (edge.child == root_) {
        fail(ErrorCode::kMalformedInput,
             "root '" + root_ + "' has an incoming remote edge");
      }
    }
    if (unit.id != root_ && !primary_parent_.count(unit.id)) {
      fail(ErrorCode::kMalformedInput,
           "unit '" + unit.id + "' has no incoming primary edge");
    }
  }
  for (int i = 0; i < static_cast<int>(tokens_.size()); ++i) {
    if (!primary_parent_.count(terminal_id(i))) {
      fail(ErrorCode::kUnanchoredToken,
           "token " + std::to_string(i) + " '" + tokens_[i] +
               "' has no terminal edge");
    }
  }
}

namespace {

[[noreturn]] void malformed(const std::string &what) {
  throw Error(ErrorCode::kMalformedInput, what);
}

void reject_unknown_fields(const json &object,
                           std::initializer_list<std::string_view> allowed,
                           std::string_view where) {
  for (const auto &item : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) ==
        allowed.end()) {
      malformed("unknown field '" + item.key() + "' in " + std::string(where));
    }
  }
}

const json &field(const json &object, const char *name, std::string_view where) {
  auto it = object.find(name);
  if (it == object.end()) {
    malformed("missing field '" + std::string(name) + "' in " +
              std::string(where));
  }
  return *it;
}

std::string string_field(const json &object, const char *name,
                         std::string_view where) {
  const json &value = field(object, name, where);
  if (!value.is_string()) {
    malformed("field '" + std::string(name) + "' in " + std::string(where) +
              " must be a string");
  }
  return value.get<std::string>();
}

const json &array_field(const json &object, const char *name,
                        std::string_view where) {
  const json &value = field(object, name, where);
  if (!value.is_array()) {
    malformed("field '" + std::string(name) + "' in " + std::string(where) +
              " must be an array");
  }
  return value;
}

}  // namespace

Passage parse_passage(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) malformed("passage must be a JSON object");
  reject_unknown_fields(doc, {"id", "tokens", "root", "units"}, "passage");

  std::string id = string_field(doc, "id", "passage");
  std::vector<std::string> tokens;
  for (const json &token : array_field(doc, "tokens", "passage")) {
    if (!token.is_string()) malformed("tokens must be strings");
    tokens.push_back(token.get<std::string>());
  }
  std::string root = string_field(doc, "root", "passage");

  std::vector<Unit> units;
  for (const json &unit_json : array_field(doc, "units", "passage")) {
    if (!unit_json.is_object()) malformed("units must be objects");
    reject_unknown_fields(unit_json, {"id", "edges"}, "unit");
    Unit unit;
    unit.id = string_field(unit_json, "id", "unit");
    for (const json &edge_json : array_field(unit_json, "edges", "unit")) {
      if (!edge_json.is_object()) malformed("edges must be objects");
      reject_unknown_fields(edge_json, {"category", "child", "remote"}, "edge");
      Edge edge;
      edge.category = string_field(edge_json, "category", "edge");
      edge.child = string_field(edge_json, "child", "edge");
      if (auto it = edge_json.find("remote"); it != edge_json.end()) {
        if (!it->is_boolean()) malformed("edge 'remote' must be a boolean");
        edge.remote = it->get<bool>();
      }
      unit.edges.push_back(std::move(edge));
    }
    units.push_back(std::move(unit));
  }
  return Passage::build(std::move(id), std::move(tokens), std::move(root),
                        std::move(units));
}

std::string serialize_passage(const Passage &passage) {
  json units = json::array();
  for (const Unit &unit : passage.units()) {
    json edges = json::array();
    for (const Edge &edge : unit.edges) {
      json e = {{"category", edge.category}, {"child", edge.child}};
      if (edge.remote) e["remote"] = true;
      edges.push_back(std::move(e));
    }
    units.push_back({{"id", unit.id}, {"edges", std::move(edges)}});
  }
  json doc = {{"id", passage.id()},
              {"tokens", passage.tokens()},
              {"root", passage.root()},
              {"units", std::move(units)}};
  return doc.dump();
}

bool is_scene(const Passage &passage, std::string_view unit) {
  if (!passage.contains(unit)) {
    throw Error(ErrorCode::kUnknownUnit, "no node '" + std::string(unit) + "'");
  }
  const Unit *u = passage.find_unit(unit);
  if (u == nullptr) return false;
  return std::any_of(u->edges.begin(), u->edges.end(), [](const Edge &e) {
    return !e.remote && (e.category == category::kProcess ||
                         e.category == category::kState);
  });
}

SceneRole scene_role(const Passage &passage, std::string_view unit) {
  if (!is_scene(passage, unit)) {
    throw Error(ErrorCode::kNotAScene,
                "'" + std::string(unit) + "' is not a Scene");
  }
  const Edge *incoming = passage.primary_parent_edge(unit);
  if (incoming == nullptr) return SceneRole::kOther;
  if (incoming->category == category::kParallelScene) return SceneRole::kParallel;
  if (incoming->category == category::kElaborator) return SceneRole::kElaborator;
  if (incoming->category == category::kParticipant) return SceneRole::kParticipant;
  return SceneRole::kOther;
}

namespace {

void collect_primary(const Passage &passage, std::string_view node,
                     std::set<int> &indices,
                     std::vector<std::string_view> *remotes) {
  if (auto index = Passage::terminal_index(node);
      index && passage.is_terminal(node)) {
    indices.insert(*index);
    return;
  }
  const Unit *unit = passage.find_unit(node);
  if (unit == nullptr) return;
  for (const Edge &edge : unit->edges) {
    if (edge.remote) {
      if (remotes != nullptr) remotes->push_back(edge.child);
      continue;
    }
    collect_primary(passage, edge.child, indices, remotes);
  }
}

}  // namespace

TokenSpan unit_yield(const Passage &passage, std::string_view unit,
                     bool include_remotes) {
  if (!passage.contains(unit)) {
    throw Error(ErrorCode::kUnknownUnit, "no node '" + std::string(unit) + "'");
  }
  std::set<int> indices;
  std::vector<std::string_view> remotes;
  collect_primary(passage, unit, indices,
                  include_remotes ? &remotes : nullptr);
  for (std::string_view remote : remotes) {
    collect_primary(passage, remote, indices, nullptr);
  }
  TokenSpan span;
  span.reserve(indices.size());
  for (int index : indices) span.push_back({index, passage.tokens()[index]});
  return span;
}

int first_token_index(const Passage &passage, std::string_view node) {
  TokenSpan span = unit_yield(passage, node, false);
  // Every unit dominates at least one terminal in a valid passage, except
  // a root with no edges at all.
  return span.empty() ? static_cast<int>(passage.tokens().size())
                      : span.front().index;
}

std::string minimal_center(const Passage &passage, std::string_view unit,
                           Diagnostics *diagnostics) {
  if (!passage.contains(unit)) {
    throw Error(ErrorCode::kUnknownUnit, "no node '" + std::string(unit) + "'");
  }
  std::string current(unit);
  while (!passage.is_terminal(current)) {
    const Unit *u = passage.find_unit(current);
    const Edge *best = nullptr;
    int best_first = 0;
    for (const Edge &edge : u->edges) {
      if (edge.remote || edge.category != category::kCenter) continue;
      int first = first_token_index(passage, edge.child);
      if (best == nullptr || first < best_first) {
        best = &edge;
        best_first = first;
      }
    }
    if (best != nullptr) {
      current = best->child;
      continue;
    }
    TokenSpan span = unit_yield(passage, current, false);
    if (span.empty()) {
      throw Error(ErrorCode::kMalformedInput,
                  "unit '" + current + "' dominates no terminal");
    }
    auto content = std::find_if(span.begin(), span.end(), [](const TokenRef &t) {
      return !is_punctuation(t.form);
    });
    const TokenRef &chosen = content != span.end() ? *content : span.front();
    if (diagnostics != nullptr) {
      diagnostics->push_back("unit '" + current + "' in passage '" +
                             passage.id() +
                             "' has no Center; using leftmost terminal '" +
                             chosen.form + "'");
    }
    return Passage::terminal_id(chosen.index);
  }
  return current;
}

namespace {

bool has_parallel_children(const Unit &unit) {
  return std::any_of(unit.edges.begin(), unit.edges.end(), [](const Edge &e) {
    return !e.remote && e.category == category::kParallelScene;
  });
}

void flatten_parallel(const Passage &passage, const Unit &unit,
                      std::vector<std::string> &out) {
  for (const Edge &edge : unit.edges) {
    if (edge.remote || edge.category != category::kParallelScene) continue;
    const Unit *child = passage.find_unit(edge.child);
    if (child != nullptr && has_parallel_children(*child)) {
      flatten_parallel(passage, *child, out);
    } else {
      out.push_back(edge.child);
    }
  }
}

}  // namespace

std::vector<std::string> top_parallel_scenes(const Passage &passage) {
  std::vector<std::string> scenes;
  flatten_parallel(passage, *passage.find_unit(passage.root()), scenes);
  std::vector<std::pair<int, std::string>> keyed;
  keyed.reserve(scenes.size());
  for (auto &scene : scenes) {
    keyed.emplace_back(first_token_index(passage, scene), std::move(scene));
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto &a, const auto &b) { return a.first < b.first; });
  scenes.clear();
  for (auto &[first, scene] : keyed) scenes.push_back(std::move(scene));
  return scenes;
}

}  // namespace semsplit

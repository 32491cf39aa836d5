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

#ifndef SEMSPLIT_PASSAGE_H_
#define SEMSPLIT_PASSAGE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace semsplit {

// Known UCCA category labels. Any other non-empty label is carried through
// untouched.
namespace category {
inline constexpr std::string_view kParallelScene = "H";
inline constexpr std::string_view kLinker = "L";
inline constexpr std::string_view kParticipant = "A";
inline constexpr std::string_view kProcess = "P";
inline constexpr std::string_view kState = "S";
inline constexpr std::string_view kCenter = "C";
inline constexpr std::string_view kElaborator = "E";
inline constexpr std::string_view kRelator = "R";
inline constexpr std::string_view kFunction = "F";
inline constexpr std::string_view kGround = "G";
inline constexpr std::string_view kPunctuation = "U";
}  // namespace category

struct Edge {
  std::string category;
  std::string child;
  bool remote = false;

  bool operator==(const Edge &) const = default;
};

struct Unit {
  std::string id;
  std::vector<Edge> edges;

  bool operator==(const Unit &) const = default;
};

enum class SceneRole { kParallel, kElaborator, kParticipant, kOther };

std::string_view scene_role_name(SceneRole role);

struct TokenRef {
  int index = 0;
  std::string form;

  bool operator==(const TokenRef &) const = default;
};

// Tokens in strictly increasing index order; not necessarily contiguous.
using TokenSpan = std::vector<TokenRef>;

// Free-form notes emitted by queries that had to fall back to a heuristic.
using Diagnostics = std::vector<std::string>;

// An anchored semantic DAG over one sentence. Terminals are not stored as
// units; they are addressed as "t<i>" for token index i. A Passage is
// immutable once built and every instance satisfies the structural
// invariants checked in build().
class Passage {
 public:
  // Validates and assembles a passage. Throws semsplit::Error with one of
  // MalformedInput, DanglingReference, MultipleParents, CycleDetected or
  // UnanchoredToken.
  static Passage build(std::string id, std::vector<std::string> tokens,
                       std::string root, std::vector<Unit> units);

  const std::string &id() const { return id_; }
  const std::vector<std::string> &tokens() const { return tokens_; }
  const std::string &root() const { return root_; }
  const std::vector<Unit> &units() const { return units_; }

  // True for listed units and for in-range terminal ids.
  bool contains(std::string_view node) const;
  bool is_terminal(std::string_view node) const;

  // nullptr for terminals and unknown ids.
  const Unit *find_unit(std::string_view id) const;

  // The incoming primary edge of a node, or nullptr for the root.
  // Throws UnknownUnit for ids not in the passage.
  const Edge *primary_parent_edge(std::string_view node) const;
  const Unit *primary_parent(std::string_view node) const;

  static std::string terminal_id(int index);
  static std::optional<int> terminal_index(std::string_view node);

  bool operator==(const Passage &other) const {
    return id_ == other.id_ && tokens_ == other.tokens_ &&
           root_ == other.root_ && units_ == other.units_;
  }

 private:
  struct ParentLink {
    std::size_t unit;
    std::size_t edge;
  };

  Passage() = default;
  void index_and_validate();
  void require(std::string_view node) const;

  std::string id_;
  std::vector<std::string> tokens_;
  std::string root_;
  std::vector<Unit> units_;
  std::unordered_map<std::string, std::size_t> unit_index_;
  std::unordered_map<std::string, ParentLink> primary_parent_;
};

// Canonical JSON passage format:
//   {"id": str, "tokens": [str], "root": str,
//    "units": [{"id": str, "edges": [{"category", "child", "remote"?}]}]}
// Unknown fields are rejected.
Passage parse_passage(std::string_view text);

// Single-line JSON. "remote" is written only for remote edges.
std::string serialize_passage(const Passage &passage);

// A unit is a Scene iff it has an outgoing primary P or S edge.
bool is_scene(const Passage &passage, std::string_view unit);

SceneRole scene_role(const Passage &passage, std::string_view unit);

// Follows primary C edges down to a terminal. With several C children the
// one starting earliest in the sentence wins. A non-terminal without a C
// child falls back to its leftmost non-punctuation terminal and records a
// note in `diagnostics` when given.
std::string minimal_center(const Passage &passage, std::string_view unit,
                           Diagnostics *diagnostics = nullptr);

// Terminals under `unit` via primary edges, sorted by token index. With
// include_remotes, the primary yields of remote children met anywhere in
// that traversal are merged in.
TokenSpan unit_yield(const Passage &passage, std::string_view unit,
                     bool include_remotes);

// Smallest token index in the primary yield of a node.
int first_token_index(const Passage &passage, std::string_view node);

// H children of the root, with H units that themselves have H children
// replaced by those children, ordered by first token.
std::vector<std::string> top_parallel_scenes(const Passage &passage);

// True if every byte of a non-empty token is ASCII punctuation.
bool is_punctuation(std::string_view token);

}  // namespace semsplit

#endif  // SEMSPLIT_PASSAGE_H_

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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "semsplit/error.h"
#include "test_support.h"

namespace semsplit {
namespace {

using testing::fixture;
using testing::fixtures;

ErrorCode parse_error(std::string_view text) {
  try {
    parse_passage(text);
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error for " << text;
  return ErrorCode::kInvalidArgument;
}

std::vector<std::string> forms(const TokenSpan &span) {
  std::vector<std::string> out;
  for (const auto &t : span) out.push_back(t.form);
  return out;
}

TEST(ParsePassage, MinimalPassage) {
  Passage p = parse_passage(
      R"({"id":"hi","tokens":["Hi"],"root":"1",)"
      R"("units":[{"id":"1","edges":[{"category":"P","child":"t0"}]}]})");
  EXPECT_EQ(p.units().size(), 1u);
  EXPECT_EQ(p.tokens().size(), 1u);
  EXPECT_TRUE(p.is_terminal("t0"));
  EXPECT_FALSE(p.is_terminal("t1"));
}

TEST(ParsePassage, StructuralErrors) {
  EXPECT_EQ(parse_error("{not json"), ErrorCode::kMalformedInput);
  EXPECT_EQ(parse_error(R"({"id":"x","tokens":["a"],"root":"1","units":[],"extra":1})"),
            ErrorCode::kMalformedInput);
  EXPECT_EQ(parse_error(R"({"id":"x","tokens":["a"],"root":"1","units":[)"
                        R"({"id":"1","edges":[{"category":"A","child":"t0","weight":2}]}]})"),
            ErrorCode::kMalformedInput);
  EXPECT_EQ(parse_error(R"({"id":"x","tokens":["a"],"root":"1","units":[)"
                        R"({"id":"1","edges":[{"category":"A","child":"t0"},)"
                        R"({"category":"A","child":"n9"}]}]})"),
            ErrorCode::kDanglingReference);
  EXPECT_EQ(parse_error(R"({"id":"x","tokens":["a"],"root":"1","units":[)"
                        R"({"id":"1","edges":[{"category":"A","child":"t0"},)"
                        R"({"category":"A","child":"t3"}]}]})"),
            ErrorCode::kDanglingReference);
  EXPECT_EQ(parse_error(R"({"id":"x","tokens":["a"],"root":"1","units":[)"
                        R"({"id":"1","edges":[{"category":"A","child":"t0"},)"
                        R"({"category":"C","child":"t0"}]}]})"),
            ErrorCode::kMultipleParents);
  EXPECT_EQ(parse_error(R"({"id":"x","tokens":["a"],"root":"1","units":[)"
                        R"({"id":"1","edges":[{"category":"A","child":"2"}]},)"
                        R"({"id":"2","edges":[{"category":"C","child":"t0"},)"
                        R"({"category":"A","child":"3"}]},)"
                        R"({"id":"3","edges":[{"category":"A","child":"2","remote":true}]}]})"),
            ErrorCode::kCycleDetected);
  EXPECT_EQ(parse_error(R"({"id":"x","tokens":["a","b"],"root":"1","units":[)"
                        R"({"id":"1","edges":[{"category":"A","child":"t0"}]}]})"),
            ErrorCode::kUnanchoredToken);
  EXPECT_EQ(parse_error(R"({"id":"x","tokens":["a"],"root":"1","units":[)"
                        R"({"id":"1","edges":[{"category":"A","child":"t0"}]},)"
                        R"({"id":"1","edges":[]}]})"),
            ErrorCode::kMalformedInput);
}

TEST(ParsePassage, UnknownCategoriesArePreserved) {
  Passage p = parse_passage(
      R"({"id":"x","tokens":["a"],"root":"1","units":[)"
      R"({"id":"1","edges":[{"category":"Zq","child":"t0"}]}]})");
  EXPECT_EQ(p.units()[0].edges[0].category, "Zq");
}

TEST(ParsePassage, RuleOneGraphHasTwoParallelScenes) {
  const Passage &p = fixture("rule1");
  ASSERT_EQ(p.tokens().size(), 8u);
  std::vector<std::string> scenes = top_parallel_scenes(p);
  ASSERT_EQ(scenes.size(), 2u);
  for (const auto &s : scenes) {
    EXPECT_EQ(scene_role(p, s), SceneRole::kParallel);
  }
  EXPECT_EQ(serialize_passage(parse_passage(serialize_passage(p))),
            serialize_passage(p));
}

TEST(Passage, RoundTripIsIdentityOnFixtures) {
  for (const Passage &p : fixtures()) {
    Passage again = parse_passage(serialize_passage(p));
    EXPECT_EQ(again, p) << p.id();
  }
}

TEST(IsScene, ProcessOrStateMakesAScene) {
  Passage p = parse_passage(
      R"({"id":"x","tokens":["He","went","to","school","big","dogs"],"root":"1","units":[)"
      R"({"id":"1","edges":[{"category":"H","child":"s"},{"category":"H","child":"n"}]},)"
      R"({"id":"s","edges":[{"category":"A","child":"t0"},{"category":"P","child":"t1"},)"
      R"({"category":"A","child":"u"}]},)"
      R"({"id":"u","edges":[{"category":"R","child":"t2"},{"category":"C","child":"t3"}]},)"
      R"({"id":"n","edges":[{"category":"E","child":"t4"},{"category":"C","child":"t5"}]}]})");
  EXPECT_TRUE(is_scene(p, "s"));
  EXPECT_FALSE(is_scene(p, "n"));
  EXPECT_FALSE(is_scene(p, "t1"));
  EXPECT_THROW(is_scene(p, "zz"), Error);
  EXPECT_THROW(scene_role(p, "n"), Error);
}

TEST(IsScene, OnlyLabelSetsWithProcessOrStateQualify) {
  const std::vector<std::string> labels = {"A", "C", "E", "D", "R", "F", "P", "S"};
  // Every subset of the label pool, one edge per label.
  for (unsigned mask = 1; mask < (1u << labels.size()); ++mask) {
    std::vector<Unit> units{{"1", {{"H", "u"}}}, {"u", {}}};
    std::vector<std::string> tokens;
    bool expect = false;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!(mask & (1u << i))) continue;
      units[1].edges.push_back(
          {labels[i], Passage::terminal_id(static_cast<int>(tokens.size()))});
      tokens.push_back("w");
      expect = expect || labels[i] == "P" || labels[i] == "S";
    }
    Passage p = Passage::build("m", tokens, "1", units);
    EXPECT_EQ(is_scene(p, "u"), expect) << mask;
  }
}

TEST(SceneRole, FollowsIncomingCategory) {
  const Passage &rule2 = fixture("rule2");
  EXPECT_EQ(scene_role(rule2, "e1"), SceneRole::kElaborator);
  EXPECT_EQ(scene_role(rule2, "1"), SceneRole::kOther);
  const Passage &participant = fixture("participant");
  EXPECT_EQ(scene_role(participant, "p1"), SceneRole::kParticipant);
  const Passage &rule1 = fixture("rule1");
  EXPECT_EQ(scene_role(rule1, "s2"), SceneRole::kParallel);
}

TEST(MinimalCenter, FollowsCenterChain) {
  Passage p = parse_passage(
      R"({"id":"x","tokens":["big","brown","dogs","the","small","planet"],"root":"1","units":[)"
      R"({"id":"1","edges":[{"category":"A","child":"d"},{"category":"A","child":"o"}]},)"
      R"({"id":"d","edges":[{"category":"E","child":"t0"},{"category":"E","child":"t1"},)"
      R"({"category":"C","child":"t2"}]},)"
      R"({"id":"o","edges":[{"category":"E","child":"t3"},{"category":"C","child":"i"}]},)"
      R"({"id":"i","edges":[{"category":"E","child":"t4"},{"category":"C","child":"t5"}]}]})");
  EXPECT_EQ(minimal_center(p, "d"), "t2");
  EXPECT_EQ(minimal_center(p, "o"), "t5");
  EXPECT_EQ(minimal_center(p, "t4"), "t4");
}

TEST(MinimalCenter, MultipleCentersPickEarliest) {
  // "cats and dogs": both conjuncts are Centers, listed out of order.
  Passage p = parse_passage(
      R"({"id":"x","tokens":["cats","and","dogs"],"root":"1","units":[)"
      R"({"id":"1","edges":[{"category":"C","child":"t2"},{"category":"N","child":"t1"},)"
      R"({"category":"C","child":"t0"}]}]})");
  EXPECT_EQ(minimal_center(p, "1"), "t0");
}

TEST(MinimalCenter, FallbackWithoutCenterSkipsPunctuation) {
  Passage p = parse_passage(
      R"({"id":"x","tokens":["\"","odd","unit"],"root":"1","units":[)"
      R"({"id":"1","edges":[{"category":"U","child":"t0"},{"category":"E","child":"t1"},)"
      R"({"category":"E","child":"t2"}]}]})");
  Diagnostics notes;
  EXPECT_EQ(minimal_center(p, "1", &notes), "t1");
  ASSERT_EQ(notes.size(), 1u);
  EXPECT_NE(notes[0].find("no Center"), std::string::npos);
}

TEST(UnitYield, RemotesAreMergedByIndex) {
  const Passage &p = fixture("rule1");
  EXPECT_EQ(forms(unit_yield(p, "s2", true)),
            (std::vector<std::string>{"He", "played", "piano"}));
  EXPECT_EQ(forms(unit_yield(p, "s2", false)),
            (std::vector<std::string>{"played", "piano"}));

  const Passage &q = fixture("rule2");
  EXPECT_EQ(forms(unit_yield(q, "e1", true)),
            (std::vector<std::string>{"planet", "which", "has", "14", "known",
                                      "satellites"}));
  EXPECT_THROW(unit_yield(q, "nope", true), Error);
}

TEST(TopParallelScenes, EmptyWithoutParallelScenes) {
  EXPECT_TRUE(top_parallel_scenes(fixture("single-scene")).empty());
  EXPECT_TRUE(top_parallel_scenes(fixture("participant")).empty());
}

TEST(TopParallelScenes, NestedParallelScenesAreFlattened) {
  EXPECT_EQ(top_parallel_scenes(fixture("nested-parallel")),
            (std::vector<std::string>{"s1", "s2", "s3"}));
}

TEST(TopParallelScenes, OrderedByFirstToken) {
  // Edges listed in reverse token order.
  Passage p = parse_passage(
      R"({"id":"x","tokens":["a","b","c"],"root":"1","units":[)"
      R"({"id":"1","edges":[{"category":"H","child":"z"},{"category":"H","child":"y"},)"
      R"({"category":"H","child":"x"}]},)"
      R"({"id":"x","edges":[{"category":"P","child":"t0"}]},)"
      R"({"id":"y","edges":[{"category":"P","child":"t1"}]},)"
      R"({"id":"z","edges":[{"category":"P","child":"t2"}]}]})");
  EXPECT_EQ(top_parallel_scenes(p), (std::vector<std::string>{"x", "y", "z"}));
}

// Properties over every fixture and every node.
TEST(PassageProperties, YieldsAndCenters) {
  for (const Passage &p : fixtures()) {
    std::vector<std::string> nodes;
    for (const Unit &u : p.units()) nodes.push_back(u.id);
    for (int i = 0; i < static_cast<int>(p.tokens().size()); ++i) {
      nodes.push_back(Passage::terminal_id(i));
    }
    for (const std::string &node : nodes) {
      std::set<int> primary, all;
      for (const auto &t : unit_yield(p, node, false)) primary.insert(t.index);
      for (const auto &t : unit_yield(p, node, true)) all.insert(t.index);
      EXPECT_TRUE(std::includes(all.begin(), all.end(), primary.begin(),
                                primary.end()))
          << p.id() << " " << node;

      std::string center = minimal_center(p, node);
      EXPECT_TRUE(p.is_terminal(center));
      EXPECT_TRUE(primary.count(*Passage::terminal_index(center)))
          << p.id() << " " << node;

      if (is_scene(p, node)) {
        SceneRole role = scene_role(p, node);
        const Edge *in = p.primary_parent_edge(node);
        if (in == nullptr) {
          EXPECT_EQ(role, SceneRole::kOther);
        }
      }
    }

    std::vector<std::string> scenes = top_parallel_scenes(p);
    std::set<int> seen;
    for (const std::string &scene : scenes) {
      for (const auto &t : unit_yield(p, scene, false)) {
        EXPECT_TRUE(seen.insert(t.index).second)
            << p.id() << ": primary yields of Parallel Scenes overlap";
      }
    }
  }
}

// Random well-formed trees survive serialization unchanged.
TEST(PassageProperties, RandomTreesRoundTrip) {
  std::mt19937 rng(7);
  const std::vector<std::string> labels = {"A", "P", "S", "C", "E", "H", "L",
                                           "R", "D", "U", "Q"};
  for (int trial = 0; trial < 200; ++trial) {
    int n_units = 1 + static_cast<int>(rng() % 6);
    int n_tokens = n_units + static_cast<int>(rng() % 6);
    std::vector<Unit> units;
    for (int u = 0; u < n_units; ++u) units.push_back({"u" + std::to_string(u), {}});
    for (int u = 1; u < n_units; ++u) {
      int parent = static_cast<int>(rng() % u);
      units[parent].edges.push_back({labels[rng() % labels.size()], units[u].id});
    }
    std::vector<std::string> tokens;
    for (int t = 0; t < n_tokens; ++t) {
      // First tokens go one per unit so no unit is empty.
      int owner = t < n_units ? t : static_cast<int>(rng() % n_units);
      units[owner].edges.push_back(
          {labels[rng() % labels.size()], Passage::terminal_id(t)});
      tokens.push_back("w" + std::to_string(t));
    }
    for (int u = 1; u < n_units; ++u) {
      if (rng() % 3 == 0) {
        int target = static_cast<int>(rng() % n_tokens);
        units[u].edges.push_back({"A", Passage::terminal_id(target), true});
      }
    }
    Passage p = Passage::build("r" + std::to_string(trial), tokens, "u0", units);
    EXPECT_EQ(parse_passage(serialize_passage(p)), p);
  }
}

}  // namespace
}  // namespace semsplit

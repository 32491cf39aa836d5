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

#ifndef SEMSPLIT_TESTS_TEST_SUPPORT_H_
#define SEMSPLIT_TESTS_TEST_SUPPORT_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "semsplit/passage.h"
#include "semsplit/splitter.h"

namespace semsplit::testing {

// Directory holding fixtures.jsonl and friends.
std::string data_dir();

std::string read_file(const std::string &path);

// Every hand-built passage from fixtures.jsonl, in file order.
const std::vector<Passage> &fixtures();
const Passage &fixture(std::string_view id);

// Token index multiset predicted for split_passage from the graph alone:
// every token once, minus material beside the Parallel Scenes, plus
// tokens that scenes reach only through remote edges, minus relative
// pronouns attached by R/F inside Elaborator Scenes.
std::map<int, int> expected_token_multiset(const Passage &passage,
                                           const SplitterOptions &options = {});

std::map<int, int> actual_token_multiset(const SplitResult &result);

}  // namespace semsplit::testing

#endif  // SEMSPLIT_TESTS_TEST_SUPPORT_H_

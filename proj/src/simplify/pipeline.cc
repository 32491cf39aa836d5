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

#include <algorithm>
#include <atomic>
#include <thread>

#include "semsplit/error.h"
#include "semsplit/simplifier.h"

namespace semsplit {

std::string_view pipeline_mode_name(PipelineMode mode) {
  switch (mode) {
    case PipelineMode::kDss: return "dss";
    case PipelineMode::kBackendOnly: return "backend";
    case PipelineMode::kSents: return "sents";
  }
  return "dss";
}

PipelineMode parse_pipeline_mode(std::string_view name) {
  if (name == "dss") return PipelineMode::kDss;
  if (name == "backend") return PipelineMode::kBackendOnly;
  if (name == "sents") return PipelineMode::kSents;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown mode '" + std::string(name) +
                  "' (expected dss, backend or sents)");
}

std::vector<std::string> simplify_sentences(Backend &backend,
                                            HypothesisCache *cache,
                                            std::span<const std::string> sentences,
                                            int n_hypotheses, int select,
                                            const RetryPolicy &retry) {
  std::vector<std::string> out(sentences.size());
  SimplifyRequest request;
  request.n_hypotheses = n_hypotheses;
  request.select = select;
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (cache != nullptr) {
      if (auto hit = cache->lookup(
              make_cache_key(backend.id(), sentences[i], select))) {
        out[i] = std::move(*hit);
        continue;
      }
    }
    pending.push_back(i);
    request.sentences.push_back(sentences[i]);
  }
  if (pending.empty()) return out;

  SimplifyResponse response = simplify_batch(backend, request, retry);
  for (std::size_t k = 0; k < pending.size(); ++k) {
    std::string &chosen = out[pending[k]];
    chosen = response.hypotheses[k][select];
    if (cache != nullptr) {
      cache->store(make_cache_key(backend.id(), sentences[pending[k]], select),
                   chosen);
    }
  }
  return out;
}

namespace {

std::string source_text(const PipelineInput &input) {
  if (!input.text.empty() || !input.passage) return input.text;
  std::string text;
  for (const std::string &token : input.passage->tokens()) {
    if (!text.empty()) text += ' ';
    text += token;
  }
  return text;
}

const Passage &require_passage(const PipelineInput &input) {
  if (!input.passage) {
    throw Error(ErrorCode::kInvalidArgument,
                "record '" + input.id + "' has no passage");
  }
  return *input.passage;
}

std::string run_one(const PipelineConfig &config, const PipelineInput &input,
                    Backend *backend, HypothesisCache *cache) {
  switch (config.mode) {
    case PipelineMode::kDss:
      return split_passage(require_passage(input), config.splitter).text();
    case PipelineMode::kBackendOnly: {
      std::string sentence = source_text(input);
      return simplify_sentences(*backend, cache, {&sentence, 1},
                                config.n_hypotheses, config.select,
                                config.retry)
          .front();
    }
    case PipelineMode::kSents: {
      SplitResult split = split_passage(require_passage(input), config.splitter);
      std::string joined;
      for (const std::string &sentence : split.rendered) {
        std::string simplified =
            simplify_sentences(*backend, cache, {&sentence, 1},
                               config.n_hypotheses, config.select, config.retry)
                .front();
        if (!joined.empty()) joined += ' ';
        joined += simplified;
      }
      return joined;
    }
  }
  return {};
}

}  // namespace

std::vector<PipelineOutput> run_pipeline(const PipelineConfig &config,
                                         std::span<const PipelineInput> inputs,
                                         Backend *backend,
                                         HypothesisCache *cache) {
  if (config.mode != PipelineMode::kDss && backend == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("mode '") +
                    std::string(pipeline_mode_name(config.mode)) +
                    "' needs a backend");
  }
  SimplifyRequest probe{{}, config.n_hypotheses, config.select};
  validate_request(probe);

  std::vector<PipelineOutput> outputs(inputs.size());
  auto process = [&](std::size_t i) {
    const PipelineInput &input = inputs[i];
    PipelineOutput &out = outputs[i];
    out.id = input.id;
    try {
      out.output = run_one(config, input, backend, cache);
    } catch (const std::exception &e) {
      out.output = source_text(input);
      out.failed = true;
      out.error = e.what();
    }
  };

  std::size_t workers = std::min<std::size_t>(
      std::max(1, config.parallelism), std::max<std::size_t>(1, inputs.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < inputs.size(); ++i) process(i);
    return outputs;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < inputs.size(); i = next++) process(i);
    });
  }
  pool.clear();
  return outputs;
}

}  // namespace semsplit

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

#ifndef SEMSPLIT_SIMPLIFIER_H_
#define SEMSPLIT_SIMPLIFIER_H_

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semsplit/passage.h"
#include "semsplit/splitter.h"

namespace semsplit {

struct SimplifyRequest {
  std::vector<std::string> sentences;
  int n_hypotheses = 5;
  // 0-based beam position to keep: h1 is 0, h4 is 3.
  int select = 0;
};

// Throws InvalidArgument unless 1 <= n_hypotheses and 0 <= select < n.
void validate_request(const SimplifyRequest &request);

struct SimplifyResponse {
  // One list per input sentence, best-scoring hypothesis first.
  std::vector<std::vector<std::string>> hypotheses;
};

// Wire bodies. Request: {"sentences": [...], "n_hypotheses": k}.
// Response: {"hypotheses": [[...], ...]}. Decoders throw MalformedInput.
std::string encode_request(const SimplifyRequest &request);
SimplifyRequest decode_request(std::string_view body);
std::string encode_response(const SimplifyResponse &response);
SimplifyResponse decode_response(std::string_view body);

// A downstream simplifier. Implementations must tolerate concurrent calls.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual std::string id() const = 0;

  // One round trip. May throw BackendUnavailable or Timeout.
  virtual SimplifyResponse simplify(const SimplifyRequest &request) = 0;
};

// Every hypothesis is the input sentence itself.
class IdentityBackend : public Backend {
 public:
  std::string id() const override { return "identity"; }
  SimplifyResponse simplify(const SimplifyRequest &request) override;
};

// Word-for-word substitution. Hypothesis k replaces a word with its k-th
// alternative (the last one when the list is shorter), so different beam
// positions can disagree. Matching is on whitespace-delimited words with
// trailing punctuation ignored.
class LexicalStubBackend : public Backend {
 public:
  explicit LexicalStubBackend(
      std::map<std::string, std::vector<std::string>> substitutions,
      std::string id = "lexical-stub");

  std::string id() const override { return id_; }
  SimplifyResponse simplify(const SimplifyRequest &request) override;

 private:
  std::map<std::string, std::vector<std::string>> substitutions_;
  std::string id_;
};

// POSTs the wire request to an HTTP endpoint such as
// "http://localhost:8080/simplify".
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(std::string url,
                       std::chrono::milliseconds timeout = std::chrono::seconds(60));

  // Reads the endpoint from SEMSPLIT_BACKEND_URL; nullptr when unset.
  static std::unique_ptr<HttpBackend> from_environment();

  std::string id() const override { return url_; }
  SimplifyResponse simplify(const SimplifyRequest &request) override;

 private:
  std::string url_;
  std::string origin_;
  std::string path_;
  std::chrono::milliseconds timeout_;
};

inline constexpr const char *kBackendUrlVariable = "SEMSPLIT_BACKEND_URL";

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  // Replaceable so tests do not sleep.
  std::function<void(std::chrono::milliseconds)> sleep;
};

// Validates the request, calls the backend with exponential backoff on
// BackendUnavailable and Timeout, and checks the response shape. Throws
// the last transport error after the final attempt, MalformedInput on a
// response of the wrong length and InsufficientHypotheses when a sentence
// has fewer than select + 1 hypotheses.
SimplifyResponse simplify_batch(Backend &backend, const SimplifyRequest &request,
                                const RetryPolicy &retry = {});

struct CacheKey {
  std::string backend;
  std::string input_hash;
  int hypothesis = 0;

  bool operator<(const CacheKey &other) const;
  bool operator==(const CacheKey &) const = default;
};

// FNV-1a 64 of the input text, as 16 hex digits.
std::string input_hash(std::string_view text);

CacheKey make_cache_key(std::string_view backend, std::string_view input,
                        int hypothesis);

// Append-only keyed store. Each line is "<crc32 hex> <json entry>"; lines
// whose checksum does not match are skipped with a warning and count as
// misses. Later entries for a key shadow earlier ones. Reads may run
// concurrently; writes are serialized. An empty path keeps the cache in
// memory only.
class HypothesisCache {
 public:
  explicit HypothesisCache(std::filesystem::path path = {});

  HypothesisCache(const HypothesisCache &) = delete;
  HypothesisCache &operator=(const HypothesisCache &) = delete;

  std::optional<std::string> lookup(const CacheKey &key) const;
  void store(const CacheKey &key, const std::string &value);

  std::size_t size() const;
  std::size_t corrupt_entries() const { return corrupt_entries_; }
  const std::vector<std::string> &warnings() const { return warnings_; }

 private:
  std::filesystem::path path_;
  mutable std::shared_mutex mutex_;
  std::map<CacheKey, std::string> entries_;
  std::ofstream out_;
  std::size_t corrupt_entries_ = 0;
  std::vector<std::string> warnings_;
};

// Simplifies sentences one by one (misses are sent together in a single
// request) and returns hypothesis `select` for each, consulting and
// filling the cache when one is given.
std::vector<std::string> simplify_sentences(Backend &backend,
                                            HypothesisCache *cache,
                                            std::span<const std::string> sentences,
                                            int n_hypotheses, int select,
                                            const RetryPolicy &retry = {});

enum class PipelineMode { kDss, kBackendOnly, kSents };

std::string_view pipeline_mode_name(PipelineMode mode);
// Accepts "dss", "backend", "sents". Throws InvalidArgument.
PipelineMode parse_pipeline_mode(std::string_view name);

struct PipelineConfig {
  PipelineMode mode = PipelineMode::kDss;
  int n_hypotheses = 5;
  int select = 0;
  int parallelism = 1;
  SplitterOptions splitter;
  RetryPolicy retry;
};

struct PipelineInput {
  std::string id;
  // Required by kDss and kSents.
  std::optional<Passage> passage;
  // Raw sentence for kBackendOnly; also the fallback output on failure.
  std::string text;
};

struct PipelineOutput {
  std::string id;
  std::string output;
  bool failed = false;
  std::string error;
};

// DSS: split and render. Backend-only: simplify the raw sentence. SENTS:
// split, simplify every rendered sentence on its own, rejoin with single
// spaces. A record that fails keeps its input text as output and is
// flagged; other records are unaffected. Output order follows input order.
// Throws InvalidArgument when a backend mode has no backend.
std::vector<PipelineOutput> run_pipeline(const PipelineConfig &config,
                                         std::span<const PipelineInput> inputs,
                                         Backend *backend = nullptr,
                                         HypothesisCache *cache = nullptr);

}  // namespace semsplit

#endif  // SEMSPLIT_SIMPLIFIER_H_

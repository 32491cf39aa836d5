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

#include <cstdlib>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "semsplit/error.h"
#include "semsplit/simplifier.h"

namespace semsplit {

using nlohmann::json;

void validate_request(const SimplifyRequest &request) {
  if (request.n_hypotheses < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_hypotheses must be >= 1");
  }
  if (request.select < 0 || request.select >= request.n_hypotheses) {
    throw Error(ErrorCode::kInvalidArgument,
                "select " + std::to_string(request.select) +
                    " outside [0, " + std::to_string(request.n_hypotheses) +
                    ")");
  }
}

std::string encode_request(const SimplifyRequest &request) {
  json body = {{"sentences", request.sentences},
               {"n_hypotheses", request.n_hypotheses}};
  return body.dump();
}

SimplifyRequest decode_request(std::string_view body) {
  try {
    json doc = json::parse(body.begin(), body.end());
    SimplifyRequest request;
    request.sentences = doc.at("sentences").get<std::vector<std::string>>();
    request.n_hypotheses = doc.at("n_hypotheses").get<int>();
    return request;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("bad simplify request: ") + e.what());
  }
}

std::string encode_response(const SimplifyResponse &response) {
  return json{{"hypotheses", response.hypotheses}}.dump();
}

SimplifyResponse decode_response(std::string_view body) {
  try {
    json doc = json::parse(body.begin(), body.end());
    SimplifyResponse response;
    response.hypotheses =
        doc.at("hypotheses").get<std::vector<std::vector<std::string>>>();
    return response;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("bad simplify response: ") + e.what());
  }
}

SimplifyResponse IdentityBackend::simplify(const SimplifyRequest &request) {
  SimplifyResponse response;
  for (const std::string &sentence : request.sentences) {
    response.hypotheses.emplace_back(request.n_hypotheses, sentence);
  }
  return response;
}

LexicalStubBackend::LexicalStubBackend(
    std::map<std::string, std::vector<std::string>> substitutions,
    std::string id)
    : substitutions_(std::move(substitutions)), id_(std::move(id)) {}

SimplifyResponse LexicalStubBackend::simplify(const SimplifyRequest &request) {
  SimplifyResponse response;
  for (const std::string &sentence : request.sentences) {
    std::vector<std::string> hypotheses;
    for (int k = 0; k < request.n_hypotheses; ++k) {
      std::string out;
      std::size_t i = 0;
      while (i < sentence.size()) {
        std::size_t end = sentence.find(' ', i);
        if (end == std::string::npos) end = sentence.size();
        std::string word = sentence.substr(i, end - i);
        std::size_t core = word.size();
        while (core > 0 && std::ispunct(static_cast<unsigned char>(word[core - 1]))) {
          --core;
        }
        auto it = substitutions_.find(word.substr(0, core));
        if (it != substitutions_.end() && !it->second.empty()) {
          const auto &options = it->second;
          std::size_t pick = std::min<std::size_t>(k, options.size() - 1);
          word = options[pick] + word.substr(core);
        }
        out += word;
        if (end < sentence.size()) out += ' ';
        i = end + 1;
      }
      hypotheses.push_back(std::move(out));
    }
    response.hypotheses.push_back(std::move(hypotheses));
  }
  return response;
}

HttpBackend::HttpBackend(std::string url, std::chrono::milliseconds timeout)
    : url_(std::move(url)), timeout_(timeout) {
  constexpr std::string_view kScheme = "http://";
  if (url_.rfind(kScheme, 0) != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "backend URL must start with http://: '" + url_ + "'");
  }
  std::size_t slash = url_.find('/', kScheme.size());
  origin_ = url_.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : url_.substr(slash);
}

std::unique_ptr<HttpBackend> HttpBackend::from_environment() {
  const char *url = std::getenv(kBackendUrlVariable);
  if (url == nullptr || *url == '\0') return nullptr;
  return std::make_unique<HttpBackend>(url);
}

SimplifyResponse HttpBackend::simplify(const SimplifyRequest &request) {
  httplib::Client client(origin_);
  auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
      timeout_ - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  auto result = client.Post(path_, encode_request(request), "application/json");
  if (!result) {
    httplib::Error error = result.error();
    if (error == httplib::Error::ConnectionTimeout ||
        error == httplib::Error::Read) {
      throw Error(ErrorCode::kTimeout,
                  url_ + ": " + httplib::to_string(error));
    }
    throw Error(ErrorCode::kBackendUnavailable,
                url_ + ": " + httplib::to_string(error));
  }
  if (result->status != 200) {
    throw Error(ErrorCode::kBackendUnavailable,
                url_ + " answered HTTP " + std::to_string(result->status));
  }
  return decode_response(result->body);
}

SimplifyResponse simplify_batch(Backend &backend, const SimplifyRequest &request,
                                const RetryPolicy &retry) {
  validate_request(request);
  auto sleep = retry.sleep ? retry.sleep : [](std::chrono::milliseconds d) {
    std::this_thread::sleep_for(d);
  };
  int attempts = std::max(1, retry.attempts);
  std::chrono::milliseconds backoff = retry.initial_backoff;

  SimplifyResponse response;
  for (int attempt = 1;; ++attempt) {
    try {
      response = backend.simplify(request);
      break;
    } catch (const Error &e) {
      bool transient = e.code() == ErrorCode::kBackendUnavailable ||
                       e.code() == ErrorCode::kTimeout;
      if (!transient || attempt == attempts) throw;
      sleep(backoff);
      backoff *= 2;
    }
  }

  if (response.hypotheses.size() != request.sentences.size()) {
    throw Error(ErrorCode::kMalformedInput,
                backend.id() + " returned " +
                    std::to_string(response.hypotheses.size()) +
                    " hypothesis lists for " +
                    std::to_string(request.sentences.size()) + " sentences");
  }
  for (std::size_t i = 0; i < response.hypotheses.size(); ++i) {
    if (static_cast<int>(response.hypotheses[i].size()) <= request.select) {
      throw Error(ErrorCode::kInsufficientHypotheses,
                  backend.id() + " returned " +
                      std::to_string(response.hypotheses[i].size()) +
                      " hypotheses for sentence " + std::to_string(i) +
                      ", need " + std::to_string(request.select + 1));
    }
  }
  return response;
}

}  // namespace semsplit

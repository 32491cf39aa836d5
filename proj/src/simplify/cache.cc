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

#include <zlib.h>

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <mutex>

#include "json.hpp"
#include "semsplit/error.h"
#include "semsplit/simplifier.h"

namespace semsplit {

using nlohmann::json;

namespace {

std::string crc_hex(std::string_view text) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef *>(text.data()),
              static_cast<uInt>(text.size()));
  char buffer[9];
  std::snprintf(buffer, sizeof(buffer), "%08lx", static_cast<unsigned long>(crc));
  return buffer;
}

}  // namespace

bool CacheKey::operator<(const CacheKey &other) const {
  return std::tie(backend, input_hash, hypothesis) <
         std::tie(other.backend, other.input_hash, other.hypothesis);
}

std::string input_hash(std::string_view text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016" PRIx64, hash);
  return buffer;
}

CacheKey make_cache_key(std::string_view backend, std::string_view input,
                        int hypothesis) {
  return {std::string(backend), input_hash(input), hypothesis};
}

HypothesisCache::HypothesisCache(std::filesystem::path path)
    : path_(std::move(path)) {
  if (path_.empty()) return;
  if (std::ifstream in(path_); in) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (line.empty()) continue;
      bool ok = line.size() > 9 && line[8] == ' ';
      std::string_view payload;
      if (ok) {
        payload = std::string_view(line).substr(9);
        ok = crc_hex(payload) == line.substr(0, 8);
      }
      json entry;
      if (ok) {
        try {
          entry = json::parse(payload);
          entries_[{entry.at("backend").get<std::string>(),
                    entry.at("hash").get<std::string>(),
                    entry.at("hypothesis").get<int>()}] =
              entry.at("value").get<std::string>();
        } catch (const json::exception &) {
          ok = false;
        }
      }
      if (!ok) {
        ++corrupt_entries_;
        std::string warning = Error(ErrorCode::kCacheCorrupt,
                                    path_.string() + " line " +
                                        std::to_string(number) +
                                        " failed its checksum; ignored")
                                  .what();
        std::cerr << "warning: " << warning << "\n";
        warnings_.push_back(std::move(warning));
      }
    }
  }
  if (path_.has_parent_path()) {
    std::filesystem::create_directories(path_.parent_path());
  }
  out_.open(path_, std::ios::app);
  if (!out_) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot open cache file " + path_.string());
  }
}

std::optional<std::string> HypothesisCache::lookup(const CacheKey &key) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void HypothesisCache::store(const CacheKey &key, const std::string &value) {
  std::unique_lock lock(mutex_);
  entries_[key] = value;
  if (!out_.is_open()) return;
  std::string payload = json{{"backend", key.backend},
                             {"hash", key.input_hash},
                             {"hypothesis", key.hypothesis},
                             {"value", value}}
                            .dump();
  out_ << crc_hex(payload) << ' ' << payload << '\n';
  out_.flush();
}

std::size_t HypothesisCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace semsplit

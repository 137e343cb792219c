// Copyright 2026 The Colordrop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "colordrop/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <unordered_set>

#include "json.hpp"

#include "colordrop/errors.hpp"

namespace fs = std::filesystem;

namespace colordrop {

namespace {

bool has_image_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".jpg" || ext == ".jpeg" || ext == ".png";
}

/// Parses `<pid>_c<cam>...` out of a file stem, e.g. "0002_c1s1_000451_03"
/// -> (2, 1). The pid may be negative (Market junk ids).
std::optional<std::pair<int, int>> parse_market_stem(const std::string& stem) {
  std::size_t i = 0;
  bool negative = false;
  if (i < stem.size() && stem[i] == '-') {
    negative = true;
    ++i;
  }
  std::size_t digits_begin = i;
  while (i < stem.size() && std::isdigit(static_cast<unsigned char>(stem[i]))) {
    ++i;
  }
  if (i == digits_begin) {
    return std::nullopt;
  }
  long pid = std::stol(stem.substr(digits_begin, i - digits_begin));
  if (negative) {
    pid = -pid;
  }
  if (i + 1 >= stem.size() || stem[i] != '_' || stem[i + 1] != 'c') {
    return std::nullopt;
  }
  i += 2;
  std::size_t cam_begin = i;
  while (i < stem.size() && std::isdigit(static_cast<unsigned char>(stem[i]))) {
    ++i;
  }
  if (i == cam_begin) {
    return std::nullopt;
  }
  const long cam = std::stol(stem.substr(cam_begin, i - cam_begin));
  return std::make_pair(static_cast<int>(pid), static_cast<int>(cam));
}

}  // namespace

int Manifest::identities() const {
  std::unordered_set<int> ids;
  for (const auto& r : records) {
    ids.insert(r.identity);
  }
  return static_cast<int>(ids.size());
}

Manifest scan_market_layout(const std::string& dir,
                            std::vector<std::string>* skipped) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IoError("not a readable directory: " + dir);
  }
  Manifest manifest;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file() || !has_image_extension(entry.path())) {
      continue;
    }
    const auto parsed = parse_market_stem(entry.path().stem().string());
    if (!parsed) {
      if (skipped != nullptr) {
        skipped->push_back(entry.path().string());
      }
      continue;
    }
    SampleRecord rec;
    rec.path = entry.path().string();
    rec.identity = parsed->first;
    rec.camera = parsed->second;
    manifest.records.push_back(std::move(rec));
  }
  if (ec) {
    throw IoError("cannot scan directory: " + dir);
  }
  if (manifest.records.empty()) {
    throw EmptyCorpus("no parseable images under " + dir);
  }
  std::sort(manifest.records.begin(), manifest.records.end(),
            [](const SampleRecord& a, const SampleRecord& b) {
              return a.path < b.path;
            });
  if (skipped != nullptr) {
    std::sort(skipped->begin(), skipped->end());
  }
  for (std::size_t i = 0; i < manifest.records.size(); ++i) {
    manifest.records[i].index = i;
  }
  return manifest;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open manifest: " + path);
  }
  Manifest manifest;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!j.is_object() || !j.contains("path") || !j.contains("identity") ||
        !j.contains("camera")) {
      throw ParseError("record needs path, identity and camera keys", line_no);
    }
    if (!j["path"].is_string() || !j["identity"].is_number_integer() ||
        !j["camera"].is_number_integer()) {
      throw ParseError("path must be a string, identity and camera integers",
                       line_no);
    }
    SampleRecord rec;
    rec.path = j["path"].get<std::string>();
    rec.identity = j["identity"].get<int>();
    rec.camera = j["camera"].get<int>();
    rec.index = manifest.records.size();
    manifest.records.push_back(std::move(rec));
  }
  return manifest;
}

void save_manifest(const Manifest& manifest, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write manifest: " + path);
  }
  for (const auto& rec : manifest.records) {
    nlohmann::json j;
    j["path"] = rec.path;
    j["identity"] = rec.identity;
    j["camera"] = rec.camera;
    out << j.dump() << '\n';
  }
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

}  // namespace colordrop

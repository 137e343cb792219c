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

#ifndef COLORDROP_TESTS_SUPPORT_HPP_
#define COLORDROP_TESTS_SUPPORT_HPP_

#include <sys/wait.h>

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "colordrop/image.hpp"
#include "colordrop/image_io.hpp"

namespace testsupport {

namespace fs = std::filesystem;

/// Unique scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    path_ = fs::temp_directory_path() /
            ("colordrop-" + tag + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter.fetch_add(1)));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

inline CommandResult run_command(const std::string& cmd) {
  CommandResult result;
  FILE* pipe = ::popen((cmd + " 2>&1").c_str(), "r");
  if (pipe == nullptr) {
    return result;
  }
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
    result.output.append(buf, n);
  }
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

inline void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// All regular files under dir as relative-path -> bytes.
inline std::map<std::string, std::string> read_tree(const fs::path& dir) {
  std::map<std::string, std::string> tree;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      tree[fs::relative(entry.path(), dir).string()] =
          read_file(entry.path());
    }
  }
  return tree;
}

inline colordrop::ImageBuffer random_image(int w, int h, std::mt19937& gen) {
  colordrop::ImageBuffer img(w, h);
  std::uniform_int_distribution<int> byte(0, 255);
  for (auto& b : img.data()) {
    b = static_cast<std::uint8_t>(byte(gen));
  }
  return img;
}

/// Market-style corpus: ids x cams x shots PNG files of random pixels named
/// `<id>_c<cam>s1_<shot>_00.png`.
inline void make_market_corpus(const fs::path& dir, int ids, int cams,
                               int shots, int w, int h, unsigned seed) {
  fs::create_directories(dir);
  std::mt19937 gen(seed);
  char name[64];
  for (int id = 1; id <= ids; ++id) {
    for (int cam = 1; cam <= cams; ++cam) {
      for (int shot = 0; shot < shots; ++shot) {
        std::snprintf(name, sizeof name, "%04d_c%ds1_%06d_00.png", id, cam,
                      shot);
        colordrop::save_image(random_image(w, h, gen), (dir / name).string());
      }
    }
  }
}

}  // namespace testsupport

#endif  // COLORDROP_TESTS_SUPPORT_HPP_

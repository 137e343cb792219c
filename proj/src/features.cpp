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

#include "colordrop/features.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "colordrop/errors.hpp"

namespace colordrop {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') {
    cells.emplace_back();
  }
  return cells;
}

int parse_int(const std::string& cell, std::size_t line_no,
              const std::string& what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(cell, &pos);
    if (pos != cell.size()) {
      throw std::invalid_argument(cell);
    }
    return v;
  } catch (const std::exception&) {
    throw ParseError(what + " is not an integer: '" + cell + "'", line_no);
  }
}

double parse_double(const std::string& cell, std::size_t line_no,
                    const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(cell, &pos);
    if (pos != cell.size()) {
      throw std::invalid_argument(cell);
    }
    return v;
  } catch (const std::exception&) {
    throw ParseError(what + " is not a number: '" + cell + "'", line_no);
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<FeatureRecord> load_features_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open feature csv: " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("missing header", 1);
  }
  const auto header = split_csv_line(line);
  if (header.size() < 4 || header[0] != "identity" || header[1] != "camera" ||
      header[2] != "path") {
    throw ParseError("header must start with identity,camera,path,f0", 1);
  }
  std::size_t dim = 0;
  std::size_t col = 3;
  while (col < header.size() && header[col] == "f" + std::to_string(dim)) {
    ++dim;
    ++col;
  }
  if (dim == 0) {
    throw ParseError("header has no f0 feature column", 1);
  }
  std::size_t classes = 0;
  while (col < header.size() &&
         header[col] == "p" + std::to_string(classes)) {
    ++classes;
    ++col;
  }
  if (col != header.size()) {
    throw ParseError("unexpected header column '" + header[col] + "'", 1);
  }

  std::vector<FeatureRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ParseError("row has " + std::to_string(cells.size()) +
                           " cells, header has " +
                           std::to_string(header.size()),
                       line_no);
    }
    FeatureRecord rec;
    rec.identity = parse_int(cells[0], line_no, "identity");
    rec.camera = parse_int(cells[1], line_no, "camera");
    rec.path = cells[2];
    rec.feature.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      rec.feature.push_back(parse_double(cells[3 + i], line_no, "feature"));
    }
    if (classes > 0) {
      std::vector<double> probs;
      probs.reserve(classes);
      double sum = 0.0;
      for (std::size_t i = 0; i < classes; ++i) {
        const double p =
            parse_double(cells[3 + dim + i], line_no, "probability");
        if (p < 0.0) {
          throw ParseError("negative probability", line_no);
        }
        probs.push_back(p);
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-6) {
        throw ParseError("probabilities sum to " + std::to_string(sum),
                         line_no);
      }
      rec.probs = std::move(probs);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void save_features_csv(const std::vector<FeatureRecord>& records,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write feature csv: " + path);
  }
  const std::size_t dim = records.empty() ? 0 : records[0].feature.size();
  const std::size_t classes =
      records.empty() || !records[0].probs ? 0 : records[0].probs->size();
  out << "identity,camera,path";
  for (std::size_t i = 0; i < dim; ++i) {
    out << ",f" << i;
  }
  for (std::size_t i = 0; i < classes; ++i) {
    out << ",p" << i;
  }
  out << '\n';
  for (const auto& rec : records) {
    if (rec.feature.size() != dim ||
        (classes > 0 && (!rec.probs || rec.probs->size() != classes)) ||
        (classes == 0 && rec.probs)) {
      throw InvalidArgument("ragged feature records");
    }
    if (rec.path.find(',') != std::string::npos) {
      throw InvalidArgument("path contains a comma: " + rec.path);
    }
    out << rec.identity << ',' << rec.camera << ',' << rec.path;
    for (const double f : rec.feature) {
      out << ',' << format_double(f);
    }
    if (rec.probs) {
      for (const double p : *rec.probs) {
        out << ',' << format_double(p);
      }
    }
    out << '\n';
  }
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

}  // namespace colordrop

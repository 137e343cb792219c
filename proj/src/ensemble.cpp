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

#include "colordrop/ensemble.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "colordrop/errors.hpp"
#include "colordrop/rng.hpp"

namespace colordrop {

namespace {

// Error values are multiples of one half; integer half-units keep every
// comparison exact.
int error_halves(int x) {
  switch (x) {
    case -1:
      return 2;
    case 0:
      return 1;
    case 1:
      return 0;
    default:
      throw DomainError("error function domain is {-1, 0, 1}, got " +
                        std::to_string(x));
  }
}

void check_vote(int v) {
  if (v != -1 && v != 1) {
    throw BadVoteValue("votes must be -1 or +1, got " + std::to_string(v));
  }
}

std::vector<int> parse_vote_line(const std::string& line,
                                 std::size_t line_no) {
  std::vector<int> values;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(tok, &pos);
      if (pos != tok.size()) {
        throw std::invalid_argument(tok);
      }
      values.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("not an integer vote: '" + tok + "'", line_no);
    }
  }
  return values;
}

}  // namespace

VoteMatrix::VoteMatrix(std::vector<std::vector<int>> component_votes,
                       std::vector<int> expected)
    : components_(component_votes.size()), instances_(expected.size()) {
  if (components_ == 0 || instances_ == 0) {
    throw InvalidArgument("vote matrix needs >= 1 component and instance");
  }
  for (const int d : expected) {
    check_vote(d);
  }
  votes_.reserve(components_ * instances_);
  for (const auto& row : component_votes) {
    if (row.size() != instances_) {
      throw InvalidArgument("component row length differs from instances");
    }
    for (const int v : row) {
      check_vote(v);
      votes_.push_back(v);
    }
  }
  expected_ = std::move(expected);
}

double error_fn(int x) {
  return 0.5 * static_cast<double>(error_halves(x));
}

int sgn(int x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

double component_error(const VoteMatrix& votes, std::size_t component) {
  if (component >= votes.components()) {
    throw IndexOutOfRange("component " + std::to_string(component) +
                          " out of range");
  }
  long halves = 0;
  for (std::size_t j = 0; j < votes.instances(); ++j) {
    halves += error_halves(votes.vote(component, j) * votes.expected(j));
  }
  return 0.5 * static_cast<double>(halves) /
         static_cast<double>(votes.instances());
}

std::vector<int> vote_sums(const VoteMatrix& votes) {
  std::vector<int> sums(votes.instances(), 0);
  for (std::size_t i = 0; i < votes.components(); ++i) {
    for (std::size_t j = 0; j < votes.instances(); ++j) {
      sums[j] += votes.vote(i, j);
    }
  }
  return sums;
}

double ensemble_error(const VoteMatrix& votes) {
  const auto sums = vote_sums(votes);
  long halves = 0;
  for (std::size_t j = 0; j < votes.instances(); ++j) {
    halves += error_halves(sgn(sums[j]) * votes.expected(j));
  }
  return 0.5 * static_cast<double>(halves) /
         static_cast<double>(votes.instances());
}

namespace {

void check_swap_args(const VoteMatrix& votes, std::size_t k,
                     const std::vector<int>& replacement) {
  if (k >= votes.components()) {
    throw IndexOutOfRange("component " + std::to_string(k) + " out of range");
  }
  if (replacement.size() != votes.instances()) {
    throw InvalidArgument("replacement vote vector length differs");
  }
  for (const int v : replacement) {
    check_vote(v);
  }
}

}  // namespace

VoteMatrix swap_component(const VoteMatrix& votes, std::size_t k,
                          const std::vector<int>& replacement) {
  check_swap_args(votes, k, replacement);
  std::vector<std::vector<int>> rows(votes.components());
  for (std::size_t i = 0; i < votes.components(); ++i) {
    rows[i].resize(votes.instances());
    for (std::size_t j = 0; j < votes.instances(); ++j) {
      rows[i][j] = i == k ? replacement[j] : votes.vote(i, j);
    }
  }
  std::vector<int> expected(votes.instances());
  for (std::size_t j = 0; j < votes.instances(); ++j) {
    expected[j] = votes.expected(j);
  }
  return VoteMatrix(std::move(rows), std::move(expected));
}

ConditionResult check_condition(const VoteMatrix& votes, std::size_t k,
                                const std::vector<int>& replacement) {
  check_swap_args(votes, k, replacement);
  const auto sums = vote_sums(votes);
  long halves = 0;
  for (std::size_t j = 0; j < votes.instances(); ++j) {
    const int before = sgn(sums[j]) * votes.expected(j);
    const int swapped_sum = sums[j] - votes.vote(k, j) + replacement[j];
    const int after = sgn(swapped_sum) * votes.expected(j);
    halves += error_halves(before) - error_halves(after);
  }
  return ConditionResult{0.5 * static_cast<double>(halves), halves >= 0};
}

EnsembleReport analyze_swap(const VoteMatrix& votes, std::size_t k,
                            const std::vector<int>& replacement) {
  EnsembleReport report;
  report.component_errors.reserve(votes.components());
  for (std::size_t i = 0; i < votes.components(); ++i) {
    report.component_errors.push_back(component_error(votes, i));
  }
  report.sum_votes = vote_sums(votes);
  report.ensemble_error = ensemble_error(votes);
  report.swapped_error = ensemble_error(swap_component(votes, k, replacement));
  const auto cond = check_condition(votes, k, replacement);
  report.condition_lhs = cond.lhs;
  report.condition_holds = cond.holds;
  report.improvement = report.ensemble_error - report.swapped_error;
  return report;
}

VoteMatrix load_vote_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open vote matrix: " + path);
  }
  std::string line;
  std::size_t line_no = 0;
  std::vector<int> expected;
  std::vector<std::vector<int>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    auto values = parse_vote_line(line, line_no);
    if (values.empty()) {
      continue;
    }
    for (const int v : values) {
      if (v != -1 && v != 1) {
        throw ParseError("votes must be -1 or +1, got " + std::to_string(v),
                         line_no);
      }
    }
    if (expected.empty()) {
      expected = std::move(values);
    } else {
      if (values.size() != expected.size()) {
        throw ParseError("expected " + std::to_string(expected.size()) +
                             " votes, got " + std::to_string(values.size()),
                         line_no);
      }
      rows.push_back(std::move(values));
    }
  }
  if (expected.empty()) {
    throw ParseError("vote matrix file is empty", line_no == 0 ? 1 : line_no);
  }
  if (rows.empty()) {
    throw ParseError("vote matrix has no component rows", line_no);
  }
  return VoteMatrix(std::move(rows), std::move(expected));
}

void save_vote_matrix(const VoteMatrix& votes, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write vote matrix: " + path);
  }
  for (std::size_t j = 0; j < votes.instances(); ++j) {
    out << (j > 0 ? " " : "") << votes.expected(j);
  }
  out << '\n';
  for (std::size_t i = 0; i < votes.components(); ++i) {
    for (std::size_t j = 0; j < votes.instances(); ++j) {
      out << (j > 0 ? " " : "") << votes.vote(i, j);
    }
    out << '\n';
  }
}

std::vector<SweepRow> sweep(std::size_t n_min, std::size_t n_max,
                            std::size_t instances,
                            const std::vector<double>& error_grid,
                            std::size_t trials, std::uint64_t seed) {
  if (n_min < 1 || n_min > n_max || instances < 1) {
    throw InvalidArgument("sweep needs 1 <= n_min <= n_max and instances >= 1");
  }
  for (const double e : error_grid) {
    if (e < 0.0 || e > 1.0) {
      throw InvalidArgument("error rates must lie in [0, 1]");
    }
  }
  std::vector<SweepRow> rows;
  if (trials == 0) {
    return rows;
  }
  std::uint64_t cell = 0;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    for (const double err_base : error_grid) {
      for (const double err_dev : error_grid) {
        std::size_t holds = 0;
        double improvement_sum = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
          RngStream rng(seed, cell * trials + t);
          std::vector<int> expected(instances);
          for (auto& d : expected) {
            d = rng.uniform_int(2) == 0 ? -1 : 1;
          }
          std::vector<std::vector<int>> votes(n,
                                              std::vector<int>(instances));
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < instances; ++j) {
              const bool wrong = rng.uniform01() < err_base;
              votes[i][j] = wrong ? -expected[j] : expected[j];
            }
          }
          std::vector<int> deviated(instances);
          for (std::size_t j = 0; j < instances; ++j) {
            const bool wrong = rng.uniform01() < err_dev;
            deviated[j] = wrong ? -expected[j] : expected[j];
          }
          const VoteMatrix matrix(std::move(votes), std::move(expected));
          const auto cond = check_condition(matrix, 0, deviated);
          holds += cond.holds ? 1 : 0;
          // lhs = m * (error before - error after)
          improvement_sum += cond.lhs / static_cast<double>(instances);
        }
        SweepRow row;
        row.components = n;
        row.err_base = err_base;
        row.err_dev = err_dev;
        row.frac_holds =
            static_cast<double>(holds) / static_cast<double>(trials);
        row.mean_improvement =
            improvement_sum / static_cast<double>(trials);
        rows.push_back(row);
        ++cell;
      }
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     std::uint64_t seed) {
  out << "# votes drawn i.i.d. per instance at the given error rates; seed="
      << seed << "\n";
  out << "N,err_base,err_dev,frac_holds,mean_improvement\n";
  char buf[160];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n",
                  row.components, row.err_base, row.err_dev, row.frac_holds,
                  row.mean_improvement);
    out << buf;
  }
}

}  // namespace colordrop

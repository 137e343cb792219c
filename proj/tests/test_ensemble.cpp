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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "colordrop/ensemble.hpp"
#include "colordrop/errors.hpp"
#include "oracles.hpp"
#include "support.hpp"

using colordrop::VoteMatrix;

namespace {

std::vector<int> random_votes(std::mt19937& gen, std::size_t m) {
  std::bernoulli_distribution coin(0.5);
  std::vector<int> votes(m);
  for (auto& v : votes) {
    v = coin(gen) ? 1 : -1;
  }
  return votes;
}

VoteMatrix random_matrix(std::mt19937& gen, std::size_t n, std::size_t m) {
  std::vector<std::vector<int>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back(random_votes(gen, m));
  }
  return VoteMatrix(std::move(rows), random_votes(gen, m));
}

}  // namespace

TEST_CASE("error function values") {
  CHECK(colordrop::error_fn(-1) == 1.0);
  CHECK(colordrop::error_fn(0) == 0.5);
  CHECK(colordrop::error_fn(1) == 0.0);
  CHECK_THROWS_AS((void)colordrop::error_fn(2), colordrop::DomainError);
  CHECK_THROWS_AS((void)colordrop::error_fn(-3), colordrop::DomainError);
}

TEST_CASE("sign function has a zero plateau") {
  CHECK(colordrop::sgn(5) == 1);
  CHECK(colordrop::sgn(-2) == -1);
  CHECK(colordrop::sgn(0) == 0);
}

TEST_CASE("vote matrix validation") {
  CHECK_THROWS_AS(VoteMatrix({}, {1}), colordrop::InvalidArgument);
  CHECK_THROWS_AS(VoteMatrix({{1, 1}}, {}), colordrop::InvalidArgument);
  CHECK_THROWS_AS(VoteMatrix({{1, 0}}, {1, 1}), colordrop::BadVoteValue);
  CHECK_THROWS_AS(VoteMatrix({{1, 1}}, {1, 2}), colordrop::BadVoteValue);
  CHECK_THROWS_AS(VoteMatrix({{1, 1}, {1}}, {1, 1}),
                  colordrop::InvalidArgument);
  const VoteMatrix ok({{1, -1}, {-1, -1}}, {1, -1});
  CHECK(ok.components() == 2);
  CHECK(ok.instances() == 2);
  CHECK(ok.vote(0, 1) == -1);
  CHECK(ok.expected(0) == 1);
}

TEST_CASE("component error counts disagreements") {
  const VoteMatrix votes({{1, 1, -1, 1}, {-1, -1, 1, -1}, {1, -1, -1, -1}},
                         {1, 1, -1, 1});
  CHECK(colordrop::component_error(votes, 0) == 0.0);
  CHECK(colordrop::component_error(votes, 1) == 1.0);
  CHECK(colordrop::component_error(votes, 2) == 0.5);
  CHECK_THROWS_AS((void)colordrop::component_error(votes, 3),
                  colordrop::IndexOutOfRange);
}

TEST_CASE("vote sums and parity") {
  const VoteMatrix votes({{1, -1}, {1, 1}, {-1, 1}}, {1, 1});
  const auto sums = colordrop::vote_sums(votes);
  REQUIRE(sums.size() == 2);
  CHECK(sums[0] == 1);
  CHECK(sums[1] == 1);
  std::mt19937 gen(1);
  for (int t = 0; t < 50; ++t) {
    const auto m = random_matrix(gen, 1 + t % 6, 4);
    for (const int s : colordrop::vote_sums(m)) {
      CHECK((s % 2 != 0) == (m.components() % 2 != 0));
      CHECK(std::abs(s) <= static_cast<int>(m.components()));
    }
  }
}

TEST_CASE("tied ensembles score one half") {
  const VoteMatrix votes({{1, -1}, {-1, 1}}, {1, 1});
  CHECK(colordrop::ensemble_error(votes) == 0.5);
}

TEST_CASE("unanimously correct ensembles score zero") {
  const VoteMatrix votes({{1, -1, 1}, {1, -1, 1}, {1, -1, 1}}, {1, -1, 1});
  CHECK(colordrop::ensemble_error(votes) == 0.0);
}

TEST_CASE("ensemble error equals the counting oracle exhaustively") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t m = 1; m <= 3; ++m) {
      const std::size_t vote_bits = n * m;
      for (std::size_t v = 0; v < (std::size_t{1} << vote_bits); ++v) {
        for (std::size_t e = 0; e < (std::size_t{1} << m); ++e) {
          std::vector<std::vector<int>> rows(n, std::vector<int>(m));
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
              rows[i][j] = (v >> (i * m + j)) & 1 ? 1 : -1;
            }
          }
          std::vector<int> expected(m);
          for (std::size_t j = 0; j < m; ++j) {
            expected[j] = (e >> j) & 1 ? 1 : -1;
          }
          const double oracle =
              oracles::ensemble_error_counted(rows, expected);
          const VoteMatrix votes(std::move(rows), std::move(expected));
          REQUIRE(colordrop::ensemble_error(votes) == oracle);
        }
      }
    }
  }
}

TEST_CASE("ensemble error equals the counting oracle on random matrices") {
  std::mt19937 gen(2);
  std::uniform_int_distribution<std::size_t> n_dist(1, 9);
  std::uniform_int_distribution<std::size_t> m_dist(1, 12);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = n_dist(gen);
    const std::size_t m = m_dist(gen);
    std::vector<std::vector<int>> rows;
    for (std::size_t i = 0; i < n; ++i) {
      rows.push_back(random_votes(gen, m));
    }
    const auto expected = random_votes(gen, m);
    const double oracle = oracles::ensemble_error_counted(rows, expected);
    const VoteMatrix votes(std::move(rows), expected);
    REQUIRE(colordrop::ensemble_error(votes) == oracle);
  }
}

TEST_CASE("swapping a component replaces exactly one row") {
  std::mt19937 gen(3);
  const auto votes = random_matrix(gen, 4, 6);
  const auto replacement = random_votes(gen, 6);
  const auto swapped = colordrop::swap_component(votes, 2, replacement);
  for (std::size_t i = 0; i < votes.components(); ++i) {
    for (std::size_t j = 0; j < votes.instances(); ++j) {
      if (i == 2) {
        CHECK(swapped.vote(i, j) == replacement[j]);
      } else {
        CHECK(swapped.vote(i, j) == votes.vote(i, j));
      }
    }
  }

  std::vector<int> row0(votes.instances());
  for (std::size_t j = 0; j < votes.instances(); ++j) {
    row0[j] = votes.vote(0, j);
  }
  CHECK(colordrop::swap_component(votes, 0, row0) == votes);

  CHECK_THROWS_AS(
      (void)colordrop::swap_component(votes, 9, replacement),
      colordrop::IndexOutOfRange);
  CHECK_THROWS_AS(
      (void)colordrop::swap_component(votes, 0, std::vector<int>{1, 0, 1, 1,
                                                                 1, 1}),
      colordrop::BadVoteValue);
  CHECK_THROWS_AS(
      (void)colordrop::swap_component(votes, 0, std::vector<int>{1, 1}),
      colordrop::InvalidArgument);
}

TEST_CASE("a perfect replacement never hurts an odd ensemble") {
  std::mt19937 gen(4);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = t % 2 == 0 ? 3 : 5;
    const auto votes = random_matrix(gen, n, 1 + t % 10);
    std::vector<int> perfect(votes.instances());
    for (std::size_t j = 0; j < votes.instances(); ++j) {
      perfect[j] = votes.expected(j);
    }
    const auto swapped = colordrop::swap_component(votes, 0, perfect);
    CHECK(colordrop::ensemble_error(swapped) <=
          colordrop::ensemble_error(votes));
  }
}

TEST_CASE("identity swap has a zero condition sum") {
  std::mt19937 gen(5);
  const auto votes = random_matrix(gen, 5, 7);
  std::vector<int> row3(votes.instances());
  for (std::size_t j = 0; j < votes.instances(); ++j) {
    row3[j] = votes.vote(3, j);
  }
  const auto cond = colordrop::check_condition(votes, 3, row3);
  CHECK(cond.lhs == 0.0);
  CHECK(cond.holds);
}

TEST_CASE("condition sum equals instances times the error drop") {
  std::mt19937 gen(6);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + t % 7;
    const std::size_t m = 1 + t % 11;
    const auto votes = random_matrix(gen, n, m);
    const auto replacement = random_votes(gen, m);
    const std::size_t k = t % n;
    const auto cond = colordrop::check_condition(votes, k, replacement);
    const double before = colordrop::ensemble_error(votes);
    const double after = colordrop::ensemble_error(
        colordrop::swap_component(votes, k, replacement));
    REQUIRE(cond.lhs ==
            doctest::Approx(static_cast<double>(m) * (before - after))
                .epsilon(1e-12));
    REQUIRE(cond.holds == (before >= after));
  }
}

TEST_CASE("a swap fixing a one-vote-margin mistake has a positive sum") {
  // Component 2 flips the j=0 majority from wrong to right.
  const VoteMatrix votes({{1, 1, 1}, {-1, 1, -1}, {-1, -1, 1}},
                         {1, 1, -1});
  const std::vector<int> replacement = {1, -1, 1};
  const auto cond = colordrop::check_condition(votes, 2, replacement);
  CHECK(cond.lhs > 0.0);
  CHECK(cond.holds);
}

TEST_CASE("swap analysis report is self-consistent") {
  std::mt19937 gen(7);
  const auto votes = random_matrix(gen, 5, 9);
  const auto replacement = random_votes(gen, 9);
  const auto report = colordrop::analyze_swap(votes, 1, replacement);
  REQUIRE(report.component_errors.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(report.component_errors[i] == colordrop::component_error(votes, i));
  }
  CHECK(report.sum_votes == colordrop::vote_sums(votes));
  CHECK(report.ensemble_error == colordrop::ensemble_error(votes));
  CHECK(report.swapped_error ==
        colordrop::ensemble_error(
            colordrop::swap_component(votes, 1, replacement)));
  CHECK(report.improvement ==
        report.ensemble_error - report.swapped_error);
  CHECK(report.condition_lhs ==
        doctest::Approx(9.0 * (report.ensemble_error - report.swapped_error))
            .epsilon(1e-12));
  CHECK(report.condition_holds ==
        (report.ensemble_error >= report.swapped_error));
}

TEST_CASE("vote matrix file round trip") {
  testsupport::TempDir dir("ensemble");
  std::mt19937 gen(8);
  const auto votes = random_matrix(gen, 4, 6);
  const auto path = (dir.path() / "votes.txt").string();
  colordrop::save_vote_matrix(votes, path);
  CHECK(colordrop::load_vote_matrix(path) == votes);
}

TEST_CASE("vote matrix parser reports offending lines") {
  testsupport::TempDir dir("ensemble");
  const auto path = dir.path() / "votes.txt";

  testsupport::write_file(path, "1 -1\n1 x\n");
  try {
    (void)colordrop::load_vote_matrix(path.string());
    FAIL("expected ParseError");
  } catch (const colordrop::ParseError& e) {
    CHECK(e.line() == 2);
  }

  testsupport::write_file(path, "1 -1\n1 0\n");
  CHECK_THROWS_AS((void)colordrop::load_vote_matrix(path.string()),
                  colordrop::ParseError);

  testsupport::write_file(path, "1 -1\n1 -1 1\n");
  CHECK_THROWS_AS((void)colordrop::load_vote_matrix(path.string()),
                  colordrop::ParseError);

  testsupport::write_file(path, "\n\n");
  CHECK_THROWS_AS((void)colordrop::load_vote_matrix(path.string()),
                  colordrop::ParseError);

  testsupport::write_file(path, "1 -1\n");
  CHECK_THROWS_AS((void)colordrop::load_vote_matrix(path.string()),
                  colordrop::ParseError);

  CHECK_THROWS_AS(
      (void)colordrop::load_vote_matrix((dir.path() / "gone.txt").string()),
      colordrop::IoError);
}

TEST_CASE("sweep basics") {
  CHECK(colordrop::sweep(3, 3, 10, {0.2}, 0, 1).empty());

  const auto rows = colordrop::sweep(3, 4, 12, {0.1, 0.3}, 50, 42);
  REQUIRE(rows.size() == 2 * 2 * 2);
  const auto again = colordrop::sweep(3, 4, 12, {0.1, 0.3}, 50, 42);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].components == again[i].components);
    CHECK(rows[i].frac_holds == again[i].frac_holds);
    CHECK(rows[i].mean_improvement == again[i].mean_improvement);
    CHECK(rows[i].frac_holds >= 0.0);
    CHECK(rows[i].frac_holds <= 1.0);
  }

  CHECK_THROWS_AS((void)colordrop::sweep(0, 3, 10, {0.2}, 5, 1),
                  colordrop::InvalidArgument);
  CHECK_THROWS_AS((void)colordrop::sweep(4, 3, 10, {0.2}, 5, 1),
                  colordrop::InvalidArgument);
  CHECK_THROWS_AS((void)colordrop::sweep(3, 3, 0, {0.2}, 5, 1),
                  colordrop::InvalidArgument);
  CHECK_THROWS_AS((void)colordrop::sweep(3, 3, 10, {1.5}, 5, 1),
                  colordrop::InvalidArgument);
}

TEST_CASE("sweep with a perfect deviated component always holds at odd n") {
  const auto rows = colordrop::sweep(3, 3, 6, {0.0, 0.35}, 400, 9);
  // Grid is (err_base, err_dev) pairs in declaration order.
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    if (row.err_dev == 0.0) {
      CHECK(row.frac_holds == 1.0);
      CHECK(row.mean_improvement >= 0.0);
    }
  }
}

TEST_CASE("sweep of identically distributed components is nearly neutral") {
  const auto rows = colordrop::sweep(5, 5, 40, {0.3}, 2000, 11);
  REQUIRE(rows.size() == 1);
  // Symmetric swap: the mean improvement concentrates around zero.
  CHECK(std::abs(rows[0].mean_improvement) < 0.01);
}

TEST_CASE("sweep csv format") {
  testsupport::TempDir dir("ensemble");
  const auto rows = colordrop::sweep(3, 3, 5, {0.25}, 10, 3);
  std::ostringstream out;
  colordrop::write_sweep_csv(out, rows, 3);
  const auto text = out.str();
  CHECK(text.find("# votes drawn i.i.d.") == 0);
  CHECK(text.find("N,err_base,err_dev,frac_holds,mean_improvement\n") !=
        std::string::npos);
  CHECK(text.find("\n3,") != std::string::npos);
}

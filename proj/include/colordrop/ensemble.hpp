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

#ifndef COLORDROP_ENSEMBLE_HPP_
#define COLORDROP_ENSEMBLE_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace colordrop {

/// +/-1 votes of N component classifiers on m instances, plus the expected
/// output per instance. Every entry is validated to be exactly -1 or +1.
class VoteMatrix {
 public:
  VoteMatrix(std::vector<std::vector<int>> component_votes,
             std::vector<int> expected);

  std::size_t components() const { return components_; }
  std::size_t instances() const { return instances_; }
  int vote(std::size_t component, std::size_t instance) const {
    return votes_[component * instances_ + instance];
  }
  int expected(std::size_t instance) const { return expected_[instance]; }

  bool operator==(const VoteMatrix&) const = default;

 private:
  std::size_t components_;
  std::size_t instances_;
  std::vector<int> votes_;  // row-major
  std::vector<int> expected_;
};

/// Error(x) on the sign of prediction*expected: -1 -> 1, 0 -> 0.5, 1 -> 0.
/// Anything else is a DomainError.
double error_fn(int x);

/// Sign with a zero plateau: x>0 -> 1, x==0 -> 0, x<0 -> -1.
int sgn(int x);

/// Fraction of instances the i-th component gets wrong.
double component_error(const VoteMatrix& votes, std::size_t component);

/// Per-instance sums of all component votes (always same parity as N).
std::vector<int> vote_sums(const VoteMatrix& votes);

/// Majority-vote generalization error; tied instances count 0.5.
double ensemble_error(const VoteMatrix& votes);

/// Returns a copy with component k's votes replaced by `replacement`.
VoteMatrix swap_component(const VoteMatrix& votes, std::size_t k,
                          const std::vector<int>& replacement);

struct ConditionResult {
  /// Sum over instances of the per-instance error difference between the
  /// original majority vote and the post-swap majority vote. Equals
  /// m * (ensemble_error - swapped_error).
  double lhs = 0.0;
  bool holds = false;  // lhs >= 0, i.e. the swap does not hurt
};

/// Evaluates the no-regression condition for replacing component k by the
/// given vote vector, without materializing the swapped matrix.
ConditionResult check_condition(const VoteMatrix& votes, std::size_t k,
                                const std::vector<int>& replacement);

struct EnsembleReport {
  std::vector<double> component_errors;
  std::vector<int> sum_votes;
  double ensemble_error = 0.0;
  double swapped_error = 0.0;
  double condition_lhs = 0.0;
  bool condition_holds = false;
  double improvement = 0.0;  // ensemble_error - swapped_error
};

/// Full before/after analysis of one component swap.
EnsembleReport analyze_swap(const VoteMatrix& votes, std::size_t k,
                            const std::vector<int>& replacement);

/// Text format: first line the expected outputs (space-separated +/-1), then
/// one line per component. Throws ParseError with the offending line.
VoteMatrix load_vote_matrix(const std::string& path);
void save_vote_matrix(const VoteMatrix& votes, const std::string& path);

struct SweepRow {
  std::size_t components = 0;
  double err_base = 0.0;
  double err_dev = 0.0;
  double frac_holds = 0.0;
  double mean_improvement = 0.0;
};

/// Monte-Carlo exploration of how often a component swap helps. For every
/// (N, base error rate, deviated error rate) cell it draws `trials` random
/// vote matrices with i.i.d. per-instance correctness at the base rate,
/// replaces component 0 by votes drawn at the deviated rate, and reports the
/// fraction of trials where the no-regression condition holds plus the mean
/// error improvement. Deterministic under the seed; trials are split across
/// independent streams.
std::vector<SweepRow> sweep(std::size_t n_min, std::size_t n_max,
                            std::size_t instances,
                            const std::vector<double>& error_grid,
                            std::size_t trials, std::uint64_t seed);

/// CSV with a one-line generation-model note, then
/// `N,err_base,err_dev,frac_holds,mean_improvement`.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     std::uint64_t seed);

}  // namespace colordrop

#endif  // COLORDROP_ENSEMBLE_HPP_

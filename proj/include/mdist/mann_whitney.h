// Copyright 2026 The mdist Authors
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

#ifndef MDIST_MANN_WHITNEY_H_
#define MDIST_MANN_WHITNEY_H_

#include <cstddef>
#include <span>

namespace mdist {

enum class PValueMethod { kExact, kNormal };

struct RankSumResult {
  // Pairs (a_i, b_j) with a_i > b_j, ties counted one half. U_a + U_b = n_a n_b.
  double u_statistic = 0.0;
  double p_value = 1.0;  // two-sided
  PValueMethod method = PValueMethod::kExact;
};

// Largest n_a * n_b for which the exact permutation distribution is used.
inline constexpr std::size_t kExactProductLimit = 400;

// Two-sided Mann-Whitney U test.
//
// Exact path (n_a n_b <= kExactProductLimit): the permutation distribution of
// the rank sum of `a` over all C(n_a + n_b, n_a) label assignments, counted by
// dynamic programming over mid-ranks, so it stays exact with ties. The
// p-value is P(|S - E[S]| >= |s_obs - E[S]|).
//
// Normal path: z = (|U - n_a n_b / 2| - 1/2) / sigma with the tie-corrected
// variance n_a n_b / 12 * (N + 1 - sum(t^3 - t) / (N (N - 1))).
//
// InsufficientDataError when either sample is empty.
RankSumResult MannWhitneyU(std::span<const double> a, std::span<const double> b);

// Same test with the method forced.
RankSumResult MannWhitneyExact(std::span<const double> a, std::span<const double> b);
RankSumResult MannWhitneyNormal(std::span<const double> a, std::span<const double> b);

}  // namespace mdist

#endif  // MDIST_MANN_WHITNEY_H_

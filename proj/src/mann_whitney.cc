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

#include "mdist/mann_whitney.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "mdist/error.h"

namespace mdist {
namespace {

struct Ranking {
  // Twice the mid-rank of every pooled value, a's values first.
  std::vector<std::int64_t> doubled_rank;
  double tie_term = 0.0;  // sum over tie groups of t^3 - t
};

Ranking RankPooled(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() + b.size();
  std::vector<double> pooled;
  pooled.reserve(n);
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  for (double v : pooled) {
    if (!std::isfinite(v)) throw ParameterError("rank test sample holds a non-finite value");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });

  Ranking r;
  r.doubled_rank.resize(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && pooled[order[j]] == pooled[order[i]]) ++j;
    // Positions i..j-1 (0-based) share mid-rank (i + 1 + j) / 2.
    const auto doubled = static_cast<std::int64_t>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) r.doubled_rank[order[k]] = doubled;
    const double t = static_cast<double>(j - i);
    r.tie_term += t * t * t - t;
    i = j;
  }
  return r;
}

void RequireNonEmpty(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw InsufficientDataError("Mann-Whitney test needs two non-empty samples");
  }
}

double UStatisticFromRanks(const Ranking& r, std::size_t na) {
  std::int64_t doubled_sum = 0;
  for (std::size_t i = 0; i < na; ++i) doubled_sum += r.doubled_rank[i];
  const double n = static_cast<double>(na);
  return 0.5 * static_cast<double>(doubled_sum) - n * (n + 1.0) / 2.0;
}

}  // namespace

RankSumResult MannWhitneyExact(std::span<const double> a, std::span<const double> b) {
  RequireNonEmpty(a, b);
  const Ranking ranks = RankPooled(a, b);
  const std::size_t n = a.size() + b.size();

  // Count subsets of the smaller sample's size by doubled rank sum.
  const bool a_smaller = a.size() <= b.size();
  const std::size_t m = a_smaller ? a.size() : b.size();
  std::int64_t observed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool in_a = i < a.size();
    if (in_a == a_smaller) observed += ranks.doubled_rank[i];
  }

  std::vector<std::int64_t> sorted_ranks = ranks.doubled_rank;
  std::sort(sorted_ranks.rbegin(), sorted_ranks.rend());
  const std::int64_t max_sum =
      std::accumulate(sorted_ranks.begin(), sorted_ranks.begin() + m, std::int64_t{0});

  const std::size_t width = static_cast<std::size_t>(max_sum) + 1;
  // ways[j * width + s]: subsets of size j with doubled rank sum s. Counts
  // stay below C(N, m) < 2^53 for n_a n_b <= 400, so doubles are exact.
  std::vector<double> ways((m + 1) * width, 0.0);
  ways[0] = 1.0;
  std::size_t seen = 0;
  for (std::int64_t rank : ranks.doubled_rank) {
    ++seen;
    const auto step = static_cast<std::size_t>(rank);
    for (std::size_t j = std::min(seen, m); j >= 1; --j) {
      double* dst = &ways[j * width];
      const double* src = &ways[(j - 1) * width];
      for (std::size_t s = width; s-- > step;) dst[s] += src[s - step];
    }
  }

  const auto expected = static_cast<std::int64_t>(m) * static_cast<std::int64_t>(n + 1);
  const std::int64_t observed_dev = std::llabs(observed - expected);
  double total = 0.0;
  double extreme = 0.0;
  const double* level = &ways[m * width];
  for (std::size_t s = 0; s < width; ++s) {
    if (level[s] == 0.0) continue;
    total += level[s];
    if (std::llabs(static_cast<std::int64_t>(s) - expected) >= observed_dev) {
      extreme += level[s];
    }
  }

  RankSumResult res;
  res.u_statistic = UStatisticFromRanks(ranks, a.size());
  res.p_value = std::min(1.0, extreme / total);
  res.method = PValueMethod::kExact;
  return res;
}

RankSumResult MannWhitneyNormal(std::span<const double> a, std::span<const double> b) {
  RequireNonEmpty(a, b);
  const Ranking ranks = RankPooled(a, b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;

  RankSumResult res;
  res.u_statistic = UStatisticFromRanks(ranks, a.size());
  res.method = PValueMethod::kNormal;

  const double mu = 0.5 * na * nb;
  double var = na * nb / 12.0 * (n + 1.0);
  if (n > 1.0) var -= na * nb / 12.0 * ranks.tie_term / (n * (n - 1.0));
  if (!(var > 0.0)) {
    res.p_value = 1.0;
    return res;
  }
  const double z = std::max(0.0, std::abs(res.u_statistic - mu) - 0.5) / std::sqrt(var);
  res.p_value = std::clamp(std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
  return res;
}

RankSumResult MannWhitneyU(std::span<const double> a, std::span<const double> b) {
  RequireNonEmpty(a, b);
  if (a.size() * b.size() <= kExactProductLimit) return MannWhitneyExact(a, b);
  return MannWhitneyNormal(a, b);
}

}  // namespace mdist

#pragma once

#include <cstdint>
#include <vector>

#include "gwburn/burning.hpp"
#include "gwburn/offspring.hpp"
#include "gwburn/tree.hpp"

namespace gwburn {

/// Distance-pair profile: p[i] counts unordered vertex pairs at distance
/// exactly i, q_prefix[j] at distance at most j. Both arrays run 0..diameter.
struct PairCountProfile {
  std::int64_t n = 0;
  std::vector<std::int64_t> p;
  std::vector<std::int64_t> q_prefix;

  std::int64_t total_pairs() const { return n * (n - 1) / 2; }
  std::int64_t p_at(int i) const;
  std::int64_t q_at(int j) const;  // clamped at the diameter
};

/// Exact profile via BFS from every vertex, counting each unordered pair
/// once. Throws CapExceededError when n(n-1)/2 exceeds pair_cap.
PairCountProfile pair_counts(const Tree& tree, std::int64_t pair_cap = kDefaultPairCap);

struct RatioRow {
  int i;
  double estimate;
  double std_error;
};

/// Monte Carlo estimate of E[P_i(T_n)] / (n i) for i = 1..i_max over seeded
/// trials; exhibits a finite empirical constant for the linear pair-growth
/// bound. Requires trials >= 2.
std::vector<RatioRow> estimate_pair_ratio(const OffspringDistribution& dist,
                                          std::int64_t n, int i_max, std::int64_t trials,
                                          std::uint64_t seed, int workers = 1);

/// Total-progeny law of the Poisson(1) branching process:
/// e^{-s} s^{s-1} / s!, evaluated in log space.
double borel_pmf(std::int64_t s);

/// h / sqrt(2 pi sigma^2 s^3); requires s = 1 (mod span).
double llt_size_asymptote(const OffspringDistribution& dist, std::int64_t s);

/// h / sqrt(2 pi sigma^2 s) * exp(-(m-s)^2 / (2 s sigma^2));
/// requires m = 0 (mod span).
double llt_sum_asymptote(const OffspringDistribution& dist, std::int64_t s, std::int64_t m);

struct TailRow {
  int k;
  double estimate;
  double std_error;
};

/// Empirical Pr(h(T) >= k) over unconditioned trees. Trials that overflow
/// size_cap count as h >= k, biasing upward, which is the conservative
/// direction for checking upper tail bounds.
std::vector<TailRow> estimate_height_tail(const OffspringDistribution& dist,
                                          const std::vector<int>& k_values,
                                          std::int64_t trials, std::int64_t size_cap,
                                          std::uint64_t seed, int workers = 1);

struct SubtreeTail {
  double estimate;
  double std_error;
};

/// Samples T_n, picks one uniform vertex u per tree, and reports the
/// empirical tail of the subtree height h(tau_u).
SubtreeTail estimate_subtree_tail(const OffspringDistribution& dist, std::int64_t n,
                                  int k, std::int64_t trials, std::uint64_t seed,
                                  int workers = 1);

}  // namespace gwburn

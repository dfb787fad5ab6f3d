#include "gwburn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gwburn/errors.hpp"
#include "gwburn/parallel.hpp"
#include "gwburn/sampler.hpp"

namespace gwburn {

std::int64_t PairCountProfile::p_at(int i) const {
  if (i < 0) throw InvalidParameterError("pair distance must be non-negative");
  if (static_cast<std::size_t>(i) >= p.size()) return 0;
  return p[i];
}

std::int64_t PairCountProfile::q_at(int j) const {
  if (j < 0) throw InvalidParameterError("pair distance must be non-negative");
  if (q_prefix.empty()) return 0;
  const auto idx = std::min<std::size_t>(j, q_prefix.size() - 1);
  return q_prefix[idx];
}

PairCountProfile pair_counts(const Tree& tree, std::int64_t pair_cap) {
  const std::int64_t n = tree.n();
  if (n * (n - 1) / 2 > pair_cap) {
    throw CapExceededError("pair_counts: n(n-1)/2 = " + std::to_string(n * (n - 1) / 2) +
                           " exceeds the work cap " + std::to_string(pair_cap));
  }
  PairCountProfile profile;
  profile.n = n;
  const int diam = tree.diameter();
  profile.p.assign(diam + 1, 0);
  std::vector<std::int32_t> dist;
  for (Vertex src = 1; src <= n; ++src) {
    tree.distances_from(src, dist);
    for (Vertex v = src + 1; v <= n; ++v) ++profile.p[dist[v]];
  }
  profile.q_prefix.assign(diam + 1, 0);
  std::int64_t acc = 0;
  for (int j = 0; j <= diam; ++j) {
    acc += profile.p[j];
    profile.q_prefix[j] = acc;
  }
  return profile;
}

std::vector<RatioRow> estimate_pair_ratio(const OffspringDistribution& dist,
                                          std::int64_t n, int i_max, std::int64_t trials,
                                          std::uint64_t seed, int workers) {
  if (trials < 2) throw InvalidParameterError("estimate_pair_ratio requires trials >= 2");
  if (i_max < 1) throw InvalidParameterError("estimate_pair_ratio requires i_max >= 1");
  std::vector<std::vector<double>> per_trial(trials);
  parallel_for_trials(trials, workers, [&](std::int64_t t) {
    RandomStream rng(seed, static_cast<std::uint64_t>(t));
    const Tree tree = sample_conditioned(dist, n, rng).tree;
    const PairCountProfile profile = pair_counts(tree);
    auto& ratios = per_trial[t];
    ratios.resize(i_max);
    for (int i = 1; i <= i_max; ++i) {
      ratios[i - 1] = static_cast<double>(profile.p_at(i)) /
                      (static_cast<double>(n) * static_cast<double>(i));
    }
  });
  std::vector<RatioRow> rows(i_max);
  for (int i = 1; i <= i_max; ++i) {
    double mean = 0.0;
    for (const auto& ratios : per_trial) mean += ratios[i - 1];
    mean /= static_cast<double>(trials);
    double ss = 0.0;
    for (const auto& ratios : per_trial) {
      const double d = ratios[i - 1] - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(trials - 1));
    rows[i - 1] = {i, mean, sd / std::sqrt(static_cast<double>(trials))};
  }
  return rows;
}

double borel_pmf(std::int64_t s) {
  if (s < 1) throw InvalidParameterError("borel_pmf requires s >= 1");
  const double ds = static_cast<double>(s);
  return std::exp(-ds + (ds - 1.0) * std::log(ds) - std::lgamma(ds + 1.0));
}

double llt_size_asymptote(const OffspringDistribution& dist, std::int64_t s) {
  if (s < 1) throw InvalidParameterError("llt_size_asymptote requires s >= 1");
  const int h = dist.span();
  if ((s - 1) % h != 0) {
    throw IncompatibleSizeError("size " + std::to_string(s) + " not on the span-" +
                                std::to_string(h) + " lattice");
  }
  const double ds = static_cast<double>(s);
  return h / std::sqrt(2.0 * std::numbers::pi * dist.variance() * ds * ds * ds);
}

double llt_sum_asymptote(const OffspringDistribution& dist, std::int64_t s, std::int64_t m) {
  if (s < 1) throw InvalidParameterError("llt_sum_asymptote requires s >= 1");
  const int h = dist.span();
  if (m % h != 0) {
    throw IncompatibleSizeError("sum target " + std::to_string(m) + " not on the span-" +
                                std::to_string(h) + " lattice");
  }
  const double ds = static_cast<double>(s);
  const double diff = static_cast<double>(m - s);
  const double sigma2 = dist.variance();
  return h / std::sqrt(2.0 * std::numbers::pi * sigma2 * ds) *
         std::exp(-diff * diff / (2.0 * ds * sigma2));
}

std::vector<TailRow> estimate_height_tail(const OffspringDistribution& dist,
                                          const std::vector<int>& k_values,
                                          std::int64_t trials, std::int64_t size_cap,
                                          std::uint64_t seed, int workers) {
  if (trials < 1) throw InvalidParameterError("estimate_height_tail requires trials >= 1");
  std::vector<int> heights(trials);
  parallel_for_trials(trials, workers, [&](std::int64_t t) {
    RandomStream rng(seed, static_cast<std::uint64_t>(t));
    const HeightWalk walk = unconditioned_height(dist, rng, size_cap);
    heights[t] = walk.overflow ? std::numeric_limits<int>::max() : walk.height;
  });
  std::vector<TailRow> rows;
  rows.reserve(k_values.size());
  for (const int k : k_values) {
    std::int64_t hits = 0;
    for (const int h : heights) {
      if (h >= k) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    rows.push_back({k, p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials))});
  }
  return rows;
}

SubtreeTail estimate_subtree_tail(const OffspringDistribution& dist, std::int64_t n,
                                  int k, std::int64_t trials, std::uint64_t seed,
                                  int workers) {
  if (trials < 1) throw InvalidParameterError("estimate_subtree_tail requires trials >= 1");
  std::vector<char> hit(trials, 0);
  parallel_for_trials(trials, workers, [&](std::int64_t t) {
    RandomStream rng(seed, static_cast<std::uint64_t>(t));
    const Tree tree = sample_conditioned(dist, n, rng).tree;
    const auto u = static_cast<Vertex>(1 + rng.next_below(static_cast<std::uint64_t>(n)));
    hit[t] = tree.subtree_height(u) >= k ? 1 : 0;
  });
  std::int64_t hits = 0;
  for (const char h : hit) hits += h;
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
}

}  // namespace gwburn

#include "gwburn/sampler.hpp"

#include <cmath>
#include <numbers>

#include "gwburn/errors.hpp"

namespace gwburn {

std::int64_t default_max_attempts(std::int64_t n) {
  const auto root = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  return 1000 * std::max<std::int64_t>(root, 1);
}

namespace {

void require_on_lattice(const OffspringDistribution& dist, std::int64_t n) {
  if (n < 1) throw InvalidParameterError("tree size must be >= 1");
  const int h = dist.span();
  if ((n - 1) % h != 0) {
    throw IncompatibleSizeError("n = " + std::to_string(n) + " is incompatible with span " +
                                std::to_string(h) + " of " + dist.name() +
                                " (need n = 1 mod span; Pr(S_n = n-1) = 0)");
  }
}

}  // namespace

ConditionedSample sample_conditioned(const OffspringDistribution& dist, std::int64_t n,
                                     RandomStream& rng, std::int64_t max_attempts) {
  require_on_lattice(dist, n);
  if (n > kMaxTreeVertices) {
    throw CapExceededError("n exceeds the tree vertex cap");
  }
  if (max_attempts < 0) max_attempts = default_max_attempts(n);
  if (max_attempts < 1) throw InvalidParameterError("max_attempts must be >= 1");

  // The draw buffer is reused across attempts; this loop is the
  // performance-critical path of every experiment.
  DegreeSequence draws(static_cast<std::size_t>(n));
  const std::int64_t target = n - 1;
  for (std::int64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    std::int64_t sum = 0;
    for (auto& d : draws) {
      d = dist.sample(rng);
      sum += d;
    }
    if (sum != target) continue;
    const std::size_t offset = unique_valid_rotation(draws);
    Tree tree(offset == 0 ? draws : rotate_left(draws, offset));
    return {std::move(tree), attempt};
  }
  throw RejectionLimitError("no accepted sample for n = " + std::to_string(n) + " within " +
                            std::to_string(max_attempts) + " attempts");
}

UnconditionedSample sample_unconditioned(const OffspringDistribution& dist,
                                         RandomStream& rng, std::int64_t size_cap) {
  if (size_cap < 1) throw InvalidParameterError("size_cap must be >= 1");

  // Breadth-first expansion with an explicit queue: bfs_degrees[i] is the
  // child count of the i-th vertex in BFS order, children are assigned
  // consecutive BFS indices.
  std::vector<std::int32_t> bfs_degrees;
  bfs_degrees.push_back(0);
  std::int64_t produced = 1;
  for (std::size_t head = 0; head < bfs_degrees.size(); ++head) {
    const int d = dist.sample(rng);
    bfs_degrees[head] = d;
    produced += d;
    if (produced > size_cap) return {std::nullopt, produced};
    for (int c = 0; c < d; ++c) bfs_degrees.push_back(0);
  }

  // Convert the BFS layout to preorder with an explicit stack.
  const std::size_t s = bfs_degrees.size();
  std::vector<std::size_t> first_child(s);
  std::size_t next_index = 1;
  for (std::size_t i = 0; i < s; ++i) {
    first_child[i] = next_index;
    next_index += bfs_degrees[i];
  }
  DegreeSequence preorder;
  preorder.reserve(s);
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    const std::int32_t d = bfs_degrees[v];
    preorder.push_back(d);
    for (std::int32_t c = d - 1; c >= 0; --c) {
      stack.push_back(first_child[v] + static_cast<std::size_t>(c));
    }
  }
  return {Tree(preorder), static_cast<std::int64_t>(s)};
}

HeightWalk unconditioned_height(const OffspringDistribution& dist, RandomStream& rng,
                                std::int64_t size_cap) {
  if (size_cap < 1) throw InvalidParameterError("size_cap must be >= 1");
  std::int64_t current_level = 1;
  std::int64_t total = 1;
  int depth = 0;
  for (;;) {
    std::int64_t next_level = 0;
    for (std::int64_t i = 0; i < current_level; ++i) next_level += dist.sample(rng);
    if (next_level == 0) return {depth, false, total};
    total += next_level;
    ++depth;
    if (total > size_cap) return {depth, true, total};
    current_level = next_level;
  }
}

double predicted_acceptance_rate(const OffspringDistribution& dist, std::int64_t n) {
  require_on_lattice(dist, n);
  const double h = dist.span();
  const double sigma2 = dist.variance();
  const double dn = static_cast<double>(n);
  return h / std::sqrt(2.0 * std::numbers::pi * sigma2 * dn) *
         std::exp(-1.0 / (2.0 * dn * sigma2));
}

}  // namespace gwburn

#pragma once

#include <cstdint>
#include <optional>

#include "gwburn/offspring.hpp"
#include "gwburn/random.hpp"
#include "gwburn/tree.hpp"

namespace gwburn {

/// Default rejection budget: 1000 * ceil(sqrt(n)), far above the
/// Theta(sqrt(n)) expected attempt count, so hitting it signals a bug or an
/// invalid distribution rather than bad luck.
std::int64_t default_max_attempts(std::int64_t n);

struct ConditionedSample {
  Tree tree;
  std::int64_t attempts;  // i.i.d. draws of length n used, including the accepted one
};

/// Exact sample of the Galton-Watson tree conditioned to n vertices: draw
/// (xi_1..xi_n) i.i.d., accept when the sum is n-1, rotate to the unique
/// valid preorder sequence, build. Throws IncompatibleSizeError when
/// n mod span != 1 (the conditioning event has probability zero) and
/// RejectionLimitError past max_attempts. max_attempts < 0 selects the
/// default budget.
ConditionedSample sample_conditioned(const OffspringDistribution& dist, std::int64_t n,
                                     RandomStream& rng, std::int64_t max_attempts = -1);

struct UnconditionedSample {
  std::optional<Tree> tree;  // nullopt when the process outgrew size_cap
  std::int64_t size;         // vertices realized before stopping
};

/// Runs the branching process breadth-first with an explicit queue. Overflow
/// (size beyond size_cap) is a value, not a failure; tail experiments count it.
UnconditionedSample sample_unconditioned(const OffspringDistribution& dist,
                                         RandomStream& rng, std::int64_t size_cap);

struct HeightWalk {
  int height;        // deepest realized level; a lower bound when overflow
  bool overflow;
  std::int64_t size; // exact when !overflow
};

/// Level-count walk of the branching process: same BFS exploration as
/// sample_unconditioned but records only size and height. Allocation-free
/// hot path for the tail estimators.
HeightWalk unconditioned_height(const OffspringDistribution& dist, RandomStream& rng,
                                std::int64_t size_cap);

/// Local-limit approximation to Pr(S_n = n-1):
/// h / sqrt(2 pi sigma^2 n) * exp(-1 / (2 n sigma^2)).
double predicted_acceptance_rate(const OffspringDistribution& dist, std::int64_t n);

}  // namespace gwburn

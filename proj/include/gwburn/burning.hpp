#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gwburn/tree.hpp"

namespace gwburn {

inline constexpr int kDefaultExactNodeCap = 64;
inline constexpr std::int64_t kDefaultPairCap = 200'000'000;  // n(n-1)/2 budget, n <= 20000

/// Ordered fire sources; sources[t-1] is ignited in round t.
struct BurningSchedule {
  std::vector<Vertex> sources;
};

struct SimulationResult {
  int rounds_used;
  bool fully_burned;
};

/// Runs the burning process: in round t the scheduled source ignites (it must
/// be unburned when selected, else SourceAlreadyBurningError) and fire spreads
/// one step from every vertex burning at the end of the previous round. A
/// source ignited in round t therefore reaches B_{k-t} by the end of round k.
SimulationResult simulate_burning(const Tree& tree, const BurningSchedule& schedule);

struct CoverCertificate {
  std::vector<Vertex> centers;
  int radius = 0;
  int claimed_k = 0;
};

/// True iff the union of radius-cert.radius balls around cert.centers is the
/// whole vertex set; multi-source BFS, O(n).
bool verify_cover(const Tree& tree, const CoverCertificate& cert);

struct BallCover {
  int count;
  std::vector<Vertex> centers;
};

/// Minimum number of radius-r balls covering all vertices, via the greedy
/// deepest-uncovered sweep (children before parents; a center is forced when
/// an uncovered descendant sits at distance exactly r). Optimal on trees.
BallCover min_ball_cover(const Tree& tree, int radius);

struct BhatResult {
  int k;
  CoverCertificate certificate;
};

/// Covering surrogate: smallest k such that k balls of radius k cover the
/// tree. Scans k upward; the crossing is monotone since the cover count is
/// non-increasing in the radius while the budget grows.
BhatResult bhat_exact(const Tree& tree);

struct ExactBurning {
  int b;
  BurningSchedule schedule;
};

/// Exact burning number: minimum k such that balls of radii k-1, k-2, ..., 0
/// (centers may repeat) cover the tree, by iterative deepening from bhat with
/// branch-and-bound over center choices. The returned schedule is
/// process-legal and fully burns in exactly b rounds under simulate_burning.
/// Throws CapExceededError when n > node_cap.
ExactBurning burning_number_exact(const Tree& tree, int node_cap = kDefaultExactNodeCap);

/// Certificate with centers C_k^j union the root and radius 2k; such a cover
/// is always complete, which verify_cover confirms.
CoverCertificate scheme_cover(const Tree& tree, int k, int j);

struct SchemeBound {
  int bound;
  int k_used;
  int j_used;
};

/// First k with min_j |C_k^j| <= 2k-1 gives the constructive bound 4k.
SchemeBound scheme_upper_bound(const Tree& tree);

struct LowerBoundCertificate {
  int k;
  std::int64_t q_value;   // Q_{2k}
  double threshold;       // n^2/(2k) - n/2
};

struct PairLowerBound {
  int k;  // certifies bhat >= k+1; 0 when no k qualifies
  std::optional<LowerBoundCertificate> certificate;
};

/// Largest k with Q_{2k} < n^2/(2k) - n/2 (compared in exact integer
/// arithmetic). Throws CapExceededError when the pair counts do not fit the
/// work budget.
PairLowerBound pair_lower_bound(const Tree& tree, std::int64_t pair_cap = kDefaultPairCap);

struct KnownBounds {
  int dfs_cycle;  // ceil(sqrt(2(n-1)))
  int bessy;      // floor(sqrt(12n/7) + 3)
  int land_lu;    // ceil((sqrt(24n+33) - 3)/4)
  int bastide;    // ceil(sqrt(4n/3)) + 1
};

/// The four closed-form upper bounds for trees on n >= 2 vertices, evaluated
/// with exact integer square-root arithmetic.
KnownBounds known_bounds(std::int64_t n);

std::string cover_certificate_json(const CoverCertificate& cert);
std::string lower_bound_certificate_json(const LowerBoundCertificate& cert);

}  // namespace gwburn

#include "gwburn/burning.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "gwburn/errors.hpp"
#include "gwburn/stats.hpp"

namespace gwburn {

namespace {

void check_vertex(const Tree& tree, Vertex v, const char* what) {
  if (v < 1 || v > tree.n()) {
    throw InvalidParameterError(std::string(what) + ": vertex " + std::to_string(v) +
                                " out of range");
  }
}

std::int64_t isqrt64(std::int64_t x) {
  if (x < 0) throw InvalidParameterError("isqrt of negative value");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

std::int64_t ceil_sqrt64(std::int64_t x) {
  const std::int64_t r = isqrt64(x);
  return r * r == x ? r : r + 1;
}

}  // namespace

SimulationResult simulate_burning(const Tree& tree, const BurningSchedule& schedule) {
  const int n = tree.n();
  const int k = static_cast<int>(schedule.sources.size());
  std::vector<char> burned(n + 1, 0);
  std::vector<Vertex> frontier;
  std::vector<Vertex> next;
  int burned_count = 0;
  int completed_round = 0;
  for (int round = 1; round <= k; ++round) {
    const Vertex src = schedule.sources[round - 1];
    check_vertex(tree, src, "simulate_burning");
    // Legality is judged against the state before this round's spread.
    if (burned[src]) {
      throw SourceAlreadyBurningError(
          round, "source " + std::to_string(src) + " already burning in round " +
                     std::to_string(round));
    }
    next.clear();
    for (const Vertex v : frontier) {
      tree.for_each_neighbor(v, [&](Vertex u) {
        if (!burned[u]) {
          burned[u] = 1;
          ++burned_count;
          next.push_back(u);
        }
      });
    }
    if (!burned[src]) {
      burned[src] = 1;
      ++burned_count;
      next.push_back(src);
    }
    frontier.swap(next);
    if (completed_round == 0 && burned_count == n) completed_round = round;
  }
  return {completed_round == 0 ? k : completed_round, burned_count == n};
}

bool verify_cover(const Tree& tree, const CoverCertificate& cert) {
  if (cert.radius < 0) throw InvalidParameterError("verify_cover: negative radius");
  const int n = tree.n();
  std::vector<char> seen(n + 1, 0);
  std::vector<Vertex> frontier;
  int covered = 0;
  for (const Vertex c : cert.centers) {
    check_vertex(tree, c, "verify_cover");
    if (!seen[c]) {
      seen[c] = 1;
      ++covered;
      frontier.push_back(c);
    }
  }
  if (frontier.empty()) return false;
  std::vector<Vertex> next;
  for (int d = 1; d <= cert.radius && !frontier.empty(); ++d) {
    next.clear();
    for (const Vertex v : frontier) {
      tree.for_each_neighbor(v, [&](Vertex u) {
        if (!seen[u]) {
          seen[u] = 1;
          ++covered;
          next.push_back(u);
        }
      });
    }
    frontier.swap(next);
  }
  return covered == n;
}

BallCover min_ball_cover(const Tree& tree, int radius) {
  if (radius < 0) throw InvalidParameterError("min_ball_cover: negative radius");
  const int n = tree.n();
  // Children precede parents in reverse preorder, so one sweep suffices.
  // uncov[v]: distance to the farthest uncovered vertex in v's subtree, -1
  //           when none remain.
  // reach[v]: best remaining coverage power at v from centers already placed
  //           in v's subtree (radius minus distance), kNoReach when none.
  constexpr std::int32_t kNoReach = std::numeric_limits<std::int32_t>::min() / 2;
  std::vector<std::int32_t> uncov(n + 1, 0);
  std::vector<std::int32_t> reach(n + 1, kNoReach);
  std::vector<Vertex> centers;
  for (Vertex v = n; v >= 1; --v) {
    std::int32_t u = 0;
    std::int32_t r = kNoReach;
    tree.for_each_child(v, [&](Vertex w) {
      if (uncov[w] >= 0) u = std::max(u, uncov[w] + 1);
      r = std::max(r, reach[w] - 1);
    });
    if (r >= u) {
      u = -1;  // a center below v already reaches everything uncovered here
    } else if (u == radius) {
      centers.push_back(v);  // forced: one more edge would strand the deepest vertex
      r = radius;
      u = -1;
    }
    uncov[v] = u;
    reach[v] = r;
  }
  if (uncov[1] >= 0) centers.push_back(1);
  std::sort(centers.begin(), centers.end());
  return {static_cast<int>(centers.size()), std::move(centers)};
}

BhatResult bhat_exact(const Tree& tree) {
  for (int k = 1;; ++k) {
    BallCover cover = min_ball_cover(tree, k);
    if (cover.count <= k) {
      return {k, CoverCertificate{std::move(cover.centers), k, k}};
    }
  }
}

namespace {

// Branch-and-bound state for the exact ball-cover search with radii
// k-1, ..., 0 (centers may repeat across radii).
class ExactCoverSearch {
 public:
  ExactCoverSearch(const Tree& tree, const std::vector<std::int32_t>& dist, int k)
      : tree_(tree), n_(tree.n()), k_(k), words_((n_ + 63) / 64), dist_(dist) {
    ball_masks_.assign(static_cast<std::size_t>(n_) * k_ * words_, 0);
    for (Vertex v = 1; v <= n_; ++v) {
      for (Vertex u = 1; u <= n_; ++u) {
        const int d = dist_at(v, u);
        if (d < k_) {
          // u lies in B_rho(v) for every rho >= d
          for (int rho = d; rho < k_; ++rho) set_bit(ball(v, rho), u);
        }
      }
    }
    full_.assign(words_, 0);
    for (Vertex v = 1; v <= n_; ++v) set_bit(full_.data(), v);
    assignment_.assign(k_, 0);
    ecc_.assign(n_ + 1, 0);
    for (Vertex v = 1; v <= n_; ++v) {
      for (Vertex u = 1; u <= n_; ++u) ecc_[v] = std::max(ecc_[v], dist_at(v, u));
    }
  }

  bool run() {
    if (k_ > 63) {
      throw CapExceededError("exact burning search supports at most 63 rounds");
    }
    std::vector<std::uint64_t> covered(words_, 0);
    return search(covered, (std::uint64_t{1} << k_) - 1, 0);
  }

  const std::vector<Vertex>& assignment() const { return assignment_; }

 private:
  std::uint64_t* ball(Vertex v, int rho) {
    return ball_masks_.data() + (static_cast<std::size_t>(v - 1) * k_ + rho) * words_;
  }
  static void set_bit(std::uint64_t* mask, Vertex v) {
    mask[(v - 1) >> 6] |= std::uint64_t{1} << ((v - 1) & 63);
  }
  int dist_at(Vertex a, Vertex b) const { return dist_[a * (n_ + 1) + b]; }

  int uncovered_count(const std::vector<std::uint64_t>& covered) const {
    int cnt = 0;
    for (int w = 0; w < words_; ++w) cnt += std::popcount(full_[w] & ~covered[w]);
    return cnt;
  }

  int ball_gain(Vertex v, int rho, const std::vector<std::uint64_t>& covered) {
    const std::uint64_t* m = ball(v, rho);
    int cnt = 0;
    for (int w = 0; w < words_; ++w) cnt += std::popcount(m[w] & full_[w] & ~covered[w]);
    return cnt;
  }

  bool search(std::vector<std::uint64_t>& covered, std::uint64_t unused, int placed) {
    const int remaining = uncovered_count(covered);
    if (remaining == 0) return true;
    if (unused == 0) return false;

    // Bound: even placing every remaining ball greedily on its best vertex
    // cannot cover more than this many new vertices.
    int upper = 0;
    for (std::uint64_t bits = unused; bits != 0; bits &= bits - 1) {
      const int rho = std::countr_zero(bits);
      int best = 0;
      for (Vertex v = 1; v <= n_; ++v) best = std::max(best, ball_gain(v, rho, covered));
      upper += best;
      if (upper >= remaining) break;
    }
    if (upper < remaining) return false;

    // Branch vertex: uncovered, farthest from the chosen centers (max
    // eccentricity before any center exists); ties to the smallest index.
    Vertex target = 0;
    int best_score = -1;
    for (Vertex v = 1; v <= n_; ++v) {
      if ((covered[(v - 1) >> 6] >> ((v - 1) & 63)) & 1) continue;
      int score;
      if (placed == 0) {
        score = ecc_[v];
      } else {
        score = std::numeric_limits<int>::max();
        for (int rho = 0; rho < k_; ++rho) {
          if (assignment_[rho] != 0) score = std::min(score, dist_at(v, assignment_[rho]));
        }
      }
      if (score > best_score) {
        best_score = score;
        target = v;
      }
    }

    // Some remaining ball must cover the target; enumerate every way,
    // largest radius first.
    std::vector<std::uint64_t> child(words_);
    for (int rho = k_ - 1; rho >= 0; --rho) {
      if (!(unused >> rho & 1)) continue;
      for (Vertex v = 1; v <= n_; ++v) {
        if (dist_at(v, target) > rho) continue;
        const std::uint64_t* m = ball(v, rho);
        for (int w = 0; w < words_; ++w) child[w] = covered[w] | m[w];
        assignment_[rho] = v;
        if (search(child, unused & ~(std::uint64_t{1} << rho), placed + 1)) return true;
        assignment_[rho] = 0;
      }
    }
    return false;
  }

  const Tree& tree_;
  int n_;
  int k_;
  int words_;
  const std::vector<std::int32_t>& dist_;
  std::vector<std::uint64_t> ball_masks_;
  std::vector<std::uint64_t> full_;
  std::vector<Vertex> assignment_;
  std::vector<int> ecc_;
};

// Turns a radius assignment (center per radius, 0 = unused) into a
// process-legal schedule of exactly k rounds: ignite the intended center for
// radius k-t in round t when it is still unburned, otherwise substitute the
// unburned vertex farthest from the fire. A substituted center is already
// burning, so its ball stays covered; minimality of k guarantees an unburned
// vertex exists in every round.
BurningSchedule legalize_schedule(const Tree& tree, const std::vector<Vertex>& center_for_radius,
                                  int k, const std::vector<std::int32_t>& dist) {
  const int n = tree.n();
  std::vector<char> burned(n + 1, 0);
  std::vector<Vertex> frontier;
  std::vector<Vertex> next;
  std::vector<Vertex> sources;
  int burned_count = 0;
  for (int round = 1; round <= k; ++round) {
    Vertex src = 0;
    const Vertex intended = center_for_radius[k - round];
    if (intended != 0 && !burned[intended]) {
      src = intended;
    } else {
      int best = -1;
      for (Vertex v = 1; v <= n; ++v) {
        if (burned[v]) continue;
        int score = 0;
        if (burned_count > 0) {
          score = std::numeric_limits<int>::max();
          for (Vertex w = 1; w <= n; ++w) {
            if (burned[w]) score = std::min(score, static_cast<int>(dist[v * (n + 1) + w]));
          }
        }
        if (score > best) {
          best = score;
          src = v;
        }
      }
      if (src == 0) {
        throw InternalInvariantError("legalize_schedule: no unburned source available");
      }
    }
    sources.push_back(src);
    next.clear();
    for (const Vertex v : frontier) {
      tree.for_each_neighbor(v, [&](Vertex u) {
        if (!burned[u]) {
          burned[u] = 1;
          ++burned_count;
          next.push_back(u);
        }
      });
    }
    if (!burned[src]) {
      burned[src] = 1;
      ++burned_count;
      next.push_back(src);
    }
    frontier.swap(next);
  }
  if (burned_count != n) {
    throw InternalInvariantError("legalize_schedule: witness does not burn the tree");
  }
  return {std::move(sources)};
}

}  // namespace

ExactBurning burning_number_exact(const Tree& tree, int node_cap) {
  const int n = tree.n();
  if (n > node_cap) {
    throw CapExceededError("exact burning search capped at " + std::to_string(node_cap) +
                           " vertices, tree has " + std::to_string(n));
  }

  std::vector<std::int32_t> dist(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  {
    std::vector<std::int32_t> row;
    for (Vertex v = 1; v <= n; ++v) {
      tree.distances_from(v, row);
      std::copy(row.begin() + 1, row.end(), dist.begin() + v * (n + 1) + 1);
    }
  }

  const int lower = bhat_exact(tree).k;
  for (int k = lower; k <= 2 * lower; ++k) {
    ExactCoverSearch search(tree, dist, k);
    if (search.run()) {
      return {k, legalize_schedule(tree, search.assignment(), k, dist)};
    }
  }
  throw InternalInvariantError("exact burning search failed within the sandwich window");
}

CoverCertificate scheme_cover(const Tree& tree, int k, int j) {
  std::vector<Vertex> centers = tree.c_k_j(k, j);
  if (centers.empty() || centers.front() != 1) centers.insert(centers.begin(), 1);
  return {std::move(centers), 2 * k, k};
}

SchemeBound scheme_upper_bound(const Tree& tree) {
  for (int k = 1;; ++k) {
    const std::vector<std::int64_t> counts = tree.c_k_sizes(k);
    int arg = 0;
    std::int64_t best = counts[0];
    for (int j = 1; j < k; ++j) {
      if (counts[j] < best) {
        best = counts[j];
        arg = j;
      }
    }
    if (best <= 2 * static_cast<std::int64_t>(k) - 1) return {4 * k, k, arg};
  }
}

PairLowerBound pair_lower_bound(const Tree& tree, std::int64_t pair_cap) {
  const PairCountProfile profile = pair_counts(tree, pair_cap);
  const std::int64_t n = tree.n();
  int best_k = 0;
  std::int64_t best_q = 0;
  for (std::int64_t k = 1; k <= n; ++k) {
    const std::int64_t q = profile.q_at(static_cast<int>(std::min<std::int64_t>(2 * k, profile.n)));
    // Q_{2k} < n^2/(2k) - n/2, multiplied through by 2k to stay in integers.
    const auto lhs = static_cast<__int128>(2 * k) * q;
    const auto rhs = static_cast<__int128>(n) * n - static_cast<__int128>(k) * n;
    if (lhs < rhs) {
      best_k = static_cast<int>(k);
      best_q = q;
    } else {
      break;  // threshold shrinks and Q grows: once false, always false
    }
  }
  if (best_k == 0) return {0, std::nullopt};
  const double threshold =
      static_cast<double>(n) * static_cast<double>(n) / (2.0 * best_k) - n / 2.0;
  return {best_k, LowerBoundCertificate{best_k, best_q, threshold}};
}

KnownBounds known_bounds(std::int64_t n) {
  if (n < 2) throw InvalidParameterError("known_bounds requires n >= 2");
  KnownBounds out{};
  out.dfs_cycle = static_cast<int>(ceil_sqrt64(2 * (n - 1)));

  // floor(sqrt(12n/7)) + 3: the largest f with 7 f^2 <= 12 n.
  std::int64_t f = isqrt64(12 * n / 7);
  while (7 * (f + 1) * (f + 1) <= 12 * n) ++f;
  while (f > 0 && 7 * f * f > 12 * n) --f;
  out.bessy = static_cast<int>(f + 3);

  // ceil((sqrt(24n+33) - 3)/4): the smallest m with (4m+3)^2 >= 24n+33.
  const std::int64_t t = 24 * n + 33;
  std::int64_t m = (isqrt64(t) - 3) / 4 - 1;
  if (m < 0) m = 0;
  while ((4 * m + 3) * (4 * m + 3) < t) ++m;
  out.land_lu = static_cast<int>(m);

  // ceil(sqrt(4n/3)) + 1: the smallest m with 3 m^2 >= 4 n.
  std::int64_t b = isqrt64(4 * n / 3);
  while (b > 0 && 3 * (b - 1) * (b - 1) >= 4 * n) --b;
  while (3 * b * b < 4 * n) ++b;
  out.bastide = static_cast<int>(b + 1);
  return out;
}

std::string cover_certificate_json(const CoverCertificate& cert) {
  nlohmann::json j;
  j["centers"] = cert.centers;
  j["radius"] = cert.radius;
  j["claimed_k"] = cert.claimed_k;
  return j.dump();
}

std::string lower_bound_certificate_json(const LowerBoundCertificate& cert) {
  nlohmann::json j;
  j["k"] = cert.k;
  j["q_value"] = cert.q_value;
  j["threshold"] = cert.threshold;
  return j.dump();
}

}  // namespace gwburn

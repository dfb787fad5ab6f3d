#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>

#include <doctest.h>

#include "gwburn/burning.hpp"
#include "gwburn/errors.hpp"
#include "gwburn/sampler.hpp"
#include "gwburn/tree.hpp"

using namespace gwburn;

namespace {

DegreeSequence path_degrees(int n) {
  DegreeSequence d(n, 1);
  d.back() = 0;
  return d;
}

DegreeSequence star_degrees(int leaves) {
  DegreeSequence d(leaves + 1, 0);
  d[0] = leaves;
  return d;
}

int ceil_sqrt_int(int x) {
  int r = 0;
  while (r * r < x) ++r;
  return r;
}

// Test-only oracle: does any assignment of balls with radii k-1, ..., 0
// (repeats allowed) cover the tree? Pure enumeration, independent of the
// solver's branching and pruning.
bool oracle_cover_exists(const Tree& t, int k) {
  const int n = t.n();
  std::vector<std::vector<std::uint32_t>> mask(k);
  for (int rho = 0; rho < k; ++rho) {
    mask[rho].assign(n + 1, 0);
    for (Vertex v = 1; v <= n; ++v) {
      for (const Vertex u : t.ball(v, rho)) mask[rho][v] |= 1u << (u - 1);
    }
  }
  const std::uint32_t full = (1u << n) - 1;
  std::function<bool(int, std::uint32_t)> rec = [&](int i, std::uint32_t covered) {
    if (covered == full) return true;
    if (i < 0) return false;
    for (Vertex v = 1; v <= n; ++v) {
      if (rec(i - 1, covered | mask[i][v])) return true;
    }
    return false;
  };
  return rec(k - 1, 0);
}

int oracle_burning_number(const Tree& t) {
  for (int k = 1;; ++k) {
    if (oracle_cover_exists(t, k)) return k;
  }
}

}  // namespace

TEST_CASE("simulate_burning on the single vertex") {
  const Tree single({0});
  const SimulationResult r = simulate_burning(single, {{1}});
  CHECK(r.rounds_used == 1);
  CHECK(r.fully_burned);
}

TEST_CASE("simulate_burning follows the spread-then-next-source rule on P_9") {
  const Tree p9(path_degrees(9));
  // Sources at rounds 1..3 reach radii 2, 1, 0 by round 3.
  const SimulationResult good = simulate_burning(p9, {{3, 7, 9}});
  CHECK(good.fully_burned);
  CHECK(good.rounds_used == 3);

  // The middle-heavy schedule covers B_2(5), B_1(2), B_0(8): vertex 9 stays
  // unburned.
  const SimulationResult partial = simulate_burning(p9, {{5, 2, 8}});
  CHECK_FALSE(partial.fully_burned);

  // No 2-round schedule burns 9 path vertices: B_1 + B_0 cover at most 4.
  for (Vertex a = 1; a <= 9; ++a) {
    for (Vertex b = 1; b <= 9; ++b) {
      if (a == b) continue;
      if (p9.distance(a, b) == 1) continue;  // b would pre-burn; also never enough
      CHECK_FALSE(simulate_burning(p9, {{a, b}}).fully_burned);
    }
  }
}

TEST_CASE("a source must be unburned when selected") {
  const Tree p3(path_degrees(3));
  CHECK_THROWS_AS(simulate_burning(p3, {{2, 2}}), SourceAlreadyBurningError);
  // vertex 2 ignites round 1, spreads in round 2: picking 1 then is illegal
  CHECK_THROWS_AS(simulate_burning(p3, {{2, 1}}), SourceAlreadyBurningError);
  try {
    simulate_burning(p3, {{2, 1}});
  } catch (const SourceAlreadyBurningError& e) {
    CHECK(e.round_index == 2);
  }
  CHECK_THROWS_AS(simulate_burning(p3, {{0}}), InvalidParameterError);
}

TEST_CASE("burning number on paths matches the square-root formula") {
  for (const int n : {1, 2, 3, 4, 9, 16, 17, 25, 36}) {
    const Tree p(path_degrees(n));
    CHECK(burning_number_exact(p).b == ceil_sqrt_int(n));
  }
}

TEST_CASE("burning number of the 5-leaf star is 2") {
  const Tree star(star_degrees(5));
  const ExactBurning res = burning_number_exact(star);
  CHECK(res.b == 2);
  const SimulationResult sim = simulate_burning(star, res.schedule);
  CHECK(sim.fully_burned);
  CHECK(sim.rounds_used == 2);
}

TEST_CASE("node cap guards the exact search") {
  const Tree p(path_degrees(65));
  CHECK_THROWS_AS(burning_number_exact(p, 64), CapExceededError);
  CHECK_NOTHROW(burning_number_exact(p, 65));
}

TEST_CASE("exact solver agrees with the enumeration oracle (s <= 8)") {
  for (int s = 1; s <= 8; ++s) {
    enumerate_trees(s, [&](const DegreeSequence& degrees) {
      const Tree t(degrees);
      CHECK(burning_number_exact(t).b == oracle_burning_number(t));
    });
  }
}

TEST_CASE("witness schedules are legal and realize b exactly (s <= 10)") {
  for (int s = 1; s <= 10; ++s) {
    enumerate_trees(s, [&](const DegreeSequence& degrees) {
      const Tree t(degrees);
      const ExactBurning res = burning_number_exact(t);
      REQUIRE(static_cast<int>(res.schedule.sources.size()) == res.b);
      const SimulationResult sim = simulate_burning(t, res.schedule);
      CHECK(sim.fully_burned);
      CHECK(sim.rounds_used == res.b);
    });
  }
}

TEST_CASE("min_ball_cover handles the named shapes") {
  const Tree p5(path_degrees(5));
  CHECK(min_ball_cover(p5, 1).count == 2);
  CHECK(min_ball_cover(p5, 4).count == 1);

  const Tree star(star_degrees(5));
  CHECK(min_ball_cover(star, 0).count == 6);
  CHECK(min_ball_cover(star, 2).count == 1);

  const Tree single({0});
  CHECK(min_ball_cover(single, 0).count == 1);
  CHECK_THROWS_AS(min_ball_cover(single, -1), InvalidParameterError);
}

TEST_CASE("min_ball_cover centers actually cover at their radius") {
  const auto dist = OffspringDistribution::geometric_half();
  for (int trial = 0; trial < 20; ++trial) {
    RandomStream rng(400, static_cast<std::uint64_t>(trial));
    const Tree t = sample_conditioned(dist, 41, rng).tree;
    for (int radius = 0; radius <= 4; ++radius) {
      const BallCover cover = min_ball_cover(t, radius);
      CHECK(verify_cover(t, {cover.centers, radius, 0}));
    }
  }
}

TEST_CASE("bhat_exact on paths and the certificate verifies") {
  const Tree p9(path_degrees(9));
  const BhatResult res = bhat_exact(p9);
  CHECK(res.k == 2);
  CHECK(res.certificate.radius == 2);
  CHECK(verify_cover(p9, res.certificate));

  const Tree single({0});
  CHECK(bhat_exact(single).k == 1);
}

TEST_CASE("sandwich holds exhaustively for s <= 7") {
  for (int s = 1; s <= 7; ++s) {
    enumerate_trees(s, [&](const DegreeSequence& degrees) {
      const Tree t(degrees);
      const int bhat = bhat_exact(t).k;
      const int b = burning_number_exact(t).b;
      CHECK(bhat <= b);
      CHECK(b <= 2 * bhat);
    });
  }
}

TEST_CASE("scheme_cover fulfills the covering guarantee") {
  const Tree single({0});
  const CoverCertificate base = scheme_cover(single, 1, 0);
  CHECK(base.centers == std::vector<Vertex>{1});
  CHECK(base.radius == 2);
  CHECK(verify_cover(single, base));

  const Tree p7(path_degrees(7));
  const CoverCertificate cert = scheme_cover(p7, 2, 0);
  CHECK(cert.centers == std::vector<Vertex>{1, 3, 5});  // root overlaps the C set
  CHECK(cert.radius == 4);
  CHECK(verify_cover(p7, cert));

  // j != 0 keeps the root as an extra center
  const CoverCertificate j1 = scheme_cover(p7, 2, 1);
  CHECK(j1.centers.front() == 1);
  CHECK(verify_cover(p7, j1));
}

TEST_CASE("scheme_upper_bound returns a witnessing pair and a true bound") {
  const Tree single({0});
  const SchemeBound sb = scheme_upper_bound(single);
  CHECK(sb.bound == 4);
  CHECK(sb.k_used == 1);

  for (const int n : {9, 17, 33}) {
    const Tree p(path_degrees(n));
    const SchemeBound bound = scheme_upper_bound(p);
    CHECK(bound.bound >= burning_number_exact(p).b);
    const auto sizes = p.c_k_sizes(bound.k_used);
    CHECK(sizes[bound.j_used] <= 2 * bound.k_used - 1);
    CHECK(bound.bound == 4 * bound.k_used);
  }
}

TEST_CASE("pair_lower_bound certifies below bhat") {
  const Tree single({0});
  const PairLowerBound none = pair_lower_bound(single);
  CHECK(none.k == 0);
  CHECK_FALSE(none.certificate.has_value());

  const Tree p100(path_degrees(100));
  const PairLowerBound lb = pair_lower_bound(p100);
  CHECK(lb.k == 5);  // Q_10 = 945 < 10000/10 - 50 = 950; k = 6 fails
  REQUIRE(lb.certificate.has_value());
  CHECK(lb.certificate->q_value == 945);
  CHECK(lb.certificate->threshold == doctest::Approx(950.0));
  CHECK(lb.k + 1 <= bhat_exact(p100).k);
}

TEST_CASE("pair lower bound is sound on every small tree (s <= 8)") {
  for (int s = 1; s <= 8; ++s) {
    enumerate_trees(s, [&](const DegreeSequence& degrees) {
      const Tree t(degrees);
      CHECK(pair_lower_bound(t).k + 1 <= bhat_exact(t).k);
    });
  }
}

TEST_CASE("known_bounds evaluates the closed forms exactly") {
  const KnownBounds at2 = known_bounds(2);
  CHECK(at2.dfs_cycle == 2);

  const KnownBounds at100 = known_bounds(100);
  CHECK(at100.dfs_cycle == 15);
  CHECK(at100.bessy == 16);
  CHECK(at100.land_lu == 12);
  CHECK(at100.bastide == 13);

  CHECK_THROWS_AS(known_bounds(1), InvalidParameterError);

  // perfect squares must not ride on floating error
  const KnownBounds at73 = known_bounds(73);  // 2(n-1) = 144
  CHECK(at73.dfs_cycle == 12);
}

TEST_CASE("bound ordering holds pointwise on sampled trees") {
  const auto dist = OffspringDistribution::poisson1();
  for (int trial = 0; trial < 50; ++trial) {
    RandomStream rng(500, static_cast<std::uint64_t>(trial));
    const std::int64_t n = 5 + (trial % 36);
    const Tree t = sample_conditioned(dist, n, rng).tree;
    const int bhat = bhat_exact(t).k;
    const int b = burning_number_exact(t).b;
    const int scheme = scheme_upper_bound(t).bound;
    const int pair_lb = pair_lower_bound(t).k;
    CHECK(pair_lb + 1 <= bhat);
    CHECK(bhat <= b);
    CHECK(b <= 2 * bhat);
    CHECK(b <= scheme);
    if (n >= 2) {
      const KnownBounds kb = known_bounds(n);
      CHECK(b <= kb.dfs_cycle);
      CHECK(b <= kb.bessy);
      CHECK(b <= kb.land_lu);
      CHECK(b <= kb.bastide);
    }
  }
}

TEST_CASE("verify_cover on hand-built certificates") {
  const Tree p5(path_degrees(5));
  CHECK(verify_cover(p5, {{1, 2, 3, 4, 5}, 0, 0}));
  CHECK_FALSE(verify_cover(p5, {{1}, 1, 0}));
  CHECK(verify_cover(p5, {{1}, 4, 0}));
  CHECK_FALSE(verify_cover(p5, {{}, 3, 0}));
  CHECK_THROWS_AS(verify_cover(p5, {{6}, 1, 0}), InvalidParameterError);

  const Tree example({1, 2, 2, 0, 0, 1, 0});
  CHECK(verify_cover(example, {{1}, example.height(), 0}));
}

TEST_CASE("certificates serialize to JSON") {
  const CoverCertificate cover{{1, 3, 5}, 4, 2};
  CHECK(cover_certificate_json(cover) == R"({"centers":[1,3,5],"claimed_k":2,"radius":4})");
  const LowerBoundCertificate lb{5, 945, 950.0};
  CHECK(lower_bound_certificate_json(lb) == R"({"k":5,"q_value":945,"threshold":950.0})");
}

TEST_CASE("conjecture sweep up to s = 12 (reported, not asserted)") {
  std::int64_t violations = 0;
  std::int64_t trees = 0;
  for (int s = 1; s <= 12; ++s) {
    enumerate_trees(s, [&](const DegreeSequence& degrees) {
      const Tree t(degrees);
      int r = 0;
      while (r * r < s) ++r;
      if (burning_number_exact(t).b > r) ++violations;
      ++trees;
    });
  }
  std::cout << "[conjecture-sweep] b <= ceil(sqrt(n)) violated " << violations << " of "
            << trees << " trees with n <= 12\n";
  CHECK(trees == 1 + 1 + 2 + 5 + 14 + 42 + 132 + 429 + 1430 + 4862 + 16796 + 58786);
}

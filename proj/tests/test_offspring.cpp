#include <cmath>
#include <sstream>

#include <doctest.h>

#include "gwburn/errors.hpp"
#include "gwburn/offspring.hpp"
#include "gwburn/random.hpp"

using namespace gwburn;

namespace {

struct Moments {
  double mean;
  double variance;
};

Moments empirical_moments(const OffspringDistribution& dist, std::int64_t draws,
                          std::uint64_t seed) {
  RandomStream rng(seed, 0);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t i = 0; i < draws; ++i) {
    const double x = dist.sample(rng);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / draws;
  return {mean, sum_sq / draws - mean * mean};
}

Moments table_moments(const OffspringDistribution& dist) {
  double mean = 0.0;
  for (const auto& [v, p] : dist.pmf()) mean += v * p;
  double var = 0.0;
  for (const auto& [v, p] : dist.pmf()) var += (v - mean) * (v - mean) * p;
  return {mean, var};
}

}  // namespace

TEST_CASE("builtin laws have the advertised moments and spans") {
  const auto geo = OffspringDistribution::geometric_half();
  CHECK(geo.mean() == doctest::Approx(1.0));
  CHECK(geo.variance() == doctest::Approx(2.0));
  CHECK(geo.span() == 1);

  const auto two = OffspringDistribution::two_point(2);
  CHECK(two.pmf_at(0) == doctest::Approx(0.5));
  CHECK(two.pmf_at(2) == doctest::Approx(0.5));
  CHECK(two.mean() == doctest::Approx(1.0));
  CHECK(two.variance() == doctest::Approx(1.0));
  CHECK(two.span() == 2);

  const auto bin = OffspringDistribution::binomial(2);
  CHECK(bin.pmf_at(0) == doctest::Approx(0.25));
  CHECK(bin.pmf_at(1) == doctest::Approx(0.5));
  CHECK(bin.pmf_at(2) == doctest::Approx(0.25));
  CHECK(bin.span() == 1);

  const auto poi = OffspringDistribution::poisson1();
  CHECK(poi.pmf_at(0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(poi.span() == 1);
}

TEST_CASE("tabulated pmf moments match analytic values to 1e-9") {
  for (const auto& dist :
       {OffspringDistribution::poisson1(), OffspringDistribution::geometric_half(),
        OffspringDistribution::binomial(2), OffspringDistribution::binomial(5),
        OffspringDistribution::two_point(2), OffspringDistribution::two_point(3)}) {
    double total = 0.0;
    for (const auto& [v, p] : dist.pmf()) total += p;
    CHECK(std::abs(total - 1.0) <= 1e-12);
    const Moments m = table_moments(dist);
    CHECK(std::abs(m.mean - dist.mean()) <= 1e-9);
    CHECK(std::abs(m.variance - dist.variance()) <= 1e-9);
  }
}

TEST_CASE("span is the gcd of the positive support") {
  CHECK(span_of_support({1, 2}) == 1);
  CHECK(span_of_support({2}) == 2);
  CHECK(span_of_support({3, 6}) == 3);
  CHECK(OffspringDistribution::two_point(3).span() == 3);

  // span >= 2 exactly when the positive support shares a divisor >= 2
  const auto custom = OffspringDistribution::from_pmf("span4", {{0, 0.75}, {4, 0.25}});
  CHECK(custom.span() == 4);
}

TEST_CASE("invalid parameters and pmfs are rejected") {
  CHECK_THROWS_AS(OffspringDistribution::binomial(1), InvalidParameterError);
  CHECK_THROWS_AS(OffspringDistribution::two_point(1), InvalidParameterError);
  // mean != 1 is rejected, not renormalized
  CHECK_THROWS_AS(OffspringDistribution::from_pmf("half", {{0, 0.5}, {1, 0.5}}),
                  InvalidParameterError);
  // P(0) = 0 violates criticality
  CHECK_THROWS_AS(OffspringDistribution::from_pmf("noleaf", {{1, 1.0}}),
                  InvalidParameterError);
  // probabilities must sum to 1
  CHECK_THROWS_AS(OffspringDistribution::from_pmf("short", {{0, 0.5}, {2, 0.4}}),
                  InvalidParameterError);
  // values must increase
  CHECK_THROWS_AS(OffspringDistribution::from_pmf("dup", {{0, 0.5}, {0, 0.5}}),
                  InvalidParameterError);
}

TEST_CASE("pmf files parse values, probabilities, and comments") {
  std::istringstream good("# two-point law\n0 0.5\n2 0.5  # upper atom\n");
  const auto dist = OffspringDistribution::parse_pmf(good, "inline");
  CHECK(dist.span() == 2);
  CHECK(dist.variance() == doctest::Approx(1.0));

  std::istringstream bad_order("2 0.5\n0 0.5\n");
  CHECK_THROWS_AS(OffspringDistribution::parse_pmf(bad_order, "inline"),
                  InvalidParameterError);

  std::istringstream missing_prob("0 0.5\n2\n");
  CHECK_THROWS_AS(OffspringDistribution::parse_pmf(missing_prob, "inline"),
                  InvalidParameterError);
}

TEST_CASE("spec strings map to the right builtins") {
  CHECK(OffspringDistribution::parse_spec("poisson").name() == "poisson1");
  CHECK(OffspringDistribution::parse_spec("geometric").name() == "geometric_half");
  CHECK(OffspringDistribution::parse_spec("binomial:3").name() == "binomial_3");
  CHECK(OffspringDistribution::parse_spec("two_point:2").span() == 2);
  CHECK_THROWS_AS(OffspringDistribution::parse_spec("cauchy"), InvalidParameterError);
  CHECK_THROWS_AS(OffspringDistribution::parse_spec("binomial:x"), InvalidParameterError);
}

TEST_CASE("two_point samples stay on the support") {
  const auto dist = OffspringDistribution::two_point(2);
  RandomStream rng(7, 0);
  for (int i = 0; i < 2000; ++i) {
    const int v = dist.sample(rng);
    CHECK((v == 0 || v == 2));
  }
}

TEST_SUITE("statistical") {

TEST_CASE("empirical moments match analytic ones within 5 standard errors") {
  constexpr std::int64_t kDraws = 1000000;
  for (const auto& dist :
       {OffspringDistribution::poisson1(), OffspringDistribution::geometric_half(),
        OffspringDistribution::binomial(3), OffspringDistribution::two_point(2)}) {
    const Moments m = empirical_moments(dist, kDraws, 42);
    const double se_mean = std::sqrt(dist.variance() / kDraws);
    CHECK(std::abs(m.mean - dist.mean()) <= 5 * se_mean);
    // crude bound on the variance sampling error via the fourth moment
    CHECK(std::abs(m.variance - dist.variance()) <= 0.05 * dist.variance() + 5 * se_mean);
  }
}

TEST_CASE("poisson1 hits P(0) = 1/e within 4 standard errors") {
  const auto dist = OffspringDistribution::poisson1();
  RandomStream rng(3, 0);
  constexpr std::int64_t kDraws = 1000000;
  std::int64_t zeros = 0;
  for (std::int64_t i = 0; i < kDraws; ++i) {
    if (dist.sample(rng) == 0) ++zeros;
  }
  const double p = std::exp(-1.0);
  const double se = std::sqrt(p * (1 - p) / kDraws);
  CHECK(std::abs(static_cast<double>(zeros) / kDraws - p) <= 4 * se);
}

TEST_CASE("geometric_half empirical mean within 4 standard errors of 1") {
  const auto dist = OffspringDistribution::geometric_half();
  const Moments m = empirical_moments(dist, 1000000, 11);
  const double se = std::sqrt(2.0 / 1000000);
  CHECK(std::abs(m.mean - 1.0) <= 4 * se);
}

}  // TEST_SUITE

TEST_CASE("random streams are reproducible and distinct") {
  RandomStream a(123, 5);
  RandomStream b(123, 5);
  RandomStream c(123, 6);
  bool all_equal = true;
  bool any_diff_c = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    if (x != b.next_u64()) all_equal = false;
    if (x != c.next_u64()) any_diff_c = true;
  }
  CHECK(all_equal);
  CHECK(any_diff_c);
}

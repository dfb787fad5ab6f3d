#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gwburn/random.hpp"

namespace gwburn {

enum class OffspringKind { Poisson1, GeometricHalf, BinomialD, TwoPoint, Custom };

/// Critical offspring law: mean 1, finite positive variance, P(0) > 0,
/// P(1) < 1. Builtins sample by closed form; custom laws by inverse CDF over
/// their finite table. Immutable after construction and safe to share across
/// concurrent trials.
class OffspringDistribution {
 public:
  static OffspringDistribution poisson1();
  static OffspringDistribution geometric_half();
  static OffspringDistribution binomial(int d);
  static OffspringDistribution two_point(int m);

  /// Finite pmf given as (value, probability) pairs, values strictly
  /// increasing. Rejects laws that are not critical; mean != 1 is an error,
  /// never silently renormalized.
  static OffspringDistribution from_pmf(std::string name,
                                        std::vector<std::pair<int, double>> pmf);

  /// Plain-text pmf file: lines "value probability", '#' comments.
  static OffspringDistribution load_pmf_file(const std::string& path);
  static OffspringDistribution parse_pmf(std::istream& in, std::string name);

  /// CLI spec string: poisson | geometric | binomial:d | two_point:m | custom:FILE.
  static OffspringDistribution parse_spec(const std::string& spec);

  const std::string& name() const { return name_; }
  OffspringKind kind() const { return kind_; }
  double mean() const { return mean_; }
  double variance() const { return variance_; }

  /// gcd of the strictly positive support values.
  int span() const { return span_; }

  /// Tabulated pmf, tail-truncated below 1e-12 total mass for unbounded laws
  /// and renormalized. Used for reporting and moment checks, not sampling.
  const std::vector<std::pair<int, double>>& pmf() const { return pmf_; }
  double pmf_at(int value) const;

  /// Exact draw from the law. Builtins use closed-form samplers with no
  /// truncation bias; custom laws use table lookup.
  int sample(RandomStream& rng) const;

 private:
  OffspringDistribution() = default;

  std::string name_;
  OffspringKind kind_ = OffspringKind::Custom;
  int param_ = 0;  // d for binomial, m for two_point
  std::vector<std::pair<int, double>> pmf_;
  std::vector<double> cdf_;  // cumulative pmf, used by table sampling
  double mean_ = 0.0;
  double variance_ = 0.0;
  int span_ = 1;

  void finalize_and_validate();
};

/// gcd of the given positive support values; 1 for an empty list.
int span_of_support(const std::vector<int>& positive_support);

}  // namespace gwburn

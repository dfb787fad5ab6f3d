#include "gwburn/offspring.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "gwburn/errors.hpp"

namespace gwburn {

namespace {

constexpr double kPmfSumTolerance = 1e-12;
constexpr double kMeanTolerance = 1e-9;
constexpr double kTailTruncation = 1e-12;

}  // namespace

int span_of_support(const std::vector<int>& positive_support) {
  int g = 0;
  for (int v : positive_support) g = std::gcd(g, v);
  return g == 0 ? 1 : g;
}

void OffspringDistribution::finalize_and_validate() {
  if (pmf_.empty()) throw InvalidParameterError("offspring pmf is empty");
  double sum = 0.0;
  int prev = -1;
  std::vector<int> positive;
  for (const auto& [value, prob] : pmf_) {
    if (value < 0) throw InvalidParameterError("offspring values must be non-negative");
    if (value <= prev) throw InvalidParameterError("offspring values must be strictly increasing");
    if (prob < 0.0 || prob > 1.0) throw InvalidParameterError("offspring probabilities must be in [0,1]");
    if (value > 0 && prob > 0.0) positive.push_back(value);
    sum += prob;
    prev = value;
  }
  if (std::abs(sum - 1.0) > kPmfSumTolerance) {
    throw InvalidParameterError(name_ + ": pmf sums to " + std::to_string(sum) + ", not 1");
  }

  double mean = 0.0;
  for (const auto& [value, prob] : pmf_) mean += value * prob;
  double var = 0.0;
  for (const auto& [value, prob] : pmf_) var += (value - mean) * (value - mean) * prob;

  // Builtins keep their analytic moments; custom laws take the tabulated ones.
  if (kind_ == OffspringKind::Custom) {
    if (std::abs(mean - 1.0) > kMeanTolerance) {
      throw InvalidParameterError(name_ + ": mean is " + std::to_string(mean) +
                                  "; laws with mean != 1 are rejected, not renormalized");
    }
    mean_ = mean;
    variance_ = var;
  }
  if (!(variance_ > 0.0) || !std::isfinite(variance_)) {
    throw InvalidParameterError(name_ + ": variance must be positive and finite");
  }
  if (pmf_.front().first != 0 || pmf_.front().second <= 0.0) {
    throw InvalidParameterError(name_ + ": criticality requires P(0) > 0");
  }
  if (pmf_at(1) >= 1.0) {
    throw InvalidParameterError(name_ + ": P(1) must be < 1");
  }
  span_ = span_of_support(positive);

  cdf_.clear();
  cdf_.reserve(pmf_.size());
  double acc = 0.0;
  for (const auto& [value, prob] : pmf_) {
    acc += prob;
    cdf_.push_back(acc);
  }
  cdf_.back() = 1.0;
}

double OffspringDistribution::pmf_at(int value) const {
  auto it = std::lower_bound(pmf_.begin(), pmf_.end(), value,
                             [](const auto& entry, int v) { return entry.first < v; });
  if (it == pmf_.end() || it->first != value) return 0.0;
  return it->second;
}

OffspringDistribution OffspringDistribution::poisson1() {
  OffspringDistribution d;
  d.name_ = "poisson1";
  d.kind_ = OffspringKind::Poisson1;
  d.mean_ = 1.0;
  d.variance_ = 1.0;
  // Tabulate until the remaining tail mass drops below 1e-12, then
  // renormalize. Sampling does not use the table, so there is no bias.
  double term = std::exp(-1.0);
  double cum = term;
  d.pmf_.push_back({0, term});
  for (int k = 1; 1.0 - cum >= kTailTruncation; ++k) {
    term /= k;
    cum += term;
    d.pmf_.push_back({k, term});
  }
  for (auto& [value, prob] : d.pmf_) prob /= cum;
  d.finalize_and_validate();
  return d;
}

OffspringDistribution OffspringDistribution::geometric_half() {
  OffspringDistribution d;
  d.name_ = "geometric_half";
  d.kind_ = OffspringKind::GeometricHalf;
  d.mean_ = 1.0;
  d.variance_ = 2.0;
  double term = 0.5;
  double cum = 0.0;
  for (int k = 0; 1.0 - cum >= kTailTruncation; ++k) {
    d.pmf_.push_back({k, term});
    cum += term;
    term *= 0.5;
  }
  for (auto& [value, prob] : d.pmf_) prob /= cum;
  d.finalize_and_validate();
  return d;
}

OffspringDistribution OffspringDistribution::binomial(int dparam) {
  if (dparam < 2) throw InvalidParameterError("binomial offspring requires d >= 2");
  if (dparam > (1 << 20)) throw InvalidParameterError("binomial d too large");
  OffspringDistribution d;
  d.name_ = "binomial_" + std::to_string(dparam);
  d.kind_ = OffspringKind::BinomialD;
  d.param_ = dparam;
  d.mean_ = 1.0;
  d.variance_ = 1.0 - 1.0 / dparam;
  const double p = 1.0 / dparam;
  double term = std::pow(1.0 - p, dparam);  // P(0)
  double total = 0.0;
  for (int k = 0; k <= dparam; ++k) {
    if (k > 0) term *= (dparam - k + 1) * p / (k * (1.0 - p));
    d.pmf_.push_back({k, term});
    total += term;
  }
  for (auto& [value, prob] : d.pmf_) prob /= total;
  d.finalize_and_validate();
  return d;
}

OffspringDistribution OffspringDistribution::two_point(int m) {
  if (m < 2) throw InvalidParameterError("two_point offspring requires m >= 2");
  OffspringDistribution d;
  d.name_ = "two_point_" + std::to_string(m);
  d.kind_ = OffspringKind::TwoPoint;
  d.param_ = m;
  d.mean_ = 1.0;
  d.variance_ = m - 1.0;  // E[xi^2] = m^2/m = m
  d.pmf_.push_back({0, 1.0 - 1.0 / m});
  d.pmf_.push_back({m, 1.0 / m});
  d.finalize_and_validate();
  return d;
}

OffspringDistribution OffspringDistribution::from_pmf(
    std::string name, std::vector<std::pair<int, double>> pmf) {
  OffspringDistribution d;
  d.name_ = std::move(name);
  d.kind_ = OffspringKind::Custom;
  d.pmf_ = std::move(pmf);
  d.finalize_and_validate();
  return d;
}

OffspringDistribution OffspringDistribution::parse_pmf(std::istream& in, std::string name) {
  std::vector<std::pair<int, double>> pmf;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    long long value;
    double prob;
    if (!(ss >> value)) continue;  // blank or comment-only line
    if (!(ss >> prob)) {
      throw InvalidParameterError(name + ":" + std::to_string(lineno) +
                                  ": expected 'value probability'");
    }
    std::string trailing;
    if (ss >> trailing) {
      throw InvalidParameterError(name + ":" + std::to_string(lineno) + ": trailing tokens");
    }
    if (value < 0 || value > (1 << 30)) {
      throw InvalidParameterError(name + ":" + std::to_string(lineno) + ": value out of range");
    }
    pmf.push_back({static_cast<int>(value), prob});
  }
  return from_pmf(std::move(name), std::move(pmf));
}

OffspringDistribution OffspringDistribution::load_pmf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameterError("cannot open pmf file: " + path);
  return parse_pmf(in, path);
}

OffspringDistribution OffspringDistribution::parse_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto int_arg = [&](const char* what) {
    try {
      size_t pos = 0;
      const int v = std::stoi(arg, &pos);
      if (pos != arg.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw InvalidParameterError(std::string(what) + " needs an integer argument, got '" +
                                  arg + "'");
    }
  };
  if (head == "poisson" || head == "poisson1") return poisson1();
  if (head == "geometric" || head == "geometric_half") return geometric_half();
  if (head == "binomial") return binomial(int_arg("binomial:d"));
  if (head == "two_point") return two_point(int_arg("two_point:m"));
  if (head == "custom") {
    if (arg.empty()) throw InvalidParameterError("custom:FILE needs a path");
    return load_pmf_file(arg);
  }
  throw InvalidParameterError("unknown offspring spec '" + spec + "'");
}

int OffspringDistribution::sample(RandomStream& rng) const {
  switch (kind_) {
    case OffspringKind::Poisson1: {
      // Knuth product method at lambda = 1.
      static const double kThreshold = std::exp(-1.0);
      int k = 0;
      double p = rng.next_double();
      while (p > kThreshold) {
        p *= rng.next_double();
        ++k;
      }
      return k;
    }
    case OffspringKind::GeometricHalf: {
      // Failures before the first set bit; each draw supplies 64 fair coins.
      int base = 0;
      for (;;) {
        const std::uint64_t x = rng.next_u64();
        if (x != 0) return base + std::countr_zero(x);
        base += 64;
      }
    }
    case OffspringKind::BinomialD: {
      int count = 0;
      for (int i = 0; i < param_; ++i) {
        if (rng.next_below(static_cast<std::uint64_t>(param_)) == 0) ++count;
      }
      return count;
    }
    case OffspringKind::TwoPoint:
      return rng.next_below(static_cast<std::uint64_t>(param_)) == 0 ? param_ : 0;
    case OffspringKind::Custom: {
      const double u = rng.next_double();
      const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
      const auto idx = static_cast<std::size_t>(it - cdf_.begin());
      return pmf_[std::min(idx, pmf_.size() - 1)].first;
    }
  }
  throw Error("unreachable offspring kind");
}

}  // namespace gwburn

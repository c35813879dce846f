#include "tfr/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace tfr {

DiscreteDistribution DiscreteDistribution::from_pairs(
    const std::vector<std::pair<int, double>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("distribution: empty support");
  DiscreteDistribution d;
  double mass = 0.0;
  for (const auto& [t, p] : pairs) {
    if (p <= 0.0)
      throw std::invalid_argument("distribution: non-positive probability");
    if (!d.times_.empty() && t <= d.times_.back())
      throw std::invalid_argument("distribution: support not increasing");
    d.times_.push_back(t);
    d.probs_.push_back(p);
    mass += p;
  }
  if (std::abs(mass - 1.0) > kMassTol)
    throw std::invalid_argument("distribution: mass not 1");
  return d;
}

DiscreteDistribution DiscreteDistribution::convolve(
    const DiscreteDistribution& other) const {
  std::map<int, double> acc;
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < other.size(); ++j)
      acc[times_[i] + other.times_[j]] += probs_[i] * other.probs_[j];

  DiscreteDistribution out;
  double kept = 0.0;
  for (const auto& [t, p] : acc) {
    if (p < kPruneTol) continue;
    out.times_.push_back(t);
    out.probs_.push_back(p);
    kept += p;
  }
  // renormalize the pruned tail mass
  if (kept > 0.0 && std::abs(kept - 1.0) > 0.0)
    for (double& p : out.probs_) p /= kept;
  return out;
}

DiscreteDistribution DiscreteDistribution::truncate_left(int floor) const {
  if (empty() || times_.front() > floor) return *this;
  DiscreteDistribution out;
  double at_floor = 0.0;
  std::size_t i = 0;
  for (; i < times_.size() && times_[i] <= floor; ++i) at_floor += probs_[i];
  out.times_.push_back(floor);
  out.probs_.push_back(at_floor);
  for (; i < times_.size(); ++i) {
    out.times_.push_back(times_[i]);
    out.probs_.push_back(probs_[i]);
  }
  return out;
}

DiscreteDistribution DiscreteDistribution::shifted(int delta) const {
  DiscreteDistribution out = *this;
  for (int& t : out.times_) t += delta;
  return out;
}

int DiscreteDistribution::quantile(double gamma) const {
  if (gamma <= 0.0) throw std::invalid_argument("quantile: gamma <= 0");
  if (gamma > 1.0) throw std::invalid_argument("quantile: gamma > 1");
  double cum = 0.0;
  for (std::size_t i = 0; i < times_.size(); ++i) {
    cum += probs_[i];
    if (cum + 1e-9 >= gamma) return times_[i];
  }
  return times_.back();
}

double DiscreteDistribution::expectation() const {
  double e = 0.0;
  for (std::size_t i = 0; i < times_.size(); ++i) e += times_[i] * probs_[i];
  return e;
}

double DiscreteDistribution::cdf(int tau) const {
  double cum = 0.0;
  for (std::size_t i = 0; i < times_.size() && times_[i] <= tau; ++i)
    cum += probs_[i];
  return cum;
}

bool DiscreteDistribution::dominates_stochastically(
    const DiscreteDistribution& other, int lo, int hi) const {
  if (lo > hi) throw std::invalid_argument("dominates: lo > hi");
  // CDFs only change at support points, but the window is small; scan it.
  for (int tau = lo; tau <= hi; ++tau)
    if (cdf(tau) + 1e-9 < other.cdf(tau)) return false;
  return true;
}

bool DiscreteDistribution::same_support(const DiscreteDistribution& other,
                                        double tol) const {
  if (times_ != other.times_) return false;
  for (std::size_t i = 0; i < probs_.size(); ++i)
    if (std::abs(probs_[i] - other.probs_[i]) > tol) return false;
  return true;
}

}  // namespace tfr

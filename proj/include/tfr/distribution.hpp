#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace tfr {

// Finite-support probability distribution over integer time steps.
// Support times are strictly increasing, all probabilities positive,
// total mass 1 within 1e-9. Immutable after construction.
class DiscreteDistribution {
 public:
  static constexpr double kMassTol = 1e-9;
  static constexpr double kPruneTol = 1e-12;

  DiscreteDistribution() = default;

  static DiscreteDistribution point(int t) {
    DiscreteDistribution d;
    d.times_ = {t};
    d.probs_ = {1.0};
    return d;
  }

  // Validates invariants; entries must be sorted by time.
  static DiscreteDistribution from_pairs(
      const std::vector<std::pair<int, double>>& pairs);

  bool empty() const { return times_.empty(); }
  int size() const { return static_cast<int>(times_.size()); }
  const std::vector<int>& times() const { return times_; }
  const std::vector<double>& probs() const { return probs_; }
  int min_time() const { return times_.front(); }
  int max_time() const { return times_.back(); }

  // Exact pmf of the independent sum. Entries below kPruneTol are dropped
  // and the remaining mass renormalized.
  DiscreteDistribution convolve(const DiscreteDistribution& other) const;

  // Moves all mass at times <= floor onto floor.
  DiscreteDistribution truncate_left(int floor) const;

  // Adds delta to every support time.
  DiscreteDistribution shifted(int delta) const;

  // Smallest support time whose cumulative probability reaches gamma.
  // gamma = 1 returns the maximum support time. Rejects gamma <= 0.
  int quantile(double gamma) const;

  int median() const { return quantile(0.5); }

  double expectation() const;

  // P(X <= tau)
  double cdf(int tau) const;

  // True iff P(this <= tau) >= P(other <= tau) for every integer tau
  // in [lo, hi] (within 1e-9).
  bool dominates_stochastically(const DiscreteDistribution& other, int lo,
                                int hi) const;

  bool same_support(const DiscreteDistribution& other, double tol = 1e-9) const;

 private:
  std::vector<int> times_;
  std::vector<double> probs_;
};

}  // namespace tfr

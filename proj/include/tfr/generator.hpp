#pragma once

#include <cstdint>
#include <string>

#include "tfr/model.hpp"

namespace tfr {

// Deterministic RNG with pinned sampling, so generated instances are
// byte-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    // xorshift* variant
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }
  // uniform integer in [lo, hi]
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double uniform_real() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

enum class ModeSet { Intermediate, SlowFast, SlowIntermediateFast };

struct GeneratorParams {
  int horizon_minutes = 60;         // 60, 90 or 120
  int flights_per_hour = 10;        // 10, 20 or 30
  double worker_strength = 0.5;     // 0.1 .. 0.9
  ModeSet modes = ModeSet::SlowIntermediateFast;
  std::uint64_t seed = 1;
  double alpha = 0.9;
  double gamma = 0.9;
};

// Synthetic instance with the parameter grid of the airport study: 2-minute
// time steps, per-bin delay distributions that grow stochastically over the
// day, per-aircraft-class profiles, and a workforce sized as a fraction of
// the trivially-sufficient one. Rejects out-of-range parameters.
Instance generate_instance(const GeneratorParams& params);

ModeSet parse_mode_set(const std::string& s);  // "i", "sf", "sif"

}  // namespace tfr

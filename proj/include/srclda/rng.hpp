#pragma once

#include <cstdint>
#include <random>

namespace srclda {

// Deterministic random stream. mt19937_64 output is pinned by the standard,
// and every distribution transform is implemented here with a fixed
// algorithm, so a given seed yields the same draw sequence on every build.
// (<random> distributions are implementation-defined and would not be.)
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : seed_(seed), gen_(seed) {}

  uint64_t seed() const { return seed_; }

  uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n).
  uint32_t uniform_int(uint32_t n);

  // Box-Muller (cosine branch only, keeps the stream stateless).
  double normal(double mean, double stddev);

  // Marsaglia-Tsang, unit scale. Shapes below 1 use the boost
  // Gamma(a) = Gamma(a+1) * U^(1/a).
  double gamma(double shape);

  // Knuth's product-of-uniforms method, chunked so large means stay in the
  // exp() range. O(mean) uniforms per draw.
  int poisson(double mean);

  // Stream derived from (seed, purpose, role) via splitmix64. Independent of
  // any draws already made on the parent; used to keep parallel sections and
  // generation order reproducible.
  RandomStream child(uint64_t purpose, uint64_t role) const;

 private:
  uint64_t seed_;
  std::mt19937_64 gen_;
};

// Role constants for RandomStream::child.
enum : uint64_t {
  kRoleChain = 1,        // Gibbs chain (init + token draws)
  kRoleCalibration = 2,  // per-topic g calibration
  kRoleSynthTopic = 3,   // per-topic generative draws
  kRoleSynthDoc = 4,     // per-document generative draws
  kRoleEval = 5,         // evaluation estimators
};

}  // namespace srclda

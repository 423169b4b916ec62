#include "srclda/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace srclda {

namespace {

constexpr double kPi = 3.14159265358979323846;

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

int poisson_small(RandomStream& rng, double mean) {
  double limit = std::exp(-mean);
  int k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= rng.uniform01();
  } while (p > limit);
  return k - 1;
}

}  // namespace

uint32_t RandomStream::uniform_int(uint32_t n) {
  if (n == 0) throw std::invalid_argument("uniform_int: n must be positive");
  uint32_t v = static_cast<uint32_t>(uniform01() * n);
  return v < n ? v : n - 1;
}

double RandomStream::normal(double mean, double stddev) {
  double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
  double u2 = uniform01();
  double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  return mean + stddev * z;
}

double RandomStream::gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be positive");
  if (shape < 1.0) {
    double g = gamma(shape + 1.0);
    return g * std::pow(uniform01(), 1.0 / shape);
  }
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal(0.0, 1.0);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    double u = uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

int RandomStream::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be nonnegative");
  int total = 0;
  while (mean > 30.0) {
    total += poisson_small(*this, 30.0);
    mean -= 30.0;
  }
  if (mean > 0.0) total += poisson_small(*this, mean);
  return total;
}

RandomStream RandomStream::child(uint64_t purpose, uint64_t role) const {
  uint64_t s = splitmix64(seed_ ^ splitmix64(purpose * 0x632BE59BD9B4E019ull));
  s = splitmix64(s ^ splitmix64(role + 0x9E3779B97F4A7C15ull));
  return RandomStream(s);
}

}  // namespace srclda

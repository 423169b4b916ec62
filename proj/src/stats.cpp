#include "srclda/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace srclda {

std::vector<double> dirichlet_sample(RandomStream& rng,
                                     const std::vector<double>& alpha) {
  if (alpha.empty()) throw std::invalid_argument("dirichlet_sample: empty alpha");
  std::vector<double> out(alpha.size());
  double total = 0.0;
  for (size_t i = 0; i < alpha.size(); ++i) {
    if (!(alpha[i] > 0.0))
      throw std::invalid_argument("dirichlet_sample: alpha must be positive");
    out[i] = rng.gamma(alpha[i]);
    total += out[i];
  }
  if (total <= 0.0) {
    std::fill(out.begin(), out.end(), 1.0 / out.size());
    return out;
  }
  for (double& x : out) x /= total;
  return out;
}

double js_divergence(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("js_divergence: length mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0.0) acc += 0.5 * p[i] * std::log2(p[i] / m);
    if (q[i] > 0.0) acc += 0.5 * q[i] * std::log2(q[i] / m);
  }
  return std::clamp(acc, 0.0, 1.0);
}

size_t cumulative_draw(const double* cum, size_t n, double u) {
  if (n == 0) throw std::invalid_argument("cumulative_draw: empty vector");
  if (!(cum[n - 1] > 0.0))
    throw std::invalid_argument("cumulative_draw: total mass must be positive");
  if (!(u >= 0.0) || u >= cum[n - 1])
    throw std::invalid_argument("cumulative_draw: u out of range");
  return static_cast<size_t>(std::upper_bound(cum, cum + n, u) - cum);
}

size_t cumulative_draw(const std::vector<double>& cum, double u) {
  return cumulative_draw(cum.data(), cum.size(), u);
}

double log_sum_exp(const std::vector<double>& v) {
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  double mx = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (double x : v) s += std::exp(x - mx);
  return mx + std::log(s);
}

void normalize(std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x;
  if (!(total > 0.0)) throw std::invalid_argument("normalize: sum must be positive");
  for (double& x : v) x /= total;
}

}  // namespace srclda

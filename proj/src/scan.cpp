#include "srclda/scan.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srclda {

namespace {

size_t next_pow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

void inclusive_scan_serial(const double* vals, double* out, size_t n) {
  double run = 0.0;
  for (size_t i = 0; i < n; ++i) {
    run += vals[i];
    out[i] = run;
  }
}

void inclusive_scan_blocks(const double* vals, double* out, size_t n, int workers) {
  if (workers < 1) throw std::invalid_argument("scan workers must be >= 1");
  int p = static_cast<int>(std::min<size_t>(workers, std::max<size_t>(n, 1)));

  bool threaded = omp_get_max_threads() > 1 && p > 1;
#pragma omp parallel for schedule(static) if (threaded)
  for (int b = 0; b < p; ++b) {
    double run = 0.0;
    for (size_t i = block_lo(n, p, b); i < block_hi(n, p, b); ++i) {
      run += vals[i];
      out[i] = run;
    }
  }

  std::vector<double> offset(p + 1, 0.0);
  for (int b = 0; b < p; ++b) {
    size_t hi = block_hi(n, p, b);
    double end = hi > block_lo(n, p, b) ? out[hi - 1] : 0.0;
    offset[b + 1] = offset[b] + end;
  }

#pragma omp parallel for schedule(static) if (threaded)
  for (int b = 1; b < p; ++b) {
    double off = offset[b];
    for (size_t i = block_lo(n, p, b); i < block_hi(n, p, b); ++i) out[i] += off;
  }
}

double exclusive_scan_tree(const double* vals, double* out, size_t n,
                           std::vector<double>& scratch) {
  if (n == 0) return 0.0;
  size_t m = next_pow2(n);
  scratch.assign(m, 0.0);
  std::copy(vals, vals + n, scratch.begin());

  bool threaded = omp_get_max_threads() > 1;
  for (size_t stride = 2; stride <= m; stride <<= 1) {
    size_t pairs = m / stride;
#pragma omp parallel for schedule(static) if (threaded && pairs > 1)
    for (long long k = 0; k < static_cast<long long>(pairs); ++k) {
      size_t i = static_cast<size_t>(k) * stride;
      scratch[i + stride - 1] += scratch[i + stride / 2 - 1];
    }
  }

  double total = scratch[m - 1];
  scratch[m - 1] = 0.0;
  for (size_t stride = m; stride >= 2; stride >>= 1) {
    size_t pairs = m / stride;
#pragma omp parallel for schedule(static) if (threaded && pairs > 1)
    for (long long k = 0; k < static_cast<long long>(pairs); ++k) {
      size_t i = static_cast<size_t>(k) * stride;
      double left = scratch[i + stride / 2 - 1];
      scratch[i + stride / 2 - 1] = scratch[i + stride - 1];
      scratch[i + stride - 1] += left;
    }
  }

  std::copy(scratch.begin(), scratch.begin() + n, out);
  return total;
}

DrawOutcome draw_from_inclusive(const double* cum, size_t n, double u01, double tol) {
  if (n == 0) throw std::invalid_argument("draw_from_inclusive: empty vector");
  double total = cum[n - 1];
  if (!(total > 0.0))
    throw std::invalid_argument("draw_from_inclusive: total mass must be positive");
  double u = u01 * total;
  if (u >= total) u = std::nextafter(total, 0.0);
  if (u < 0.0) u = 0.0;

  size_t idx = static_cast<size_t>(std::upper_bound(cum, cum + n, u) - cum);
  if (idx >= n) idx = n - 1;

  double eps = tol * total;
  bool event = std::fabs(cum[idx] - u) <= eps ||
               (idx > 0 && std::fabs(u - cum[idx - 1]) <= eps);
  return {idx, event};
}

DrawOutcome draw_from_exclusive(const double* excl, size_t n, double total,
                                double u01, double tol) {
  if (n == 0) throw std::invalid_argument("draw_from_exclusive: empty vector");
  if (!(total > 0.0))
    throw std::invalid_argument("draw_from_exclusive: total mass must be positive");
  double u = u01 * total;
  if (u >= total) u = std::nextafter(total, 0.0);
  if (u < 0.0) u = 0.0;

  size_t pos = static_cast<size_t>(std::upper_bound(excl, excl + n, u) - excl);
  size_t idx = pos > 0 ? pos - 1 : 0;

  double eps = tol * total;
  double next = pos < n ? excl[pos] : total;
  bool event = std::fabs(u - excl[idx]) <= eps || std::fabs(next - u) <= eps;
  return {idx, event};
}

}  // namespace srclda

#pragma once

#include <cstddef>
#include <vector>

#include "srclda/rng.hpp"

namespace srclda {

// Dirichlet draw via normalized gamma variates. Degenerate case where every
// gamma underflows to zero falls back to the uniform distribution.
std::vector<double> dirichlet_sample(RandomStream& rng,
                                     const std::vector<double>& alpha);

// Jensen-Shannon divergence, base-2 logs, 0*log 0 taken as 0. Both inputs
// must be distributions of the same length; result is clamped to [0, 1].
double js_divergence(const std::vector<double>& p, const std::vector<double>& q);

// Smallest index i with cum[i] > u. cum must be nondecreasing with a positive
// final entry; u must lie in [0, cum[n-1]).
size_t cumulative_draw(const double* cum, size_t n, double u);
size_t cumulative_draw(const std::vector<double>& cum, double u);

double log_sum_exp(const std::vector<double>& v);

// In-place L1 normalization; throws if the sum is not positive.
void normalize(std::vector<double>& v);

}  // namespace srclda

#pragma once

#include <cstddef>
#include <vector>

namespace srclda {

// Cumulative-sum kernels used to turn an unnormalized probability vector into
// a sampling CDF. The serial left-to-right scan is the reference semantics;
// the two parallel kernels reassociate additions, so their outputs may differ
// from the reference in the low bits. Both are deterministic functions of
// (values, workers): thread count only affects wall time, never the result.

// [lo, hi) of block b when n items are split into p contiguous blocks.
inline size_t block_lo(size_t n, int p, int b) {
  return n * static_cast<size_t>(b) / static_cast<size_t>(p);
}
inline size_t block_hi(size_t n, int p, int b) { return block_lo(n, p, b + 1); }

// Reference: inclusive prefix sum, strictly left to right.
void inclusive_scan_serial(const double* vals, double* out, size_t n);

// Block strategy: each of `workers` contiguous blocks is scanned locally,
// block totals are combined sequentially, then every block is offset by the
// preceding total. workers=1 is bitwise identical to the serial scan.
void inclusive_scan_blocks(const double* vals, double* out, size_t n, int workers);

// Tree strategy: power-of-two up-sweep/down-sweep producing an exclusive
// prefix sum. Returns the total. `out` receives the first n exclusive sums;
// scratch is resized internally to the padded length.
double exclusive_scan_tree(const double* vals, double* out, size_t n,
                           std::vector<double>& scratch);

struct DrawOutcome {
  size_t index = 0;
  bool boundary_event = false;  // u within tol*total of an adjacent boundary
};

// Smallest index with cum[index] > u, where u = u01 * total (clamped below
// total). tol is relative to the total mass and flags draws close enough to a
// boundary that scan reassociation could change the winner.
DrawOutcome draw_from_inclusive(const double* cum, size_t n, double u01, double tol);

// Same selection on an exclusive scan: largest index with excl[index] <= u.
// Picks the identical index as draw_from_inclusive under exact arithmetic.
DrawOutcome draw_from_exclusive(const double* excl, size_t n, double total,
                                double u01, double tol);

}  // namespace srclda

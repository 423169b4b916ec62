#include <cmath>
#include <vector>

#include "doctest.h"
#include "srclda/rng.hpp"
#include "srclda/scan.hpp"

using namespace srclda;

namespace {

std::vector<double> random_vals(RandomStream& rng, size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform01() + 1e-6;
  return v;
}

}  // namespace

TEST_CASE("serial scan matches a running sum") {
  std::vector<double> v{0.5, 0.25, 0.25};
  std::vector<double> out(3);
  inclusive_scan_serial(v.data(), out.data(), 3);
  CHECK(out[0] == doctest::Approx(0.5));
  CHECK(out[1] == doctest::Approx(0.75));
  CHECK(out[2] == doctest::Approx(1.0));
}

TEST_CASE("block scan with one worker is bitwise identical to serial") {
  RandomStream rng(3);
  auto v = random_vals(rng, 1037);
  std::vector<double> a(v.size()), b(v.size());
  inclusive_scan_serial(v.data(), a.data(), v.size());
  inclusive_scan_blocks(v.data(), b.data(), v.size(), 1);
  for (size_t i = 0; i < v.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("block scan totals agree with serial for many worker counts") {
  RandomStream rng(4);
  for (size_t n : {1u, 7u, 64u, 1000u}) {
    auto v = random_vals(rng, n);
    std::vector<double> a(n), b(n);
    inclusive_scan_serial(v.data(), a.data(), n);
    for (int w : {1, 2, 3, 8, 33}) {
      inclusive_scan_blocks(v.data(), b.data(), n, w);
      for (size_t i = 0; i < n; ++i)
        CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("tree scan produces the exclusive sums and the exact total layout") {
  std::vector<double> v{1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> out(5), scratch;
  double total = exclusive_scan_tree(v.data(), out.data(), 5, scratch);
  CHECK(total == doctest::Approx(15.0));
  CHECK(out[0] == doctest::Approx(0.0));
  CHECK(out[1] == doctest::Approx(1.0));
  CHECK(out[2] == doctest::Approx(3.0));
  CHECK(out[3] == doctest::Approx(6.0));
  CHECK(out[4] == doctest::Approx(10.0));
}

TEST_CASE("draw selection identical across the three scans on random vectors") {
  // The cross-strategy harness: on random probability vectors the three
  // cumulative forms must choose the same index for the same u, and no draw
  // may sit inside the boundary tolerance.
  RandomStream rng(99);
  long long events = 0;
  for (int rep = 0; rep < 200; ++rep) {
    size_t n = 1 + rng.uniform_int(4096);
    auto v = random_vals(rng, n);
    std::vector<double> ser(n), blk(n), tree(n), scratch;
    inclusive_scan_serial(v.data(), ser.data(), n);
    inclusive_scan_blocks(v.data(), blk.data(), n, 8);
    double total = exclusive_scan_tree(v.data(), tree.data(), n, scratch);

    for (int k = 0; k < 50; ++k) {
      double u01 = rng.uniform01();
      auto a = draw_from_inclusive(ser.data(), n, u01, 1e-12);
      auto b = draw_from_inclusive(blk.data(), n, u01, 1e-12);
      auto c = draw_from_exclusive(tree.data(), n, total, u01, 1e-12);
      events += a.boundary_event + b.boundary_event + c.boundary_event;
      CHECK(a.index == b.index);
      CHECK(a.index == c.index);
    }
  }
  CHECK(events == 0);
}

TEST_CASE("exclusive draw skips zero-probability entries like the inclusive draw") {
  std::vector<double> v{0.2, 0.0, 0.8};
  std::vector<double> incl(3), excl(3), scratch;
  inclusive_scan_serial(v.data(), incl.data(), 3);
  double total = exclusive_scan_tree(v.data(), excl.data(), 3, scratch);
  for (double u01 : {0.0, 0.1, 0.2000001, 0.5, 0.9999}) {
    auto a = draw_from_inclusive(incl.data(), 3, u01, 1e-12);
    auto b = draw_from_exclusive(excl.data(), 3, total, u01, 1e-12);
    CHECK(a.index == b.index);
    CHECK(a.index != 1);
  }
}

TEST_CASE("boundary tolerance flags draws next to a cumulative edge") {
  std::vector<double> cum{0.25, 0.5, 1.0};
  auto hit = draw_from_inclusive(cum.data(), 3, 0.25 + 1e-14, 1e-12);
  CHECK(hit.boundary_event);
  auto miss = draw_from_inclusive(cum.data(), 3, 0.3, 1e-12);
  CHECK_FALSE(miss.boundary_event);
}

TEST_CASE("draw helpers clamp u at the top of the range") {
  std::vector<double> cum{1.0};
  auto out = draw_from_inclusive(cum.data(), 1, std::nextafter(1.0, 0.0), 1e-12);
  CHECK(out.index == 0);
  std::vector<double> v{1.0};
  std::vector<double> excl(1), scratch;
  double total = exclusive_scan_tree(v.data(), excl.data(), 1, scratch);
  CHECK(draw_from_exclusive(excl.data(), 1, total, 0.999999, 1e-12).index == 0);
}

TEST_CASE("block partition covers the range exactly") {
  for (size_t n : {1u, 5u, 16u, 97u}) {
    for (int p : {1, 2, 7, 16}) {
      size_t covered = 0;
      for (int b = 0; b < p; ++b) {
        CHECK(block_lo(n, p, b) <= block_hi(n, p, b));
        covered += block_hi(n, p, b) - block_lo(n, p, b);
      }
      CHECK(covered == n);
      CHECK(block_lo(n, p, 0) == 0);
      CHECK(block_hi(n, p, p - 1) == n);
    }
  }
}

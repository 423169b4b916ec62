#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "srclda/rng.hpp"
#include "srclda/stats.hpp"

using namespace srclda;

TEST_CASE("same seed reproduces the identical draw sequence") {
  RandomStream a(12345), b(12345);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  RandomStream c(7), d(7);
  for (int i = 0; i < 200; ++i) {
    CHECK(c.uniform01() == d.uniform01());
    CHECK(c.normal(0, 1) == d.normal(0, 1));
    CHECK(c.gamma(0.3 + i * 0.1) == d.gamma(0.3 + i * 0.1));
    CHECK(c.poisson(5.0 + i) == d.poisson(5.0 + i));
  }
}

TEST_CASE("child streams are independent of parent consumption") {
  RandomStream a(99), b(99);
  (void)a.uniform01();
  (void)a.uniform01();
  RandomStream ca = a.child(3, 17), cb = b.child(3, 17);
  for (int i = 0; i < 100; ++i) CHECK(ca.next_u64() == cb.next_u64());
  RandomStream other = b.child(3, 18);
  CHECK(a.child(3, 17).next_u64() != other.next_u64());
}

TEST_CASE("uniform01 lies in [0,1) and covers the range") {
  RandomStream rng(5);
  double mn = 1.0, mx = 0.0, sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    mn = std::min(mn, u);
    mx = std::max(mx, u);
    sum += u;
  }
  CHECK(mn < 0.01);
  CHECK(mx > 0.99);
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("normal matches its first two moments") {
  RandomStream rng(11);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = rng.normal(2.0, 3.0);
    sum += x;
    sq += x * x;
  }
  double mean = sum / n;
  double var = sq / n - mean * mean;
  CHECK(mean == doctest::Approx(2.0).epsilon(0.02));
  CHECK(var == doctest::Approx(9.0).epsilon(0.03));
}

TEST_CASE("gamma moments for shapes above and below one") {
  RandomStream rng(13);
  for (double shape : {0.2, 1.0, 4.5, 40.0}) {
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
      double x = rng.gamma(shape);
      CHECK(x >= 0.0);
      sum += x;
      sq += x * x;
    }
    double mean = sum / n;
    double var = sq / n - mean * mean;
    CHECK(mean == doctest::Approx(shape).epsilon(0.03));
    CHECK(var == doctest::Approx(shape).epsilon(0.06));
  }
}

TEST_CASE("poisson mean and variance, small and chunked-large means") {
  RandomStream rng(17);
  for (double mean : {0.5, 8.0, 120.0}) {
    const int n = 50000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
      int k = rng.poisson(mean);
      CHECK(k >= 0);
      sum += k;
      sq += double(k) * k;
    }
    double m = sum / n;
    double var = sq / n - m * m;
    CHECK(m == doctest::Approx(mean).epsilon(0.03));
    CHECK(var == doctest::Approx(mean).epsilon(0.06));
  }
  CHECK(RandomStream(1).poisson(0.0) == 0);
}

TEST_CASE("dirichlet samples normalize and match their expected mean") {
  RandomStream rng(21);
  std::vector<double> alpha{2.0, 5.0, 3.0};
  std::vector<double> mean(3, 0.0);
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    auto x = dirichlet_sample(rng, alpha);
    double total = std::accumulate(x.begin(), x.end(), 0.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    for (int j = 0; j < 3; ++j) {
      CHECK(x[j] >= 0.0);
      mean[j] += x[j];
    }
  }
  CHECK(mean[0] / n == doctest::Approx(0.2).epsilon(0.03));
  CHECK(mean[1] / n == doctest::Approx(0.5).epsilon(0.03));
  CHECK(mean[2] / n == doctest::Approx(0.3).epsilon(0.03));
  CHECK_THROWS(dirichlet_sample(rng, {1.0, -1.0}));
}

TEST_CASE("js divergence endpoints and symmetry") {
  std::vector<double> p{1.0, 0.0}, q{0.0, 1.0};
  CHECK(js_divergence(p, p) == doctest::Approx(0.0));
  CHECK(js_divergence(p, q) == doctest::Approx(1.0));  // disjoint support, base 2
  std::vector<double> a{0.5, 0.5}, b{0.9, 0.1};
  CHECK(js_divergence(a, b) == doctest::Approx(js_divergence(b, a)));
  CHECK_THROWS(js_divergence(a, {1.0}));

  // uniform over {w1..w4} vs uniform over {w1..w2}
  std::vector<double> u4{0.25, 0.25, 0.25, 0.25}, u2{0.5, 0.5, 0.0, 0.0};
  double m1 = 0.375, m2 = 0.125;
  double expect = 0.5 * (2 * 0.25 * std::log2(0.25 / m1) +
                         2 * 0.25 * std::log2(0.25 / m2)) +
                  0.5 * (2 * 0.5 * std::log2(0.5 / m1));
  CHECK(js_divergence(u4, u2) == doctest::Approx(expect));
}

TEST_CASE("js divergence stays within [0,1] on random distributions") {
  RandomStream rng(31);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> a(6), b(6);
    double sa = 0, sb = 0;
    for (int j = 0; j < 6; ++j) {
      a[j] = rng.uniform01() < 0.2 ? 0.0 : rng.uniform01();
      b[j] = rng.uniform01() < 0.2 ? 0.0 : rng.uniform01();
      sa += a[j];
      sb += b[j];
    }
    if (sa == 0 || sb == 0) continue;
    for (int j = 0; j < 6; ++j) {
      a[j] /= sa;
      b[j] /= sb;
    }
    double d = js_divergence(a, b);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
}

TEST_CASE("cumulative_draw picks the first strictly greater entry") {
  std::vector<double> cum{0.2, 0.5, 1.0};
  CHECK(cumulative_draw(cum, 0.0) == 0);
  CHECK(cumulative_draw(cum, 0.19) == 0);
  CHECK(cumulative_draw(cum, 0.2) == 1);  // boundary goes right
  CHECK(cumulative_draw(cum, 0.99) == 2);
  CHECK_THROWS(cumulative_draw(cum, 1.0));
  CHECK_THROWS(cumulative_draw(cum, -0.1));

  // zero-probability middle entry is never selected
  std::vector<double> z{0.2, 0.2, 1.0};
  CHECK(cumulative_draw(z, 0.2) == 2);
  CHECK(cumulative_draw(z, 0.35) == 2);
}

TEST_CASE("cumulative_draw frequencies follow the weights") {
  std::vector<double> cum{0.1, 0.4, 1.0};
  RandomStream rng(41);
  int counts[3] = {0, 0, 0};
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[cumulative_draw(cum, rng.uniform01())];
  CHECK(counts[0] / double(n) == doctest::Approx(0.1).epsilon(0.05));
  CHECK(counts[1] / double(n) == doctest::Approx(0.3).epsilon(0.05));
  CHECK(counts[2] / double(n) == doctest::Approx(0.6).epsilon(0.05));
}

TEST_CASE("log_sum_exp and normalize") {
  CHECK(log_sum_exp({0.0, 0.0}) == doctest::Approx(std::log(2.0)));
  CHECK(log_sum_exp({-1000.0, -1000.0}) == doctest::Approx(-1000.0 + std::log(2.0)));
  std::vector<double> v{2.0, 6.0};
  normalize(v);
  CHECK(v[0] == doctest::Approx(0.25));
  CHECK(v[1] == doctest::Approx(0.75));
  std::vector<double> zero{0.0, 0.0};
  CHECK_THROWS(normalize(zero));
}

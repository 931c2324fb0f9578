// Scalar information measures, the ball-volume exponent, and the small
// optimization toolkit everything else is built on.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "relaybounds/optim.hpp"
#include "relaybounds/probability.hpp"

using namespace relaybounds;

TEST_CASE("binary_entropy closed form and endpoints") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK_THAT(binary_entropy(0.2), Catch::Matchers::WithinAbs(0.721928, 1e-6));
  CHECK_THROWS_AS(binary_entropy(-0.1), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(1.1), std::domain_error);
}

TEST_CASE("binary_entropy is symmetric, concave, maximal at 1/2") {
  for (int i = 0; i <= 50; ++i) {
    const double r = i / 50.0;
    CHECK_THAT(binary_entropy(r), Catch::Matchers::WithinAbs(binary_entropy(1.0 - r), 1e-12));
    CHECK(binary_entropy(r) <= 1.0);
  }
  // midpoint concavity on an interior grid
  for (int i = 1; i + 2 <= 49; ++i) {
    const double a = i / 50.0, b = (i + 2) / 50.0;
    CHECK(binary_entropy(0.5 * (a + b)) >= 0.5 * (binary_entropy(a) + binary_entropy(b)) - 1e-12);
  }
}

TEST_CASE("entropy of basic distributions") {
  CHECK_THAT(entropy({0.25, 0.25, 0.25, 0.25}), Catch::Matchers::WithinAbs(2.0, 1e-12));
  CHECK(entropy({1.0, 0.0, 0.0}) == 0.0);
  CHECK_THAT(entropy({0.32, 0.68}), Catch::Matchers::WithinAbs(0.904382, 1e-6));
}

TEST_CASE("distribution validation: renormalize tiny drift, reject junk") {
  Dist drift = {0.5, 0.5 + 5e-10};
  validate_distribution(drift);  // within 1e-9: renormalized
  CHECK_THAT(drift[0] + drift[1], Catch::Matchers::WithinAbs(1.0, 1e-15));
  Dist bad_sum = {0.5, 0.6};
  CHECK_THROWS_AS(validate_distribution(bad_sum), std::invalid_argument);
  Dist negative = {1.2, -0.2};
  CHECK_THROWS_AS(validate_distribution(negative), std::invalid_argument);
}

TEST_CASE("conditional_entropy closed forms") {
  const Matrix bsc = {{0.8, 0.2}, {0.2, 0.8}};
  CHECK_THAT(conditional_entropy({0.5, 0.5}, bsc),
             Catch::Matchers::WithinAbs(binary_entropy(0.2), 1e-12));
  CHECK_THAT(conditional_entropy({0.9, 0.1}, bsc),
             Catch::Matchers::WithinAbs(binary_entropy(0.2), 1e-12));
  const Matrix identity = {{1.0, 0.0}, {0.0, 1.0}};
  CHECK(conditional_entropy({0.3, 0.7}, identity) == 0.0);
  const Matrix asym = {{0.99, 0.01}, {0.3, 0.7}};
  CHECK_THAT(conditional_entropy({0.54, 0.46}, asym),
             Catch::Matchers::WithinAbs(0.54 * binary_entropy(0.01) + 0.46 * binary_entropy(0.3),
                                        1e-12));
}

TEST_CASE("mutual_information closed forms and nonnegativity") {
  const Matrix useless = {{0.4, 0.6}, {0.4, 0.6}};
  CHECK_THAT(mutual_information({0.3, 0.7}, useless), Catch::Matchers::WithinAbs(0.0, 1e-12));
  const Matrix bsc = {{0.8, 0.2}, {0.2, 0.8}};
  CHECK_THAT(mutual_information({0.5, 0.5}, bsc),
             Catch::Matchers::WithinAbs(1.0 - binary_entropy(0.2), 1e-12));
  // reference value for the asymmetric example channel, quoted to 5 decimals
  const Matrix bac = {{0.99, 0.01}, {0.3, 0.7}};
  CHECK_THAT(mutual_information({0.58, 0.42}, bac), Catch::Matchers::WithinAbs(0.46432, 5e-4));
}

TEST_CASE("mutual_information matches brute-force joint computation") {
  std::mt19937_64 rng(7151);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t nx = trial % 2 ? 3 : 2, ny = trial % 3 ? 3 : 2;
    Matrix w(nx, Dist(ny));
    Dist px(nx);
    double s = 0.0;
    for (auto& v : px) s += v = u(rng);
    for (auto& v : px) v /= s;
    for (auto& row : w) {
      double rs = 0.0;
      for (auto& v : row) rs += v = u(rng);
      for (auto& v : row) v /= rs;
    }
    const Dist py = output_marginal(px, w);
    double direct = 0.0;
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) {
        const double joint = px[x] * w[x][y];
        if (joint > 0.0) direct += joint * std::log2(joint / (px[x] * py[y]));
      }
    const double mi = mutual_information(px, w);
    CHECK(mi >= -1e-12);
    CHECK_THAT(mi, Catch::Matchers::WithinAbs(direct, 1e-12));
  }
}

TEST_CASE("conditional_relative_entropy: zero, closed form, infinity") {
  const Matrix w = {{0.9, 0.1}, {0.2, 0.8}};
  CHECK_THAT(conditional_relative_entropy({0.4, 0.6}, w, w),
             Catch::Matchers::WithinAbs(0.0, 1e-12));
  const Matrix wt = {{0.5, 0.5}, {0.2, 0.8}};
  const double expected = 0.5 * std::log2(0.5 / 0.9) + 0.5 * std::log2(0.5 / 0.1);
  CHECK_THAT(conditional_relative_entropy({1.0, 0.0}, wt, w),
             Catch::Matchers::WithinAbs(expected, 1e-12));
  const Matrix wz = {{1.0, 0.0}, {0.2, 0.8}};
  const Matrix wt2 = {{0.9, 0.1}, {0.2, 0.8}};
  CHECK(std::isinf(conditional_relative_entropy({1.0, 0.0}, wt2, wz)));
  // a zero entry only off the support of px does not blow up
  CHECK_THAT(conditional_relative_entropy({0.0, 1.0}, wt2, wz),
             Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("conditional_relative_entropy nonnegativity on random instances") {
  std::mt19937_64 rng(40961);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix w(2, Dist(3)), wt(2, Dist(3));
    for (auto* m : {&w, &wt})
      for (auto& row : *m) {
        double rs = 0.0;
        for (auto& v : row) rs += v = u(rng);
        for (auto& v : row) v /= rs;
      }
    CHECK(conditional_relative_entropy({0.5, 0.5}, wt, w) >= -1e-12);
  }
}

TEST_CASE("binary_convolve algebra") {
  CHECK_THAT(binary_convolve(0.2, 0.2), Catch::Matchers::WithinAbs(0.32, 1e-15));
  CHECK(binary_convolve(0.37, 0.0) == 0.37);
  CHECK_THAT(binary_convolve(0.37, 0.5), Catch::Matchers::WithinAbs(0.5, 1e-15));
  CHECK_THROWS_AS(binary_convolve(-0.1, 0.2), std::domain_error);
  for (int i = 0; i <= 10; ++i)
    for (int j = 0; j <= 10; ++j) {
      const double a = i / 20.0, b = j / 20.0;
      CHECK_THAT(binary_convolve(a, b), Catch::Matchers::WithinAbs(binary_convolve(b, a), 1e-15));
      CHECK_THAT(binary_convolve(binary_convolve(a, b), 0.3),
                 Catch::Matchers::WithinAbs(binary_convolve(a, binary_convolve(b, 0.3)), 1e-15));
      if (j + 1 <= 10) {
        CHECK(binary_convolve(a, (j + 1) / 20.0) >= binary_convolve(a, b) - 1e-15);
      }
    }
}

TEST_CASE("product_channel structure and capacity identity") {
  const Matrix identity = {{1.0, 0.0}, {0.0, 1.0}};
  const Matrix pid = product_channel(identity);
  REQUIRE(pid.size() == 2);
  REQUIRE(pid[0].size() == 4);
  CHECK(pid[0] == Dist{1.0, 0.0, 0.0, 0.0});
  CHECK(pid[1] == Dist{0.0, 0.0, 0.0, 1.0});

  const Matrix bsc = {{0.8, 0.2}, {0.2, 0.8}};
  const Matrix pb = product_channel(bsc);
  CHECK_THAT(pb[0][0], Catch::Matchers::WithinAbs(0.64, 1e-15));
  CHECK_THAT(pb[0][1], Catch::Matchers::WithinAbs(0.16, 1e-15));
  CHECK_THAT(pb[0][2], Catch::Matchers::WithinAbs(0.16, 1e-15));
  CHECK_THAT(pb[0][3], Catch::Matchers::WithinAbs(0.04, 1e-15));
  const double closed = 1.0 + binary_entropy(binary_convolve(0.2, 0.2)) - 2.0 * binary_entropy(0.2);
  CHECK_THAT(mutual_information({0.5, 0.5}, pb), Catch::Matchers::WithinAbs(closed, 1e-12));
}

TEST_CASE("ball_exponent branches, monotonicity, continuity") {
  CHECK(ball_exponent(0.7, 2) == 1.0);
  CHECK_THAT(ball_exponent(0.5, 2), Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK_THAT(ball_exponent(0.2, 3),
             Catch::Matchers::WithinAbs(binary_entropy(0.2) + 0.2 * std::log2(2.0), 1e-12));
  CHECK_THROWS_AS(ball_exponent(-0.01, 2), std::domain_error);
  for (std::size_t q : {2ul, 3ul, 4ul}) {
    const double knee = (static_cast<double>(q) - 1.0) / static_cast<double>(q);
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double r = i / 100.0;
      const double v = ball_exponent(r, q);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
    CHECK_THAT(ball_exponent(knee - 1e-9, q),
               Catch::Matchers::WithinAbs(ball_exponent(knee + 1e-9, q), 1e-6));
    CHECK_THAT(ball_exponent(knee, q),
               Catch::Matchers::WithinAbs(std::log2(static_cast<double>(q)), 1e-12));
  }
}

TEST_CASE("scan and golden maximizers agree on smooth unimodal functions") {
  auto f = [](double x) { return -(x - 0.37) * (x - 0.37); };
  const auto g = golden_max(f, 0.0, 1.0, 1e-12);
  CHECK_THAT(g.arg, Catch::Matchers::WithinAbs(0.37, 1e-7));
  const auto s = scan_refine_max(f, 0.0, 1.0, 1e-3, 1e-12);
  CHECK_THAT(s.arg, Catch::Matchers::WithinAbs(0.37, 1e-7));
  CHECK_THAT(s.value, Catch::Matchers::WithinAbs(0.0, 1e-12));
  // scan includes both endpoints
  auto rising = [](double x) { return x; };
  CHECK_THAT(scan_max(rising, 0.0, 0.3, 1e-3).arg, Catch::Matchers::WithinAbs(0.3, 1e-15));
  CHECK(scan_max(rising, 0.2, 0.2, 1e-3).arg == 0.2);
}

TEST_CASE("first_crossing finds the smallest solution") {
  auto f = [](double x) { return x * x; };
  const auto c = first_crossing(f, 0.25, 0.0, 1.0, 1e-4);
  REQUIRE(c.has_value());
  CHECK_THAT(*c, Catch::Matchers::WithinAbs(0.5, 1e-9));
  CHECK_FALSE(first_crossing(f, 2.0, 0.0, 1.0, 1e-4).has_value());
  // target met at the left endpoint
  const auto at0 = first_crossing(f, 0.0, 0.0, 1.0, 1e-4);
  REQUIRE(at0.has_value());
  CHECK(*at0 == 0.0);
}

TEST_CASE("sweep_points materializes inclusive grids") {
  const auto pts = sweep_points({0.15, 0.21, 0.001});
  REQUIRE(pts.size() == 61);
  CHECK(pts.front() == 0.15);
  CHECK(pts.back() == 0.21);
  const auto single = sweep_points({0.3, 0.3, 0.01});
  REQUIRE(single.size() == 1);
  CHECK(single[0] == 0.3);
  CHECK_THROWS_AS(sweep_points({0.2, 0.1, 0.01}), std::invalid_argument);
  CHECK_THROWS_AS(sweep_points({0.0, 1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(sweep_points({0.0, 1.0, 1e-9}), std::invalid_argument);
}

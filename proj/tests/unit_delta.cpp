// The constrained channel-perturbation maximization: greedy exchange solver,
// closed forms, and the saturation profile.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "relaybounds/delta.hpp"

using namespace relaybounds;

namespace {

Matrix random_connected_channel(std::mt19937_64& rng, std::size_t nx, std::size_t ny) {
  std::uniform_real_distribution<double> u(0.15, 0.85);
  Matrix w(nx, Dist(ny));
  for (auto& row : w) {
    double rs = 0.0;
    for (auto& v : row) rs += v = u(rng);
    for (auto& v : row) v /= rs;
  }
  return w;
}

// exhaustive 2x2 reference: two free parameters, one per row
double grid_best_2x2(const Dist& px, const Matrix& w, double d, double step) {
  double best = 0.0;
  const long n = std::lround(1.0 / step);
  for (long i = 0; i <= n; ++i) {
    for (long j = 0; j <= n; ++j) {
      const Matrix wt = {{i * step, 1.0 - i * step}, {j * step, 1.0 - j * step}};
      double tv = 0.0;
      for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y) tv += px[x] * std::fabs(wt[x][y] - w[x][y]);
      if (0.5 * tv > d + 1e-12) continue;
      const double v = delta_objective(px, w, wt);
      if (v > best) best = v;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("zero budget means zero gain") {
  const Matrix w = {{0.9, 0.1}, {0.2, 0.8}};
  const DeltaSolution s = delta_general({0.4, 0.6}, w, 0.0);
  CHECK(s.value == 0.0);
  CHECK(s.budget_used == 0.0);
  CHECK_FALSE(s.infinite);
}

TEST_CASE("BSC link closed form, independent of the input distribution") {
  const Matrix w = {{0.8, 0.2}, {0.2, 0.8}};
  for (const Dist& px : {Dist{0.5, 0.5}, Dist{0.9, 0.1}, Dist{0.25, 0.75}}) {
    const DeltaSolution s = delta_general(px, w, 0.1);
    CHECK_THAT(s.value, Catch::Matchers::WithinAbs(0.2, 1e-12));
    CHECK_THAT(s.value, Catch::Matchers::WithinAbs(delta_bsc(0.2, 0.1), 1e-12));
  }
}

TEST_CASE("asymmetric 2x2 example: budget spent on the steepest row") {
  const Matrix w = {{0.9, 0.1}, {0.2, 0.8}};
  const Dist px = {0.5, 0.5};
  const DeltaSolution s = delta_general(px, w, 0.05);
  // row 0 donates 0.9->0.1 mass at gain log2(9) per TV unit; budget 0.05 of
  // weighted TV buys 0.1 of row-0 mass movement
  CHECK_THAT(s.value, Catch::Matchers::WithinAbs(0.05 * std::log2(9.0), 1e-9));
  CHECK_THAT(s.value, Catch::Matchers::WithinAbs(0.158496, 1e-6));
  CHECK_THAT(grid_best_2x2(px, w, 0.05, 1e-3), Catch::Matchers::WithinAbs(s.value, 2e-3));
}

TEST_CASE("erasure link blows up for any positive budget") {
  const Matrix erasure = {{0.9, 0.1, 0.0}, {0.0, 0.1, 0.9}};
  const DeltaSolution s = delta_general({0.5, 0.5}, erasure, 0.01);
  CHECK(s.infinite);
  CHECK(std::isinf(s.value));
  const DeltaSolution at0 = delta_general({0.5, 0.5}, erasure, 0.0);
  CHECK(at0.value == 0.0);
  // zero entries only outside the support of px are harmless
  const DeltaSolution off = delta_general({0.0, 1.0}, {{1.0, 0.0}, {0.3, 0.7}}, 0.05);
  CHECK_FALSE(off.infinite);
}

TEST_CASE("delta_bsc branches and domain") {
  CHECK_THAT(delta_bsc(0.2, 0.1), Catch::Matchers::WithinAbs(0.2, 1e-12));
  CHECK(delta_bsc(0.3, 0.0) == 0.0);
  CHECK_THAT(delta_bsc(0.2, 0.9), Catch::Matchers::WithinAbs(1.6, 1e-12));
  CHECK_THROWS_AS(delta_bsc(0.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(delta_bsc(0.5, 0.1), std::domain_error);
  CHECK_THROWS_AS(delta_bsc(0.2, -0.1), std::domain_error);
}

TEST_CASE("delta_prime closed form and comparison") {
  CHECK(delta_prime(0.0, 0.2) == 0.0);
  CHECK_THAT(delta_prime(0.1, 0.2), Catch::Matchers::WithinAbs(0.12, 1e-12));
  CHECK_THAT(delta_prime(0.1, 0.4999), Catch::Matchers::WithinAbs(0.0, 1e-3));
  for (double p : {0.1, 0.2, 0.3, 0.4})
    for (int i = 0; i <= 10; ++i) {
      const double d = i * (1.0 - p) / 10.0;
      CHECK(delta_prime(d, p) <= delta_bsc(p, d) + 1e-12);
    }
}

TEST_CASE("general solver equals the BSC closed form on a dense budget grid") {
  for (double p : {0.1, 0.2, 0.3, 0.4}) {
    const Matrix w = {{1.0 - p, p}, {p, 1.0 - p}};
    for (int i = 0; i <= 50; ++i) {
      const double d = i / 50.0;
      CHECK_THAT(delta_general({0.5, 0.5}, w, d).value,
                 Catch::Matchers::WithinAbs(delta_bsc(p, d), 1e-9));
      CHECK_THAT(delta_general({0.3, 0.7}, w, d).value,
                 Catch::Matchers::WithinAbs(delta_bsc(p, d), 1e-9));
    }
  }
}

TEST_CASE("monotone and concave in the budget on random channels") {
  std::mt19937_64 rng(90210);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t ny = trial % 2 ? 3 : 2;
    const Matrix w = random_connected_channel(rng, 2, ny);
    const Dist px = {0.35, 0.65};
    std::vector<double> vals;
    for (int i = 0; i <= 100; ++i) vals.push_back(delta_general(px, w, i / 100.0).value);
    for (std::size_t i = 1; i < vals.size(); ++i) CHECK(vals[i] >= vals[i - 1] - 1e-12);
    // concavity of the saturating piecewise-linear value in d
    for (std::size_t i = 1; i + 1 < vals.size(); ++i)
      CHECK(vals[i] >= 0.5 * (vals[i - 1] + vals[i + 1]) - 1e-12);
  }
}

TEST_CASE("greedy matches the exhaustive 2x2 grid") {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> ud(0.02, 0.9);
  for (int trial = 0; trial < 6; ++trial) {
    const Matrix w = random_connected_channel(rng, 2, 2);
    const Dist px = {0.25 + 0.5 * (trial / 5.0), 1.0 - 0.25 - 0.5 * (trial / 5.0)};
    const double d = ud(rng);
    const double greedy = delta_general(px, w, d).value;
    const double grid = grid_best_2x2(px, w, d, 1e-3);
    CHECK_THAT(greedy, Catch::Matchers::WithinAbs(grid, 2e-3));
    CHECK(greedy >= grid - 1e-9);  // grid is a restriction of the feasible set
  }
}

TEST_CASE("reported optimizer is feasible and achieves the value") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t ny = 2 + trial % 3;
    const Matrix w = random_connected_channel(rng, 2, ny);
    const Dist px = {0.45, 0.55};
    const double d = 0.05 + 0.07 * trial;
    const DeltaSolution s = delta_general(px, w, d);
    double tv = 0.0;
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < ny; ++y) tv += px[x] * std::fabs(s.optimizer[x][y] - w[x][y]);
    CHECK(0.5 * tv <= d + 1e-12);
    CHECK(s.budget_used <= d + 1e-12);
    CHECK_THAT(delta_objective(px, w, s.optimizer), Catch::Matchers::WithinAbs(s.value, 1e-9));
    // the linearized objective agrees with the entropy-difference original
    const double original = conditional_entropy(px, s.optimizer) - conditional_entropy(px, w) +
                            conditional_relative_entropy(px, s.optimizer, w);
    CHECK_THAT(original, Catch::Matchers::WithinAbs(s.value, 1e-9));
  }
}

TEST_CASE("saturation profile matches pointwise evaluation") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t ny = trial % 2 ? 3 : 2;
    const Matrix w = random_connected_channel(rng, 2, ny);
    const Dist px = {0.6, 0.4};
    const detail::DeltaProfile prof = detail::make_delta_profile(px, w);
    REQUIRE(prof.connected);
    for (int i = 0; i <= 40; ++i) {
      const double d = i / 20.0;
      CHECK_THAT(prof.eval(d), Catch::Matchers::WithinAbs(delta_general(px, w, d).value, 1e-12));
    }
  }
  const detail::DeltaProfile broken = detail::make_delta_profile({0.5, 0.5}, {{1.0, 0.0}, {0.2, 0.8}});
  CHECK_FALSE(broken.connected);
  CHECK(broken.eval(0.0) == 0.0);
  CHECK(std::isinf(broken.eval(0.01)));
}

TEST_CASE("deterministic optimizer under gain ties") {
  // both rows offer the same per-unit gain; tie-breaking is by row index
  const Matrix w = {{0.8, 0.2}, {0.2, 0.8}};
  const DeltaSolution a = delta_general({0.5, 0.5}, w, 0.3);
  const DeltaSolution b = delta_general({0.5, 0.5}, w, 0.3);
  CHECK(a.optimizer == b.optimizer);
  CHECK(a.value == b.value);
}

// Relay-channel constructors, the two capacities, and JSON spec handling.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "relaybounds/channel.hpp"
#include "relaybounds/channel_json.hpp"

using namespace relaybounds;

TEST_CASE("make_bsc constructions") {
  const RelayChannelSpec id = make_bsc(0.0, 0.1);
  CHECK(id.link == Matrix{{1.0, 0.0}, {0.0, 1.0}});
  const RelayChannelSpec s = make_bsc(0.2, 0.18);
  CHECK(s.link == Matrix{{0.8, 0.2}, {0.2, 0.8}});
  CHECK(s.r0 == 0.18);
  CHECK(s.input_size == 2);
  CHECK(s.output_size == 2);
  const RelayChannelSpec useless = make_bsc(0.5, 0.0);
  CHECK(capacity_xy(useless).value <= 1e-9);
  CHECK_THROWS_AS(make_bsc(1.2, 0.0), std::domain_error);
  CHECK_THROWS_AS(make_bsc(0.2, -0.1), std::domain_error);
}

TEST_CASE("make_bac constructions") {
  CHECK(make_bac(0.0, 0.0, 0.0).link == Matrix{{1.0, 0.0}, {0.0, 1.0}});
  CHECK(make_bac(0.3, 0.3, 0.1).link == make_bsc(0.3, 0.1).link);
  CHECK(make_bac(0.01, 0.3, 0.0).link == Matrix{{0.99, 0.01}, {0.3, 0.7}});
}

TEST_CASE("capacity_xy closed forms and reference values") {
  const CapacityResult bsc = capacity_xy(make_bsc(0.2, 0.0));
  CHECK_THAT(bsc.value, Catch::Matchers::WithinAbs(1.0 - binary_entropy(0.2), 1e-8));
  CHECK_THAT(bsc.argmax_input[0], Catch::Matchers::WithinAbs(0.5, 1e-4));

  const CapacityResult bac = capacity_xy(make_bac(0.01, 0.3, 0.0));
  CHECK_THAT(bac.value, Catch::Matchers::WithinAbs(0.46432, 5e-4));
  CHECK_THAT(bac.value, Catch::Matchers::WithinAbs(0.4643403209, 1e-8));
  CHECK_THAT(bac.argmax_input[0], Catch::Matchers::WithinAbs(0.566466, 1e-4));

  CHECK_THAT(capacity_xy(make_bsc(0.0, 0.0)).value, Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("capacity_xyz closed forms and reference values") {
  const CapacityResult bac = capacity_xyz(make_bac(0.01, 0.3, 0.0));
  CHECK_THAT(bac.value, Catch::Matchers::WithinAbs(0.72022, 5e-4));
  CHECK_THAT(bac.value, Catch::Matchers::WithinAbs(0.7202259231, 1e-8));
  CHECK_THAT(bac.argmax_input[0], Catch::Matchers::WithinAbs(0.529316, 1e-4));

  const double closed = 1.0 + binary_entropy(binary_convolve(0.2, 0.2)) - 2.0 * binary_entropy(0.2);
  CHECK_THAT(capacity_xyz(make_bsc(0.2, 0.0)).value, Catch::Matchers::WithinAbs(closed, 1e-8));
  CHECK_THAT(capacity_xyz(make_bsc(0.0, 0.0)).value, Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("broadcast_mi evaluations") {
  const RelayChannelSpec s = make_bsc(0.2, 0.0);
  const double closed = 1.0 + binary_entropy(0.32) - 2.0 * binary_entropy(0.2);
  CHECK_THAT(broadcast_mi({0.5, 0.5}, s), Catch::Matchers::WithinAbs(closed, 1e-12));
  const RelayChannelSpec useless = make_relay_spec({{0.4, 0.6}, {0.4, 0.6}}, 0.0);
  CHECK_THAT(broadcast_mi({0.3, 0.7}, useless), Catch::Matchers::WithinAbs(0.0, 1e-12));
  CHECK_THAT(broadcast_mi({0.54, 0.46}, make_bac(0.01, 0.3, 0.0)),
             Catch::Matchers::WithinAbs(0.72022, 5e-4));
}

TEST_CASE("data processing: c_xyz dominates c_xy on random specs") {
  std::mt19937_64 rng(52811);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t ny = trial % 2 ? 3 : 2;
    Matrix w(2, Dist(ny));
    for (auto& row : w) {
      double rs = 0.0;
      for (auto& v : row) rs += v = u(rng);
      for (auto& v : row) v /= rs;
    }
    const RelayChannelSpec s = make_relay_spec(w, 0.0);
    CHECK(capacity_xyz(s).value >= capacity_xy(s).value - 1e-9);
  }
}

TEST_CASE("BSC closed forms across the crossover grid") {
  for (int i = 1; i <= 9; ++i) {
    const double p = 0.05 * i;
    const RelayChannelSpec s = make_bsc(p, 0.0);
    const CapacityResult xy = capacity_xy(s);
    const CapacityResult xyz = capacity_xyz(s);
    CHECK_THAT(xy.value, Catch::Matchers::WithinAbs(1.0 - binary_entropy(p), 1e-8));
    CHECK_THAT(xyz.value,
               Catch::Matchers::WithinAbs(
                   1.0 + binary_entropy(binary_convolve(p, p)) - 2.0 * binary_entropy(p), 1e-8));
    CHECK_THAT(xy.argmax_input[0], Catch::Matchers::WithinAbs(0.5, 1e-4));
    CHECK_THAT(xyz.argmax_input[0], Catch::Matchers::WithinAbs(0.5, 1e-4));
  }
}

TEST_CASE("Blahut-Arimoto agrees with the binary grid optimizer") {
  std::mt19937_64 rng(66047);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  int accepted = 0;
  while (accepted < 20) {
    const std::size_t ny = accepted % 2 ? 3 : 2;
    Matrix w(2, Dist(ny));
    for (auto& row : w) {
      double rs = 0.0;
      for (auto& v : row) rs += v = u(rng);
      for (auto& v : row) v /= rs;
    }
    // skip near-degenerate draws: almost-identical rows stall the iteration
    // without exercising anything new
    double sep = 0.0;
    for (std::size_t y = 0; y < ny; ++y) sep += std::fabs(w[0][y] - w[1][y]);
    if (sep < 0.02) continue;
    ++accepted;
    const CapacityResult grid = capacity_binary_grid(w);
    const CapacityResult ba = capacity_blahut_arimoto(w);
    CHECK(ba.iterations < 100000);
    CHECK_THAT(ba.value, Catch::Matchers::WithinAbs(grid.value, 1e-8));
  }
}

TEST_CASE("three-input capacity pins") {
  // symmetric 3x3 channel: uniform input optimal, closed-form capacity
  const Matrix sym = {{0.8, 0.1, 0.1}, {0.1, 0.8, 0.1}, {0.1, 0.1, 0.8}};
  const CapacityResult c3 = channel_capacity(sym);
  const double closed = std::log2(3.0) - entropy({0.8, 0.1, 0.1});
  CHECK_THAT(c3.value, Catch::Matchers::WithinAbs(closed, 1e-9));
  CHECK_THAT(c3.value, Catch::Matchers::WithinAbs(0.663034405834, 1e-9));

  // middle row dominated: the optimizer drops it; cross-checked against a
  // dense two-row grid over the surviving inputs
  const Matrix drop = {{0.9, 0.1}, {0.5, 0.5}, {0.2, 0.8}};
  const CapacityResult cd = channel_capacity(drop);
  CHECK_THAT(cd.value, Catch::Matchers::WithinAbs(0.397754346568, 1e-8));
  CHECK(cd.argmax_input[1] <= 1e-6);
}

TEST_CASE("JSON spec round-trip and diagnostics") {
  const RelayChannelSpec s = make_bac(0.01, 0.3, 0.25);
  const RelayChannelSpec back = relay_spec_from_json(relay_spec_to_json(s));
  CHECK(back.link == s.link);
  CHECK(back.r0 == s.r0);
  CHECK(back.input_size == s.input_size);

  auto must_fail = [](const nlohmann::json& j, const char* needle) {
    try {
      relay_spec_from_json(j);
      FAIL("expected an exception");
    } catch (const std::invalid_argument& e) {
      CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring(needle));
    }
  };
  nlohmann::json good = relay_spec_to_json(s);
  nlohmann::json j = good;
  j.erase("r0");
  must_fail(j, "r0");
  j = good;
  j.erase("transition");
  must_fail(j, "transition");
  j = good;
  j["transition"][0] = {0.5, 0.6};
  must_fail(j, "transition");
  j = good;
  j["output_size"] = 3;
  must_fail(j, "output_size");
  j = good;
  j["r0"] = -0.5;
  must_fail(j, "r0");

  CHECK_THROWS_AS(load_relay_spec("/nonexistent/rb.json"), std::invalid_argument);

  const auto path = std::filesystem::temp_directory_path() / "rb_spec_roundtrip.json";
  {
    std::ofstream out(path);
    out << relay_spec_to_json(s).dump(2);
  }
  const RelayChannelSpec loaded = load_relay_spec(path.string());
  CHECK(loaded.link == s.link);
  std::filesystem::remove(path);
}

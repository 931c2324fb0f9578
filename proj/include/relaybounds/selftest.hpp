#pragma once
// Built-in cross-verification suites.  Each suite checks one numerical engine
// against an independent route to the same numbers: closed forms against
// optimizers, exponent machinery against direct formulas, counting formulas
// against brute-force enumeration, and the bound family against its known
// orderings.  The CLI exposes these as `verify`.

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "relaybounds/bounds.hpp"
#include "relaybounds/channel.hpp"
#include "relaybounds/cover.hpp"
#include "relaybounds/delta.hpp"
#include "relaybounds/geometry.hpp"
#include "relaybounds/probability.hpp"
#include "relaybounds/reliability.hpp"

namespace relaybounds {

struct CheckResult {
  std::string label;
  bool ok = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  bool ok() const {
    for (const CheckResult& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

namespace detail {

inline std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline void check_close(SuiteResult& s, const std::string& label, double got, double want,
                        double tol) {
  const double dev = std::abs(got - want);
  s.checks.push_back({label, dev <= tol,
                      "got " + fmt9(got) + ", expected " + fmt9(want) + ", |dev| " + fmt9(dev) +
                          ", tol " + fmt9(tol)});
}

inline void check_le(SuiteResult& s, const std::string& label, double lhs, double rhs,
                     double tol) {
  s.checks.push_back({label, lhs <= rhs + tol,
                      fmt9(lhs) + " <= " + fmt9(rhs) + " + " + fmt9(tol)});
}

inline void check_true(SuiteResult& s, const std::string& label, bool ok, std::string detail) {
  s.checks.push_back({label, ok, std::move(detail)});
}

inline SuiteResult selftest_delta() {
  SuiteResult s{"delta", {}};

  // greedy against the BSC closed form, including the saturated regime
  double worst = 0.0;
  for (double p : {0.1, 0.2, 0.35}) {
    const Matrix w{{1.0 - p, p}, {p, 1.0 - p}};
    for (double d : {0.05, 0.3, 0.9}) {
      const double got = delta_general({0.5, 0.5}, w, d).value;
      worst = std::max(worst, std::abs(got - delta_bsc(p, d)));
    }
  }
  check_close(s, "greedy matches BSC closed form (9 cases, worst dev)", worst, 0.0, 1e-12);

  // the linearized value must equal the entropy-form objective at the
  // reported optimizer
  {
    const Dist px{0.3, 0.7};
    const Matrix w{{0.6, 0.3, 0.1}, {0.2, 0.5, 0.3}};
    const DeltaSolution sol = delta_general(px, w, 0.15);
    check_close(s, "greedy value equals entropy-form objective at optimizer",
                delta_objective(px, w, sol.optimizer), sol.value, 1e-9);
    check_le(s, "budget actually spent never exceeds d", sol.budget_used, 0.15, 1e-12);
  }

  // no seeded random feasible perturbation may beat the greedy optimum
  {
    const Dist px{0.3, 0.7};
    const Matrix w{{0.6, 0.3, 0.1}, {0.2, 0.5, 0.3}};
    const double d = 0.15;
    const DeltaSolution sol = delta_general(px, w, d);
    std::mt19937_64 rng(99173);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double best_rival = -1.0;
    for (int trial = 0; trial < 400; ++trial) {
      Matrix wt = w;
      double budget = d;
      for (int mv = 0; mv < 3; ++mv) {
        const std::size_t x = rng() % px.size();
        const std::size_t dn = rng() % w[0].size();
        const std::size_t rc = rng() % w[0].size();
        if (dn == rc || budget <= 0.0) continue;
        const double room = std::min(wt[x][dn], 1.0 - wt[x][rc]);
        const double amt = std::min(room, budget / px[x]) * unit(rng);
        wt[x][dn] -= amt;
        wt[x][rc] += amt;
        budget -= px[x] * amt;
      }
      best_rival = std::max(best_rival, delta_objective(px, w, wt));
    }
    check_le(s, "best of 400 random feasible perturbations", best_rival, sol.value, 1e-9);
  }

  // monotone in the budget
  {
    const Dist px{0.5, 0.5};
    const Matrix w{{0.85, 0.15}, {0.25, 0.75}};
    double prev = -1.0;
    bool mono = true;
    for (double d = 0.0; d <= 1.0; d += 0.02) {
      const double v = delta_general(px, w, d).value;
      if (v < prev - 1e-12) mono = false;
      prev = v;
    }
    check_true(s, "value nondecreasing in budget", mono, "grid step 0.02 on [0, 1]");
  }
  return s;
}

inline SuiteResult selftest_exponent() {
  SuiteResult s{"exponent", {}};
  const Matrix link{{0.8, 0.2}, {0.2, 0.8}};

  // log-domain implementation against the direct formula at rho = -1/2
  {
    const double rho = -0.5, srho = 1.0 / (1.0 + rho);
    double tot = 0.0;
    for (std::size_t y = 0; y < 2; ++y) {
      double inner = 0.0;
      for (std::size_t x = 0; x < 2; ++x) inner += 0.5 * std::pow(link[x][y], srho);
      tot += std::pow(inner, 1.0 + rho);
    }
    const double direct = -std::log2(tot);
    check_close(s, "e0 log-domain vs direct formula, rho=-0.5", gallager_e0(rho, {0.5, 0.5}, link),
                direct, 1e-12);
    check_close(s, "e0 regression, BSC(0.2) uniform rho=-0.5", gallager_e0(rho, {0.5, 0.5}, link),
                -0.221803325738, 1e-9);
  }

  const ExponentCurve curve(link);
  check_close(s, "E(0.35) regression, BSC(0.2)", curve.exponent(0.35), 0.005242111760, 1e-9);
  check_close(s, "E(0.5) regression, BSC(0.2)", curve.exponent(0.5), 0.041983809109, 1e-9);
  check_close(s, "E vanishes below capacity", curve.exponent(0.25), 0.0, 0.0);
  check_le(s, "E at capacity is grid residue only", curve.exponent(curve.capacity()), 0.0, 1e-6);

  {
    double worst = 0.0;
    for (double r : {0.3, 0.35, 0.45})
      worst = std::max(worst, std::abs(curve.inverse(curve.exponent(r)).rate - r));
    check_close(s, "inverse round trip on (C_XY, C_XY + 0.2), worst dev", worst, 0.0, 1e-4);
  }

  {
    const RelayChannelSpec spec = make_bsc(0.2, 0.0);
    const double alt = exponent_alt_form(0.5, spec);
    check_le(s, "curve E(0.5) below coarse-grid alternative form", curve.exponent(0.5), alt,
             1e-9);
    check_le(s, "alternative form within coarse-grid slack of R - C_XY", alt,
             0.5 - curve.capacity() + 0.01, 1e-12);
  }
  return s;
}

inline SuiteResult selftest_geometry_ball() {
  SuiteResult s{"geometry-ball", {}};
  const std::size_t n = 50;
  for (std::size_t q : {std::size_t{2}, std::size_t{3}}) {
    const auto rcap = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * (static_cast<double>(q) - 1.0) /
                   static_cast<double>(q)));
    double worst = 0.0;
    bool growing = true;
    BigInt prev = 0;
    for (std::size_t rn = 0; rn <= rcap; ++rn) {
      const BigInt vol = exact_ball_volume(n, rn, q);
      if (vol <= prev) growing = false;
      prev = vol;
      const double approx = ball_exponent(static_cast<double>(rn) / static_cast<double>(n), q);
      worst = std::max(worst, std::abs(approx - log2_big(vol) / static_cast<double>(n)));
    }
    check_close(s, "ball exponent vs exact count, n=50, q=" + std::to_string(q) + " (worst dev)",
                worst, 0.0, 0.15);
    check_true(s, "exact volumes strictly increasing, q=" + std::to_string(q), growing,
               "radii 0.." + std::to_string(rcap));
  }
  check_true(s, "log2_big exact on a power of two", log2_big(BigInt(1) << 100) == 100.0,
             "log2(2^100)");
  check_true(s, "central binomial coefficient C(50, 25)",
             binomial_exact(50, 25) == BigInt("126410606437752"), "exact integer compare");
  return s;
}

inline SuiteResult selftest_geometry_sphere() {
  SuiteResult s{"geometry-sphere", {}};
  for (std::size_t n : {std::size_t{8}, std::size_t{10}, std::size_t{12}}) {
    for (std::size_t d0n : {std::size_t{3}, n / 2}) {
      std::vector<std::vector<std::uint64_t>> table(n + 1, std::vector<std::uint64_t>(n + 1, 0));
      const std::uint32_t c2 = (std::uint32_t{1} << d0n) - 1;  // center 1 is the origin
      for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x)
        ++table[std::popcount(x)][std::popcount(x ^ c2)];
      std::size_t mismatches = 0;
      for (std::size_t rn = 0; rn <= n; ++rn)
        for (std::size_t rhon = 0; rhon <= n; ++rhon)
          if (sphere_intersection(n, d0n, rn, rhon) != BigInt(table[rn][rhon])) ++mismatches;
      check_true(s,
                 "enumeration n=" + std::to_string(n) + ", separation " + std::to_string(d0n),
                 mismatches == 0,
                 "all (r, rho) pairs; mismatches: " + std::to_string(mismatches));
    }
  }
  return s;
}

inline SuiteResult selftest_geometry_blowup() {
  SuiteResult s{"geometry-blowup", {}};
  {
    const BlowupCheck c = blowup_ball(200, 0.5, 80, 0.1);
    check_true(s, "binomial ball n=200 q=0.5 r0=80 blow 0.1 holds", c.holds,
               "margin " + fmt9(c.margin));
    check_true(s, "blown radius lands on the expected cell", c.blown_radius == 124,
               "got " + std::to_string(c.blown_radius));
    check_close(s, "coverage margin regression", c.margin, 1.807e-2, 1e-4);
  }
  for (const auto& [n, q, r0, br] :
       std::vector<std::tuple<std::size_t, double, std::size_t, double>>{
           {100, 0.5, 35, 0.1}, {400, 0.3, 90, 0.05}, {50, 0.5, 15, 0.15}}) {
    const BlowupCheck c = blowup_ball(n, q, r0, br);
    check_true(s,
               "binomial ball n=" + std::to_string(n) + " q=" + fmt9(q) + " r0=" +
                   std::to_string(r0) + " blow " + fmt9(br) + " holds",
               c.holds, "margin " + fmt9(c.margin));
  }
  {
    const RandomSetBlowup c = blowup_random_set(14, 0.01, 0.15, 20260815);
    check_true(s, "seeded random set n=14 prob 0.01 blow 0.15 holds", c.holds,
               "blown radius " + std::to_string(c.blown_radius) + ", coverage " +
                   fmt9(c.blown_prob) + ", margin " + fmt9(c.margin));
  }
  return s;
}

inline SuiteResult selftest_bounds_order() {
  SuiteResult s{"bounds-order", {}};
  const double p = 0.2;
  const std::vector<double> grid{0.0, 0.05, 0.1, 0.15, 0.18, 0.21, 0.25, 0.3};
  const std::vector<BscBounds> rows = sweep_bsc_bounds(p, grid);
  const double cxy = rows[0].c_xy, cxyz = rows[0].c_xyz;

  bool in_range = true, ordered = true, monotone = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const BscBounds& r = rows[i];
    for (double v : {r.cutset.value, r.xue.value, r.theorem1.value, r.theorem2.value}) {
      if (!(v >= cxy - 1e-9 && v <= cxyz + 1e-9)) in_range = false;
    }
    if (!(r.theorem2.value <= r.theorem1.value + 1e-9 &&
          r.theorem1.value <= r.xue.value + 1e-9 && r.xue.value <= r.cutset.value + 1e-9))
      ordered = false;
    if (i > 0) {
      const BscBounds& q = rows[i - 1];
      if (r.cutset.value < q.cutset.value - 1e-9 || r.xue.value < q.xue.value - 1e-9 ||
          r.theorem1.value < q.theorem1.value - 1e-9 ||
          r.theorem2.value < q.theorem2.value - 1e-9)
        monotone = false;
    }
  }
  check_true(s, "all bounds within [C_XY, C_XYZ]", in_range, "BSC(0.2), 8 relay rates");
  check_true(s, "thm2 <= thm1 <= xue <= cutset throughout", ordered, "BSC(0.2), 8 relay rates");
  check_true(s, "every bound nondecreasing in r0", monotone, "BSC(0.2), 8 relay rates");

  const BscBounds& at25 = rows[6];
  check_close(s, "cutset saturates at C_XYZ by r0=0.25", at25.cutset.value, cxyz, 1e-9);
  check_close(s, "theorem2 saturates at C_XYZ by r0=0.25", at25.theorem2.value, cxyz, 1e-9);
  check_true(s, "saturated bounds report the broadcast constraint",
             at25.cutset.active_constraint == ActiveConstraint::broadcast &&
                 at25.xue.active_constraint == ActiveConstraint::broadcast &&
                 at25.theorem1.active_constraint == ActiveConstraint::broadcast &&
                 at25.theorem2.active_constraint == ActiveConstraint::broadcast,
             "r0 = 0.25");

  const BscBounds& at18 = rows[4];
  check_close(s, "cutset reference value at r0=0.18", at18.cutset.value, 0.458071905, 1e-6);
  check_close(s, "xue reference value at r0=0.18", at18.xue.value, 0.458065058, 1e-6);
  check_close(s, "theorem1 reference value at r0=0.18", at18.theorem1.value, 0.455941722, 1e-6);
  check_close(s, "theorem2 reference value at r0=0.18", at18.theorem2.value, 0.439316906, 1e-6);

  // closed forms against the general grid optimizer at one relay rate
  {
    const RelayChannelSpec spec = make_bsc(p, 0.18);
    check_close(s, "general-path cutset matches closed form", cutset(spec).value,
                at18.cutset.value, 1e-9);
    check_close(s, "general-path theorem1 matches closed form", theorem1(spec).value,
                at18.theorem1.value, 1e-9);
    check_close(s, "general-path theorem2 matches closed form", theorem2(spec).value,
                at18.theorem2.value, 1e-9);
  }
  return s;
}

}  // namespace detail

inline std::vector<std::string> selftest_suite_names() {
  return {"delta", "exponent", "geometry-ball", "geometry-sphere", "geometry-blowup",
          "bounds-order"};
}

inline SuiteResult run_selftest_suite(const std::string& name) {
  if (name == "delta") return detail::selftest_delta();
  if (name == "exponent") return detail::selftest_exponent();
  if (name == "geometry-ball") return detail::selftest_geometry_ball();
  if (name == "geometry-sphere") return detail::selftest_geometry_sphere();
  if (name == "geometry-blowup") return detail::selftest_geometry_blowup();
  if (name == "bounds-order") return detail::selftest_bounds_order();
  throw std::invalid_argument("unknown verification suite: " + name);
}

inline std::vector<SuiteResult> run_all_selftests() {
  std::vector<SuiteResult> out;
  for (const std::string& name : selftest_suite_names()) out.push_back(run_selftest_suite(name));
  return out;
}

}  // namespace relaybounds

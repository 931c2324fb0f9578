#pragma once
// Hamming-space counting used by the packing arguments: exact ball volumes
// over q-ary alphabets, the exponent of a sphere-sphere intersection, and
// measure blow-up checks (a low-probability set inflated by the critical
// radius plus slack covers almost everything).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "relaybounds/probability.hpp"

namespace relaybounds {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt binomial_exact(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt b = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    b *= static_cast<unsigned long>(n - k + i);
    b /= static_cast<unsigned long>(i);  // exact: C(n, i) is integral
  }
  return b;
}

// |B(r)| = sum_{k<=r} C(n,k) (q-1)^k over the q-ary n-cube.
inline BigInt exact_ball_volume(std::size_t n, std::size_t r, std::size_t q) {
  if (q < 2) throw std::invalid_argument("exact_ball_volume: alphabet needs >= 2 symbols");
  if (r > n) throw std::invalid_argument("exact_ball_volume: radius exceeds dimension");
  BigInt vol = 0, binom = 1, powq = 1;
  for (std::size_t k = 0;; ++k) {
    vol += binom * powq;
    if (k == r) break;
    binom *= static_cast<unsigned long>(n - k);
    binom /= static_cast<unsigned long>(k + 1);
    powq *= static_cast<unsigned long>(q - 1);
  }
  return vol;
}

// log2 with the top 63 bits as mantissa; exact enough (~1e-16 relative) for
// any width, where convert_to<double> alone would overflow past 2^1024.
inline double log2_big(const BigInt& v) {
  if (v <= 0) throw std::domain_error("log2_big: argument must be positive");
  const std::size_t bits = boost::multiprecision::msb(v);
  if (bits <= 62) return std::log2(v.convert_to<double>());
  const BigInt top = v >> (bits - 62);
  return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 62);
}

// Exponent of the count of binary words at distance r from one center and
// rho from another, the centers d0 apart (all distances normalized by n):
//   f_r = d0 h((r+d0-rho)/(2 d0)) + (1-d0) h((r+rho-d0)/(2(1-d0)))
// Feasible window: |rho - d0| <= r <= min(rho + d0, 2 - rho - d0).
// The maximum over r is h(rho), attained at r* = d0*rho (binary convolution).
inline double f_r(double r, double d0, double rho) {
  detail::check_unit_interval(d0, "f_r center distance");
  detail::check_unit_interval(rho, "f_r second radius");
  if (!(d0 > 0.0 && d0 < 1.0))
    throw std::domain_error("f_r: center distance must lie strictly inside (0, 1)");
  const double lo = std::max(rho - d0, d0 - rho);
  const double hi = std::min(rho + d0, 2.0 - rho - d0);
  if (!(r >= lo - 1e-12 && r <= hi + 1e-12))
    throw std::domain_error("f_r: r outside the feasible window");
  const double n1 = std::clamp((r + d0 - rho) / (2.0 * d0), 0.0, 1.0);
  const double n2 = std::clamp((r + rho - d0) / (2.0 * (1.0 - d0)), 0.0, 1.0);
  return d0 * binary_entropy(n1) + (1.0 - d0) * binary_entropy(n2);
}

struct FrMaximum {
  double arg = 0.0;
  double value = 0.0;
};

// Dense 1e-4 scan anchored at the window's lower edge.  For d0, rho on a
// hundredth grid the analytic argmax d0*rho lands exactly on a grid point,
// so the scan reproduces it to rounding error.
inline FrMaximum f_r_max(double d0, double rho) {
  const double lo = std::max(rho - d0, d0 - rho);
  const double hi = std::min(rho + d0, 2.0 - rho - d0);
  if (!(lo <= hi)) throw std::domain_error("f_r_max: empty feasible window");
  FrMaximum best{lo, f_r(lo, d0, rho)};
  for (std::size_t k = 1;; ++k) {
    const double r = lo + static_cast<double>(k) * 1e-4;
    if (r >= hi) break;
    const double v = f_r(r, d0, rho);
    if (v > best.value) best = {r, v};
  }
  if (hi > lo) {
    const double v = f_r(hi, d0, rho);
    if (v > best.value) best = {hi, v};
  }
  return best;
}

// Exact count of binary words at distance rn from center 1 and rhon from
// center 2, the centers d0n apart: choose which of the d0n differing
// coordinates flip (u) and how many agreeing ones do (v).
inline BigInt sphere_intersection(std::size_t n, std::size_t d0n, std::size_t rn,
                                  std::size_t rhon) {
  if (d0n > n) throw std::invalid_argument("sphere_intersection: center distance exceeds n");
  const long long u2 = static_cast<long long>(rn) + static_cast<long long>(d0n) -
                       static_cast<long long>(rhon);
  const long long v2 = static_cast<long long>(rn) + static_cast<long long>(rhon) -
                       static_cast<long long>(d0n);
  if (u2 < 0 || v2 < 0 || (u2 & 1) || (v2 & 1)) return 0;
  const auto u = static_cast<std::size_t>(u2 / 2);
  const auto v = static_cast<std::size_t>(v2 / 2);
  if (u > d0n || v > n - d0n) return 0;
  return binomial_exact(d0n, u) * binomial_exact(n - d0n, v);
}

namespace detail {

// log2 Pr(lo <= X <= hi), X ~ Binomial(n, q); exact log-sum-exp over the pmf
inline double log2_binomial_range(std::size_t n, double q, std::size_t lo, std::size_t hi) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("binomial range: q must lie inside (0, 1)");
  if (lo > hi || hi > n) throw std::invalid_argument("binomial range: bad bounds");
  const double lg_n = std::lgamma(static_cast<double>(n) + 1.0);
  const double lq = std::log(q), l1q = std::log1p(-q);
  std::vector<double> logs;
  logs.reserve(hi - lo + 1);
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t k = lo; k <= hi; ++k) {
    const double lk = lg_n - std::lgamma(static_cast<double>(k) + 1.0) -
                      std::lgamma(static_cast<double>(n - k) + 1.0) +
                      static_cast<double>(k) * lq + static_cast<double>(n - k) * l1q;
    logs.push_back(lk);
    mx = std::max(mx, lk);
  }
  double sum = 0.0;
  for (double lk : logs) sum += std::exp(lk - mx);
  return (mx + std::log(sum)) / kLn2;
}

}  // namespace detail

struct BlowupCheck {
  double set_log2_prob = 0.0;   // log2 Pr(X <= r0)
  double exponent_a = 0.0;      // -log2 Pr / n
  std::size_t blown_radius = 0; // r0 + floor(n (sqrt(a ln2 / 2) + blow_r))
  double blown_prob = 0.0;      // Pr(X <= blown_radius)
  double required_prob = 0.0;   // 1 - exp(-2 n blow_r^2) - slack
  double margin = 0.0;          // blown_prob - required_prob
  bool holds = false;
};

// Blow-up for the binomial ball: a radius-r0 ball of probability 2^{-a n},
// inflated by n (sqrt(a ln2/2) + blow_r), must carry probability at least
// 1 - exp(-2 n blow_r^2).  The 1e-12 slack absorbs floating-point noise on
// the exact tail sums.
inline BlowupCheck blowup_ball(std::size_t n, double q, std::size_t r0, double blow_r) {
  if (n == 0 || r0 > n) throw std::invalid_argument("blowup_ball: bad radius or dimension");
  if (!(blow_r >= 0.0)) throw std::domain_error("blowup_ball: blow radius must be nonnegative");
  BlowupCheck out;
  out.set_log2_prob = detail::log2_binomial_range(n, q, 0, r0);
  out.exponent_a = -out.set_log2_prob / static_cast<double>(n);
  const double grow = std::sqrt(out.exponent_a * kLn2 / 2.0) + blow_r;
  out.blown_radius =
      std::min(n, r0 + static_cast<std::size_t>(std::floor(static_cast<double>(n) * grow)));
  if (out.blown_radius == n) {
    out.blown_prob = 1.0;
  } else {
    out.blown_prob =
        1.0 - std::exp2(detail::log2_binomial_range(n, q, out.blown_radius + 1, n));
  }
  out.required_prob =
      1.0 - std::exp(-2.0 * static_cast<double>(n) * blow_r * blow_r) - 1e-12;
  out.margin = out.blown_prob - out.required_prob;
  out.holds = out.margin >= 0.0;
  return out;
}

struct RandomSetBlowup {
  std::size_t set_size = 0;
  double set_prob = 0.0;
  double exponent_a = 0.0;
  std::size_t blown_radius = 0;
  double blown_prob = 0.0;
  double required_prob = 0.0;
  double margin = 0.0;
  bool holds = false;
};

// Same inequality for an arbitrary (seeded random) subset of the binary
// n-cube under the uniform measure; distances to the set come from a
// multi-source breadth-first sweep, so n is capped to keep 2^n walkable.
inline RandomSetBlowup blowup_random_set(std::size_t n, double set_prob, double blow_r,
                                         std::uint64_t seed) {
  if (n == 0 || n > 20) throw std::invalid_argument("blowup_random_set: n must be in [1, 20]");
  if (!(set_prob > 0.0 && set_prob <= 1.0))
    throw std::domain_error("blowup_random_set: set probability must lie in (0, 1]");
  if (!(blow_r >= 0.0)) throw std::domain_error("blowup_random_set: blow radius must be nonnegative");
  const std::size_t cube = std::size_t{1} << n;
  const auto want = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(set_prob * static_cast<double>(cube))));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, cube - 1);
  std::unordered_set<std::size_t> seeds;
  while (seeds.size() < want) seeds.insert(pick(rng));

  RandomSetBlowup out;
  out.set_size = seeds.size();
  out.set_prob = static_cast<double>(out.set_size) / static_cast<double>(cube);
  out.exponent_a = -std::log2(out.set_prob) / static_cast<double>(n);
  const double grow = std::sqrt(out.exponent_a * kLn2 / 2.0) + blow_r;
  out.blown_radius = static_cast<std::size_t>(std::floor(static_cast<double>(n) * grow));

  std::vector<std::uint8_t> dist(cube, 0xff);
  std::deque<std::size_t> frontier;
  for (std::size_t s : seeds) {
    dist[s] = 0;
    frontier.push_back(s);
  }
  while (!frontier.empty()) {
    const std::size_t v = frontier.front();
    frontier.pop_front();
    if (dist[v] >= out.blown_radius) continue;
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t w = v ^ (std::size_t{1} << b);
      if (dist[w] == 0xff) {
        dist[w] = static_cast<std::uint8_t>(dist[v] + 1);
        frontier.push_back(w);
      }
    }
  }
  std::size_t covered = 0;
  for (std::size_t v = 0; v < cube; ++v)
    if (dist[v] != 0xff) ++covered;

  out.blown_prob = static_cast<double>(covered) / static_cast<double>(cube);
  out.required_prob =
      1.0 - std::exp(-2.0 * static_cast<double>(n) * blow_r * blow_r) - 1e-12;
  out.margin = out.blown_prob - out.required_prob;
  out.holds = out.margin >= 0.0;
  return out;
}

}  // namespace relaybounds

#pragma once
// The constrained inefficiency functional Delta(p(x), d):
//
//   maximize   H(pt | px) + D(pt || p | px) - H(p | px)
//   over       row-stochastic pt
//   subject to (1/2) sum_{x,w} px(x) |pt(w|x) - p(w|x)| <= d.
//
// The objective expands to sum_{x,w} px(x) (pt - p)(w|x) * log2(1/p(w|x)),
// which is linear in pt with coefficients fixed by the original channel, so
// the problem is a fractional knapsack: each candidate move (row x, donor
// symbol, recipient symbol) buys log2(p(donor|x)/p(recipient|x)) bits per
// unit of total-variation budget, independent of the current state.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "relaybounds/probability.hpp"

namespace relaybounds {

struct DeltaSolution {
  double value = 0.0;
  Matrix optimizer;         // maximizing pt(w|x); equals the input channel when infinite
  double budget_used = 0.0; // total-variation actually spent
  bool infinite = false;    // some x with px(x) > 0 has a zero channel entry and d > 0
  bool saturated = false;   // d exceeds the largest achievable total variation
};

// Original (entropy + relative entropy) form of the objective; used to
// cross-check the linearization that the greedy solver optimizes.
inline double delta_objective(const Dist& px, const Matrix& w, const Matrix& wt) {
  return conditional_entropy(px, wt) + conditional_relative_entropy(px, wt, w) -
         conditional_entropy(px, w);
}

namespace detail {

struct DeltaMove {
  double gain;  // bits per unit of total variation
  std::size_t row, donor, recipient;
};

// Every row has full support on supp(px); otherwise Delta jumps to +inf for
// any positive budget (mass moved onto a zero-probability symbol makes the
// relative-entropy term diverge).
inline bool fully_connected_on_support(const Dist& px, const Matrix& w) {
  for (std::size_t x = 0; x < px.size(); ++x) {
    if (px[x] <= 0.0) continue;
    for (double v : w[x])
      if (v == 0.0) return false;
  }
  return true;
}

inline std::vector<DeltaMove> delta_moves(const Dist& px, const Matrix& w) {
  std::vector<DeltaMove> moves;
  const std::size_t ny = w[0].size();
  for (std::size_t x = 0; x < px.size(); ++x) {
    if (px[x] <= 0.0) continue;
    for (std::size_t dn = 0; dn < ny; ++dn)
      for (std::size_t rc = 0; rc < ny; ++rc)
        if (dn != rc && w[x][dn] > w[x][rc])
          moves.push_back({std::log2(w[x][dn] / w[x][rc]), x, dn, rc});
  }
  std::sort(moves.begin(), moves.end(), [](const DeltaMove& a, const DeltaMove& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    return std::tie(a.row, a.donor, a.recipient) < std::tie(b.row, b.donor, b.recipient);
  });
  return moves;
}

// Piecewise-linear profile of d -> Delta(px, d) for a fixed px: a full
// saturation pass records (gain, total-variation capacity) per move, so
// repeated evaluations at many budgets cost one short linear walk each.
struct DeltaProfile {
  bool connected = true;
  std::vector<std::pair<double, double>> segments;  // (gain, tv capacity), gain descending
  double eval(double d) const {
    if (!connected) return d > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    double value = 0.0, rem = d;
    for (const auto& [gain, cap] : segments) {
      if (rem <= 0.0) break;
      const double take = std::min(rem, cap);
      value += gain * take;
      rem -= take;
    }
    return value;
  }
};

inline DeltaProfile make_delta_profile(const Dist& px, const Matrix& w) {
  DeltaProfile prof;
  if (!fully_connected_on_support(px, w)) {
    prof.connected = false;
    return prof;
  }
  Matrix wt = w;
  for (const DeltaMove& mv : delta_moves(px, w)) {
    Dist& row = wt[mv.row];
    const double room = std::min(row[mv.donor], 1.0 - row[mv.recipient]);
    if (room <= 0.0) continue;
    row[mv.donor] -= room;
    row[mv.recipient] += room;
    prof.segments.emplace_back(mv.gain, px[mv.row] * room);
  }
  return prof;
}

}  // namespace detail

inline DeltaSolution delta_general(const Dist& px_in, const Matrix& w_in, double d) {
  Dist px = px_in;
  Matrix w = w_in;
  validate_distribution(px, "delta input distribution");
  validate_channel(w, "delta channel");
  detail::check_dims(px, w);
  if (!(d >= 0.0)) throw std::domain_error("delta: budget d must be nonnegative");

  DeltaSolution sol;
  sol.optimizer = w;
  if (d == 0.0) return sol;

  if (!detail::fully_connected_on_support(px, w)) {
    sol.infinite = true;
    sol.value = std::numeric_limits<double>::infinity();
    return sol;
  }

  const std::vector<detail::DeltaMove> moves = detail::delta_moves(px, w);

  // Descending-gain order makes the exchange argument exact, and also rules
  // out through-routing: if (a->b) and (b->c) both carried positive gain,
  // (a->c) has their sum and ran first, draining a or filling c.  Hence no
  // symbol both receives and donates, and budget_used equals the final
  // total-variation distance.
  double budget = d;
  for (const detail::DeltaMove& mv : moves) {
    if (budget <= 0.0) break;
    Dist& row = sol.optimizer[mv.row];
    const double room = std::min(row[mv.donor], 1.0 - row[mv.recipient]);
    if (room <= 0.0) continue;
    const double amount = std::min(room, budget / px[mv.row]);
    row[mv.donor] -= amount;
    row[mv.recipient] += amount;
    const double tv = px[mv.row] * amount;
    sol.value += tv * mv.gain;
    sol.budget_used += tv;
    budget -= tv;
  }
  sol.saturated = budget > 1e-15;
  return sol;
}

// BSC closed form: min{d, 1-p} log2((1-p)/p), independent of p(x).
inline double delta_bsc(double p, double d) {
  if (!(p > 0.0 && p < 0.5))
    throw std::domain_error("delta_bsc: p must lie strictly inside (0, 0.5)");
  if (!(d >= 0.0)) throw std::domain_error("delta_bsc: d must be nonnegative");
  return std::min(d, 1.0 - p) * std::log2((1.0 - p) / p);
}

// First-order variant d (1-2p) log2((1-p)/p).
inline double delta_prime(double d, double p) {
  if (!(p > 0.0 && p < 0.5))
    throw std::domain_error("delta_prime: p must lie strictly inside (0, 0.5)");
  if (!(d >= 0.0)) throw std::domain_error("delta_prime: d must be nonnegative");
  return d * (1.0 - 2.0 * p) * std::log2((1.0 - p) / p);
}

}  // namespace relaybounds

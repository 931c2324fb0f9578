#pragma once
// Estimates of the critical relay rate r0* for BSC(p): the smallest r0 at
// which the bounded curves can reach the unconstrained capacity C(infinity).
//
//   hf_upper      H(p*p) = H(Z|Y); describing the relay observation at this
//                 rate always suffices, so r0* <= hf_upper
//   cutset_lower  the cut-set bound stays below C(infinity) for
//                 r0 < H(p*p) - H(p), so r0* >= that entropy gap
//   thm1_lower    gap + a*, a* the smallest auxiliary rate whose uniform
//                 perturbation pays for the gap: h(sqrt(a ln2/2)) - a >= gap
//   thm2_lower    gap + (2/ln2) (gap / log2((1-p)/p))^2
//   thm3_lower    as thm2_lower with the sharpened slope
//                 (1-2p) log2((1-p)/p); tends to 1/(8 ln2) as p -> 1/2
//   ratio         hf_upper / cutset_lower; tends to 2 as p -> 0
//
// Everything here degenerates to differences of nearly equal entropies as
// p -> 1/2, so the gap and the log-ratio get series implementations in the
// variable u = 1 - 2p; the naive forms take over where they are exact enough.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaybounds/optim.hpp"
#include "relaybounds/probability.hpp"

namespace relaybounds {

// thm3_lower limit as p -> 1/2
inline constexpr double kThm3HighNoiseLimit = 1.0 / (8.0 * kLn2);
// ratio limit as p -> 0
inline constexpr double kRatioLowNoiseLimit = 2.0;

namespace detail {

inline void check_cover_p(double p, const char* what) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::domain_error(std::string(what) + ": p must lie strictly inside (0, 0.5)");
  }
}

// hf_upper and the entropy gap stay finite at the endpoints; only the bounds
// involving log((1-p)/p) need the open interval.
inline void check_cover_p_closed(double p, const char* what) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw std::domain_error(std::string(what) + ": p must lie in [0, 0.5]");
  }
}

}  // namespace detail

// H(p*p) - H(p).  In u = 1 - 2p the entropies expand as
// H = 1 - (1/ln2) sum_k u^{2k} / (2k(2k-1)), and p*p has parameter u^2, so
//   gap = (1/ln2) sum_k (u^{2k} - u^{4k}) / (2k(2k-1)).
// The series form avoids the catastrophic cancellation of the naive
// difference near p = 1/2; both forms agree to ~1e-16 at the switch point.
inline double entropy_gap(double p) {
  detail::check_cover_p_closed(p, "entropy_gap");
  const double u = 1.0 - 2.0 * p;
  if (u > 0.2) return binary_entropy(binary_convolve(p, p)) - binary_entropy(p);
  const double u2 = u * u;
  double sum = 0.0, t2 = 1.0, t4 = 1.0;
  for (std::size_t k = 1; k <= 60; ++k) {
    t2 *= u2;        // u^{2k}
    t4 *= u2 * u2;   // u^{4k}
    const double term = (t2 - t4) / static_cast<double>(2 * k * (2 * k - 1));
    sum += term;
    if (t2 < 1e-24) break;
  }
  return sum / kLn2;
}

// log2((1-p)/p) = (log1p(u) - log1p(-u)) / ln2, exact for u -> 0.
inline double log_odds(double p) {
  detail::check_cover_p(p, "log_odds");
  const double u = 1.0 - 2.0 * p;
  return (std::log1p(u) - std::log1p(-u)) / kLn2;
}

struct CoverBounds {
  double p = 0.0;
  double hf_upper = 0.0;
  double cutset_lower = 0.0;
  double thm1_lower = 0.0;
  double thm2_lower = 0.0;
  double thm3_lower = 0.0;
  double ratio = 0.0;
};

inline double cover_hf_upper(double p) {
  detail::check_cover_p_closed(p, "cover_hf_upper");
  return binary_entropy(binary_convolve(p, p));
}

inline double cover_cutset_lower(double p) { return entropy_gap(p); }

inline double cover_thm1_lower(double p) {
  detail::check_cover_p(p, "cover_thm1_lower");
  const double gap = entropy_gap(p);
  const double cap = std::min(binary_entropy(p), 1.0 / (2.0 * kLn2));
  auto slack = [](double a) { return binary_entropy(std::sqrt(a * kLn2 / 2.0)) - a; };
  // the scan below assumes a single interior peak; confirm the shape on a
  // coarse grid before trusting the first crossing
  {
    bool falling = false;
    double prev = slack(0.0);
    for (double a = 1e-4; a <= cap; a += 1e-4) {
      const double v = slack(a);
      if (v < prev - 1e-15) {
        falling = true;
      } else if (falling && v > prev + 1e-12) {
        throw std::logic_error("cover_thm1_lower: slack profile is not unimodal");
      }
      prev = v;
    }
  }
  const std::optional<double> a = first_crossing(slack, gap, 0.0, cap, 1e-6);
  if (!a) throw std::runtime_error("cover_thm1_lower: no auxiliary rate covers the gap");
  return gap + *a;
}

inline double cover_thm2_lower(double p) {
  const double gap = entropy_gap(p);
  const double d = gap / log_odds(p);
  return gap + (2.0 / kLn2) * d * d;
}

inline double cover_thm3_lower(double p) {
  const double gap = entropy_gap(p);
  const double u = 1.0 - 2.0 * p;
  const double d = gap / (u * log_odds(p));
  return gap + (2.0 / kLn2) * d * d;
}

inline double cover_ratio(double p) { return cover_hf_upper(p) / entropy_gap(p); }

inline CoverBounds cover_bounds(double p) {
  CoverBounds out;
  out.p = p;
  out.hf_upper = cover_hf_upper(p);
  out.cutset_lower = cover_cutset_lower(p);
  out.thm1_lower = cover_thm1_lower(p);
  out.thm2_lower = cover_thm2_lower(p);
  out.thm3_lower = cover_thm3_lower(p);
  out.ratio = out.hf_upper / out.cutset_lower;
  return out;
}

inline std::vector<CoverBounds> sweep_cover(const SweepRange& range) {
  std::vector<CoverBounds> out;
  for (double p : sweep_points(range)) out.push_back(cover_bounds(p));
  return out;
}

}  // namespace relaybounds

#pragma once
// Strong-converse error exponent machinery for the X-Y link:
//
//   e0(rho, px)  = -log2 sum_y ( sum_x px(x) p(y|x)^{1/(1+rho)} )^{1+rho}
//   E(R)         = max_{rho in (-1,0)} ( -rho R + min_{px} e0(rho, px) )
//
// E is zero up to the link capacity and strictly increasing above it, which
// is exactly the regime the relay bounds exercise.  Numerics: the inner sum
// is evaluated in the log domain per output symbol (the exponent 1/(1+rho)
// reaches ~1e6 on the rho grid, far past double underflow), and zero-mass
// inputs are excluded before exponentiation.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "relaybounds/channel.hpp"
#include "relaybounds/optim.hpp"
#include "relaybounds/probability.hpp"

namespace relaybounds {

inline double gallager_e0(double rho, const Dist& px, const Matrix& w) {
  detail::check_dims(px, w);
  if (!(rho >= -1.0 && rho < 0.0)) throw std::domain_error("e0: rho must lie in [-1, 0)");
  const std::size_t ny = w[0].size();
  if (rho == -1.0) {
    // limit of the formula as 1/(1+rho) -> infinity
    double tot = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      double mx = 0.0;
      for (std::size_t x = 0; x < px.size(); ++x)
        if (px[x] > 0.0 && w[x][y] > mx) mx = w[x][y];
      tot += mx;
    }
    return -std::log2(tot);
  }
  const double s = 1.0 / (1.0 + rho);
  double tot = 0.0;
  for (std::size_t y = 0; y < ny; ++y) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < px.size(); ++x)
      if (px[x] > 0.0 && w[x][y] > 0.0) m = std::max(m, s * std::log(w[x][y]));
    if (m == -std::numeric_limits<double>::infinity()) continue;  // column dead on support
    double inner = 0.0;
    for (std::size_t x = 0; x < px.size(); ++x)
      if (px[x] > 0.0 && w[x][y] > 0.0) inner += px[x] * std::exp(s * std::log(w[x][y]) - m);
    tot += std::exp((1.0 + rho) * (m + std::log(inner)));
  }
  return -std::log2(tot);
}

// Precomputed dual description of E(R): rho grid plus m(rho) = min_px e0.
// Building once per channel turns every E / E^{-1} query into a scan over
// 2000 affine forms, which is what makes the r0 sweeps tractable.
class ExponentCurve {
 public:
  explicit ExponentCurve(const Matrix& link, std::size_t rho_points = 2000,
                         double alpha_step = 1e-3)
      : alpha_step_(alpha_step) {
    Matrix w = link;
    validate_channel(w, "exponent curve channel");
    if (w.size() != 2)
      throw std::invalid_argument("exponent curve: binary-input channels only");
    max_rate_ = 1.0;  // log2 of the binary input alphabet
    capacity_ = capacity_binary_grid(w).value;
    if (rho_points < 2) throw std::invalid_argument("exponent curve: need at least 2 rho points");
    const double lo = -1.0 + 1e-6, hi = -1e-6;
    rho_.resize(rho_points);
    m_.resize(rho_points);
    for (std::size_t k = 0; k < rho_points; ++k) {
      const double rho = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(rho_points - 1);
      rho_[k] = rho;
      // uniform input is NOT assumed optimal for the inner minimization
      auto inner = [&](double alpha) { return gallager_e0(rho, {alpha, 1.0 - alpha}, w); };
      m_[k] = scan_refine_min(inner, 0.0, 1.0, alpha_step_, 1e-10).value;
    }
  }

  double capacity() const { return capacity_; }
  double max_rate() const { return max_rate_; }
  const std::vector<double>& rho_grid() const { return rho_; }
  const std::vector<double>& min_e0_grid() const { return m_; }

  // E(R) = max(0, max_k (-rho_k R + m_k)); max of affine forms, hence convex
  // and nondecreasing in R.
  double exponent(double r) const {
    if (!(r >= 0.0)) throw std::domain_error("exponent: rate must be nonnegative");
    double best = 0.0;
    for (std::size_t k = 0; k < rho_.size(); ++k) {
      const double v = -rho_[k] * r + m_[k];
      if (v > best) best = v;
    }
    return best;
  }

  struct Inverse {
    double rate = 0.0;
    bool saturated = false;  // y exceeds E at the maximal rate
  };

  // Largest R in [capacity, max_rate] with E(R) <= y.
  Inverse inverse(double y, double tol = 1e-8) const {
    if (!(y >= 0.0)) throw std::domain_error("inverse exponent: y must be nonnegative");
    if (y == 0.0) return {capacity_, false};
    if (exponent(max_rate_) <= y) return {max_rate_, true};
    double lo = capacity_, hi = max_rate_;
    if (exponent(lo) > y) return {lo, false};  // grid residue at capacity; clamp
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (exponent(mid) <= y)
        lo = mid;
      else
        hi = mid;
    }
    return {lo, false};
  }

 private:
  std::vector<double> rho_, m_;
  double capacity_ = 0.0;
  double max_rate_ = 0.0;
  double alpha_step_ = 0.0;
};

inline double error_exponent(double r, const RelayChannelSpec& spec) {
  return ExponentCurve(spec.link).exponent(r);
}

inline ExponentCurve::Inverse inverse_exponent(double y, const RelayChannelSpec& spec) {
  return ExponentCurve(spec.link).inverse(y);
}

// Alternative form of the same exponent:
//   E(R) = min over (px, pt) of D(pt || p | px) + |R - I(px, pt)|+
// evaluated on 0.01 grids over the input weight and both row parameters.
// Binary-input only; the grid blows up combinatorially beyond that.
inline double exponent_alt_form(double r, const RelayChannelSpec& spec) {
  if (!(r >= 0.0)) throw std::domain_error("alt form: rate must be nonnegative");
  if (spec.input_size != 2 || spec.output_size != 2)
    throw std::invalid_argument("alt form: binary channels only");
  constexpr int kSteps = 100;
  std::vector<double> h2(kSteps + 1), kl0(kSteps + 1), kl1(kSteps + 1);
  for (int i = 0; i <= kSteps; ++i) {
    const double t = static_cast<double>(i) / kSteps;
    h2[i] = binary_entropy(t);
    kl0[i] = binary_kl(t, spec.link[0][1]);
    kl1[i] = binary_kl(t, spec.link[1][1]);
  }
  double best = std::numeric_limits<double>::infinity();
  for (int ai = 0; ai <= kSteps; ++ai) {
    const double alpha = static_cast<double>(ai) / kSteps;
    for (int i0 = 0; i0 <= kSteps; ++i0) {
      const double d0 = alpha > 0.0 ? alpha * kl0[i0] : 0.0;
      if (d0 >= best) continue;
      for (int i1 = 0; i1 <= kSteps; ++i1) {
        const double d = d0 + (alpha < 1.0 ? (1.0 - alpha) * kl1[i1] : 0.0);
        if (d >= best) continue;
        const double py1 = alpha * (static_cast<double>(i0) / kSteps) +
                           (1.0 - alpha) * (static_cast<double>(i1) / kSteps);
        const double mi = binary_entropy(py1) - alpha * h2[i0] - (1.0 - alpha) * h2[i1];
        const double v = d + std::max(0.0, r - mi);
        if (v < best) best = v;
      }
    }
  }
  return best;
}

}  // namespace relaybounds

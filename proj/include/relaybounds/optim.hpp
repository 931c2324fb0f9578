#pragma once
// Deterministic scalar search primitives shared by the bound optimizers.
// Everything here is a plain grid/golden/bisection scheme: the max-min
// objectives downstream are piecewise smooth but not concave, so dense
// scans with local refinement are the correctness-first choice.

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace relaybounds {

struct ScanPoint {
  double arg = 0.0;
  double value = 0.0;
};

// Dense scan for the maximum of f over {lo, lo+step, ...} with hi always
// included as the final point.  Ties keep the lowest argument.
template <class F>
ScanPoint scan_max(F&& f, double lo, double hi, double step) {
  if (!(step > 0.0) || !(lo <= hi)) throw std::invalid_argument("scan_max: bad range");
  ScanPoint best{lo, f(lo)};
  for (std::size_t k = 1;; ++k) {
    const double x = lo + static_cast<double>(k) * step;
    if (x >= hi) break;
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  if (hi > lo) {
    const double v = f(hi);
    if (v > best.value) best = {hi, v};
  }
  return best;
}

// Golden-section maximization on [lo, hi]; assumes local unimodality on the
// bracket (callers pass a one-grid-step window around a scan winner).
template <class F>
ScanPoint golden_max(F&& f, double lo, double hi, double tol = 1e-12, int max_iter = 200) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

template <class F>
ScanPoint golden_min(F&& f, double lo, double hi, double tol = 1e-12, int max_iter = 200) {
  auto neg = [&](double x) { return -f(x); };
  ScanPoint p = golden_max(neg, lo, hi, tol, max_iter);
  return {p.arg, -p.value};
}

// Scan + golden refinement around the winning grid point.  The refined point
// is adopted only if it strictly improves, so results never regress below the
// plain grid answer.
template <class F>
ScanPoint scan_refine_max(F&& f, double lo, double hi, double step, double tol = 1e-12) {
  ScanPoint best = scan_max(f, lo, hi, step);
  const double wlo = std::max(lo, best.arg - step);
  const double whi = std::min(hi, best.arg + step);
  if (whi > wlo) {
    ScanPoint refined = golden_max(f, wlo, whi, tol);
    if (refined.value > best.value) best = refined;
  }
  return best;
}

template <class F>
ScanPoint scan_refine_min(F&& f, double lo, double hi, double step, double tol = 1e-12) {
  auto neg = [&](double x) { return -f(x); };
  ScanPoint p = scan_refine_max(neg, lo, hi, step, tol);
  return {p.arg, -p.value};
}

// Smallest x with f(x) >= target: grid scan from lo, then bisection on the
// bracketing step.  Returns nullopt when the target is never reached.
template <class F>
std::optional<double> first_crossing(F&& f, double target, double lo, double hi, double step,
                                     double tol = 1e-12) {
  if (!(step > 0.0) || !(lo <= hi)) throw std::invalid_argument("first_crossing: bad range");
  double prev = lo;
  for (std::size_t k = 0;; ++k) {
    double x = lo + static_cast<double>(k) * step;
    bool last = false;
    if (x >= hi) {
      x = hi;
      last = true;
    }
    if (f(x) >= target) {
      if (k == 0) return x;
      double a = prev, b = x;  // f(a) < target <= f(b)
      while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        if (f(mid) >= target)
          b = mid;
        else
          a = mid;
      }
      return b;
    }
    if (last) return std::nullopt;
    prev = x;
  }
}

struct SweepRange {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
};

// Materializes lo, lo+step, ..., hi.  lo == hi yields a single point; the
// final point is clamped to hi so accumulated rounding never overshoots.
inline std::vector<double> sweep_points(const SweepRange& r) {
  if (!(r.step > 0.0)) throw std::invalid_argument("sweep range: step must be positive");
  if (!(r.lo <= r.hi)) throw std::invalid_argument("sweep range: lo must not exceed hi");
  if ((r.hi - r.lo) / r.step > 1e6) throw std::invalid_argument("sweep range: more than 1e6 points");
  std::vector<double> pts;
  for (std::size_t k = 0;; ++k) {
    double x = r.lo + static_cast<double>(k) * r.step;
    if (x > r.hi + r.step * 1e-9) break;
    pts.push_back(std::min(x, r.hi));
  }
  return pts;
}

// Enumerates probability vectors on the dims-dimensional simplex lattice with
// the given resolution (weights are multiples of 1/levels).
inline void for_each_lattice_point(std::size_t dims, std::size_t levels,
                                   const std::function<void(const std::vector<double>&)>& fn) {
  if (dims == 0 || levels == 0) throw std::invalid_argument("lattice: bad parameters");
  std::vector<std::size_t> counts(dims, 0);
  std::vector<double> point(dims, 0.0);
  const double unit = 1.0 / static_cast<double>(levels);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t remaining) {
    if (i + 1 == dims) {
      counts[i] = remaining;
      for (std::size_t j = 0; j < dims; ++j) point[j] = static_cast<double>(counts[j]) * unit;
      fn(point);
      return;
    }
    for (std::size_t c = 0; c <= remaining; ++c) {
      counts[i] = c;
      rec(i + 1, remaining - c);
    }
  };
  rec(0, levels);
}

}  // namespace relaybounds

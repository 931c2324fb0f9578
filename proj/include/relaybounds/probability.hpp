#pragma once
// Scalar information measures over finite alphabets.
//
// Conventions used throughout the library:
//   * all logarithms are base 2 unless a ln2 factor is written explicitly,
//   * 0·log 0 = 0 (continuous extension),
//   * distributions are std::vector<double>, channels are row-stochastic
//     matrices indexed [input][output].

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace relaybounds {

using Dist = std::vector<double>;
using Matrix = std::vector<Dist>;

inline constexpr double kLn2 = 0.69314718055994530942;

// Validates a probability vector in place.  Sum deviations up to 1e-12 are
// accepted verbatim, up to 1e-9 are renormalized (rounding drift), anything
// larger is rejected as malformed input.
inline void validate_distribution(Dist& p, const std::string& what = "distribution") {
  if (p.empty()) throw std::invalid_argument(what + ": empty");
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw std::invalid_argument(what + ": negative entry");
    sum += v;
  }
  const double dev = std::fabs(sum - 1.0);
  if (dev > 1e-9) throw std::invalid_argument(what + ": entries sum to " + std::to_string(sum) + ", not 1");
  if (dev > 1e-12) {
    for (double& v : p) v /= sum;
  }
}

// Validates a channel matrix in place (rectangular, rows stochastic).
inline void validate_channel(Matrix& w, const std::string& what = "channel") {
  if (w.empty()) throw std::invalid_argument(what + ": no rows");
  const std::size_t cols = w[0].size();
  for (std::size_t x = 0; x < w.size(); ++x) {
    if (w[x].size() != cols) throw std::invalid_argument(what + ": ragged rows");
    validate_distribution(w[x], what + " row " + std::to_string(x));
  }
}

namespace detail {
inline void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::domain_error(std::string(name) + " must lie in [0,1]");
}
inline void check_dims(const Dist& px, const Matrix& w) {
  if (w.empty() || px.size() != w.size())
    throw std::invalid_argument("input distribution size does not match channel rows");
}
}  // namespace detail

// H(r) = -r log r - (1-r) log(1-r).  log1p keeps the (1-r) factor accurate
// for r near 0, which the series expansions in the cover module rely on.
inline double binary_entropy(double r) {
  detail::check_unit_interval(r, "binary_entropy argument");
  if (r == 0.0 || r == 1.0) return 0.0;
  return -(r * std::log(r) + (1.0 - r) * std::log1p(-r)) / kLn2;
}

inline double entropy(const Dist& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log(v);
  return h / kLn2;
}

// H(W|px) = sum_x px(x) H(W(.|x)).
inline double conditional_entropy(const Dist& px, const Matrix& w) {
  detail::check_dims(px, w);
  double h = 0.0;
  for (std::size_t x = 0; x < px.size(); ++x)
    if (px[x] > 0.0) h += px[x] * entropy(w[x]);
  return h;
}

inline Dist output_marginal(const Dist& px, const Matrix& w) {
  detail::check_dims(px, w);
  Dist py(w[0].size(), 0.0);
  for (std::size_t x = 0; x < px.size(); ++x)
    for (std::size_t y = 0; y < py.size(); ++y) py[y] += px[x] * w[x][y];
  return py;
}

inline double mutual_information(const Dist& px, const Matrix& w) {
  detail::check_dims(px, w);
  return entropy(output_marginal(px, w)) - conditional_entropy(px, w);
}

// D(w_tilde || w | px); +infinity when absolute continuity fails on the
// support of px.
inline double conditional_relative_entropy(const Dist& px, const Matrix& wt, const Matrix& w) {
  detail::check_dims(px, wt);
  detail::check_dims(px, w);
  if (wt[0].size() != w[0].size()) throw std::invalid_argument("channel output sizes differ");
  double d = 0.0;
  for (std::size_t x = 0; x < px.size(); ++x) {
    if (px[x] <= 0.0) continue;
    for (std::size_t y = 0; y < wt[x].size(); ++y) {
      if (wt[x][y] <= 0.0) continue;
      if (w[x][y] <= 0.0) return std::numeric_limits<double>::infinity();
      d += px[x] * wt[x][y] * std::log(wt[x][y] / w[x][y]);
    }
  }
  return d / kLn2;
}

// D(Bern(a) || Bern(b)); +infinity when b is degenerate against a.
inline double binary_kl(double a, double b) {
  detail::check_unit_interval(a, "binary_kl first argument");
  detail::check_unit_interval(b, "binary_kl second argument");
  double d = 0.0;
  if (a > 0.0) {
    if (b <= 0.0) return std::numeric_limits<double>::infinity();
    d += a * std::log(a / b);
  }
  if (a < 1.0) {
    if (b >= 1.0) return std::numeric_limits<double>::infinity();
    d += (1.0 - a) * (std::log1p(-a) - std::log1p(-b));
  }
  return d / kLn2;
}

// p1 * p2 = p1(1-p2) + p2(1-p1).
inline double binary_convolve(double p1, double p2) {
  detail::check_unit_interval(p1, "binary_convolve first argument");
  detail::check_unit_interval(p2, "binary_convolve second argument");
  return p1 * (1.0 - p2) + p2 * (1.0 - p1);
}

// X -> (Y,Z) with Y,Z conditionally i.i.d. given X: entry (x, y*m+z) is
// w(y|x) w(z|x).
inline Matrix product_channel(const Matrix& w) {
  if (w.empty()) throw std::invalid_argument("product_channel: empty channel");
  const std::size_t m = w[0].size();
  Matrix prod(w.size(), Dist(m * m, 0.0));
  for (std::size_t x = 0; x < w.size(); ++x) {
    if (w[x].size() != m) throw std::invalid_argument("product_channel: ragged rows");
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t z = 0; z < m; ++z) prod[x][y * m + z] = w[x][y] * w[x][z];
  }
  return prod;
}

// Asymptotic exponent of the Hamming-ball volume, normalized per symbol:
// V(r) = log2|Omega| for r > (|Omega|-1)/|Omega|, else H(r) + r log2(|Omega|-1).
inline double ball_exponent(double r, std::size_t alphabet_size) {
  if (!(r >= 0.0)) throw std::domain_error("ball_exponent: radius must be nonnegative");
  if (alphabet_size < 2) throw std::domain_error("ball_exponent: alphabet size must be >= 2");
  const double m = static_cast<double>(alphabet_size);
  if (r > (m - 1.0) / m) return std::log2(m);
  return binary_entropy(r) + r * std::log2(m - 1.0);
}

}  // namespace relaybounds

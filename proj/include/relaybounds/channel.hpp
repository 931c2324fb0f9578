#pragma once
// Relay-channel specifications and capacity computations.
//
// The model: sender X feeds two conditionally i.i.d. observations Y (at the
// destination) and Z (at a relay) through a common link law p(w|x); the relay
// talks to the destination over a noiseless digital link of rate r0 bits/use.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaybounds/optim.hpp"
#include "relaybounds/probability.hpp"

namespace relaybounds {

struct RelayChannelSpec {
  std::size_t input_size = 0;
  std::size_t output_size = 0;
  Matrix link;  // common X->Y and X->Z law, rows stochastic
  double r0 = 0.0;
};

inline RelayChannelSpec make_relay_spec(Matrix link, double r0) {
  validate_channel(link, "link");
  if (link.size() < 2 || link[0].size() < 2)
    throw std::invalid_argument("link: alphabets must have at least 2 symbols");
  if (!(r0 >= 0.0)) throw std::domain_error("r0 must be nonnegative");
  RelayChannelSpec spec;
  spec.input_size = link.size();
  spec.output_size = link[0].size();
  spec.link = std::move(link);
  spec.r0 = r0;
  return spec;
}

inline RelayChannelSpec make_bsc(double p, double r0) {
  detail::check_unit_interval(p, "bsc crossover probability");
  return make_relay_spec({{1.0 - p, p}, {p, 1.0 - p}}, r0);
}

// Binary asymmetric: P(flip|x=0) = p1, P(flip|x=1) = p2.
inline RelayChannelSpec make_bac(double p1, double p2, double r0) {
  detail::check_unit_interval(p1, "bac parameter p1");
  detail::check_unit_interval(p2, "bac parameter p2");
  return make_relay_spec({{1.0 - p1, p1}, {p2, 1.0 - p2}}, r0);
}

struct CapacityResult {
  double value = 0.0;
  Dist argmax_input;
  std::size_t iterations = 0;  // Blahut-Arimoto iteration count; 0 for the grid path
  double grid_step = 0.0;      // binary grid resolution; 0 for Blahut-Arimoto
};

// Binary-input capacity by dense alpha scan plus golden refinement.
// alpha = P(x = 0).
inline CapacityResult capacity_binary_grid(const Matrix& w, double step = 1e-4,
                                           double tol = 1e-10) {
  if (w.size() != 2) throw std::invalid_argument("capacity_binary_grid: needs 2 input rows");
  auto objective = [&](double alpha) {
    return mutual_information({alpha, 1.0 - alpha}, w);
  };
  ScanPoint best = scan_refine_max(objective, 0.0, 1.0, step, tol);
  CapacityResult res;
  res.value = best.value > 0.0 ? best.value : 0.0;  // clear fp residue on useless channels
  res.argmax_input = {best.arg, 1.0 - best.arg};
  res.grid_step = step;
  return res;
}

// Blahut-Arimoto with the duality-gap stopping rule max_x D(W_x||q) - I <= tol.
// Multiplicative updates keep the iterate strictly positive, so every output
// column reachable from the start stays reachable and the D terms are finite.
// The duality-gap criterion below is absolute (1e-10 nats) once the capacity
// drops under 1 nat.  Near-degenerate channels (rows almost identical) then
// converge geometrically with ratio 1 - O(sep^2), so the cap is sized for row
// separations down to ~1e-3 rather than for the typical few hundred rounds.
inline CapacityResult capacity_blahut_arimoto(const Matrix& w, double rel_tol = 1e-10,
                                              std::size_t max_iter = 2000000) {
  const std::size_t nx = w.size();
  const std::size_t ny = w[0].size();
  Dist px(nx, 1.0 / static_cast<double>(nx));
  std::vector<double> dx(nx, 0.0);
  for (std::size_t it = 0; it < max_iter; ++it) {
    Dist q = output_marginal(px, w);
    for (std::size_t x = 0; x < nx; ++x) {
      double d = 0.0;
      for (std::size_t y = 0; y < ny; ++y)
        if (w[x][y] > 0.0) d += w[x][y] * (std::log(w[x][y]) - std::log(q[y]));
      dx[x] = d;  // nats
    }
    double lower = 0.0, upper = dx[0];
    for (std::size_t x = 0; x < nx; ++x) {
      lower += px[x] * dx[x];
      if (dx[x] > upper) upper = dx[x];
    }
    if (upper - lower <= rel_tol * std::max(1.0, lower)) {
      CapacityResult res;
      res.value = std::max(0.0, lower / kLn2);
      res.argmax_input = px;
      res.iterations = it;
      return res;
    }
    double norm = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
      px[x] *= std::exp(dx[x]);
      norm += px[x];
    }
    for (double& v : px) v /= norm;
  }
  throw std::runtime_error("blahut-arimoto: no convergence within " + std::to_string(max_iter) +
                           " iterations");
}

inline CapacityResult channel_capacity(const Matrix& w) {
  return w.size() == 2 ? capacity_binary_grid(w) : capacity_blahut_arimoto(w);
}

// C_XY: capacity of the single link X -> Y.
inline CapacityResult capacity_xy(const RelayChannelSpec& spec) {
  return channel_capacity(spec.link);
}

// C_XYZ: capacity of the broadcast cut X -> (Y,Z).
inline CapacityResult capacity_xyz(const RelayChannelSpec& spec) {
  return channel_capacity(product_channel(spec.link));
}

// I(X; Y,Z) at a fixed input distribution.
inline double broadcast_mi(const Dist& px, const RelayChannelSpec& spec) {
  return mutual_information(px, product_channel(spec.link));
}

}  // namespace relaybounds

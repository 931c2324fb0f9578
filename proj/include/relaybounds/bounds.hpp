#pragma once
// Capacity upper bounds for the symmetric primitive relay channel.  All four
// are max-min programs over the input distribution px and (except the cut-set
// bound) an auxiliary relay rate a in [0, a_max]:
//
//   cutset    min{ I(X;Y,Z), I(X;Y) + r0 }
//   xue       min{ C_XYZ, C_XY + r0 - a, E^{-1}(h(sqrt a) + sqrt(a) log2|Y|) }
//   theorem1  min{ I(X;Y,Z), I(X;Y) + r0 - a,
//                  I(X;Y) + h(delta) + delta log2(|Y|-1) - a },
//                  delta = sqrt(a ln2 / 2)
//   theorem2  as theorem1 with the third term I(X;Y) + Delta(px, delta)
//
// Evaluation reports the optimal value, the maximizing witnesses, and which
// constraint binds.  The *_objective functions recompute the min of the
// constraint expressions at given witnesses so tests can confirm the reported
// value without trusting the optimizer.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "relaybounds/channel.hpp"
#include "relaybounds/delta.hpp"
#include "relaybounds/optim.hpp"
#include "relaybounds/probability.hpp"
#include "relaybounds/reliability.hpp"

namespace relaybounds {

enum class ActiveConstraint { broadcast, multiple_access, third_constraint };
enum class BoundMethod { general_grid, bsc_closed_form };

inline const char* to_string(ActiveConstraint c) {
  switch (c) {
    case ActiveConstraint::broadcast:
      return "broadcast";
    case ActiveConstraint::multiple_access:
      return "multiple_access";
    default:
      return "third_constraint";
  }
}

inline const char* to_string(BoundMethod m) {
  return m == BoundMethod::general_grid ? "general_grid" : "bsc_closed_form";
}

struct BoundEvaluation {
  double value = 0.0;
  Dist witness_px;                  // maximizing input distribution
  std::optional<double> witness_a;  // auxiliary-rate witness; empty for cutset
  ActiveConstraint active_constraint = ActiveConstraint::broadcast;
  BoundMethod method = BoundMethod::general_grid;
};

inline constexpr double kInputGridStep = 1e-3;     // binary alpha resolution
inline constexpr double kAuxGridStep = 1e-4;       // auxiliary-rate resolution
inline constexpr std::size_t kLatticeLevels = 50;  // 0.02 simplex lattice for |X| > 2

namespace detail {

// Ties prefer broadcast, then multiple access: on the common plateau all
// constraints meet and the broadcast cut is the one that keeps binding.
inline ActiveConstraint pick_active(double bc, double ma, double third) {
  if (bc <= ma && bc <= third) return ActiveConstraint::broadcast;
  if (ma <= third) return ActiveConstraint::multiple_access;
  return ActiveConstraint::third_constraint;
}

inline double theorem1_third(double ixy, double a, double log_m1) {
  const double d = std::sqrt(a * kLn2 / 2.0);
  return ixy + binary_entropy(d) + d * log_m1 - a;
}

struct PxOptimum {
  Dist px;
  double value = -std::numeric_limits<double>::infinity();
  double a = std::numeric_limits<double>::infinity();
};

// Maximize f over the input simplex.  f returns {value, witness_a}.  Binary
// inputs use the dense alpha grid; larger alphabets use a simplex lattice
// plus pairwise-transfer golden refinement (approximate, but the lattice pins
// the right region first).  Ties prefer the smaller witness_a, then the
// point encountered first (ascending alpha for binary inputs).
template <class F>
PxOptimum maximize_over_inputs(const RelayChannelSpec& spec, F&& f) {
  PxOptimum best;
  auto consider = [&](const Dist& px) {
    const std::pair<double, double> r = f(px);
    if (r.first > best.value || (r.first == best.value && r.second < best.a)) {
      best.px = px;
      best.value = r.first;
      best.a = r.second;
    }
  };
  if (spec.input_size == 2) {
    const auto steps = static_cast<std::size_t>(std::lround(1.0 / kInputGridStep));
    for (std::size_t k = 0; k <= steps; ++k) {
      const double alpha = std::min(1.0, static_cast<double>(k) * kInputGridStep);
      consider(Dist{alpha, 1.0 - alpha});
    }
  } else {
    for_each_lattice_point(spec.input_size, kLatticeLevels, consider);
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (std::size_t i = 0; i < spec.input_size; ++i) {
        for (std::size_t j = 0; j < spec.input_size; ++j) {
          if (i == j || best.px[i] <= 0.0) continue;
          auto shifted = [&](double t) {
            Dist q = best.px;
            q[i] = std::max(0.0, q[i] - t);
            q[j] += t;
            return q;
          };
          const ScanPoint r =
              golden_max([&](double t) { return f(shifted(t)).first; }, 0.0, best.px[i], 1e-10);
          if (r.value > best.value) {
            Dist q = shifted(r.arg);
            const std::pair<double, double> v = f(q);
            best.px = std::move(q);
            best.value = v.first;
            best.a = v.second;
          }
        }
      }
    }
  }
  return best;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// cut-set bound
// ---------------------------------------------------------------------------

inline BoundEvaluation cutset(const RelayChannelSpec& spec) {
  const Matrix prod = product_channel(spec.link);
  auto per_px = [&](const Dist& px) -> std::pair<double, double> {
    const double bc = mutual_information(px, prod);
    const double ma = mutual_information(px, spec.link) + spec.r0;
    return {std::min(bc, ma), 0.0};
  };
  const detail::PxOptimum opt = detail::maximize_over_inputs(spec, per_px);
  BoundEvaluation out;
  out.value = opt.value;
  out.witness_px = opt.px;
  out.witness_a = std::nullopt;
  out.active_constraint =
      detail::pick_active(mutual_information(opt.px, prod),
                          mutual_information(opt.px, spec.link) + spec.r0,
                          std::numeric_limits<double>::infinity());
  out.method = BoundMethod::general_grid;
  return out;
}

inline double cutset_objective(const RelayChannelSpec& spec, const Dist& px_in) {
  Dist px = px_in;
  validate_distribution(px, "cutset input distribution");
  detail::check_dims(px, spec.link);
  return std::min(mutual_information(px, product_channel(spec.link)),
                  mutual_information(px, spec.link) + spec.r0);
}

// ---------------------------------------------------------------------------
// theorem1: uniform perturbation of the relay observation
// ---------------------------------------------------------------------------

inline double theorem1_a_cap(const RelayChannelSpec& spec, const Dist& px) {
  const double m = static_cast<double>(spec.output_size);
  const double frac = (m - 1.0) / m;
  return std::min({spec.r0, conditional_entropy(px, spec.link), (2.0 / kLn2) * frac * frac});
}

inline BoundEvaluation theorem1(const RelayChannelSpec& spec) {
  const Matrix prod = product_channel(spec.link);
  const double log_m1 = std::log2(static_cast<double>(spec.output_size) - 1.0);
  auto per_px = [&](const Dist& px) -> std::pair<double, double> {
    const double bc = mutual_information(px, prod);
    const double ixy = mutual_information(px, spec.link);
    const double cap = theorem1_a_cap(spec, px);
    auto obj = [&](double a) {
      return std::min({bc, ixy + spec.r0 - a, detail::theorem1_third(ixy, a, log_m1)});
    };
    if (cap <= 0.0) return {obj(0.0), 0.0};
    const ScanPoint sp = scan_refine_max(obj, 0.0, cap, kAuxGridStep);
    return {sp.value, sp.arg};
  };
  const detail::PxOptimum opt = detail::maximize_over_inputs(spec, per_px);
  BoundEvaluation out;
  out.value = opt.value;
  out.witness_px = opt.px;
  out.witness_a = opt.a;
  const double ixy = mutual_information(opt.px, spec.link);
  out.active_constraint =
      detail::pick_active(mutual_information(opt.px, prod), ixy + spec.r0 - opt.a,
                          detail::theorem1_third(ixy, opt.a, log_m1));
  out.method = BoundMethod::general_grid;
  return out;
}

inline double theorem1_objective(const RelayChannelSpec& spec, const Dist& px_in, double a) {
  Dist px = px_in;
  validate_distribution(px, "theorem1 input distribution");
  detail::check_dims(px, spec.link);
  if (!(a >= 0.0) || a > theorem1_a_cap(spec, px) + 1e-12)
    throw std::domain_error("theorem1 objective: auxiliary rate outside [0, a_max]");
  const double bc = mutual_information(px, product_channel(spec.link));
  const double ixy = mutual_information(px, spec.link);
  const double log_m1 = std::log2(static_cast<double>(spec.output_size) - 1.0);
  return std::min({bc, ixy + spec.r0 - a, detail::theorem1_third(ixy, a, log_m1)});
}

// ---------------------------------------------------------------------------
// theorem2: channel-adapted perturbation via Delta(px, d)
// ---------------------------------------------------------------------------

inline double theorem2_a_cap(const RelayChannelSpec& spec, const Dist& px) {
  return std::min(spec.r0, conditional_entropy(px, spec.link));
}

inline BoundEvaluation theorem2(const RelayChannelSpec& spec) {
  const Matrix prod = product_channel(spec.link);
  auto per_px = [&](const Dist& px) -> std::pair<double, double> {
    const double bc = mutual_information(px, prod);
    const double ixy = mutual_information(px, spec.link);
    const detail::DeltaProfile prof = detail::make_delta_profile(px, spec.link);
    if (!prof.connected) {
      // Delta = +inf for every positive budget, so the third constraint is
      // vacuous and the remaining two are largest at a = 0.
      return {std::min(bc, ixy + spec.r0), 0.0};
    }
    const double cap = theorem2_a_cap(spec, px);
    auto obj = [&](double a) {
      return std::min({bc, ixy + spec.r0 - a, ixy + prof.eval(std::sqrt(a * kLn2 / 2.0))});
    };
    if (cap <= 0.0) return {obj(0.0), 0.0};
    const ScanPoint sp = scan_refine_max(obj, 0.0, cap, kAuxGridStep);
    return {sp.value, sp.arg};
  };
  const detail::PxOptimum opt = detail::maximize_over_inputs(spec, per_px);
  BoundEvaluation out;
  out.value = opt.value;
  out.witness_px = opt.px;
  out.witness_a = opt.a;
  const double ixy = mutual_information(opt.px, spec.link);
  const detail::DeltaProfile prof = detail::make_delta_profile(opt.px, spec.link);
  const double third = prof.connected
                           ? ixy + prof.eval(std::sqrt(opt.a * kLn2 / 2.0))
                           : std::numeric_limits<double>::infinity();
  out.active_constraint =
      detail::pick_active(mutual_information(opt.px, prod), ixy + spec.r0 - opt.a, third);
  out.method = BoundMethod::general_grid;
  return out;
}

inline double theorem2_objective(const RelayChannelSpec& spec, const Dist& px_in, double a) {
  Dist px = px_in;
  validate_distribution(px, "theorem2 input distribution");
  detail::check_dims(px, spec.link);
  if (!(a >= 0.0) || a > theorem2_a_cap(spec, px) + 1e-12)
    throw std::domain_error("theorem2 objective: auxiliary rate outside [0, a_max]");
  const double bc = mutual_information(px, product_channel(spec.link));
  const double ixy = mutual_information(px, spec.link);
  double third;
  if (!detail::fully_connected_on_support(px, spec.link)) {
    // Delta jumps to +inf for every positive budget; the supremum over a is
    // approached as a -> 0+, so the constraint is treated as vacuous at the
    // reported witness a = 0 as well.
    third = std::numeric_limits<double>::infinity();
  } else {
    third = ixy + delta_general(px, spec.link, std::sqrt(a * kLn2 / 2.0)).value;
  }
  return std::min({bc, ixy + spec.r0 - a, third});
}

// ---------------------------------------------------------------------------
// xue: relay contribution bounded through the reliability function of the
// X -> Y link.  Binary-input only, matching the exponent machinery.  The
// broadcast cut I(X;Y,Z) <= C_XYZ holds for any relaying scheme and enters
// as an a-independent cap, so the bound never exceeds C(infinity).
// ---------------------------------------------------------------------------

inline BoundEvaluation xue(const RelayChannelSpec& spec, const ExponentCurve& curve) {
  if (spec.input_size != 2) throw std::invalid_argument("xue: binary-input channels only");
  const double cxy = curve.capacity();
  const double cxyz = capacity_xyz(spec).value;
  const double log_m = std::log2(static_cast<double>(spec.output_size));
  auto relay_info = [&](double a) {
    const double s = std::sqrt(a);
    return (s <= 1.0 ? binary_entropy(s) : 0.0) + s * log_m;
  };
  auto obj = [&](double a) {
    return std::min({cxyz, cxy + spec.r0 - a, curve.inverse(relay_info(a)).rate});
  };
  const ScanPoint sp = scan_refine_max(obj, 0.0, spec.r0, kAuxGridStep);
  BoundEvaluation out;
  out.value = sp.value;
  out.witness_px = capacity_xy(spec).argmax_input;  // distribution behind C_XY
  out.witness_a = sp.arg;
  out.active_constraint = detail::pick_active(cxyz, cxy + spec.r0 - sp.arg,
                                              curve.inverse(relay_info(sp.arg)).rate);
  out.method = BoundMethod::general_grid;
  return out;
}

inline BoundEvaluation xue(const RelayChannelSpec& spec) {
  return xue(spec, ExponentCurve(spec.link));
}

inline double xue_objective(const RelayChannelSpec& spec, const ExponentCurve& curve, double a) {
  if (spec.input_size != 2) throw std::invalid_argument("xue: binary-input channels only");
  if (!(a >= 0.0) || a > spec.r0 + 1e-12)
    throw std::domain_error("xue objective: auxiliary rate outside [0, r0]");
  const double s = std::sqrt(a);
  const double info = (s <= 1.0 ? binary_entropy(s) : 0.0) +
                      s * std::log2(static_cast<double>(spec.output_size));
  return std::min({capacity_xyz(spec).value, curve.capacity() + spec.r0 - a,
                   curve.inverse(info).rate});
}

// ---------------------------------------------------------------------------
// BSC closed forms.  The uniform input is optimal throughout by symmetry, so
// the px search collapses and only the auxiliary-rate scan remains.
// ---------------------------------------------------------------------------

struct BscBounds {
  double p = 0.0;
  double r0 = 0.0;
  double c_xy = 0.0;
  double c_xyz = 0.0;
  BoundEvaluation cutset;
  BoundEvaluation xue;
  BoundEvaluation theorem1;
  BoundEvaluation theorem2;
};

inline BscBounds bsc_suite(double p, double r0, const ExponentCurve& curve) {
  if (!(p > 0.0 && p < 0.5))
    throw std::domain_error("bsc_suite: crossover must lie strictly inside (0, 0.5)");
  if (!(r0 >= 0.0)) throw std::domain_error("bsc_suite: r0 must be nonnegative");
  const double hp = binary_entropy(p);
  const double cxy = 1.0 - hp;
  const double cxyz = 1.0 + binary_entropy(binary_convolve(p, p)) - 2.0 * hp;
  const double lr = std::log2((1.0 - p) / p);
  const Dist uniform{0.5, 0.5};
  const double inf = std::numeric_limits<double>::infinity();

  BscBounds out;
  out.p = p;
  out.r0 = r0;
  out.c_xy = cxy;
  out.c_xyz = cxyz;

  auto finish = [&](BoundEvaluation& be, double value, std::optional<double> a, double bc,
                    double ma, double third) {
    be.value = value;
    be.witness_px = uniform;
    be.witness_a = a;
    be.active_constraint = detail::pick_active(bc, ma, third);
    be.method = BoundMethod::bsc_closed_form;
  };

  finish(out.cutset, std::min(cxyz, cxy + r0), std::nullopt, cxyz, cxy + r0, inf);

  {
    auto relay_info = [&](double a) {
      const double s = std::sqrt(a);
      return (s <= 1.0 ? binary_entropy(s) : 0.0) + s;  // log2 of the binary output alphabet = 1
    };
    auto obj = [&](double a) {
      return std::min({cxyz, cxy + r0 - a, curve.inverse(relay_info(a)).rate});
    };
    const ScanPoint sp = scan_refine_max(obj, 0.0, r0, kAuxGridStep);
    finish(out.xue, sp.value, sp.arg, cxyz, cxy + r0 - sp.arg,
           curve.inverse(relay_info(sp.arg)).rate);
  }

  {
    const double cap = std::min({r0, hp, 1.0 / (2.0 * kLn2)});
    auto third = [&](double a) { return cxy + binary_entropy(std::sqrt(a * kLn2 / 2.0)) - a; };
    auto obj = [&](double a) { return std::min({cxyz, cxy + r0 - a, third(a)}); };
    const ScanPoint sp = scan_refine_max(obj, 0.0, cap, kAuxGridStep);
    finish(out.theorem1, sp.value, sp.arg, cxyz, cxy + r0 - sp.arg, third(sp.arg));
  }

  {
    // the a-cap keeps delta = sqrt(a ln2 / 2) <= 1 - p, where Delta is still
    // the unclipped linear segment delta * log2((1-p)/p)
    const double cap = std::min({r0, hp, (2.0 / kLn2) * (1.0 - p) * (1.0 - p)});
    auto third = [&](double a) { return cxy + std::sqrt(a * kLn2 / 2.0) * lr; };
    auto obj = [&](double a) { return std::min({cxyz, cxy + r0 - a, third(a)}); };
    const ScanPoint sp = scan_refine_max(obj, 0.0, cap, kAuxGridStep);
    finish(out.theorem2, sp.value, sp.arg, cxyz, cxy + r0 - sp.arg, third(sp.arg));
  }
  return out;
}

inline BscBounds bsc_suite(double p, double r0) {
  if (!(p > 0.0 && p < 0.5))
    throw std::domain_error("bsc_suite: crossover must lie strictly inside (0, 0.5)");
  const Matrix link{{1.0 - p, p}, {p, 1.0 - p}};
  return bsc_suite(p, r0, ExponentCurve(link));
}

// One exponent curve shared across the whole r0 sweep; rebuilding it per
// point would dominate the runtime.
inline std::vector<BscBounds> sweep_bsc_bounds(double p, const std::vector<double>& r0_values) {
  if (!(p > 0.0 && p < 0.5))
    throw std::domain_error("sweep_bsc_bounds: crossover must lie strictly inside (0, 0.5)");
  const Matrix link{{1.0 - p, p}, {p, 1.0 - p}};
  const ExponentCurve curve(link);
  std::vector<BscBounds> out;
  out.reserve(r0_values.size());
  for (double r0 : r0_values) out.push_back(bsc_suite(p, r0, curve));
  return out;
}

// ---------------------------------------------------------------------------
// Rate requirements: the smallest auxiliary rate a — and hence the smallest
// r0 — with which xue / theorem1 can certify a target rate.  Used to compare
// how much relay rate each bound charges for reaching C(infinity).
// ---------------------------------------------------------------------------

struct XueRequirement {
  double target_rate = 0.0;
  double exponent_at_target = 0.0;  // E(target) on the X -> Y link
  double c_xy = 0.0;
  double min_a = 0.0;
  double required_r0 = 0.0;
  bool feasible = false;
};

inline XueRequirement xue_rate_requirement(const RelayChannelSpec& spec, double target_rate,
                                           const ExponentCurve& curve) {
  if (spec.input_size != 2) throw std::invalid_argument("xue: binary-input channels only");
  XueRequirement req;
  req.target_rate = target_rate;
  req.c_xy = curve.capacity();
  req.exponent_at_target = curve.exponent(target_rate);
  const double log_m = std::log2(static_cast<double>(spec.output_size));
  auto relay_info = [&](double a) {
    const double s = std::sqrt(a);
    return (s <= 1.0 ? binary_entropy(s) : 0.0) + s * log_m;
  };
  const std::optional<double> a =
      first_crossing(relay_info, req.exponent_at_target, 0.0, 1.0, 1e-6);
  req.feasible = a.has_value();
  req.min_a = a.value_or(std::numeric_limits<double>::quiet_NaN());
  req.required_r0 = req.feasible ? std::max(0.0, target_rate - req.c_xy + req.min_a)
                                 : std::numeric_limits<double>::quiet_NaN();
  return req;
}

inline XueRequirement xue_rate_requirement(const RelayChannelSpec& spec, double target_rate) {
  return xue_rate_requirement(spec, target_rate, ExponentCurve(spec.link));
}

struct Theorem1Requirement {
  double target_rate = 0.0;
  Dist witness_px;  // broadcast-capacity achiever that the target pins down
  double constrained_ixy = 0.0;
  double min_a = 0.0;
  double required_r0 = 0.0;
  bool feasible = false;
};

inline Theorem1Requirement theorem1_rate_requirement(const RelayChannelSpec& spec,
                                                     double target_rate) {
  Theorem1Requirement req;
  req.target_rate = target_rate;
  req.witness_px = capacity_xyz(spec).argmax_input;
  req.constrained_ixy = mutual_information(req.witness_px, spec.link);
  const double gap = target_rate - req.constrained_ixy;
  const double m = static_cast<double>(spec.output_size);
  const double log_m1 = std::log2(m - 1.0);
  const double frac = (m - 1.0) / m;
  const double cap =
      std::min(conditional_entropy(req.witness_px, spec.link), (2.0 / kLn2) * frac * frac);
  auto slack = [&](double a) {
    const double d = std::sqrt(a * kLn2 / 2.0);
    return binary_entropy(d) + d * log_m1 - a;
  };
  const std::optional<double> a = first_crossing(slack, gap, 0.0, cap, 1e-6);
  req.feasible = a.has_value();
  req.min_a = a.value_or(std::numeric_limits<double>::quiet_NaN());
  req.required_r0 =
      req.feasible ? std::max(0.0, gap + req.min_a) : std::numeric_limits<double>::quiet_NaN();
  return req;
}

}  // namespace relaybounds

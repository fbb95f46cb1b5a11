// Copyright 2026 The triqubath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Bath functions f(t) and phi(t) for a harmonic bath coupled linearly through
// B = sum_j g_j q_j. Units: hbar = 1; mode masses default to 1.
//
// Discrete modes use the exact sums
//   f(t)   = sum_j g_j^2 (1 + 2 n_j) / (2 m_j w_j^3) (1 - cos w_j t)
//   phi(t) = sum_j g_j^2 (1 + 2 n_j) / (2 m_j w_j^2) (t - sin(w_j t) / w_j)
// The ohmic continuum replaces g_j^2 / (2 m_j w_j^3) by J(w) dw with
// J(w) = eta w exp(-w / w_c), so a finite cutoff makes f(t) saturate.

#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "triqubath/errors.hpp"
#include "triqubath/model.hpp"

namespace triqubath {

struct BathMode {
  double g = 0.0;
  double omega = 1.0;
  double m = 1.0;
};

struct DiscreteBath {
  std::vector<BathMode> modes;
};

struct OhmicBath {
  double eta = 1.0;
  double omega_c = 1.0;
};

/// Which thermal factor multiplies phi(t): (1 + 2 n) as in the bath sums
/// above, or 1 (the imaginary part of a harmonic correlation function).
enum class PhiThermalFactor { Paper, Physical };

inline constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

struct BathSpec {
  std::variant<DiscreteBath, OhmicBath> kind;
  double beta = kInfiniteBeta;
  PhiThermalFactor phi_factor = PhiThermalFactor::Paper;

  void validate() const {
    if (!(beta > 0.0)) throw InvalidArgument("bath: beta must be > 0 or +inf");
    if (const auto* d = std::get_if<DiscreteBath>(&kind)) {
      for (const auto& mode : d->modes)
        if (!(mode.omega > 0.0) || !(mode.m > 0.0) || !std::isfinite(mode.g) ||
            !std::isfinite(mode.omega) || !std::isfinite(mode.m))
          throw InvalidArgument("bath: modes need omega > 0, m > 0, finite g");
    } else {
      const auto& o = std::get<OhmicBath>(kind);
      if (!(o.omega_c > 0.0) || !std::isfinite(o.omega_c) || !std::isfinite(o.eta))
        throw InvalidArgument("bath: ohmic cutoff must be > 0 and eta finite");
    }
  }
};

struct BathPath {
  std::vector<double> times;
  std::vector<DephasingPoint> points;
};

/// Thermal occupation 1 / (exp(beta w) - 1); zero at beta = +inf.
inline double nbar(double beta, double omega) {
  if (!(beta > 0.0)) throw InvalidArgument("nbar: beta must be > 0 or +inf");
  if (!(omega > 0.0)) throw InvalidArgument("nbar: omega must be > 0");
  if (std::isinf(beta)) return 0.0;
  return 1.0 / std::expm1(beta * omega);
}

namespace detail {

// 1 + 2 nbar, finite-safe for tiny beta*omega.
inline double thermal_factor(double beta, double omega) {
  if (std::isinf(beta)) return 1.0;
  return 1.0 + 2.0 / std::expm1(beta * omega);
}

// 1 - cos(x) without cancellation.
inline double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

// (x - sin x), accurate for small x.
inline double x_minus_sin(double x) {
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
  }
  return x - std::sin(x);
}

inline constexpr double kQuadAbsTol = 1e-10;
inline constexpr double kQuadRelTol = 1e-8;
// exp(-60) is far below the absolute tolerance relative to any O(1) integral.
inline constexpr double kCutoffSpan = 60.0;
inline constexpr double kMaxPanels = 1e6;

/// Integrates `g` over [0, span * w_c] in panels short enough to resolve the
/// oscillation at frequency t, each with adaptive Gauss-Kronrod.
template <class F>
double ohmic_integral(F g, double omega_c, double t) {
  const double upper = kCutoffSpan * omega_c;
  double panel = omega_c;
  if (t > 0.0) panel = std::min(panel, 2.0 * M_PI / t);
  const double count = std::ceil(upper / panel);
  if (!(count <= kMaxPanels))
    throw NumericalError("bath quadrature: omega_c * t too large for the panel budget",
                         std::numeric_limits<double>::infinity());
  const auto panels = static_cast<long>(count);
  double total = 0.0, err_total = 0.0, l1_total = 0.0;
  for (long k = 0; k < panels; ++k) {
    const double a = static_cast<double>(k) * panel;
    const double b = std::min(upper, a + panel);
    double err = 0.0, l1 = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, 15, 1e-12,
                                                                          &err, &l1);
    err_total += err;
    l1_total += l1;
  }
  if (!std::isfinite(total) || !(err_total <= std::max(kQuadAbsTol, kQuadRelTol * std::abs(total))))
    throw NumericalError("bath quadrature did not converge (error estimate " +
                             std::to_string(err_total) + ")",
                         err_total);
  return total;
}

}  // namespace detail

inline double f_of_t(const BathSpec& spec, double t) {
  spec.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("f_of_t: t must be finite and >= 0");
  if (t == 0.0) return 0.0;
  if (const auto* d = std::get_if<DiscreteBath>(&spec.kind)) {
    double f = 0.0;
    for (const auto& mode : d->modes) {
      const double w = mode.omega;
      f += mode.g * mode.g * detail::thermal_factor(spec.beta, w) / (2.0 * mode.m * w * w * w) *
           detail::one_minus_cos(w * t);
    }
    return f;
  }
  const auto& o = std::get<OhmicBath>(spec.kind);
  auto integrand = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double j = o.eta * w * std::exp(-w / o.omega_c);
    return j * detail::thermal_factor(spec.beta, w) * detail::one_minus_cos(w * t);
  };
  return detail::ohmic_integral(integrand, o.omega_c, t);
}

inline double phi_of_t(const BathSpec& spec, double t) {
  spec.validate();
  if (!(t >= 0.0) || !std::isfinite(t))
    throw InvalidArgument("phi_of_t: t must be finite and >= 0");
  if (t == 0.0) return 0.0;
  auto factor = [&](double w) {
    return spec.phi_factor == PhiThermalFactor::Paper ? detail::thermal_factor(spec.beta, w) : 1.0;
  };
  if (const auto* d = std::get_if<DiscreteBath>(&spec.kind)) {
    double phi = 0.0;
    for (const auto& mode : d->modes) {
      const double w = mode.omega;
      // g^2 / (2 m w^2) * (t - sin(w t) / w) = g^2 / (2 m w^3) * (w t - sin(w t))
      phi += mode.g * mode.g * factor(w) / (2.0 * mode.m * w * w * w) *
             detail::x_minus_sin(w * t);
    }
    return phi;
  }
  const auto& o = std::get<OhmicBath>(spec.kind);
  auto integrand = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double j = o.eta * w * std::exp(-w / o.omega_c);
    return j * factor(w) * detail::x_minus_sin(w * t);
  };
  return detail::ohmic_integral(integrand, o.omega_c, t);
}

/// Asymptotic slope lim phi(t)/t for a discrete bath.
inline double phi_slope(const BathSpec& spec) {
  spec.validate();
  const auto* d = std::get_if<DiscreteBath>(&spec.kind);
  if (d == nullptr) throw InvalidArgument("phi_slope: discrete bath required");
  double slope = 0.0;
  for (const auto& mode : d->modes) {
    const double w = mode.omega;
    const double fac =
        spec.phi_factor == PhiThermalFactor::Paper ? detail::thermal_factor(spec.beta, w) : 1.0;
    slope += mode.g * mode.g * fac / (2.0 * mode.m * w * w);
  }
  return slope;
}

inline BathPath path(const BathSpec& spec, const std::vector<double>& times) {
  spec.validate();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i]))
      throw InvalidArgument("path: times must be finite and >= 0");
    if (i > 0 && times[i] < times[i - 1]) throw InvalidArgument("path: times must be ascending");
  }
  BathPath out;
  out.times = times;
  out.points.reserve(times.size());
  for (double t : times) {
    // Roundoff in the continuum integrals can leave -1e-17 at tiny t.
    out.points.emplace_back(std::max(0.0, f_of_t(spec, t)), std::max(0.0, phi_of_t(spec, t)));
  }
  return out;
}

/// Midpoint discretization of the ohmic density into `count` modes on
/// (0, span * omega_c], with g_j^2 = 2 w_j^3 J(w_j) dw (unit masses).
inline DiscreteBath discretize(const OhmicBath& o, std::size_t count, double span = 40.0) {
  if (count == 0) throw InvalidArgument("discretize: need at least one mode");
  DiscreteBath d;
  d.modes.reserve(count);
  const double dw = span * o.omega_c / static_cast<double>(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double w = (static_cast<double>(k) + 0.5) * dw;
    const double j = o.eta * w * std::exp(-w / o.omega_c);
    d.modes.push_back({std::sqrt(2.0 * w * w * w * j * dw), w, 1.0});
  }
  return d;
}

}  // namespace triqubath

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include "specialfns.hpp"

namespace ellgas {

/// Ellipse E = {(2t/(1+t)) x^2 + (2t/(1-t)) y^2 <= 1} with foci at +-1.
class Ellipse {
 public:
  explicit Ellipse(double tau) : tau_(tau) {
    if (!(tau > 0.0 && tau < 1.0))
      throw std::domain_error("Ellipse: tau must lie in (0, 1)");
    cx_ = 2.0 * tau / (1.0 + tau);
    cy_ = 2.0 * tau / (1.0 - tau);
    semi_x_ = std::sqrt((1.0 + tau) / (2.0 * tau));
    semi_y_ = std::sqrt((1.0 - tau) / (2.0 * tau));
    v_ = semi_x_ + semi_y_;
  }

  double tau() const { return tau_; }
  double semi_x() const { return semi_x_; }
  double semi_y() const { return semi_y_; }
  /// Joukowsky radius of the boundary: 1/tau = (v^2 + v^-2)/2.
  double v() const { return v_; }
  /// Elliptic-coordinate radius of the boundary, log v.
  double xi_max() const { return std::log(v_); }

  /// Normalized squared radius (x/semi_x)^2 + (y/semi_y)^2.
  double r2(cplx z) const { return cx_ * z.real() * z.real() + cy_ * z.imag() * z.imag(); }
  /// Clamped at 0 so boundary points that round outward sit on the wall.
  double one_minus_r2(cplx z) const { return std::max(0.0, 1.0 - r2(z)); }
  /// Closed ellipse, with a few ulps of slack for points constructed on the boundary.
  bool contains(cplx z) const { return r2(z) <= 1.0 + 8.0 * std::numeric_limits<double>::epsilon(); }

  /// 1 - mu(z), the focal-polar boundary distance about the left focus.
  double one_minus_mu(cplx z) const {
    const double a2 = semi_x_ * semi_x_;
    const double den = a2 + z.real() + semi_x_ * std::abs(1.0 + z);
    return a2 * one_minus_r2(z) / den;
  }
  double mu(cplx z) const { return 1.0 - one_minus_mu(z); }

 private:
  double tau_, cx_, cy_, semi_x_, semi_y_, v_;
};

enum class Family { Gegenbauer, JacobiPlus, JacobiMinus, ChebyshevT, ChebyshevV };

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::Gegenbauer: return "gegenbauer";
    case Family::JacobiPlus: return "jacobi-plus";
    case Family::JacobiMinus: return "jacobi-minus";
    case Family::ChebyshevT: return "chebyshev-t";
    case Family::ChebyshevV: return "chebyshev-v";
  }
  return "?";
}

inline Family parse_family(std::string_view s) {
  if (s == "gegenbauer") return Family::Gegenbauer;
  if (s == "jacobi-plus") return Family::JacobiPlus;
  if (s == "jacobi-minus") return Family::JacobiMinus;
  if (s == "chebyshev-t") return Family::ChebyshevT;
  if (s == "chebyshev-v") return Family::ChebyshevV;
  throw std::invalid_argument("unknown family: " + std::string(s));
}

/// Weight family together with its exponent a (ignored by the Chebyshev families).
struct Gas {
  Family family = Family::Gegenbauer;
  double a = 0.0;

  Gas() = default;
  Gas(Family f, double a_ = 0.0) : family(f), a(a_) {
    if (has_exponent() && !(a > -1.0 && std::isfinite(a)))
      throw std::domain_error("Gas: exponent a must exceed -1");
    if (!has_exponent()) a = 0.0;
  }

  bool has_exponent() const {
    return family == Family::Gegenbauer || family == Family::JacobiPlus ||
           family == Family::JacobiMinus;
  }
  /// Power with which the weight vanishes (or blows up) at the wall.
  double boundary_exponent() const { return has_exponent() ? a : 0.0; }
};

namespace detail {
inline double wall_power(double t, double a) {
  if (t <= 0.0) {
    if (a > 0.0) return 0.0;
    if (a == 0.0) return 1.0;
    return std::numeric_limits<double>::infinity();
  }
  return a == 0.0 ? 1.0 : std::pow(t, a);
}
}  // namespace detail

/// Weight of the gas at z; zero outside E and +infinity at integrable singular points.
inline double weight(const Gas& gas, const Ellipse& e, cplx z) {
  if (!e.contains(z)) return 0.0;
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (gas.family) {
    case Family::Gegenbauer:
      return detail::wall_power(e.one_minus_r2(z), gas.a);
    case Family::JacobiPlus:
      return detail::wall_power(e.one_minus_mu(z), gas.a);
    case Family::JacobiMinus: {
      double d = std::abs(1.0 + z);
      if (d == 0.0) return inf;
      return detail::wall_power(e.one_minus_mu(z), gas.a) / d;
    }
    case Family::ChebyshevT: {
      double d = std::abs(1.0 - z) * std::abs(1.0 + z);
      return d == 0.0 ? inf : 1.0 / d;
    }
    case Family::ChebyshevV: {
      double d = std::abs(1.0 + z);
      return d == 0.0 ? inf : 1.0 / d;
    }
  }
  return 0.0;
}

inline bool weight_is_singular(const Gas& gas, const Ellipse& e, cplx z) {
  return std::isinf(weight(gas, e, z));
}

struct JoukowskyPreimage {
  cplx omega;
  bool on_cut;
};

/// Root of (omega + 1/omega)/2 = zeta with |omega| >= 1; on [-1, 1] the root with Im >= 0.
inline JoukowskyPreimage joukowsky_inverse(cplx zeta) {
  cplx w = zeta + std::sqrt(zeta - 1.0) * std::sqrt(zeta + 1.0);
  if (std::abs(w) < 1.0) w = 1.0 / w;
  bool cut = zeta.imag() == 0.0 && std::abs(zeta.real()) <= 1.0;
  if (cut) {
    w = cplx(zeta.real(), std::sqrt(std::max(0.0, 1.0 - zeta.real() * zeta.real())));
  }
  return {w, cut};
}

/// Weak non-Hermiticity: 1/tau = 1 + s^2/(2 N^2).
inline double weak_tau(double s, double N) { return 1.0 / (1.0 + s * s / (2.0 * N * N)); }

/// Bulk scaling domain |Im z| <= s/2.
inline bool bulk_domain_contains(double s, cplx zh) { return 4.0 * zh.imag() * zh.imag() <= s * s; }

/// Edge scaling domain X >= (Y/s)^2 - s^2/4.
inline bool edge_domain_contains(double s, cplx Z) {
  const double q = Z.imag() / s;
  return Z.real() >= q * q - 0.25 * s * s;
}

}  // namespace ellgas

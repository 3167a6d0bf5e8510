#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "geometry.hpp"
#include "quadrature.hpp"
#include "specialfns.hpp"

namespace ellgas {

namespace detail {

inline void check_a(double a, const char* who) {
  if (!(a > -1.0) || !std::isfinite(a)) throw std::domain_error(std::string(who) + ": need a > -1");
}
inline void check_s(double s, const char* who) {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::domain_error(std::string(who) + ": need s > 0");
}

// (c s/2)^nu / I_nu(c s)
inline double i_ratio(double nu, double x) { return std::exp(-log_bessel_i_reduced(nu, x)); }

// sin(c sqrt(Z)) / sqrt(Z), entire in Z
inline cplx sin_sqrt_ratio(double c, cplx Z) {
  const cplx w = c * std::sqrt(Z);
  if (std::abs(w) < 1e-3) {
    const cplx w2 = w * w;
    return c * (1.0 - w2 / 6.0 + w2 * w2 / 120.0);
  }
  return std::sin(w) / std::sqrt(Z);
}

inline double bulk_prefactor(double a, double s, double y1, double y2) {
  const double f1 = 1.0 - 4.0 * y1 * y1 / (s * s), f2 = 1.0 - 4.0 * y2 * y2 / (s * s);
  return 2.0 / (s * std::pow(std::numbers::pi, 1.5)) * std::exp(-ln_gamma(a + 1.0)) *
         std::pow(std::max(f1, 0.0), 0.5 * a) * std::pow(std::max(f2, 0.0), 0.5 * a);
}

// Left-focus edge factor 1 - (2/s^2)(|Z| - X).
inline double focal_edge_factor(double s, cplx Z) { return 1.0 - 2.0 / (s * s) * (std::abs(Z) - Z.real()); }

}  // namespace detail

/// sqrt(pi) Gamma(a+3/2) / Gamma(a+2).
inline double edge_constant_B(double a) {
  return std::exp(0.5 * std::log(std::numbers::pi) + ln_gamma(a + 1.5) - ln_gamma(a + 2.0));
}

/// Weak non-Hermiticity bulk kernel, points in |Im z| <= s/2.
inline cplx bulk_weak(double a, double s, cplx z1, cplx z2, int c_nodes = 64) {
  detail::check_a(a, "bulk_weak");
  detail::check_s(s, "bulk_weak");
  if (!bulk_domain_contains(s, z1) || !bulk_domain_contains(s, z2))
    throw std::domain_error("bulk_weak: point outside the strip |Im z| <= s/2");
  const double nu = a + 0.5;
  const cplx d = z1 - std::conj(z2);
  cplx I = integrate_unit([&](double c) { return detail::i_ratio(nu, c * s) * std::cos(c * d); }, c_nodes);
  return detail::bulk_prefactor(a, s, z1.imag(), z2.imag()) * I;
}

/// sin(x1 - x2) / (pi (x1 - x2)).
inline double sine_kernel(double x1, double x2) {
  const double d = x1 - x2;
  if (std::abs(d) < 1e-8) return (1.0 - d * d / 6.0) / std::numbers::pi;
  return std::sin(d) / (std::numbers::pi * d);
}

/// Weak non-Hermiticity edge kernel at a focus of a Gegenbauer gas.
inline cplx edge_weak(double a, double s, cplx Z1, cplx Z2, int c_nodes = 64) {
  detail::check_a(a, "edge_weak");
  detail::check_s(s, "edge_weak");
  if (!edge_domain_contains(s, Z1) || !edge_domain_contains(s, Z2))
    throw std::domain_error("edge_weak: point outside the edge domain");
  const double nu = a + 0.5;
  auto W = [s](cplx Z) {
    const double q = Z.imag() / s;
    return std::max(0.0, 0.25 * s * s + Z.real() - q * q);
  };
  const cplx Z2c = std::conj(Z2);
  cplx I = integrate_unit(
      [&](double c) {
        const double c2 = c * c;
        return std::pow(c, 2.0 * a + 2.0) * std::exp(-log_bessel_i_reduced(nu, c * s)) *
               bessel_j_reduced(nu, c2 * Z1) * bessel_j_reduced(nu, c2 * Z2c);
      },
      c_nodes);
  const double pre = std::exp(-ln_gamma(a + 1.0) - 0.5 * std::log(std::numbers::pi) - std::log(4.0) +
                              (a - 0.5) * std::log(0.5 * s) - nu * std::log(2.0 * s)) *
                     std::pow(W(Z1), 0.5 * a) * std::pow(W(Z2), 0.5 * a);
  return pre * I;
}

/// Edge kernel at the left focus for the weight (1 - mu)^a.
inline cplx edge_weak_minus_sine(double a, double s, cplx Z1, cplx Z2, int c_nodes = 64) {
  detail::check_a(a, "edge_weak_minus_sine");
  detail::check_s(s, "edge_weak_minus_sine");
  const double v1 = detail::focal_edge_factor(s, Z1), v2 = detail::focal_edge_factor(s, Z2);
  if (v1 < 0.0 || v2 < 0.0) throw std::domain_error("edge_weak_minus_sine: point outside the edge domain");
  const double nu = a + 0.5;
  const cplx Z2c = std::conj(Z2);
  cplx I = integrate_unit(
      [&](double c) {
        return std::exp(-log_bessel_i_reduced(nu, c * s)) * detail::sin_sqrt_ratio(c, Z1) *
               detail::sin_sqrt_ratio(c, Z2c);
      },
      c_nodes);
  const double pre = 1.0 / (s * std::pow(std::numbers::pi, 1.5)) *
                     std::exp(-ln_gamma(a + 1.0)) * std::pow(v1, 0.5 * a) * std::pow(v2, 0.5 * a);
  return pre * I;
}

/// Edge kernel at the left focus for the weight (1 - mu)^a / |1 + z|.
inline cplx edge_weak_minus_cosine(double a, double s, cplx Z1, cplx Z2, int c_nodes = 64) {
  detail::check_a(a, "edge_weak_minus_cosine");
  detail::check_s(s, "edge_weak_minus_cosine");
  const double v1 = detail::focal_edge_factor(s, Z1), v2 = detail::focal_edge_factor(s, Z2);
  if (v1 < 0.0 || v2 < 0.0) throw std::domain_error("edge_weak_minus_cosine: point outside the edge domain");
  if (Z1 == cplx(0.0) || Z2 == cplx(0.0)) throw std::domain_error("edge_weak_minus_cosine: singular at Z = 0");
  const double nu = a + 0.5;
  const cplx r1 = std::sqrt(Z1), r2 = std::sqrt(std::conj(Z2));
  cplx I = integrate_unit(
      [&](double c) {
        return std::exp(-log_bessel_i_reduced(nu, c * s)) * std::cos(c * r1) * std::cos(c * r2);
      },
      c_nodes);
  const double pre = 1.0 / (s * std::pow(std::numbers::pi, 1.5)) *
                     std::exp(-ln_gamma(a + 1.0)) * std::pow(v1, 0.5 * a) * std::pow(v2, 0.5 * a) /
                     std::sqrt(std::abs(Z1) * std::abs(Z2));
  return pre * I;
}

/// Hard-edge Bessel kernel (1/4)(X1 X2)^{-1/4} int_0^1 c J(c sqrt X1) J(c sqrt X2) dc.
inline double bessel_kernel(double a, double X1, double X2, int c_nodes = 64) {
  detail::check_a(a, "bessel_kernel");
  if (!(X1 >= 0.0 && X2 >= 0.0)) throw std::domain_error("bessel_kernel: need X >= 0");
  const double nu = a + 0.5;
  cplx I = integrate_unit(
      [&](double c) {
        const double c2 = c * c;
        return std::pow(c, 2.0 * nu + 1.0) * bessel_j_reduced(nu, c2 * X1) * bessel_j_reduced(nu, c2 * X2);
      },
      c_nodes);
  return 0.25 * std::pow(4.0, -nu) * std::pow(X1 * X2, 0.5 * a) * I.real();
}

/// Strong non-Hermiticity bulk kernel, points in |Im z| <= 1/2.
inline cplx bulk_strong(double a, cplx z1, cplx z2) {
  detail::check_a(a, "bulk_strong");
  if (!bulk_domain_contains(1.0, z1) || !bulk_domain_contains(1.0, z2))
    throw std::domain_error("bulk_strong: point outside the strip |Im z| <= 1/2");
  const double nu = a + 0.5;
  const cplx d = z1 - std::conj(z2);
  const double sig = std::abs(d.imag());
  if (sig >= 1.0) throw std::domain_error("bulk_strong: integral diverges on the strip boundary");
  const double lg = ln_gamma(a + 1.0);
  auto g = [&](double t) { return std::exp(-log_bessel_i_reduced(nu, t) - lg) * std::cos(t * d); };
  double T = std::max(50.0, 5.0 * (a + 2.0));
  const double l0 = ln_gamma(nu + 1.0);
  while (-log_bessel_i_reduced(nu, T) + sig * T > l0 - 40.0) {
    if (T > 1e6) throw std::domain_error("bulk_strong: integrand does not decay");
    T *= 1.25;
  }
  HalfLineOptions opt;
  opt.truncation = T;
  opt.panel_width = std::min(2.0, 4.0 / (1.0 + std::abs(d.real())));
  opt.nodes_per_panel = 16;
  const double f1 = 1.0 - 4.0 * z1.imag() * z1.imag(), f2 = 1.0 - 4.0 * z2.imag() * z2.imag();
  return 2.0 / std::pow(std::numbers::pi, 1.5) * std::pow(f1, 0.5 * a) * std::pow(f2, 0.5 * a) *
         integrate_half_line(g, opt);
}

/// Strong non-Hermiticity edge kernel, Re Z >= 0, via the series for int_0^1 c^{a+1} e^{-b c} dc.
inline cplx edge_strong(double a, cplx Z1, cplx Z2) {
  detail::check_a(a, "edge_strong");
  if (!(Z1.real() >= 0.0 && Z2.real() >= 0.0)) throw std::domain_error("edge_strong: need Re Z >= 0");
  const cplx b = 0.5 * (Z1.real() + Z2.real()) + cplx(0.0, 0.5) * (Z1.imag() - Z2.imag());
  // int_0^1 c^{p-1} e^{-b c} dc = e^{-b} sum_k b^k / (p (p+1) ... (p+k))
  const double p = a + 2.0;
  cplx term = 1.0 / p, sum = term;
  for (int k = 1; k < 100000; ++k) {
    term *= b / (p + k);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > std::abs(b)) break;
  }
  const double pre = std::pow(Z1.real() * Z2.real(), 0.5 * a) / (4.0 * std::numbers::pi) * std::exp(-ln_gamma(a + 1.0));
  return pre * std::exp(-b) * sum;
}

/// Truncated-unitary weak-nonunitarity edge limit, evaluated by quadrature in c.
inline cplx truncated_edge_limit(double a, cplx Z1, cplx Z2, int c_nodes = 64) {
  detail::check_a(a, "truncated_edge_limit");
  if (!(Z1.real() >= 0.0 && Z2.real() >= 0.0)) throw std::domain_error("truncated_edge_limit: need Re Z >= 0");
  cplx I = integrate_unit(
      [&](double c) {
        return std::pow(c, a + 1.0) *
               std::exp(cplx(-0.5 * c * (Z1.real() + Z2.real()), -0.5 * c * (Z1.imag() - Z2.imag())));
      },
      c_nodes);
  return std::pow(Z1.real() * Z2.real(), 0.5 * a) / (4.0 * std::numbers::pi) * std::exp(-ln_gamma(a + 1.0)) * I;
}

/// Ginibre kernel (2/pi) exp(-|u1|^2 - |u2|^2 + 2 u1 conj(u2)).
inline cplx ginibre_kernel(cplx u1, cplx u2) {
  const cplx d = u1 - u2;
  const double im = (u1 * std::conj(u2)).imag();
  return 2.0 / std::numbers::pi * std::exp(cplx(-std::norm(d), 2.0 * im));
}

/// Bulk limit obtained from the edge kernel at Z = kappa h - 2 sqrt(h) z (h large).
inline cplx bulk_from_edge_check(double a, double s, double kappa, double h, cplx z1, cplx z2, int c_nodes = 64) {
  detail::check_s(s, "bulk_from_edge_check");
  if (!(kappa > 0.0 && h > 0.0)) throw std::domain_error("bulk_from_edge_check: need kappa, h > 0");
  const double sh = std::sqrt(h);
  return 4.0 * h * edge_weak(a, s, kappa * h - 2.0 * sh * z1, kappa * h - 2.0 * sh * z2, c_nodes);
}

/// Large-h target of bulk_from_edge_check.
inline cplx bulk_from_edge_limit(double a, double s, double kappa, cplx z1, cplx z2, int c_nodes = 64) {
  detail::check_a(a, "bulk_from_edge_limit");
  detail::check_s(s, "bulk_from_edge_limit");
  const double nu = a + 0.5;
  const double f1 = kappa - 4.0 * z1.imag() * z1.imag() / (s * s);
  const double f2 = kappa - 4.0 * z2.imag() * z2.imag() / (s * s);
  if (f1 < 0.0 || f2 < 0.0) throw std::domain_error("bulk_from_edge_limit: point outside the strip");
  const cplx d = (z1 - std::conj(z2)) / std::sqrt(kappa);
  cplx I = integrate_unit([&](double c) { return detail::i_ratio(nu, c * s) * std::cos(c * d); }, c_nodes);
  return 2.0 / (s * std::pow(std::numbers::pi, 1.5)) * std::exp(-ln_gamma(a + 1.0)) *
         std::pow(kappa, -(a + 1.0)) * std::pow(f1, 0.5 * a) * std::pow(f2, 0.5 * a) * I;
}

enum class GlobalKind { U, T, V };

/// Global (N -> infinity) kernel on the rescaled ellipse x^2/(1+tau) + y^2/(1-tau) <= 1.
inline cplx global_kernel(GlobalKind kind, double tau, cplx z1, cplx z2) {
  Ellipse e(tau);
  const double st = std::sqrt(2.0 * tau);
  const cplx zeta1 = z1 / st, zeta2 = z2 / st;
  if (!e.contains(zeta1) || !e.contains(zeta2)) throw std::domain_error("global_kernel: point outside the ellipse");
  auto near_focus = [](cplx z) { return std::abs(z - 1.0) < 1e-12 || std::abs(z + 1.0) < 1e-12; };
  const double v = e.v();
  const cplx w1 = joukowsky_inverse(zeta1).omega;
  const cplx w2c = std::conj(joukowsky_inverse(zeta2).omega);
  if (std::abs(w1) >= v || std::abs(w2c) >= v) throw std::domain_error("global_kernel: point on the boundary");
  auto g = [](cplx q) { return q / ((1.0 - q) * (1.0 - q)); };
  auto h = [](cplx x) { return x * (1.0 + x * x) / ((1.0 - x * x) * (1.0 - x * x)); };
  CompensatedSum<cplx> acc;
  const cplx q1 = std::sqrt(w1), q2 = std::sqrt(w2c);
  for (int j = 0; j < 500; ++j) {
    const double eta = std::pow(v, -2.0 * (1.0 + 2.0 * j));
    cplx t;
    switch (kind) {
      case GlobalKind::U:
        t = g(eta * w1 * w2c) - g(eta * w1 / w2c) - g(eta * w2c / w1) + g(eta / (w1 * w2c));
        break;
      case GlobalKind::T:
        t = g(eta * w1 * w2c) + g(eta * w1 / w2c) + g(eta * w2c / w1) + g(eta / (w1 * w2c));
        break;
      case GlobalKind::V: {
        const double r = std::sqrt(eta);
        t = h(r * q1 * q2) - h(r * q1 / q2) - h(r * q2 / q1) + h(r / (q1 * q2));
        break;
      }
    }
    acc.add(t);
    if (std::abs(t) < 1e-15 * std::abs(acc.value())) break;
  }
  const cplx S = acc.value();
  switch (kind) {
    case GlobalKind::U:
      if (near_focus(zeta1) || near_focus(zeta2)) throw std::domain_error("global_kernel: point at a focus");
      return 2.0 / (std::numbers::pi * tau) * S / ((w1 - 1.0 / w1) * (w2c - 1.0 / w2c));
    case GlobalKind::T: {
      const double d1 = std::abs(1.0 - zeta1 * zeta1), d2 = std::abs(1.0 - zeta2 * zeta2);
      if (d1 == 0.0 || d2 == 0.0) throw std::domain_error("global_kernel: weight singular at a focus");
      return 1.0 / (2.0 * std::numbers::pi * tau) / std::sqrt(d1 * d2) * (S + 1.0 / (2.0 * std::log(v)));
    }
    case GlobalKind::V: {
      const double d1 = std::abs(1.0 + zeta1), d2 = std::abs(1.0 + zeta2);
      if (d1 == 0.0 || d2 == 0.0 || near_focus(zeta1) || near_focus(zeta2))
        throw std::domain_error("global_kernel: point at a focus");
      return 1.0 / (2.0 * std::numbers::pi * tau) / std::sqrt(d1 * d2) * S / ((q1 - 1.0 / q1) * (q2 - 1.0 / q2));
    }
  }
  return 0.0;
}

/// tau -> 0 limits of the global kernels on the unit disc.
inline cplx global_rotational_limit(GlobalKind kind, cplx z1, cplx z2) {
  const cplx q = z1 * std::conj(z2);
  switch (kind) {
    case GlobalKind::U: return 1.0 / (std::numbers::pi * (1.0 - q) * (1.0 - q));
    case GlobalKind::T: return q / (std::numbers::pi * std::abs(z1) * std::abs(z2) * (1.0 - q) * (1.0 - q));
    case GlobalKind::V:
      return (1.0 + q) / (2.0 * std::numbers::pi * std::sqrt(std::abs(z1) * std::abs(z2)) * (1.0 - q) * (1.0 - q));
  }
  return 0.0;
}

}  // namespace ellgas

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"
#include "specialfns.hpp"

namespace ellgas {

/// Value m * exp(log_scale) with 0.5 <= |m| < 1 (or m == 0, log_scale == 0).
struct ScaledValue {
  cplx mantissa{0.0};
  double log_scale = 0.0;

  static ScaledValue normalized(cplx m, double ls) {
    double mag = std::max(std::abs(m.real()), std::abs(m.imag()));
    if (mag == 0.0 || !std::isfinite(mag)) return {m, mag == 0.0 ? 0.0 : ls};
    int e;
    std::frexp(std::abs(m), &e);
    return {cplx(std::ldexp(m.real(), -e), std::ldexp(m.imag(), -e)),
            ls + e * std::numbers::ln2};
  }
  static ScaledValue from_log(double log_abs) { return normalized(1.0, log_abs); }

  bool is_zero() const { return mantissa == cplx(0.0); }
  /// log|value|; -inf for zero.
  double log_abs() const {
    return is_zero() ? -std::numeric_limits<double>::infinity()
                     : std::log(std::abs(mantissa)) + log_scale;
  }
  cplx value() const { return mantissa * std::exp(log_scale); }
  ScaledValue conj() const { return {std::conj(mantissa), log_scale}; }

  friend ScaledValue operator*(const ScaledValue& x, const ScaledValue& y) {
    return normalized(x.mantissa * y.mantissa, x.log_scale + y.log_scale);
  }
  friend ScaledValue operator/(const ScaledValue& x, const ScaledValue& y) {
    if (y.is_zero()) throw std::domain_error("ScaledValue: division by zero");
    return normalized(x.mantissa / y.mantissa, x.log_scale - y.log_scale);
  }
  ScaledValue scaled_by_log(double l) const { return is_zero() ? *this : normalized(mantissa, log_scale + l); }
};

namespace detail {

// p_n = (A_n z + B_n) p_{n-1} - C_n p_{n-2} for n >= 2, with p_0 = 1 and p_1 given.
template <typename Coef>
std::vector<ScaledValue> three_term_table(int nmax, cplx z, cplx p1, Coef coef) {
  if (nmax < 0) throw std::domain_error("polynomial degree must be non-negative");
  std::vector<ScaledValue> out;
  out.reserve(nmax + 1);
  out.push_back({1.0, 0.0});
  if (nmax == 0) return out;
  out.push_back(ScaledValue::normalized(p1, 0.0));
  cplx q0 = 1.0, q1 = p1;
  double ls = 0.0;
  for (int n = 2; n <= nmax; ++n) {
    double A, B, C;
    coef(n, A, B, C);
    cplx q2 = (A * z + B) * q1 - C * q0;
    q0 = q1;
    q1 = q2;
    double mag = std::max(std::abs(q0), std::abs(q1));
    if (mag > 0x1p60 || (mag < 0x1p-60 && mag > 0.0)) {
      int e;
      std::frexp(mag, &e);
      q0 = cplx(std::ldexp(q0.real(), -e), std::ldexp(q0.imag(), -e));
      q1 = cplx(std::ldexp(q1.real(), -e), std::ldexp(q1.imag(), -e));
      ls += e * std::numbers::ln2;
    }
    out.push_back(ScaledValue::normalized(q1, ls));
  }
  return out;
}

inline void check_gegenbauer_param(double a) {
  if (!(a > -1.0) || !std::isfinite(a)) throw std::domain_error("gegenbauer: need a > -1");
}

}  // namespace detail

/// C^{(a+1)}_n(z) for n = 0..nmax.
inline std::vector<ScaledValue> gegenbauer_table(int nmax, double a, cplx z) {
  detail::check_gegenbauer_param(a);
  return detail::three_term_table(nmax, z, 2.0 * (a + 1.0) * z, [a](int n, double& A, double& B, double& C) {
    A = 2.0 * (n + a) / n;
    B = 0.0;
    C = (n + 2.0 * a) / n;
  });
}

/// Gegenbauer polynomial C^{(a+1)}_n(z), a > -1.
inline ScaledValue gegenbauer(int n, double a, cplx z) { return gegenbauer_table(n, a, z).back(); }

/// Jacobi P^{(alpha,gamma)}_n(z) for n = 0..nmax.
inline std::vector<ScaledValue> jacobi_table(int nmax, double alpha, double gamma, cplx z) {
  if (!(alpha > -1.0 && gamma > -1.0)) throw std::domain_error("jacobi: need alpha, gamma > -1");
  const double s = alpha + gamma;
  cplx p1 = (alpha + 1.0) + (s + 2.0) * (z - 1.0) / 2.0;
  return detail::three_term_table(nmax, z, p1, [=](int n, double& A, double& B, double& C) {
    const double m = 2.0 * n + s;
    const double d = 2.0 * n * (n + s) * (m - 2.0);
    A = (m - 1.0) * m * (m - 2.0) / d;
    B = (m - 1.0) * (alpha * alpha - gamma * gamma) / d;
    C = 2.0 * (n + alpha - 1.0) * (n + gamma - 1.0) * m / d;
  });
}

inline ScaledValue jacobi(int n, double alpha, double gamma, cplx z) {
  return jacobi_table(n, alpha, gamma, z).back();
}

namespace detail {
inline std::vector<ScaledValue> cheb_table(int nmax, cplx z, cplx p1) {
  return three_term_table(nmax, z, p1, [](int, double& A, double& B, double& C) {
    A = 2.0;
    B = 0.0;
    C = 1.0;
  });
}
}  // namespace detail

inline std::vector<ScaledValue> chebyshev_t_table(int nmax, cplx z) { return detail::cheb_table(nmax, z, z); }
inline std::vector<ScaledValue> chebyshev_u_table(int nmax, cplx z) { return detail::cheb_table(nmax, z, 2.0 * z); }
/// V_n = (2n+1) P^{(1/2,-1/2)}_n / P^{(1/2,-1/2)}_n(1), so V_1 = 2z + 1.
inline std::vector<ScaledValue> chebyshev_v_table(int nmax, cplx z) {
  return detail::cheb_table(nmax, z, 2.0 * z + 1.0);
}

inline ScaledValue chebyshev_t(int n, cplx z) { return chebyshev_t_table(n, z).back(); }
inline ScaledValue chebyshev_u(int n, cplx z) { return chebyshev_u_table(n, z).back(); }
inline ScaledValue chebyshev_v(int n, cplx z) { return chebyshev_v_table(n, z).back(); }

/// Closed forms in the Joukowsky variable, z = (w + 1/w)/2.
inline cplx chebyshev_t_joukowsky(int n, cplx w) { return 0.5 * (std::pow(w, n) + std::pow(w, -n)); }
inline cplx chebyshev_u_joukowsky(int n, cplx w) {
  return (std::pow(w, n + 1) - std::pow(w, -n - 1)) / (w - 1.0 / w);
}
inline cplx chebyshev_v_joukowsky(int n, cplx w) {
  const cplx q = std::sqrt(w);
  return (std::pow(q, 2 * n + 1) - std::pow(q, -2 * n - 1)) / (q - 1.0 / q);
}

/// Polynomials orthogonal for a given gas: natural normalization P_n, squared
/// norms nu_n = int w |P_n|^2 and leading coefficients, all in log form.
class FamilyBasis {
 public:
  FamilyBasis(const Gas& gas, const Ellipse& e) : gas_(gas), e_(e) {}

  const Gas& gas() const { return gas_; }
  const Ellipse& ellipse() const { return e_; }

  /// P_0(z) .. P_{nmax}(z).
  std::vector<ScaledValue> natural_table(int nmax, cplx z) const {
    const double a = gas_.a;
    switch (gas_.family) {
      case Family::Gegenbauer: return gegenbauer_table(nmax, a, z);
      case Family::JacobiPlus: return jacobi_table(nmax, a + 0.5, 0.5, z);
      case Family::JacobiMinus: return jacobi_table(nmax, a + 0.5, -0.5, z);
      case Family::ChebyshevT: return chebyshev_t_table(nmax, z);
      case Family::ChebyshevV: return chebyshev_v_table(nmax, z);
    }
    return {};
  }

  /// log of the leading coefficient of P_n.
  double log_lead(int n) const {
    const double a = gas_.a;
    const double l2 = std::numbers::ln2;
    switch (gas_.family) {
      case Family::Gegenbauer:
        return n * l2 + ln_gamma(n + a + 1.0) - ln_gamma(a + 1.0) - ln_gamma(n + 1.0);
      case Family::JacobiPlus:
        return ln_gamma(2.0 * n + a + 2.0) - n * l2 - ln_gamma(n + 1.0) - ln_gamma(n + a + 2.0);
      case Family::JacobiMinus:
        return ln_gamma(2.0 * n + a + 1.0) - n * l2 - ln_gamma(n + 1.0) - ln_gamma(n + a + 1.0);
      case Family::ChebyshevT: return n == 0 ? 0.0 : (n - 1) * l2;
      case Family::ChebyshevV: return n * l2;
    }
    return 0.0;
  }

  /// log nu_n for n = 0..nmax.
  std::vector<double> log_norms(int nmax) const {
    if (nmax < 0) throw std::domain_error("degree must be non-negative");
    std::vector<double> out(nmax + 1);
    const double a = gas_.a;
    const double tau = e_.tau();
    const double A = e_.semi_x(), B = e_.semi_y();
    const double lpi = std::log(std::numbers::pi);
    switch (gas_.family) {
      case Family::Gegenbauer: {
        auto c = gegenbauer_table(nmax, a, 1.0 / tau);
        const double base = std::log(std::sqrt(1.0 - tau * tau) / (2.0 * tau)) + lpi;
        for (int n = 0; n <= nmax; ++n) out[n] = base - std::log(n + a + 1.0) + c[n].log_abs();
        break;
      }
      case Family::JacobiPlus: {
        auto c = gegenbauer_table(2 * nmax + 1, a, A);
        const double base = std::log(4.0 * B) + 2.0 * ln_gamma(a + 1.0);
        for (int n = 0; n <= nmax; ++n)
          out[n] = base + 2.0 * ln_gamma(n + 1.5) - std::log(2.0 * n + a + 2.0) -
                   2.0 * ln_gamma(n + a + 2.0) + c[2 * n + 1].log_abs();
        break;
      }
      case Family::JacobiMinus: {
        auto c = gegenbauer_table(2 * nmax, a, A);
        const double base = std::log(2.0 * B) + 2.0 * ln_gamma(a + 1.0);
        for (int n = 0; n <= nmax; ++n)
          out[n] = base + 2.0 * ln_gamma(n + 0.5) - std::log(2.0 * n + a + 1.0) -
                   2.0 * ln_gamma(n + a + 1.0) + c[2 * n].log_abs();
        break;
      }
      case Family::ChebyshevT: {
        auto u = chebyshev_u_table(std::max(0, 2 * nmax - 1), A);
        out[0] = std::log(2.0 * std::numbers::pi * e_.xi_max());
        for (int n = 1; n <= nmax; ++n)
          out[n] = std::log(std::numbers::pi / (2.0 * n)) + std::log(B) + u[2 * n - 1].log_abs();
        break;
      }
      case Family::ChebyshevV: {
        auto u = chebyshev_u_table(2 * nmax, A);
        for (int n = 0; n <= nmax; ++n)
          out[n] = std::log(2.0 * std::numbers::pi / (2.0 * n + 1.0)) + std::log(B) + u[2 * n].log_abs();
        break;
      }
    }
    return out;
  }

 private:
  Gas gas_;
  Ellipse e_;
};

/// Monic orthogonal polynomial M_n(z) of the gas.
inline ScaledValue monic_value(const Gas& gas, const Ellipse& e, int n, cplx z) {
  FamilyBasis b(gas, e);
  return b.natural_table(n, z).back().scaled_by_log(-b.log_lead(n));
}

/// Squared norm h_n = int_E w |M_n|^2, returned in log-scaled form.
inline ScaledValue squared_norm(const Gas& gas, const Ellipse& e, int n) {
  FamilyBasis b(gas, e);
  return ScaledValue::from_log(b.log_norms(n).back() - 2.0 * b.log_lead(n));
}

}  // namespace ellgas

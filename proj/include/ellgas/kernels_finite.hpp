#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"
#include "polynomials.hpp"
#include "specialfns.hpp"

namespace ellgas {

/// Correlation kernel K_N(z1, z2) = sqrt(w(z1) w(z2)) sum_{n<N} P_n(z1) conj(P_n(z2)) / nu_n.
class FiniteKernel {
 public:
  FiniteKernel(const Gas& gas, const Ellipse& e, int N) : basis_(gas, e), N_(N) {
    if (N < 1) throw std::domain_error("FiniteKernel: N must be at least 1");
    log_norms_ = basis_.log_norms(N - 1);
  }

  const Gas& gas() const { return basis_.gas(); }
  const Ellipse& ellipse() const { return basis_.ellipse(); }
  int N() const { return N_; }
  const FamilyBasis& basis() const { return basis_; }

  cplx operator()(cplx z1, cplx z2) const {
    const double lw1 = log_weight(z1), lw2 = log_weight(z2);
    if (lw1 == -inf() || lw2 == -inf()) return 0.0;
    auto p1 = basis_.natural_table(N_ - 1, z1);
    auto p2 = basis_.natural_table(N_ - 1, std::conj(z2));
    return combine(p1, p2, 0.5 * (lw1 + lw2));
  }

  /// Diagonal K_N(z, z), real and non-negative.
  double diagonal(cplx z) const {
    const double lw = log_weight(z);
    if (lw == -inf()) return 0.0;
    auto p = basis_.natural_table(N_ - 1, z);
    double lmax = -inf();
    for (int n = 0; n < N_; ++n)
      if (!p[n].is_zero()) lmax = std::max(lmax, 2.0 * p[n].log_scale - log_norms_[n]);
    if (lmax == -inf()) return 0.0;
    CompensatedSum<double> acc;
    for (int n = 0; n < N_; ++n)
      if (!p[n].is_zero()) acc.add(std::norm(p[n].mantissa) * std::exp(2.0 * p[n].log_scale - log_norms_[n] - lmax));
    return acc.value() * std::exp(lmax + lw);
  }

  /// log w(z); throws outside E or at a singular point of the weight.
  double log_weight(cplx z) const {
    const Ellipse& e = ellipse();
    if (!e.contains(z)) throw std::domain_error("kernel: point outside the ellipse");
    const double w = weight(gas(), e, z);
    if (std::isinf(w)) throw std::domain_error("kernel: weight is singular at this point");
    return w == 0.0 ? -inf() : std::log(w);
  }

 private:
  static constexpr double inf() { return std::numeric_limits<double>::infinity(); }

  cplx combine(const std::vector<ScaledValue>& p1, const std::vector<ScaledValue>& p2, double lpre) const {
    double lmax = -inf();
    for (int n = 0; n < N_; ++n)
      if (!p1[n].is_zero() && !p2[n].is_zero())
        lmax = std::max(lmax, p1[n].log_scale + p2[n].log_scale - log_norms_[n]);
    if (lmax == -inf()) return 0.0;
    CompensatedSum<cplx> acc;
    for (int n = 0; n < N_; ++n) {
      if (p1[n].is_zero() || p2[n].is_zero()) continue;
      const double l = p1[n].log_scale + p2[n].log_scale - log_norms_[n] - lmax;
      acc.add(p1[n].mantissa * p2[n].mantissa * std::exp(l));
    }
    return acc.value() * std::exp(lmax + lpre);
  }

  FamilyBasis basis_;
  int N_;
  std::vector<double> log_norms_;
};

/// Truncated-unitary kernel on the unit disc at finite N.
inline cplx kernel_truncated(double a, int N, cplx z1, cplx z2) {
  if (!(a > -1.0)) throw std::domain_error("kernel_truncated: need a > -1");
  if (N < 1) throw std::domain_error("kernel_truncated: N must be at least 1");
  const double r1 = 1.0 - std::norm(z1), r2 = 1.0 - std::norm(z2);
  if (r1 < 0.0 || r2 < 0.0) throw std::domain_error("kernel_truncated: point outside the unit disc");
  const cplx q = z1 * std::conj(z2);
  double c = (a + 1.0) / std::numbers::pi;
  cplx qn = 1.0;
  CompensatedSum<cplx> acc;
  for (int n = 0; n < N; ++n) {
    if (n > 0) {
      c *= (n + a + 1.0) / n;
      qn *= q;
    }
    acc.add(c * qn);
  }
  return std::pow(r1, 0.5 * a) * std::pow(r2, 0.5 * a) * acc.value();
}

/// N -> infinity limit of kernel_truncated, |z1|, |z2| < 1.
inline cplx kernel_truncated_limit(double a, cplx z1, cplx z2) {
  if (!(a > -1.0)) throw std::domain_error("kernel_truncated_limit: need a > -1");
  const double r1 = 1.0 - std::norm(z1), r2 = 1.0 - std::norm(z2);
  if (!(r1 > 0.0 && r2 > 0.0)) throw std::domain_error("kernel_truncated_limit: need |z| < 1");
  return (a + 1.0) / std::numbers::pi * std::pow(r1, 0.5 * a) * std::pow(r2, 0.5 * a) /
         std::pow(1.0 - z1 * std::conj(z2), a + 2.0);
}

/// Elliptic Ginibre kernel at finite N (Hermite polynomials).
inline cplx kernel_elliptic_ginibre(double tau, int N, cplx z1, cplx z2) {
  if (!(tau > 0.0 && tau < 1.0)) throw std::domain_error("kernel_elliptic_ginibre: tau must lie in (0, 1)");
  if (N < 1) throw std::domain_error("kernel_elliptic_ginibre: N must be at least 1");
  const double st = std::sqrt(2.0 * tau);
  const cplx u1 = z1 / st, u2 = std::conj(z2) / st;
  // h_n = H_n * sqrt((tau/2)^n / n!)
  cplx a0 = 1.0, b0 = 1.0;
  cplx a1 = std::sqrt(2.0 * tau) * u1, b1 = std::sqrt(2.0 * tau) * u2;
  CompensatedSum<cplx> acc;
  acc.add(1.0);
  if (N > 1) acc.add(a1 * b1);
  for (int n = 1; n + 1 < N; ++n) {
    const double c1 = std::sqrt(2.0 * tau / (n + 1.0));
    const double c2 = tau * std::sqrt(n / (n + 1.0));
    cplx a2 = c1 * u1 * a1 - c2 * a0;
    cplx b2 = c1 * u2 * b1 - c2 * b0;
    a0 = a1, a1 = a2, b0 = b1, b1 = b2;
    acc.add(a1 * b1);
  }
  auto gauss = [tau](cplx z) {
    return z.real() * z.real() / (2.0 * (1.0 + tau)) + z.imag() * z.imag() / (2.0 * (1.0 - tau));
  };
  return std::exp(-gauss(z1) - gauss(z2)) / (std::numbers::pi * std::sqrt(1.0 - tau * tau)) * acc.value();
}

}  // namespace ellgas

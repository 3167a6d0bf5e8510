#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kernels_finite.hpp"
#include "kernels_limit.hpp"
#include "polynomials.hpp"
#include "quadrature.hpp"

namespace ellgas {

using PointPair = std::pair<cplx, cplx>;

struct GramReport {
  Eigen::MatrixXcd normalized;  // <P_m, P_n> / sqrt(h_m h_n)
  double max_off_diagonal = 0.0;
  double max_diagonal_error = 0.0;
};

/// Quadrature Gram matrix of the natural basis of a gas up to degree max_degree.
inline GramReport orthogonality_report(const Gas& gas, const Ellipse& e, int max_degree, QuadratureSpec spec = {}) {
  if (max_degree < 0) throw std::invalid_argument("orthogonality_report: negative degree");
  FamilyBasis b(gas, e);
  const auto ln = b.log_norms(max_degree);
  spec.singularity_exponent = gas.boundary_exponent();
  const int D = max_degree + 1;
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(D, D);
  for (const auto& pt : ellipse_cubature(e, spec)) {
    const double w = weight(gas, e, pt.z);
    if (w == 0.0) continue;
    auto P = b.natural_table(max_degree, pt.z);
    Eigen::VectorXcd v(D);
    for (int n = 0; n < D; ++n) v[n] = P[n].value() * std::exp(-0.5 * ln[n]);
    G.noalias() += (pt.weight * w) * v * v.adjoint();
  }
  GramReport r;
  r.normalized = G;
  for (int m = 0; m < D; ++m)
    for (int n = 0; n < D; ++n) {
      if (m == n)
        r.max_diagonal_error = std::max(r.max_diagonal_error, std::abs(G(m, n) - 1.0));
      else
        r.max_off_diagonal = std::max(r.max_off_diagonal, std::abs(G(m, n)));
    }
  return r;
}

/// Standard pairs (z^, z^') for the bulk study; imaginary parts scale with s.
inline std::vector<PointPair> bulk_test_pairs(double s) {
  const double k = std::min(1.0, s);
  return {{0.0, 0.0},
          {{0.3, 0.1 * k}, {0.3, 0.1 * k}},
          {{0.5, 0.2 * k}, {-0.4, -0.1 * k}},
          {{1.0, 0.0}, {0.0, 0.3 * k}},
          {{-0.7, -0.2 * k}, {0.2, 0.25 * k}}};
}

/// Standard pairs (Z, Z') for the focal studies.
inline std::vector<PointPair> edge_test_pairs() {
  return {{0.5, 0.5}, {{1.0, 0.2}, {2.0, -0.3}}, {0.1, {3.0, 0.4}}, {{1.5, 0.3}, {1.5, 0.3}}, {{0.8, -0.2}, {2.5, 0.2}}};
}

/// Standard pairs for the strong bulk study, inside |Im| < 1/2.
inline std::vector<PointPair> strong_test_pairs() {
  return {{0.0, 0.0},
          {{0.2, 0.1}, {-0.3, 0.2}},
          {{0.5, -0.2}, {0.1, 0.1}},
          {{0.3, 0.3}, {0.3, 0.3}},
          {{-0.4, 0.0}, {0.6, -0.25}}};
}

/// N^-2 K_N(z^/N, z^'/N) at 1/tau = 1 + s^2/(2N^2).
inline cplx scaled_bulk(const FiniteKernel& K, cplx z1, cplx z2) {
  const double N = K.N();
  return K(z1 / N, z2 / N) / (N * N);
}

/// (4N^4)^-1 K_N(f (1 - Z/(2N^2)), ...) at the focus f = +1 or -1.
inline cplx scaled_edge(const FiniteKernel& K, double focus, cplx Z1, cplx Z2) {
  const double N = K.N(), n2 = 2.0 * N * N;
  return K(focus * (1.0 - Z1 / n2), focus * (1.0 - Z2 / n2)) / (4.0 * N * N * N * N);
}

inline double bulk_weak_discrepancy(double a, double s, int N) {
  FiniteKernel K(Gas(Family::Gegenbauer, a), Ellipse(weak_tau(s, N)), N);
  double mx = 0.0;
  for (const auto& [z1, z2] : bulk_test_pairs(s))
    mx = std::max(mx, std::abs(scaled_bulk(K, z1, z2) - bulk_weak(a, s, z1, z2)));
  return mx;
}

inline double edge_weak_discrepancy(const Gas& gas, double s, int N) {
  FiniteKernel K(gas, Ellipse(weak_tau(s, N)), N);
  double mx = 0.0;
  for (const auto& [Z1, Z2] : edge_test_pairs())
    mx = std::max(mx, std::abs(scaled_edge(K, 1.0, Z1, Z2) - edge_weak(gas.a, s, Z1, Z2)));
  return mx;
}

/// sup |s^2 bulk_weak(s z) - bulk_strong(z)| over the strong pairs.
inline double bulk_strong_discrepancy(double a, double s) {
  double mx = 0.0;
  for (const auto& [z1, z2] : strong_test_pairs())
    mx = std::max(mx, std::abs(s * s * bulk_weak(a, s, s * z1, s * z2) - bulk_strong(a, z1, z2)));
  return mx;
}

/// Least-squares slope of log(err) against log(x): err ~ x^slope.
inline double fit_power_law(const std::vector<double>& x, const std::vector<double>& err) {
  if (x.size() != err.size() || x.size() < 2) throw std::invalid_argument("fit_power_law: need two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && err[i] > 0.0)) throw std::domain_error("fit_power_law: values must be positive");
    const double lx = std::log(x[i]), ly = std::log(err[i]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace ellgas

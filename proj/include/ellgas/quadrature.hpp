#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "geometry.hpp"
#include "specialfns.hpp"

namespace ellgas {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

inline QuadratureRule compute_gauss_legendre(int n) {
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

// Golub-Welsch for the weight (1-x)^alpha (1+x)^beta on [-1, 1].
inline QuadratureRule compute_gauss_jacobi(int n, double alpha, double beta) {
  Eigen::VectorXd diag(n), sub(std::max(0, n - 1));
  const double s = alpha + beta;
  for (int k = 0; k < n; ++k) {
    if (k == 0)
      diag(k) = (beta - alpha) / (s + 2.0);
    else
      diag(k) = (beta * beta - alpha * alpha) / ((2.0 * k + s) * (2.0 * k + s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    double b2;
    if (k == 1)
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + s) * (2.0 + s) * (3.0 + s));
    else
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + s) /
           ((2.0 * k + s) * (2.0 * k + s) * (2.0 * k + s + 1.0) * (2.0 * k + s - 1.0));
    sub(k - 1) = std::sqrt(b2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const double mu0 = std::exp((s + 1.0) * std::numbers::ln2 + ln_gamma(alpha + 1.0) +
                              ln_gamma(beta + 1.0) - ln_gamma(s + 2.0));
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    r.weights[i] = mu0 * v0 * v0;
  }
  return r;
}

}  // namespace detail

/// Cached Gauss-Legendre rule on [-1, 1].
inline const QuadratureRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  static std::mutex m;
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard<std::mutex> lk(m);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<QuadratureRule>(detail::compute_gauss_legendre(n));
  return *slot;
}

/// Cached Gauss-Jacobi rule on [-1, 1] for (1-x)^alpha (1+x)^beta.
inline const QuadratureRule& gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: need at least one node");
  if (!(alpha > -1.0 && beta > -1.0)) throw std::domain_error("gauss_jacobi: exponents must exceed -1");
  if (alpha == 0.0 && beta == 0.0) return gauss_legendre(n);
  static std::mutex m;
  static std::map<std::tuple<int, double, double>, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard<std::mutex> lk(m);
  auto& slot = cache[{n, alpha, beta}];
  if (!slot) slot = std::make_unique<QuadratureRule>(detail::compute_gauss_jacobi(n, alpha, beta));
  return *slot;
}

struct QuadratureSpec {
  int radial_nodes = 96;
  int angular_nodes = 192;
  int c_nodes = 64;
  /// Exponent p of a wall factor dist^p carried by the integrand.
  double singularity_exponent = 0.0;
};

struct CubaturePoint {
  cplx z;
  double weight;
};

/// Cubature on E in elliptic coordinates z = cosh(xi + i eta): Gauss-Jacobi in xi
/// (absorbing the wall factor) and the periodic trapezoid rule in eta. The
/// Jacobian |z^2 - 1| cancels the focal singularities of the Chebyshev weights.
inline std::vector<CubaturePoint> ellipse_cubature(const Ellipse& e, const QuadratureSpec& spec) {
  if (spec.radial_nodes < 1 || spec.angular_nodes < 1)
    throw std::invalid_argument("ellipse_cubature: node counts must be positive");
  const double p = spec.singularity_exponent;
  const auto& gj = gauss_jacobi(spec.radial_nodes, p, 0.0);
  const double xm = e.xi_max();
  const int M = spec.angular_nodes;
  const double h = 2.0 * std::numbers::pi / M;
  std::vector<CubaturePoint> pts;
  pts.reserve(static_cast<size_t>(spec.radial_nodes) * M);
  for (size_t i = 0; i < gj.nodes.size(); ++i) {
    const double x = gj.nodes[i];
    const double xi = 0.5 * xm * (1.0 + x);
    const double gap = 0.5 * xm * (1.0 - x);
    // dist^p of the integrand is measured by xi_max - xi up to a smooth factor
    const double wr = std::pow(0.5 * xm, p + 1.0) * gj.weights[i] * std::pow(gap, -p);
    const double ch = std::cosh(xi), sh = std::sinh(xi);
    for (int j = 0; j < M; ++j) {
      const double eta = h * (j + 0.5);
      const double c = std::cos(eta), s = std::sin(eta);
      const double jac = sh * sh + s * s;
      pts.push_back({cplx(ch * c, sh * s), wr * h * jac});
    }
  }
  return pts;
}

/// Integral of f over E; f may include the gas weight.
template <typename F>
auto integrate_ellipse(F&& f, const Ellipse& e, const QuadratureSpec& spec = {}) {
  using R = decltype(f(cplx{}));
  CompensatedSum<R> acc;
  for (const auto& pt : ellipse_cubature(e, spec)) acc.add(pt.weight * f(pt.z));
  return acc.value();
}

/// Gauss-Legendre integral of g over [0, 1].
template <typename G>
auto integrate_unit(G&& g, int nodes = 64) {
  using R = decltype(g(0.0));
  const auto& gl = gauss_legendre(nodes);
  CompensatedSum<R> acc;
  for (size_t i = 0; i < gl.nodes.size(); ++i) acc.add(0.5 * gl.weights[i] * g(0.5 * (1.0 + gl.nodes[i])));
  return acc.value();
}

struct HalfLineOptions {
  double truncation = 50.0;
  double panel_width = 2.0;
  int nodes_per_panel = 16;
  double tail_tolerance = 1e-13;
};

/// Paneled Gauss-Legendre integral of g over [0, T]; throws if g has not decayed by T.
template <typename G>
auto integrate_half_line(G&& g, const HalfLineOptions& opt = {}) {
  using R = decltype(g(0.0));
  const auto& gl = gauss_legendre(opt.nodes_per_panel);
  const int panels = std::max(1, static_cast<int>(std::ceil(opt.truncation / opt.panel_width)));
  const double w = opt.truncation / panels;
  CompensatedSum<R> acc;
  double last_panel = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = k * w;
    double mx = 0.0;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      R v = g(lo + 0.5 * w * (1.0 + gl.nodes[i]));
      mx = std::max(mx, static_cast<double>(std::abs(v)));
      acc.add(0.5 * w * gl.weights[i] * v);
    }
    last_panel = mx;
  }
  R total = acc.value();
  const double endv = std::abs(g(opt.truncation));
  if (!std::isfinite(std::abs(total)) ||
      std::max(last_panel, endv) * w > opt.tail_tolerance * std::max(1.0, std::abs(total)))
    throw std::domain_error("integrate_half_line: integrand has not decayed at the truncation point");
  return total;
}

}  // namespace ellgas

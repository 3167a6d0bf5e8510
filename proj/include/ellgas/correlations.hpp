#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kernels_finite.hpp"
#include "parallel.hpp"
#include "polynomials.hpp"

namespace ellgas {

/// k-point correlation det[K(z_i, z_j)] for any callable kernel K(z1, z2).
template <typename Kernel>
double correlation_k(const Kernel& K, const std::vector<cplx>& points) {
  const auto k = static_cast<Eigen::Index>(points.size());
  if (k == 0) return 1.0;
  Eigen::MatrixXcd M(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) M(i, j) = K(points[i], points[j]);
  const cplx d = M.partialPivLu().determinant();
  return d.real();
}

/// Cell-centred rectangular grid.
struct GridSpec {
  double x_min = -1.0, x_max = 1.0, y_min = -1.0, y_max = 1.0;
  int nx = 64, ny = 64;

  double dx() const { return (x_max - x_min) / nx; }
  double dy() const { return (y_max - y_min) / ny; }
  double x(int i) const { return x_min + (i + 0.5) * dx(); }
  double y(int j) const { return y_min + (j + 0.5) * dy(); }
  void validate() const {
    if (nx < 1 || ny < 1 || !(x_max > x_min) || !(y_max > y_min))
      throw std::invalid_argument("GridSpec: empty or inverted grid");
  }
};

/// Values on a GridSpec, row-major with y as the slow index.
struct DensityGrid {
  GridSpec grid;
  std::vector<double> values;

  double& at(int i, int j) { return values[static_cast<size_t>(j) * grid.nx + i]; }
  double at(int i, int j) const { return values[static_cast<size_t>(j) * grid.nx + i]; }
  double integral() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * grid.dx() * grid.dy();
  }
};

enum class Rescale { None, Fig1, Fig2, Fig3 };

inline Rescale parse_rescale(std::string_view s) {
  if (s == "none") return Rescale::None;
  if (s == "fig1") return Rescale::Fig1;
  if (s == "fig2") return Rescale::Fig2;
  if (s == "fig3") return Rescale::Fig3;
  throw std::invalid_argument("unknown rescale: " + std::string(s));
}

/// One-point density at p under a display rescaling; zero outside the support.
inline double rescaled_density(const FiniteKernel& K, Rescale r, cplx p) {
  const double tau = K.ellipse().tau();
  const double N = K.N();
  const double a = K.gas().a;
  cplx z;
  double scale;
  switch (r) {
    case Rescale::None:
      z = p, scale = 1.0;
      break;
    case Rescale::Fig1:
      z = p / std::sqrt(2.0 * tau), scale = 1.0 / (2.0 * tau * N);
      break;
    case Rescale::Fig2:
      z = cplx(p.real(), p.imag() / N), scale = 1.0 / (N * N);
      break;
    case Rescale::Fig3:
      if (!(a > 0.0)) throw std::domain_error("fig3 rescaling needs a > 0");
      z = std::sqrt(N) * p / std::sqrt(2.0 * tau * a), scale = 1.0 / (2.0 * tau * a);
      break;
  }
  if (!K.ellipse().contains(z) || weight_is_singular(K.gas(), K.ellipse(), z)) return 0.0;
  return scale * K.diagonal(z);
}

/// Density K_N(z, z) sampled on a grid, in parallel over grid nodes.
inline DensityGrid density_grid(const FiniteKernel& K, const GridSpec& g, Rescale r = Rescale::None) {
  g.validate();
  DensityGrid out{g, std::vector<double>(static_cast<size_t>(g.nx) * g.ny, 0.0)};
  parallel_for(out.values.size(), [&](size_t idx) {
    const int i = static_cast<int>(idx % g.nx), j = static_cast<int>(idx / g.nx);
    out.values[idx] = rescaled_density(K, r, cplx(g.x(i), g.y(j)));
  });
  return out;
}

/// log Z_N = log N! + sum_{n<N} log h_n.
inline double log_partition(const Gas& gas, const Ellipse& e, int N) {
  if (N < 1) throw std::domain_error("log_partition: N must be at least 1");
  FamilyBasis b(gas, e);
  auto ln = b.log_norms(N - 1);
  double s = ln_gamma(N + 1.0);
  for (int n = 0; n < N; ++n) s += ln[n] - 2.0 * b.log_lead(n);
  return s;
}

}  // namespace ellgas

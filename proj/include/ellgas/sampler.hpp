#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "correlations.hpp"
#include "geometry.hpp"
#include "kernels_finite.hpp"
#include "quadrature.hpp"

namespace ellgas {

using Configuration = std::vector<cplx>;

/// Portable stream on top of mt19937_64: uniforms from the top 53 bits, normals by Box-Muller.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1p-53; }
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1;
    do u1 = uniform();
    while (u1 == 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }
  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Metropolis rule: accept when u < exp(log_ratio).
inline bool metropolis_accept(double log_ratio, double u) {
  if (log_ratio >= 0.0) return true;
  if (log_ratio == -std::numeric_limits<double>::infinity()) return false;
  return u < std::exp(log_ratio);
}

/// log of prod w(z_j) prod_{j<l} |z_j - z_l|^2; -inf outside E or at coincident points.
inline double log_density(const Gas& gas, const Ellipse& e, const Configuration& z) {
  constexpr double ninf = -std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (size_t j = 0; j < z.size(); ++j) {
    if (!e.contains(z[j])) return ninf;
    const double w = weight(gas, e, z[j]);
    if (w == 0.0) return ninf;
    if (std::isinf(w)) return std::numeric_limits<double>::infinity();
    s += std::log(w);
    for (size_t l = 0; l < j; ++l) {
      const double d = std::abs(z[j] - z[l]);
      if (d == 0.0) return ninf;
      s += 2.0 * std::log(d);
    }
  }
  return s;
}

struct ChainSettings {
  long steps = 1000000;
  long burn_in = 100000;
  long thin = 400;
  /// Proposal standard deviation; non-positive selects 0.15 * semi_y.
  double sigma = 0.0;
  std::uint64_t seed = 1;
  long stuck_threshold = 100000;
};

struct ChainResult {
  std::vector<Configuration> samples;
  double acceptance_rate = 0.0;
  long longest_rejection_run = 0;
  bool stuck = false;
};

/// Single-particle Metropolis chain for the beta = 2 gas with a hard wall at the ellipse.
inline ChainResult run_chain(const Gas& gas, const Ellipse& e, int N, const ChainSettings& cs) {
  if (N < 1) throw std::domain_error("run_chain: N must be at least 1");
  if (cs.steps < 0 || cs.burn_in < 0 || cs.thin < 1) throw std::invalid_argument("run_chain: bad step counts");
  const double sigma = cs.sigma > 0.0 ? cs.sigma : 0.15 * e.semi_y();
  Rng rng(cs.seed);
  Configuration z(N);
  for (int j = 0; j < N; ++j) {
    const double th = 2.0 * std::numbers::pi * j / N + 0.1;
    z[j] = cplx(0.5 * e.semi_x() * std::cos(th), 0.5 * e.semi_y() * std::sin(th));
  }
  auto log_w = [&](cplx p) {
    const double w = weight(gas, e, p);
    return w == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(w);
  };
  std::vector<double> lw(N);
  for (int j = 0; j < N; ++j) lw[j] = log_w(z[j]);

  ChainResult res;
  long accepted = 0, run = 0;
  for (long step = 0; step < cs.steps; ++step) {
    const int j = static_cast<int>(rng.next() % static_cast<std::uint64_t>(N));
    const cplx prop = z[j] + sigma * cplx(rng.normal(), rng.normal());
    const double u = rng.uniform();
    bool acc = false;
    if (e.contains(prop)) {
      const double lwp = log_w(prop);
      double dl = lwp - lw[j];
      for (int l = 0; l < N && std::isfinite(dl); ++l) {
        if (l == j) continue;
        const double dn = std::abs(prop - z[l]);
        dl += dn == 0.0 ? -std::numeric_limits<double>::infinity() : 2.0 * (std::log(dn) - std::log(std::abs(z[j] - z[l])));
      }
      if (std::isfinite(lwp) && !std::isnan(dl) && metropolis_accept(dl, u)) {
        z[j] = prop;
        lw[j] = lwp;
        acc = true;
      }
    }
    if (acc) {
      ++accepted;
      run = 0;
    } else if (++run > res.longest_rejection_run) {
      res.longest_rejection_run = run;
    }
    if (step >= cs.burn_in && (step - cs.burn_in) % cs.thin == cs.thin - 1) res.samples.push_back(z);
  }
  res.acceptance_rate = cs.steps > 0 ? static_cast<double>(accepted) / cs.steps : 0.0;
  res.stuck = res.longest_rejection_run > cs.stuck_threshold;
  return res;
}

/// Histogram of all sampled points, normalized so the grid integral equals N.
inline DensityGrid empirical_density(const std::vector<Configuration>& samples, const GridSpec& g) {
  g.validate();
  DensityGrid out{g, std::vector<double>(static_cast<size_t>(g.nx) * g.ny, 0.0)};
  if (samples.empty()) return out;
  const double N = static_cast<double>(samples.front().size());
  double hits = 0.0;
  for (const auto& c : samples)
    for (cplx p : c) {
      const int i = static_cast<int>(std::floor((p.real() - g.x_min) / g.dx()));
      const int j = static_cast<int>(std::floor((p.imag() - g.y_min) / g.dy()));
      if (i < 0 || j < 0 || i >= g.nx || j >= g.ny) continue;
      out.at(i, j) += 1.0;
      hits += 1.0;
    }
  if (hits > 0.0) {
    const double f = N / (hits * g.dx() * g.dy());
    for (double& v : out.values) v *= f;
  }
  return out;
}

struct ChiSquareResult {
  double chi2 = 0.0;
  int dof = 0;
  std::vector<double> observed, expected;
  /// Passes when chi2 <= dof + 3 sqrt(2 dof).
  bool within_three_sigma() const { return chi2 <= dof + 3.0 * std::sqrt(2.0 * dof); }
};

/// Chi-square of sampled points against the kernel density on an elliptic-polar grid:
/// bins of equal width in r^2 = (x/semi_x)^2 + (y/semi_y)^2 and in angle.
inline ChiSquareResult chi_square_vs_kernel(const std::vector<Configuration>& samples, const FiniteKernel& K,
                                            int nr = 12, int nth = 12, int nodes = 12) {
  const Ellipse& e = K.ellipse();
  const double A = e.semi_x(), B = e.semi_y();
  ChiSquareResult res;
  res.observed.assign(static_cast<size_t>(nr) * nth, 0.0);
  res.expected.assign(static_cast<size_t>(nr) * nth, 0.0);
  auto bin_of = [&](cplx p) {
    const double t = e.r2(p);
    double th = std::atan2(p.imag() / B, p.real() / A);
    if (th < 0.0) th += 2.0 * std::numbers::pi;
    const int i = std::min(nr - 1, static_cast<int>(t * nr));
    const int j = std::min(nth - 1, static_cast<int>(th / (2.0 * std::numbers::pi) * nth));
    return static_cast<size_t>(i) * nth + j;
  };
  for (const auto& c : samples)
    for (cplx p : c) res.observed[bin_of(p)] += 1.0;
  const auto& gl = gauss_legendre(nodes);
  const auto& gj = gauss_jacobi(nodes, K.gas().boundary_exponent(), 0.0);
  const double M = static_cast<double>(samples.size());
  parallel_for(res.expected.size(), [&](size_t b) {
    const int i = static_cast<int>(b / nth), j = static_cast<int>(b % nth);
    const double t0 = static_cast<double>(i) / nr, t1 = static_cast<double>(i + 1) / nr;
    const double th0 = 2.0 * std::numbers::pi * j / nth, th1 = 2.0 * std::numbers::pi * (j + 1) / nth;
    // the outer ring carries the wall factor (1 - t)^p
    const bool outer = (i == nr - 1) && K.gas().boundary_exponent() != 0.0;
    const double p = K.gas().boundary_exponent();
    const auto& rr = outer ? gj : gl;
    double s = 0.0;
    for (size_t u = 0; u < rr.nodes.size(); ++u) {
      const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * rr.nodes[u];
      double wt = 0.5 * (t1 - t0) * rr.weights[u];
      if (outer) wt *= std::pow(0.5 * (t1 - t0), p) / std::pow(1.0 - t, p);
      const double r = std::sqrt(t);
      for (size_t v = 0; v < gl.nodes.size(); ++v) {
        const double th = 0.5 * (th0 + th1) + 0.5 * (th1 - th0) * gl.nodes[v];
        const double wth = 0.5 * (th1 - th0) * gl.weights[v];
        s += wt * wth * K.diagonal(cplx(A * r * std::cos(th), B * r * std::sin(th)));
      }
    }
    res.expected[b] = M * 0.5 * A * B * s;
  });
  int used = 0;
  for (size_t b = 0; b < res.expected.size(); ++b) {
    if (res.expected[b] <= 0.0) continue;
    const double d = res.observed[b] - res.expected[b];
    res.chi2 += d * d / res.expected[b];
    ++used;
  }
  res.dof = used - 1;
  return res;
}

}  // namespace ellgas

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ellgas/geometry.hpp"
#include "ellgas/quadrature.hpp"

using namespace ellgas;

TEST(GaussLegendre, ExactForPolynomials) {
  for (int n : {1, 2, 5, 16, 64}) {
    const auto& r = gauss_legendre(n);
    for (int k = 0; k < 2 * n; ++k) {
      double s = 0.0;
      for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
      EXPECT_NEAR(s, k % 2 ? 0.0 : 2.0 / (k + 1.0), 1e-14) << n << " " << k;
    }
  }
}

TEST(GaussJacobi, ExactForBetaMoments) {
  // int (1-x)^al (1+x)^be (1+x)^k dx = 2^{al+be+k+1} B(al+1, be+k+1)
  for (auto [al, be] : {std::pair{0.0, 0.0}, {-0.5, 0.0}, {1.0, 0.0}, {2.5, -0.5}, {-0.5, -0.5}}) {
    const int n = 12;
    const auto& r = gauss_jacobi(n, al, be);
    for (int k = 0; k < 2 * n; k += 3) {
      double s = 0.0;
      for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(1.0 + r.nodes[i], k);
      const double ex = std::exp((al + be + k + 1) * std::numbers::ln2 + ln_gamma(al + 1) + ln_gamma(be + k + 1) -
                                 ln_gamma(al + be + k + 2));
      EXPECT_NEAR(s / ex, 1.0, 1e-12) << al << " " << be << " " << k;
    }
  }
}

TEST(GaussJacobi, RejectsBadExponents) { EXPECT_THROW(gauss_jacobi(4, -1.0, 0.0), std::domain_error); }

TEST(EllipseCubature, AreaAndWeightMasses) {
  for (double tau : {0.2, 0.6, 0.95}) {
    const Ellipse e(tau);
    const double area = std::numbers::pi * e.semi_x() * e.semi_y();
    EXPECT_NEAR(integrate_ellipse([](cplx) { return 1.0; }, e), area, 1e-12 * area);
    for (double a : {-0.5, 0.0, 1.0, 2.5}) {
      QuadratureSpec qs;
      qs.singularity_exponent = a;
      const Gas g(Family::Gegenbauer, a);
      EXPECT_NEAR(integrate_ellipse([&](cplx z) { return weight(g, e, z); }, e, qs), area / (a + 1.0),
                  1e-11 * area)
          << tau << " " << a;
    }
    // 1/|1 - z^2| and 1/|1 + z| have exact masses 2 pi log v and 2 pi semi_y
    const double mT = integrate_ellipse([&](cplx z) { return weight(Gas(Family::ChebyshevT), e, z); }, e);
    EXPECT_NEAR(mT, 2.0 * std::numbers::pi * e.xi_max(), 1e-12);
    const double mV = integrate_ellipse([&](cplx z) { return weight(Gas(Family::ChebyshevV), e, z); }, e);
    EXPECT_NEAR(mV, 2.0 * std::numbers::pi * e.semi_y(), 1e-12 * mV);
  }
}

TEST(EllipseCubature, SecondMoments) {
  const Ellipse e(0.5);
  const double A = e.semi_x(), B = e.semi_y();
  EXPECT_NEAR(integrate_ellipse([](cplx z) { return z.real() * z.real(); }, e), std::numbers::pi * A * A * A * B / 4.0,
              1e-12);
  EXPECT_NEAR(integrate_ellipse([](cplx z) { return z.imag() * z.imag(); }, e), std::numbers::pi * A * B * B * B / 4.0,
              1e-12);
}

TEST(IntegrateUnit, Polynomial) {
  EXPECT_NEAR(integrate_unit([](double c) { return c * c * c; }, 8), 0.25, 1e-15);
}

TEST(IntegrateHalfLine, DecayingIntegrands) {
  EXPECT_NEAR(integrate_half_line([](double t) { return std::exp(-t); }), 1.0, 1e-13);
  EXPECT_NEAR(integrate_half_line([](double t) { return std::exp(-t) * std::cos(t); }), 0.5, 1e-13);
}

TEST(IntegrateHalfLine, ThrowsWithoutDecay) {
  EXPECT_THROW(integrate_half_line([](double t) { return 1.0 / (1.0 + t); }), std::domain_error);
}

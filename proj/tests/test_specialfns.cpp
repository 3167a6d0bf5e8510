#include <gtest/gtest.h>

#include <cmath>

#include "ellgas/specialfns.hpp"

using namespace ellgas;

// Reference values from mpmath at 40 digits.

TEST(LnGamma, MatchesReference) {
  const struct {
    double x, v;
  } ref[] = {{0.1, 2.252712651734205902},     {0.5, 0.57236494292470008707},  {1.5, -0.12078223763524522235},
             {3.7, 1.4280723266653881292},    {10.25, 13.368023671476046295}, {150.5, 602.51395487058541195},
             {1000.3, 5907.292644785879215}};
  for (const auto& r : ref) EXPECT_NEAR(ln_gamma(r.x), r.v, 1e-14 * std::max(1.0, std::abs(r.v))) << r.x;
}

TEST(BesselJ, MatchesReferenceAcrossBranches) {
  const struct {
    double nu;
    cplx w, v;
  } ref[] = {
      {0.5, {1.0, 0.5}, {0.74566440174859460893, 0.042266904603827557216}},
      {1.5, {3.0, -2.0}, {1.2764946733264981861, 0.56142528882902082662}},
      {2.5, {10.0, 1.0}, {0.30452045566803962234, 0.16976584314035058808}},
      {0.0, {15.9, 0.2}, {-0.1684175721832297054, -0.021734868074083801061}},
      {1.0, {20.0, 3.0}, {0.78728265020734554171, 1.5903221371824245182}},
      {3.5, {35.0, -1.0}, {-0.16853850392740308206, -0.093353468348446404331}},
      {1.5, {0.5, 25.0}, {-1601098364.6087978876, 5277362899.1576332466}},
      {0.5, {100.0, 1.0}, {-0.061937148769437852653, 0.081166142548299643575}},
      {2.0, {-12.0, 7.0}, {-62.426910126381953599, 90.492514120094764957}},
      {0.3, {8.5, 0.0}, {0.15891941506282578109, 0.0}},
  };
  for (const auto& r : ref) {
    const cplx j = bessel_j(r.nu, r.w);
    EXPECT_LT(std::abs(j - r.v), 1e-11 * std::max(1.0, std::abs(r.v))) << r.nu << " " << r.w;
  }
}

TEST(BesselJ, ReducedFormAtOriginIsInverseGamma) {
  for (double nu : {-0.5, 0.0, 0.5, 2.5, 7.0})
    EXPECT_NEAR(bessel_j_reduced(nu, 0.0).real(), std::exp(-ln_gamma(nu + 1.0)), 1e-15);
}

TEST(BesselJ, RecurrenceHoldsOnBothBranches) {
  // J_{nu-1} + J_{nu+1} = (2 nu / w) J_nu
  for (cplx w : {cplx(2.0, 1.0), cplx(14.0, -3.0), cplx(17.0, 0.5), cplx(40.0, 2.0)})
    for (double nu : {0.5, 1.5, 3.0}) {
      const cplx lhs = bessel_j(nu - 1.0, w) + bessel_j(nu + 1.0, w);
      const cplx rhs = 2.0 * nu / w * bessel_j(nu, w);
      EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::max(1.0, std::abs(rhs))) << w << " " << nu;
    }
}

TEST(BesselJ, HalfOrderClosedForm) {
  for (cplx w : {cplx(0.7, 0.2), cplx(5.0, -1.0), cplx(22.0, 1.5)}) {
    const cplx exact = std::sqrt(2.0 / (std::numbers::pi * w)) * std::sin(w);
    EXPECT_LT(std::abs(bessel_j(0.5, w) - exact), 1e-12 * std::max(1.0, std::abs(exact)));
  }
}

TEST(BesselJ, RejectsOrderBelowMinusHalf) { EXPECT_THROW(bessel_j(-0.7, cplx(1.0)), std::domain_error); }

TEST(BesselI, LogMatchesReference) {
  const struct {
    double nu, x, v;
  } ref[] = {{0.5, 0.5, -0.53104008831178197809}, {1.5, 10, 7.8244084071596658726},
             {1.5, 29.9, 27.248115341318751221},  {1.5, 30.1, 27.44501188334053042},
             {0.0, 45, 42.1805396043071362},      {3.0, 100, 96.734508690490960592},
             {2.7, 31, 28.248702422670756542},    {200.5, 500, 456.25082537711695746}};
  for (const auto& r : ref) EXPECT_NEAR(log_bessel_i(r.nu, r.x), r.v, 1e-13 * std::max(1.0, std::abs(r.v))) << r.x;
}

TEST(BesselI, ContinuousAcrossAsymptoticSwitch) {
  for (double nu : {0.5, 1.5, 4.0}) {
    // d/dx log I_nu = I_{nu+1} / I_nu + nu / x
    const double lo = log_bessel_i(nu, 30.0 - 1e-9), hi = log_bessel_i(nu, 30.0 + 1e-9);
    const double slope = std::exp(log_bessel_i(nu + 1.0, 30.0) - log_bessel_i(nu, 30.0)) + nu / 30.0;
    EXPECT_NEAR(hi - lo, 2e-9 * slope, 1e-13) << nu;
  }
}

TEST(BesselI, RecurrenceHolds) {
  // I_{nu-1} - I_{nu+1} = (2 nu / x) I_nu
  for (double x : {0.3, 5.0, 29.0, 33.0, 80.0})
    for (double nu : {1.5, 2.0}) {
      const double lhs = bessel_i(nu - 1.0, x) - bessel_i(nu + 1.0, x);
      const double rhs = 2.0 * nu / x * bessel_i(nu, x);
      EXPECT_NEAR(lhs / rhs, 1.0, 1e-12) << x;
    }
}

TEST(BesselI, ReducedFormNearZero) {
  EXPECT_NEAR(log_bessel_i_reduced(1.5, 0.0), -ln_gamma(2.5), 1e-15);
  EXPECT_NEAR(log_bessel_i_reduced(1.5, 1e-8), -ln_gamma(2.5), 1e-15);
}

TEST(CompensatedSum, RecoversCancellation) {
  CompensatedSum<double> s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  EXPECT_EQ(s.value(), 2.0);
}

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ellgas {

using cplx = std::complex<double>;

/// Neumaier-compensated running sum.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

/// log Gamma(x) for real x > 0.
inline double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("ln_gamma: argument must be positive and finite");
  return std::lgamma(x);
}

namespace detail {

using ldcplx = std::complex<long double>;

// Cancellation budget of the power series: terms of size e^{|w|-|Im w|} relative
// to the result are tolerated while the loss stays below 1e-12.
inline double series_budget() {
  static const double b =
      std::log(1e-12 / static_cast<double>(std::numeric_limits<long double>::epsilon()));
  return b;
}

inline bool j_series_ok(cplx w) {
  return std::abs(w) - std::abs(w.imag()) <= series_budget();
}

// sum_k (-w2/4)^k / (k! Gamma(nu+k+1)) * Gamma(nu+1); *peak receives max|term| / |sum|.
inline ldcplx j_reduced_series_unit(double nu, cplx w2, long double* peak = nullptr) {
  const ldcplx q = -ldcplx(w2.real(), w2.imag()) / 4.0L;
  const long double nul = nu;
  ldcplx term = 1.0L;
  ldcplx sum = 1.0L;
  ldcplx comp = 0.0L;
  long double prev = 1.0L, big = 1.0L;
  for (int k = 1; k < 5000; ++k) {
    term *= q / (static_cast<long double>(k) * (nul + k));
    big = std::max(big, std::abs(term));
    ldcplx t = sum + term;
    // component-wise Neumaier
    long double cr = (std::fabs(sum.real()) >= std::fabs(term.real()))
                         ? (sum.real() - t.real()) + term.real()
                         : (term.real() - t.real()) + sum.real();
    long double ci = (std::fabs(sum.imag()) >= std::fabs(term.imag()))
                         ? (sum.imag() - t.imag()) + term.imag()
                         : (term.imag() - t.imag()) + sum.imag();
    comp += ldcplx(cr, ci);
    sum = t;
    long double at = std::abs(term);
    if (at < prev && at <= 1e-21L * std::abs(sum)) break;
    prev = at;
  }
  const ldcplx total = sum + comp;
  if (peak) *peak = big / std::abs(total);
  return total;
}

// Hankel expansion of J_nu(w), |arg w| < pi. Returns false when the asymptotic
// series does not reach double precision before diverging.
inline bool j_hankel(double nu, cplx w, cplx& out) {
  const double mu = 4.0 * nu * nu;
  cplx p = 1.0, q = 0.0;
  cplx inv = 1.0 / w;
  cplx pw = 1.0;
  double ak = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int k = 1; k < 200; ++k) {
    ak *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k);
    pw *= inv;
    cplx term = ak * pw;
    double at = std::abs(term);
    if (at == 0.0) {
      converged = true;
      break;
    }
    if (at > prev) break;
    prev = at;
    // P gets even k with sign (-1)^{k/2}; Q gets odd k with sign (-1)^{(k-1)/2}
    if (k % 2 == 0)
      p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    else
      q += (((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    if (at < 1e-16 * std::max({1.0, std::abs(p), std::abs(q)})) {
      converged = true;
      break;
    }
  }
  if (!converged) return false;
  const cplx chi = w - (nu / 2.0 + 0.25) * std::numbers::pi;
  out = std::sqrt(2.0 / (std::numbers::pi * w)) * (p * std::cos(chi) - q * std::sin(chi));
  return true;
}

// log of sum_l (x^2/4)^l / (l! Gamma(l+nu+1)), i.e. log[I_nu(x) / (x/2)^nu].
inline double log_i_reduced_series(double nu, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0, logscale = 0.0;
  for (int l = 1; l < 1000000; ++l) {
    term *= q / (static_cast<double>(l) * (nu + l));
    sum += term;
    if (sum > 1e200) {
      term *= 1e-200;
      sum *= 1e-200;
      logscale += 200.0 * std::numbers::ln10;
    }
    if (l > 0.5 * x && term <= 1e-18 * sum) break;
  }
  return logscale + std::log(sum) - ln_gamma(nu + 1.0);
}

// log of the large-x expansion sum_k (-1)^k a_k(nu) / x^k; false if it does not converge.
inline bool log_i_asymptotic(double nu, double x, double& out) {
  const double mu = 4.0 * nu * nu;
  double ak = 1.0, sum = 1.0, xp = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 100; ++k) {
    ak *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k);
    xp /= x;
    double term = ((k % 2) ? -1.0 : 1.0) * ak * xp;
    double at = std::abs(term);
    if (at == 0.0) {
      prev = 0.0;
      break;
    }
    if (at > prev) return false;
    prev = at;
    sum += term;
    if (at < 1e-17 * std::abs(sum)) {
      out = x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(sum);
      return true;
    }
  }
  if (prev >= 1e-16) return false;
  out = x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(sum);
  return true;
}

inline void check_order(double nu, const char* who) {
  if (!(nu >= -0.5) || !std::isfinite(nu))
    throw std::domain_error(std::string(who) + ": order must be >= -1/2");
}

}  // namespace detail

/// J_nu(w) / (w/2)^nu as an entire function of w2 = w^2.
inline cplx bessel_j_reduced(double nu, cplx w2) {
  detail::check_order(nu, "bessel_j_reduced");
  const cplx w = std::sqrt(w2);
  auto series = [&](long double* peak) {
    auto s = detail::j_reduced_series_unit(nu, w2, peak);
    const long double g = std::exp(-static_cast<long double>(ln_gamma(nu + 1.0)));
    return cplx(static_cast<double>(s.real() * g), static_cast<double>(s.imag() * g));
  };
  if (detail::j_series_ok(w)) return series(nullptr);
  cplx j;
  if (detail::j_hankel(nu, w, j)) return j / std::pow(0.5 * w, nu);
  // crossover: accept the series when its measured cancellation is tolerable
  long double peak = 0.0L;
  const cplx r = series(&peak);
  if (peak * std::numeric_limits<long double>::epsilon() < 1e-10L) return r;
  throw std::domain_error("bessel_j: argument outside the supported domain");
}

/// Bessel function of the first kind J_nu(w), nu >= -1/2, principal branch.
inline cplx bessel_j(double nu, cplx w) {
  detail::check_order(nu, "bessel_j");
  if (w == cplx(0.0)) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    throw std::domain_error("bessel_j: J_{-1/2} is singular at the origin");
  }
  cplx j;
  if (!detail::j_series_ok(w) && detail::j_hankel(nu, w, j)) return j;
  return std::pow(0.5 * w, nu) * bessel_j_reduced(nu, w * w);
}

/// log[I_nu(x) / (x/2)^nu] for x >= 0; equals -lnGamma(nu+1) at x = 0.
inline double log_bessel_i_reduced(double nu, double x) {
  detail::check_order(nu, "log_bessel_i_reduced");
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::domain_error("bessel_i: argument must be finite and non-negative");
  if (x >= 30.0) {
    double li;
    if (detail::log_i_asymptotic(nu, x, li)) return li - nu * std::log(0.5 * x);
  }
  return detail::log_i_reduced_series(nu, x);
}

/// log I_nu(x) for x > 0.
inline double log_bessel_i(double nu, double x) {
  detail::check_order(nu, "log_bessel_i");
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("log_bessel_i: argument must be positive");
  return log_bessel_i_reduced(nu, x) + nu * std::log(0.5 * x);
}

/// Modified Bessel function I_nu(x), real x >= 0.
inline double bessel_i(double nu, double x) {
  detail::check_order(nu, "bessel_i");
  if (x == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    throw std::domain_error("bessel_i: I_{-1/2} is singular at the origin");
  }
  return std::exp(log_bessel_i(nu, x));
}

}  // namespace ellgas

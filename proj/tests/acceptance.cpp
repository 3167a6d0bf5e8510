// Acceptance checks, one pass/fail line per criterion. Tolerances are pinned below.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ellgas/correlations.hpp"
#include "ellgas/kernels_finite.hpp"
#include "ellgas/kernels_limit.hpp"
#include "ellgas/sampler.hpp"
#include "ellgas/studies.hpp"

using namespace ellgas;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [x]");
  }
};

std::string fmt(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

const Family kAllFamilies[] = {Family::Gegenbauer, Family::JacobiPlus, Family::JacobiMinus, Family::ChebyshevT,
                               Family::ChebyshevV};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1: orthogonality of every family
void orthogonality(Outcome& o) {
  constexpr double tol = 1e-7, budget = 60.0;
  const auto t0 = std::chrono::steady_clock::now();
  double off = 0.0, diag = 0.0;
  int cases = 0;
  for (Family f : kAllFamilies)
    for (double a : {-0.5, 0.0, 1.0, 2.5}) {
      for (double tau : {0.3, 0.7}) {
        const Gas g(f, a);
        const GramReport r = orthogonality_report(g, Ellipse(tau), 8);
        off = std::max(off, r.max_off_diagonal);
        diag = std::max(diag, r.max_diagonal_error);
        ++cases;
      }
      if (!Gas(f).has_exponent()) break;
    }
  const double t = seconds_since(t0);
  o.check(off < tol, std::to_string(cases) + " cases, max off-diagonal " + fmt(off) + " < " + fmt(tol));
  o.check(diag < tol, "max |diag-1| " + fmt(diag) + " < " + fmt(tol));
  o.check(t < budget, "runtime " + fmt(t) + " s < " + fmt(budget) + " s");
}

// 2: trace and reproducing property
void trace_projection(Outcome& o) {
  constexpr double tol = 1e-6, budget = 120.0;
  const auto t0 = std::chrono::steady_clock::now();
  double tr_err = 0.0, rep_err = 0.0;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (Family f : kAllFamilies)
    for (auto [a, tau] : {std::pair{0.5, 0.3}, {2.0, 0.7}})
      for (int N : {3, 8}) {
        const Gas g(f, a);
        const Ellipse e(tau);
        FiniteKernel K(g, e, N);
        QuadratureSpec qs;
        qs.singularity_exponent = g.boundary_exponent();
        const auto pts = ellipse_cubature(e, qs);
        double tr = 0.0;
        for (const auto& p : pts) tr += p.weight * K.diagonal(p.z);
        tr_err = std::max(tr_err, std::abs(tr - N));
        for (int k = 0; k < 2; ++k) {
          auto pick = [&] {
            const double r = 0.9 * std::sqrt(u(rng)), t = 2 * kPi * u(rng);
            return cplx(r * e.semi_x() * std::cos(t), r * e.semi_y() * std::sin(t));
          };
          const cplx z1 = pick(), z2 = pick();
          cplx rep = 0.0;
          for (const auto& p : pts) rep += p.weight * K(z1, p.z) * K(p.z, z2);
          rep_err = std::max(rep_err, std::abs(rep - K(z1, z2)));
        }
      }
  const double t = seconds_since(t0);
  o.check(tr_err < tol, "max |trace - N| " + fmt(tr_err) + " < " + fmt(tol));
  o.check(rep_err < tol, "max reproducing error " + fmt(rep_err) + " < " + fmt(tol));
  o.check(t < budget, "runtime " + fmt(t) + " s < " + fmt(budget) + " s");
}

void monotone_schedule(Outcome& o, const std::vector<double>& sups, double tol, const std::string& label) {
  bool mono = true;
  std::string seq;
  for (size_t i = 0; i < sups.size(); ++i) {
    seq += (i ? " > " : "") + fmt(sups[i]);
    if (i && !(sups[i] < sups[i - 1])) mono = false;
  }
  o.check(mono, label + " sup over N=100,200,400: " + seq + " decreasing");
  o.check(sups.back() < tol, label + " at N=400 " + fmt(sups.back()) + " < " + fmt(tol));
}

// 3: bulk weak limit at the origin
void bulk_weak_limit(Outcome& o) {
  std::vector<double> sups;
  for (int N : {100, 200, 400}) sups.push_back(bulk_weak_discrepancy(1.0, 1.0, N));
  monotone_schedule(o, sups, 2e-3, "bulk");
}

// 4: edge weak limit at +1 and universality across the two Jacobi families
void edge_weak_limit(Outcome& o) {
  std::vector<double> sups;
  for (int N : {100, 200, 400}) sups.push_back(edge_weak_discrepancy(Gas(Family::Gegenbauer, 1.0), 1.0, N));
  monotone_schedule(o, sups, 2e-3, "gegenbauer edge");
  const int N = 400;
  const Ellipse e(weak_tau(1.0, N));
  FiniteKernel P(Gas(Family::JacobiPlus, 1.0), e, N), M(Gas(Family::JacobiMinus, 1.0), e, N);
  double d = 0.0;
  for (const auto& [Z1, Z2] : edge_test_pairs())
    d = std::max(d, std::abs(scaled_edge(P, 1.0, Z1, Z2) - scaled_edge(M, 1.0, Z1, Z2)));
  o.check(d < 3e-3, "jacobi-plus vs jacobi-minus at +1 " + fmt(d) + " < 3e-3");
}

// 5: left-focus kernels
void left_focus(Outcome& o) {
  constexpr double tol = 2e-3;
  const int N = 400;
  const double a = 1.0, s = 1.0;
  const Ellipse e(weak_tau(s, N));
  FiniteKernel P(Gas(Family::JacobiPlus, a), e, N), M(Gas(Family::JacobiMinus, a), e, N), T(Gas(Family::ChebyshevT), e, N);
  double dp = 0.0, dm = 0.0, dt = 0.0;
  for (const auto& [Z1, Z2] : edge_test_pairs()) {
    dp = std::max(dp, std::abs(scaled_edge(P, -1.0, Z1, Z2) - edge_weak_minus_sine(a, s, Z1, Z2)));
    dm = std::max(dm, std::abs(scaled_edge(M, -1.0, Z1, Z2) - edge_weak_minus_cosine(a, s, Z1, Z2)));
    dt = std::max(dt, std::abs(scaled_edge(T, -1.0, Z1, Z2) - edge_weak_minus_cosine(0.0, s, Z1, Z2)));
  }
  o.check(dp < tol, "jacobi-plus at -1 vs sine form " + fmt(dp) + " < " + fmt(tol));
  o.check(dm < tol, "jacobi-minus at -1 vs cosine form " + fmt(dm) + " < " + fmt(tol));
  o.check(dt < tol, "chebyshev-t at -1 vs cosine form a=0 " + fmt(dt) + " < " + fmt(tol));
}

// 6: Hermitian reductions
void hermitian_reductions(Outcome& o) {
  constexpr double tol = 1e-3;
  const double s = 1e-3;
  double ds = 0.0, db = 0.0;
  for (double a : {0.0, 1.0, 2.5}) {
    const double norm = s * kPi / (2.0 * (a + 1.0) * edge_constant_B(a));
    for (double d : {0.0, 0.5, 1.0, 2.0, 3.0})
      ds = std::max(ds, std::abs(norm * bulk_weak(a, s, 0.3, 0.3 - d) - sine_kernel(0.3, 0.3 - d)));
    for (auto [X1, X2] : {std::pair{0.7, 0.7}, {0.7, 2.0}, {1.0, 4.0}, {3.0, 5.0}, {0.2, 8.0}})
      db = std::max(db, std::abs(norm * edge_weak(a, s, X1, X2) - bessel_kernel(a, X1, X2)));
  }
  o.check(ds < tol, "bulk vs sine " + fmt(ds) + " < " + fmt(tol));
  o.check(db < tol, "edge vs bessel " + fmt(db) + " < " + fmt(tol));
}

// 7: strong limits
void strong_limits(Outcome& o) {
  const double a = 1.0;
  const double db = bulk_strong_discrepancy(a, 40.0);
  o.check(db < 1e-3, "s^2 bulk_weak(s=40) vs bulk_strong " + fmt(db) + " < 1e-3");
  const double s = 50.0;
  auto map = [s](cplx Z) { return cplx(0.5 * s * (Z.real() - 0.5 * s), 0.5 * s * Z.imag()); };
  double de = 0.0, dt = 0.0;
  for (const auto& [Z1, Z2] : std::vector<PointPair>{
           {1.0, 1.0}, {{0.5, 0.3}, {1.5, -0.2}}, {{2.0, 0.5}, {0.3, 1.0}}, {{0.1, 0.0}, {0.1, 0.0}}, {{3.0, -1.0}, {1.0, 2.0}}}) {
    de = std::max(de, std::abs(0.25 * s * s * edge_weak(a, s, map(Z1), map(Z2)) - edge_strong(a, Z1, Z2)));
    dt = std::max(dt, std::abs(edge_strong(a, Z1, Z2) - truncated_edge_limit(a, Z1, Z2)));
  }
  o.check(de < 1e-3, "(s^2/4) edge_weak(s=50) vs edge_strong " + fmt(de) + " < 1e-3");
  o.check(dt < 1e-10, "edge_strong vs truncated-unitary integral " + fmt(dt) + " < 1e-10");
}

// 8: Ginibre chain
void ginibre_chain(Outcome& o) {
  const double A = 200.0;
  auto K = [A](cplx x, cplx y) { return bulk_strong(A, x / std::sqrt(A), y / std::sqrt(A)) / A; };
  double d = 0.0;
  for (const auto& [u1, u2] : std::vector<PointPair>{
           {0.0, {0.3, 0.2}}, {{0.2, -0.1}, {-0.4, 0.3}}, {{0.5, 0.5}, {0.5, 0.1}}, {{1.0, 0.0}, {0.0, 0.0}}, {{-0.6, 0.4}, {0.2, -0.5}}})
    d = std::max(d, std::abs(K(u1, u2) * K(u2, u1) - ginibre_kernel(u1, u2) * ginibre_kernel(u2, u1)));
  o.check(d < 1e-2, "gauge-invariant product at a=200 " + fmt(d) + " < 1e-2");
  bool exact = true;
  for (cplx u : {cplx(0.0), cplx(0.3, -0.7), cplx(2.0, 1.0)}) exact = exact && ginibre_kernel(u, u).real() == 2.0 / kPi;
  o.check(exact, "ginibre diagonal == 2/pi exactly");
}

// 9: global kernels
void global_kernels(Outcome& o) {
  {
    const double tau = 0.5, st = std::sqrt(2.0 * tau);
    FiniteKernel K(Gas(Family::Gegenbauer, 0.0), Ellipse(tau), 2000);
    double d = 0.0;
    for (const auto& [z1, z2] : std::vector<PointPair>{
             {0.0, 0.0}, {{0.3, 0.1}, {0.3, 0.1}}, {{0.5, -0.2}, {-0.2, 0.3}}, {{0.9, 0.0}, {0.8, 0.1}}, {{-0.6, 0.3}, {0.1, -0.4}}})
      d = std::max(d, std::abs(K(z1 / st, z2 / st) / (2.0 * tau) - global_kernel(GlobalKind::U, tau, z1, z2)));
    o.check(d < 1e-6, "chebyshev-u N=2000 vs global series " + fmt(d) + " < 1e-6");
  }
  const double tau = 1e-3;
  const std::vector<PointPair> pts{{{0.1, 0.05}, {0.1, 0.05}},
                                   {{0.3, 0.1}, {0.3, 0.1}},
                                   {{0.5, -0.2}, {-0.2, 0.3}},
                                   {{0.6, 0.3}, {0.1, -0.4}},
                                   {{0.4, 0.2}, {0.1, -0.3}}};
  for (auto [k, name] : {std::pair{GlobalKind::U, "U"}, {GlobalKind::T, "T"}, {GlobalKind::V, "V"}}) {
    double d = 0.0;
    for (const auto& [z1, z2] : pts)
      d = std::max(d, std::abs(global_kernel(k, tau, z1, z2) - global_rotational_limit(k, z1, z2)));
    o.check(d < 1e-4, std::string("global ") + name + " at tau=1e-3 vs rotational limit " + fmt(d) + " < 1e-4");
  }
}

// 10: rotational finite-N limit
void rotational_finite(Outcome& o) {
  const double tau = 1e-6, st = std::sqrt(2.0 * tau);
  double d = 0.0;
  for (double a : {0.0, 1.0})
    for (int N : {3, 8}) {
      FiniteKernel K(Gas(Family::Gegenbauer, a), Ellipse(tau), N);
      for (const auto& [z1, z2] : std::vector<PointPair>{
               {0.0, 0.0}, {{0.3, 0.2}, {-0.1, 0.5}}, {{0.7, 0.0}, {0.7, 0.0}}, {{-0.4, 0.4}, {0.2, -0.6}}, {{0.1, -0.8}, {0.5, 0.5}}})
        d = std::max(d, std::abs(K(z1 / st, z2 / st) / (2.0 * tau) - kernel_truncated(a, N, z1, z2)));
    }
  o.check(d < 1e-4, "tau=1e-6 vs truncated-unitary kernel " + fmt(d) + " < 1e-4");
}

// 11: Metropolis sampler against the kernel density
void sampler_check(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const Gas g(Family::Gegenbauer, 1.0);
  const Ellipse e(0.5);
  const int N = 8;
  ChainSettings cs;
  cs.steps = 1000000;
  cs.seed = 20240611;
  const ChainResult r = run_chain(g, e, N, cs);
  const ChiSquareResult chi = chi_square_vs_kernel(r.samples, FiniteKernel(g, e, N));
  const double lim = chi.dof + 3.0 * std::sqrt(2.0 * chi.dof);
  const double t = seconds_since(t0);
  o.check(chi.within_three_sigma(), "chi2 " + fmt(chi.chi2) + " <= " + fmt(lim) + " (dof " + std::to_string(chi.dof) +
                                        ", " + std::to_string(r.samples.size()) + " samples, acceptance " +
                                        fmt(r.acceptance_rate) + ")");
  o.check(t < 300.0, "runtime " + fmt(t) + " s < 300 s");
}

// 12: figure phenomenology
void figures(Outcome& o) {
  {
    FiniteKernel K(Gas(Family::Gegenbauer, 1.0), Ellipse(0.005), 10);
    GridSpec g{-1.1, 1.1, -1.1, 1.1, 200, 200};
    const DensityGrid d = density_grid(K, g, Rescale::Fig1);
    double tot = 0.0, outer = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        tot += d.at(i, j);
        if (std::hypot(g.x(i), g.y(j)) > 0.8) outer += d.at(i, j);
      }
    o.check(outer / tot >= 0.8, "fig1 mass fraction at radius > 0.8: " + fmt(outer / tot) + " >= 0.8");
  }
  {
    const int N = 30;
    FiniteKernel K(Gas(Family::Gegenbauer, 1.0), Ellipse(weak_tau(1.0, N)), N);
    const double r0 = rescaled_density(K, Rescale::Fig2, 0.0);
    const double rp = rescaled_density(K, Rescale::Fig2, 0.95), rm = rescaled_density(K, Rescale::Fig2, -0.95);
    o.check(rp > r0 && rm > r0, "fig2 density at x=+-0.95 " + fmt(std::min(rp, rm)) + " > origin " + fmt(r0));
  }
  {
    FiniteKernel K(Gas(Family::Gegenbauer, 100.0), Ellipse(0.5), 10);
    GridSpec g{-2.5, 2.5, -1.5, 1.5, 100, 60};
    const DensityGrid d = density_grid(K, g, Rescale::Fig3);
    double mx = 0.0;
    for (double v : d.values) mx = std::max(mx, v);
    const double r0 = rescaled_density(K, Rescale::Fig3, 0.0);
    o.check(r0 > 0.1 * mx, "fig3 origin density " + fmt(r0) + " > 0.1 * max " + fmt(mx));
  }
}

struct Criterion {
  int id;
  const char* name;
  void (*run)(Outcome&);
};

const Criterion kCriteria[] = {
    {1, "orthogonality audit", orthogonality},
    {2, "trace and projection", trace_projection},
    {3, "bulk weak limit", bulk_weak_limit},
    {4, "edge weak limit", edge_weak_limit},
    {5, "left-focus kernels", left_focus},
    {6, "hermitian reductions", hermitian_reductions},
    {7, "strong limits", strong_limits},
    {8, "ginibre chain", ginibre_chain},
    {9, "global kernels", global_kernels},
    {10, "rotational finite-N limit", rotational_finite},
    {11, "sampler cross-check", sampler_check},
    {12, "figure phenomenology", figures},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion k]\n", argv[0]);
      return 2;
    }
  }
  int failed = 0, ran = 0;
  for (const auto& c : kCriteria) {
    if (only && c.id != only) continue;
    ++ran;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %02d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failed ? 1 : 0;
}

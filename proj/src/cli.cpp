#include "ellgas/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellgas/correlations.hpp"
#include "ellgas/io.hpp"
#include "ellgas/kernels_finite.hpp"
#include "ellgas/kernels_limit.hpp"
#include "ellgas/sampler.hpp"
#include "ellgas/studies.hpp"

namespace ellgas::cli {
namespace {

using nlohmann::json;

// Bad flag values found after parsing; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string family = "gegenbauer";
  double a = 0.0;
  double tau = 0.5;
  int N = 10;
  std::string format = "csv";
  std::string output;
};

struct DensityArgs {
  std::optional<double> s;
  std::string rescale = "none";
  int nx = 101, ny = 101;
  std::optional<double> x_min, x_max, y_min, y_max;
};

struct KernelArgs {
  std::string kind = "finite";
  std::optional<double> s;
  std::vector<std::string> pairs;
};

struct ConvergeArgs {
  std::string target = "bulk-weak";
  double s = 1.0;
  std::vector<int> Ns{100, 200, 400};
  std::vector<double> s_values{10.0, 20.0, 40.0};
};

struct OrthoArgs {
  int max_degree = 8;
  int radial_nodes = 96;
  int angular_nodes = 192;
};

struct SampleArgs {
  long steps = 1000000;
  long burn_in = 100000;
  long thin = 400;
  double sigma = 0.0;
  std::uint64_t seed = 1;
  bool chi2 = true;
};

Gas make_gas(const Common& c) {
  try {
    return Gas(parse_family(c.family), c.a);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

double effective_tau(const Common& c, std::optional<double> s) {
  if (s) {
    if (!(*s > 0.0)) throw UsageError("--s must be positive");
    return weak_tau(*s, c.N);
  }
  return c.tau;
}

void check_common(const Common& c) {
  if (c.N < 1) throw UsageError("--N must be at least 1");
  if (!(c.tau > 0.0 && c.tau < 1.0)) throw UsageError("--tau must lie in (0, 1)");
  if (c.format != "csv" && c.format != "json") throw UsageError("--format must be csv or json");
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

cplx parse_point(std::string_view x, std::string_view y) { return {parse_double(x), parse_double(y)}; }

PointPair parse_pair(const std::string& s) {
  std::vector<std::string_view> f;
  size_t start = 0;
  for (;;) {
    const size_t c = s.find(',', start);
    f.emplace_back(std::string_view(s).substr(start, c == std::string::npos ? std::string::npos : c - start));
    if (c == std::string::npos) break;
    start = c + 1;
  }
  if (f.size() != 4) throw UsageError("--pair expects x1,y1,x2,y2 but got '" + s + "'");
  try {
    return {parse_point(f[0], f[1]), parse_point(f[2], f[3])};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

GridSpec default_grid(const FiniteKernel& K, Rescale r) {
  const Ellipse& e = K.ellipse();
  const double m = 1.05;
  double cx = 1.0, cy = 1.0;
  switch (r) {
    case Rescale::None: break;
    case Rescale::Fig1: cx = cy = std::sqrt(2.0 * e.tau()); break;
    case Rescale::Fig2: cy = K.N(); break;
    case Rescale::Fig3: cx = cy = std::sqrt(2.0 * e.tau() * K.gas().a / K.N()); break;
  }
  GridSpec g;
  g.x_max = m * cx * e.semi_x();
  g.x_min = -g.x_max;
  g.y_max = m * cy * e.semi_y();
  g.y_min = -g.y_max;
  return g;
}

void cmd_density(const Common& c, const DensityArgs& d, std::ostream& os) {
  check_common(c);
  const Gas gas = make_gas(c);
  Rescale r;
  try {
    r = parse_rescale(d.rescale);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  require(d.nx >= 1 && d.ny >= 1, "--nx and --ny must be at least 1");
  if (r == Rescale::Fig3) require(gas.has_exponent() && gas.a > 0.0, "--rescale fig3 needs a family with a > 0");
  FiniteKernel K(gas, Ellipse(effective_tau(c, d.s)), c.N);
  GridSpec g = default_grid(K, r);
  g.nx = d.nx, g.ny = d.ny;
  if (d.x_min) g.x_min = *d.x_min;
  if (d.x_max) g.x_max = *d.x_max;
  if (d.y_min) g.y_min = *d.y_min;
  if (d.y_max) g.y_max = *d.y_max;
  require(g.x_max > g.x_min && g.y_max > g.y_min, "grid range is empty");
  const DensityGrid grid = density_grid(K, g, r);
  if (c.format == "csv")
    write_grid_csv(os, grid);
  else
    os << grid_to_json(grid).dump() << '\n';
}

using PairEval = std::function<cplx(cplx, cplx)>;

PairEval kernel_evaluator(const Common& c, const KernelArgs& k) {
  const std::string& kind = k.kind;
  const double a = c.a;
  auto need_s = [&]() {
    require(k.s.has_value() && *k.s > 0.0, "--kind " + kind + " needs --s > 0");
    return *k.s;
  };
  if (kind == "finite") {
    auto K = std::make_shared<FiniteKernel>(make_gas(c), Ellipse(effective_tau(c, k.s)), c.N);
    return [K](cplx z1, cplx z2) { return (*K)(z1, z2); };
  }
  if (kind == "bulk-weak") {
    const double s = need_s();
    return [a, s](cplx z1, cplx z2) { return bulk_weak(a, s, z1, z2); };
  }
  if (kind == "edge-weak") {
    const double s = need_s();
    return [a, s](cplx z1, cplx z2) { return edge_weak(a, s, z1, z2); };
  }
  if (kind == "edge-minus-sine") {
    const double s = need_s();
    return [a, s](cplx z1, cplx z2) { return edge_weak_minus_sine(a, s, z1, z2); };
  }
  if (kind == "edge-minus-cosine") {
    const double s = need_s();
    return [a, s](cplx z1, cplx z2) { return edge_weak_minus_cosine(a, s, z1, z2); };
  }
  if (kind == "bulk-strong") return [a](cplx z1, cplx z2) { return bulk_strong(a, z1, z2); };
  if (kind == "edge-strong") return [a](cplx z1, cplx z2) { return edge_strong(a, z1, z2); };
  if (kind == "ginibre") return [](cplx u1, cplx u2) { return ginibre_kernel(u1, u2); };
  if (kind == "sine" || kind == "bessel") {
    return [a, kind](cplx z1, cplx z2) -> cplx {
      if (z1.imag() != 0.0 || z2.imag() != 0.0) throw std::domain_error(kind + ": points must be real");
      return kind == "sine" ? sine_kernel(z1.real(), z2.real()) : bessel_kernel(a, z1.real(), z2.real());
    };
  }
  if (kind == "truncated") {
    const int N = c.N;
    return [a, N](cplx z1, cplx z2) { return kernel_truncated(a, N, z1, z2); };
  }
  if (kind == "truncated-limit") return [a](cplx z1, cplx z2) { return kernel_truncated_limit(a, z1, z2); };
  if (kind == "elliptic-ginibre") {
    const double tau = c.tau;
    const int N = c.N;
    return [tau, N](cplx z1, cplx z2) { return kernel_elliptic_ginibre(tau, N, z1, z2); };
  }
  static const std::map<std::string, GlobalKind> global{
      {"global-u", GlobalKind::U}, {"global-t", GlobalKind::T}, {"global-v", GlobalKind::V}};
  if (auto it = global.find(kind); it != global.end()) {
    const GlobalKind g = it->second;
    const double tau = c.tau;
    return [g, tau](cplx z1, cplx z2) { return global_kernel(g, tau, z1, z2); };
  }
  static const std::map<std::string, GlobalKind> rot{
      {"rotational-u", GlobalKind::U}, {"rotational-t", GlobalKind::T}, {"rotational-v", GlobalKind::V}};
  if (auto it = rot.find(kind); it != rot.end()) {
    const GlobalKind g = it->second;
    return [g](cplx z1, cplx z2) { return global_rotational_limit(g, z1, z2); };
  }
  throw UsageError("unknown kernel kind: " + kind);
}

void cmd_kernel(const Common& c, const KernelArgs& k, std::ostream& os) {
  check_common(c);
  require(!k.pairs.empty(), "kernel needs at least one --pair");
  std::vector<PointPair> pairs;
  for (const auto& p : k.pairs) pairs.push_back(parse_pair(p));
  PairEval f;
  try {
    f = kernel_evaluator(c, k);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  std::vector<cplx> vals;
  std::string violations;
  for (size_t i = 0; i < pairs.size(); ++i) {
    try {
      vals.push_back(f(pairs[i].first, pairs[i].second));
    } catch (const std::domain_error& e) {
      violations += "\n  pair " + std::to_string(i + 1) + " (" + k.pairs[i] + "): " + e.what();
    }
  }
  if (!violations.empty()) throw UsageError("inadmissible points:" + violations);
  if (c.format == "csv") {
    os << "x1,y1,x2,y2,re,im\n";
    for (size_t i = 0; i < pairs.size(); ++i) {
      const auto& [z1, z2] = pairs[i];
      os << format_double(z1.real()) << ',' << format_double(z1.imag()) << ',' << format_double(z2.real()) << ','
         << format_double(z2.imag()) << ',' << format_double(vals[i].real()) << ',' << format_double(vals[i].imag())
         << '\n';
    }
  } else {
    json j{{"kind", k.kind}, {"values", json::array()}};
    for (size_t i = 0; i < pairs.size(); ++i) {
      const auto& [z1, z2] = pairs[i];
      j["values"].push_back({{"z1", {z1.real(), z1.imag()}},
                             {"z2", {z2.real(), z2.imag()}},
                             {"re", vals[i].real()},
                             {"im", vals[i].imag()}});
    }
    os << j.dump() << '\n';
  }
}

void cmd_converge(const Common& c, const ConvergeArgs& v, std::ostream& os, std::ostream& err) {
  require(c.format == "csv" || c.format == "json", "--format must be csv or json");
  require(c.a > -1.0, "--a must exceed -1");
  std::vector<double> xs, sups;
  std::string xname;
  if (v.target == "bulk-weak" || v.target == "edge-weak") {
    require(v.s > 0.0, "--s must be positive");
    require(v.Ns.size() >= 2, "--Ns needs at least two values");
    for (int n : v.Ns) require(n >= 1, "--Ns values must be at least 1");
    const Gas gas = make_gas(c);
    require(v.target == "edge-weak" || gas.family == Family::Gegenbauer, "bulk-weak is defined for the gegenbauer family");
    require(gas.has_exponent(), "edge-weak at +1 needs a family with exponent a");
    xname = "N";
    for (int n : v.Ns) {
      xs.push_back(n);
      sups.push_back(v.target == "bulk-weak" ? bulk_weak_discrepancy(c.a, v.s, n) : edge_weak_discrepancy(gas, v.s, n));
    }
  } else if (v.target == "bulk-strong") {
    require(v.s_values.size() >= 2, "--s-values needs at least two values");
    for (double s : v.s_values) require(s > 0.0, "--s-values must be positive");
    xname = "s";
    for (double s : v.s_values) {
      xs.push_back(s);
      sups.push_back(bulk_strong_discrepancy(c.a, s));
    }
  } else {
    throw UsageError("unknown --target: " + v.target);
  }
  bool monotone = true;
  for (size_t i = 1; i < sups.size(); ++i) monotone = monotone && sups[i] < sups[i - 1];
  double slope = std::nan("");
  try {
    slope = fit_power_law(xs, sups);
  } catch (const std::domain_error&) {
  }
  if (c.format == "csv") {
    os << xname << ",sup\n";
    for (size_t i = 0; i < xs.size(); ++i) os << format_double(xs[i]) << ',' << format_double(sups[i]) << '\n';
    err << "decay exponent " << -slope << (monotone ? "" : " (not monotone)") << '\n';
  } else {
    json j{{"target", v.target}, {"rows", json::array()}, {"monotone", monotone}, {"decay_exponent", -slope}};
    for (size_t i = 0; i < xs.size(); ++i) j["rows"].push_back({{xname, xs[i]}, {"sup", sups[i]}});
    os << j.dump() << '\n';
  }
}

void cmd_orthocheck(const Common& c, const OrthoArgs& o, std::ostream& os, std::ostream& err) {
  check_common(c);
  require(o.max_degree >= 0, "--max-degree must be non-negative");
  require(o.radial_nodes >= 1 && o.angular_nodes >= 1, "node counts must be positive");
  QuadratureSpec qs;
  qs.radial_nodes = o.radial_nodes;
  qs.angular_nodes = o.angular_nodes;
  const GramReport r = orthogonality_report(make_gas(c), Ellipse(c.tau), o.max_degree, qs);
  const auto D = r.normalized.rows();
  if (c.format == "csv") {
    os << "m,n,re,im\n";
    for (Eigen::Index m = 0; m < D; ++m)
      for (Eigen::Index n = 0; n < D; ++n)
        os << m << ',' << n << ',' << format_double(r.normalized(m, n).real()) << ','
           << format_double(r.normalized(m, n).imag()) << '\n';
    err << "max off-diagonal " << r.max_off_diagonal << ", max |diagonal - 1| " << r.max_diagonal_error << '\n';
  } else {
    json m = json::array();
    for (Eigen::Index i = 0; i < D; ++i) {
      json row = json::array();
      for (Eigen::Index n = 0; n < D; ++n) row.push_back({r.normalized(i, n).real(), r.normalized(i, n).imag()});
      m.push_back(std::move(row));
    }
    json j{{"family", c.family},
           {"a", c.a},
           {"tau", c.tau},
           {"max_degree", o.max_degree},
           {"max_off_diagonal", r.max_off_diagonal},
           {"max_diagonal_error", r.max_diagonal_error},
           {"gram", std::move(m)}};
    os << j.dump() << '\n';
  }
}

void cmd_sample(const Common& c, const SampleArgs& s, std::ostream& os, std::ostream& err) {
  check_common(c);
  require(s.steps >= 1 && s.burn_in >= 0 && s.burn_in < s.steps, "need 0 <= --burn-in < --steps");
  require(s.thin >= 1, "--thin must be at least 1");
  const Gas gas = make_gas(c);
  const Ellipse e(c.tau);
  ChainSettings cs;
  cs.steps = s.steps;
  cs.burn_in = s.burn_in;
  cs.thin = s.thin;
  cs.sigma = s.sigma;
  cs.seed = s.seed;
  const ChainResult res = run_chain(gas, e, c.N, cs);
  for (size_t k = 0; k < res.samples.size(); ++k) {
    json pts = json::array();
    for (cplx z : res.samples[k]) pts.push_back({z.real(), z.imag()});
    os << json{{"index", k}, {"points", std::move(pts)}}.dump() << '\n';
  }
  json summary{{"samples", res.samples.size()},
               {"acceptance_rate", res.acceptance_rate},
               {"longest_rejection_run", res.longest_rejection_run},
               {"stuck", res.stuck},
               {"prng", "mt19937_64"},
               {"seed", s.seed}};
  if (res.stuck) err << "warning: chain rejected " << res.longest_rejection_run << " proposals in a row\n";
  if (s.chi2 && !res.samples.empty()) {
    const ChiSquareResult chi = chi_square_vs_kernel(res.samples, FiniteKernel(gas, e, c.N));
    summary["chi2"] = chi.chi2;
    summary["dof"] = chi.dof;
    summary["chi2_within_3_sigma"] = chi.within_three_sigma();
  }
  os << json{{"summary", std::move(summary)}}.dump() << '\n';
}

void add_common(CLI::App* sc, Common& c, bool with_n = true) {
  sc->add_option("--family", c.family, "gegenbauer, jacobi-plus, jacobi-minus, chebyshev-t, chebyshev-v");
  sc->add_option("--a", c.a, "Weight exponent a > -1");
  sc->add_option("--tau", c.tau, "Non-Hermiticity parameter in (0, 1)");
  if (with_n) sc->add_option("--N", c.N, "Number of particles");
  sc->add_option("--format", c.format, "csv or json");
  sc->add_option("--output,-o", c.output, "Output file (default stdout)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Planar Coulomb gas in an ellipse with a hard wall"};
  app.require_subcommand(1);
  Common c;
  DensityArgs d;
  KernelArgs k;
  ConvergeArgs v;
  OrthoArgs o;
  SampleArgs s;

  auto* density = app.add_subcommand("density", "One-point density on a grid");
  add_common(density, c);
  density->add_option("--s", d.s, "Weak non-Hermiticity parameter; overrides --tau");
  density->add_option("--rescale", d.rescale, "none, fig1, fig2 or fig3");
  density->add_option("--nx", d.nx);
  density->add_option("--ny", d.ny);
  density->add_option("--x-min", d.x_min);
  density->add_option("--x-max", d.x_max);
  density->add_option("--y-min", d.y_min);
  density->add_option("--y-max", d.y_max);

  auto* kernel = app.add_subcommand("kernel", "Evaluate a finite or limiting kernel at point pairs");
  add_common(kernel, c);
  kernel->add_option("--kind", k.kind,
                     "finite, bulk-weak, edge-weak, edge-minus-sine, edge-minus-cosine, bulk-strong, edge-strong, "
                     "ginibre, sine, bessel, truncated, truncated-limit, elliptic-ginibre, global-{u,t,v}, "
                     "rotational-{u,t,v}");
  kernel->add_option("--s", k.s);
  kernel->add_option("--pair", k.pairs, "x1,y1,x2,y2 (repeatable)")->allow_extra_args(false);

  auto* converge = app.add_subcommand("converge", "Sup discrepancy against a limiting kernel");
  add_common(converge, c, false);
  converge->add_option("--target", v.target, "bulk-weak, edge-weak or bulk-strong");
  converge->add_option("--s", v.s);
  converge->add_option("--Ns", v.Ns, "N schedule, comma separated")->delimiter(',');
  converge->add_option("--s-values", v.s_values, "s schedule for bulk-strong")->delimiter(',');

  auto* ortho = app.add_subcommand("orthocheck", "Quadrature Gram matrix of the orthogonal basis");
  add_common(ortho, c, false);
  ortho->add_option("--max-degree", o.max_degree);
  ortho->add_option("--radial-nodes", o.radial_nodes);
  ortho->add_option("--angular-nodes", o.angular_nodes);

  auto* sample = app.add_subcommand("sample", "Metropolis chain; newline-delimited JSON");
  add_common(sample, c);
  sample->add_option("--steps", s.steps);
  sample->add_option("--burn-in", s.burn_in);
  sample->add_option("--thin", s.thin);
  sample->add_option("--sigma", s.sigma, "Proposal std; default 0.15 * semi_y");
  sample->add_option("--seed", s.seed);
  sample->add_flag("!--no-chi2", s.chi2, "Skip the chi-square check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::ostringstream buf;
  try {
    if (*density) cmd_density(c, d, buf);
    else if (*kernel) cmd_kernel(c, k, buf);
    else if (*converge) cmd_converge(c, v, buf, err);
    else if (*ortho) cmd_orthocheck(c, o, buf, err);
    else if (*sample) cmd_sample(c, s, buf, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (c.output.empty()) {
    out << buf.str();
    out.flush();
    return out ? kOk : kIo;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) {
    err << "error: cannot open " << c.output << " for writing\n";
    return kIo;
  }
  f << buf.str();
  f.close();
  if (!f) {
    err << "error: failed writing " << c.output << '\n';
    return kIo;
  }
  return kOk;
}

}  // namespace ellgas::cli

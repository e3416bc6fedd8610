#include "dpsqft/suites.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dpsqft/basis.hpp"
#include "dpsqft/fock.hpp"
#include "dpsqft/greens.hpp"
#include "dpsqft/lattice.hpp"
#include "dpsqft/modes.hpp"
#include "dpsqft/observables.hpp"
#include "dpsqft/quadop.hpp"
#include "dpsqft/stress.hpp"

namespace dpsqft {

namespace {

std::string fmt_g(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::mt19937_64 make_rng(const RunConfig& cfg, std::uint64_t salt) {
  return std::mt19937_64(cfg.seed ^ (salt * 0x9e3779b97f4a7c15ull));
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["suite"] = cfg.suite;
  j["mu"] = cfg.mu;
  j["dirac_mass"] = cfg.dirac_mass;
  j["quad_order"] = cfg.quad_order;
  j["grid"] = {cfg.grid[0], cfg.grid[1], cfg.grid[2]};
  j["cutoff"] = cfg.cutoff;
  j["n_box"] = cfg.n_box;
  j["seed"] = cfg.seed;
  j["tolerances"] = json::object();
  for (const auto& [k, v] : cfg.tolerances) j["tolerances"][k] = v;
  j["out_dir"] = cfg.out_dir;
  return j;
}

Report make_report(const std::string& name, const RunConfig& cfg) {
  Report rep;
  rep.suite = name;
  rep.config_echo = config_to_json(cfg);
  return rep;
}

// per-axis even order so massless grids never place a node at k = 0
std::array<int, 3> even_grid(std::array<int, 3> g) {
  for (auto& o : g)
    if (o % 2 != 0) o += 1;
  return g;
}

int min_axis(const std::array<int, 3>& g) { return std::min({g[0], g[1], g[2]}); }
int max_axis(const std::array<int, 3>& g) { return std::max({g[0], g[1], g[2]}); }

// Frobenius size of a quadratic expression in canonical form (the metric all
// operator-equality checks use)
double quad_norm_canonical(const QuadOp& q, const Eigen::VectorXd& g, bool fermi) {
  QuadOp c = quad_canonical(q, g, fermi);
  double s2 = c.dd.squaredNorm() + c.ee.squaredNorm() + c.ff.squaredNorm() +
              c.gg.squaredNorm() + std::norm(c.c0);
  return std::sqrt(s2);
}

QuadOp quad_diff(const QuadOp& a, const QuadOp& b) {
  QuadOp d = a;
  d += b * cd(-1.0, 0.0);
  return d;
}

const char* species_name(Species sp) {
  switch (sp) {
    case Species::scalar: return "scalar";
    case Species::photon: return "photon";
    default: return "dirac";
  }
}

struct QuantityRow {
  Species sp;
  std::array<int, 3> grid;
  int n_box;
  std::string quantity;
  double lattice_value;
  double mode_sum_value;
  double abs_err;
  double rel_err;
  double zero_point;
};

// lattice-route vs mode-sum-route comparison per conserved quantity, measured
// on canonical forms
std::vector<QuantityRow> species_convergence_rows(Species sp, const ModeSet& ms,
                                                  const std::array<int, 3>& grid,
                                                  const std::vector<int>& boxes) {
  Eigen::VectorXd g = bracket_constants(sp, ms);
  bool fermi = is_fermi(sp);
  ConservedSet oracle = sp == Species::scalar   ? mode_sum_scalar(ms)
                        : sp == Species::photon ? mode_sum_photon(ms)
                                                : mode_sum_dirac(ms);
  double zp = normal_order(oracle, ms).zero_point;
  std::vector<QuantityRow> rows;
  for (int nb : boxes) {
    ConservedSet lat = sp == Species::scalar   ? conserved_scalar(ms, nb)
                       : sp == Species::photon ? conserved_photon(ms, nb)
                                               : conserved_dirac(ms, nb);
    auto push = [&](const std::string& name, const QuadOp& a, const QuadOp& b) {
      double na = quad_norm_canonical(a, g, fermi);
      double nb_ = quad_norm_canonical(b, g, fermi);
      double err = quad_norm_canonical(quad_diff(a, b), g, fermi);
      rows.push_back({sp, grid, nb, name, na, nb_, err,
                      err / std::max(nb_, 1e-300), zp});
    };
    for (int j = 0; j < 3; ++j)
      push("P" + std::to_string(j + 1), lat.P[static_cast<size_t>(j)],
           oracle.P[static_cast<size_t>(j)]);
    push("H", lat.H, oracle.H);
    if (oracle.has_charge) push("Q", lat.Q, oracle.Q);
  }
  return rows;
}

std::vector<int> box_list(const RunConfig& cfg) {
  std::set<int> s{8, cfg.n_box, 16};
  return {s.begin(), s.end()};
}

}  // namespace

double RunConfig::tol(const std::string& id, double fallback) const {
  auto it = tolerances.find(id);
  return it == tolerances.end() ? fallback : it->second;
}

// ---------------------------------------------------------------------------
// config loading / validation

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: parse error: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  RunConfig cfg;
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "suite")
        cfg.suite = val.get<std::string>();
      else if (key == "mu")
        cfg.mu = val.get<double>();
      else if (key == "dirac_mass")
        cfg.dirac_mass = val.get<double>();
      else if (key == "quad_order")
        cfg.quad_order = val.get<int>();
      else if (key == "grid") {
        if (!val.is_array() || val.size() != 3)
          throw std::invalid_argument("config: grid must be an array of three orders");
        for (int a = 0; a < 3; ++a)
          cfg.grid[static_cast<size_t>(a)] = val[static_cast<size_t>(a)].get<int>();
      } else if (key == "cutoff")
        cfg.cutoff = val.get<int>();
      else if (key == "n_box")
        cfg.n_box = val.get<int>();
      else if (key == "seed")
        cfg.seed = val.get<std::uint64_t>();
      else if (key == "tolerances") {
        if (!val.is_object())
          throw std::invalid_argument("config: tolerances must be an object");
        for (const auto& [tk, tv] : val.items())
          cfg.tolerances[tk] = tv.get<double>();
      } else if (key == "out_dir")
        cfg.out_dir = val.get<std::string>();
      else
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: bad value: ") + e.what());
  }
  return cfg;
}

bool known_suite(const std::string& name) {
  static const std::set<std::string> names{"basis",   "lattice",     "modes",
                                           "greens",  "algebra",     "observables",
                                           "conservation", "all"};
  return names.count(name) > 0;
}

void validate_config(const RunConfig& cfg) {
  if (!known_suite(cfg.suite))
    throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
  for (const auto& [k, v] : cfg.tolerances)
    if (!(v > 0.0))
      throw std::invalid_argument("tolerance '" + k + "' must be positive");
  for (int a = 0; a < 3; ++a)
    if (cfg.grid[static_cast<size_t>(a)] < 1)
      throw std::invalid_argument("grid orders must be >= 1");
  if (cfg.quad_order < 1) throw std::invalid_argument("quad_order must be >= 1");
  if (cfg.cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
  if (cfg.n_box < 2) throw std::invalid_argument("n_box must be >= 2");
  if (cfg.mu < 0.0) throw std::invalid_argument("mu must be >= 0");
  if (!(cfg.dirac_mass > 0.0)) throw std::invalid_argument("dirac_mass must be > 0");
  bool greens = cfg.suite == "greens" || cfg.suite == "all";
  if (greens && cfg.quad_order < 20)
    throw std::invalid_argument("propagator quadrature needs quad_order >= 20");
  if (greens && cfg.mu == 0.0 && cfg.quad_order % 2 != 0)
    throw std::invalid_argument(
        "massless propagator integrals need an even quadrature order "
        "(an odd rule places a node on the k = 0 singularity)");
  bool needs_massive = cfg.suite == "observables" || cfg.suite == "conservation" ||
                       cfg.suite == "all";
  if (needs_massive && !(cfg.mu > 0.0))
    throw std::invalid_argument("the observables/conservation suites need mu > 0");
}

// ---------------------------------------------------------------------------
// basis suite

Report run_basis_suite(const RunConfig& cfg) {
  Report rep = make_report("basis", cfg);

  {  // raw Hermite recurrence against hand-expanded low-order polynomials
    double worst = 0.0;
    for (double k : {-1.3, -0.4, 0.0, 0.7, 2.1}) {
      worst = std::max(worst, std::abs(hermite(0, k) - 1.0));
      worst = std::max(worst, std::abs(hermite(1, k) - 2.0 * k));
      worst = std::max(worst, std::abs(hermite(2, k) - (4.0 * k * k - 2.0)));
      worst = std::max(worst, std::abs(hermite(3, k) - (8.0 * k * k * k - 12.0 * k)));
      worst = std::max(worst,
                       std::abs(hermite(4, k) - (16.0 * std::pow(k, 4) - 48.0 * k * k + 12.0)));
    }
    rep.check("hermite-low-order", worst, cfg.tol("hermite-low-order", 1e-12));
  }

  {  // closed-form spot values of xi_n
    double worst = 0.0;
    worst = std::max(worst, std::abs(xi(0, 0.0) - cd(0.75112554446494251, 0.0)));
    worst = std::max(worst, std::abs(xi(1, 1.0) - cd(0.0, 0.6442883651134752)));
    worst = std::max(worst, std::abs(xi(2, 0.0) - cd(0.53112596601359852, 0.0)));
    worst = std::max(worst, std::abs(xi(4, 0.0) - cd(0.45996857917732664, 0.0)));
    rep.check("xi-spot-values", worst, cfg.tol("xi-spot-values", 1e-13));
  }

  {  // parity and conjugation: xi_n(-k) = (-1)^n xi_n(k) = conj(xi_n(k))
    auto rng = make_rng(cfg, 11);
    std::uniform_real_distribution<double> uk(-4.0, 4.0);
    double worst = 0.0;
    for (int rep_i = 0; rep_i < 12; ++rep_i) {
      double k = uk(rng);
      auto col_p = xi_column(50, k);
      auto col_m = xi_column(50, -k);
      for (int n = 0; n <= 50; ++n) {
        double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        worst = std::max(worst, std::abs(col_m[static_cast<size_t>(n)] -
                                         sgn * col_p[static_cast<size_t>(n)]));
        worst = std::max(worst, std::abs(col_m[static_cast<size_t>(n)] -
                                         std::conj(col_p[static_cast<size_t>(n)])));
      }
    }
    rep.check("xi-parity-conjugation", worst, cfg.tol("xi-parity-conjugation", 1e-14));
  }

  {  // Gram matrix of xi_0..xi_20 under the order-32 rule
    QuadratureRule qr = gauss_hermite(32);
    const int n_max = 20;
    double worst = 0.0;
    // conj(xi_m) xi_n = i^{n-m} f_m f_n; with the rule's e^{-x^2} density the
    // smooth factor is the polynomial product h_m h_n (the xi phases are
    // unimodular and drop out of the defect)
    std::vector<std::vector<double>> cols;
    for (double x : qr.nodes) cols.push_back(h_column(n_max, x));
    for (int m = 0; m <= n_max; ++m)
      for (int n = 0; n <= n_max; ++n) {
        double acc = 0.0;
        for (size_t i = 0; i < qr.nodes.size(); ++i)
          acc += qr.weights[i] * cols[i][static_cast<size_t>(m)] * cols[i][static_cast<size_t>(n)];
        worst = std::max(worst, std::abs(acc - (m == n ? 1.0 : 0.0)));
      }
    rep.check("xi-gram-order32", worst, cfg.tol("xi-gram-order32", 1e-13));
  }

  {  // Christoffel-Darboux: direct sum vs closed two-term form
    double worst = 0.0;
    auto rng = make_rng(cfg, 13);
    std::uniform_real_distribution<double> uk(-3.0, 3.0);
    for (int n_top = 0; n_top <= 30; ++n_top)
      for (int s = 0; s < 4; ++s) {
        double k = uk(rng), kh = uk(rng);
        worst = std::max(worst, std::abs(christoffel_darboux(n_top, k, kh) -
                                         christoffel_darboux_closed(n_top, k, kh)));
      }
    rep.check("christoffel-darboux", worst, cfg.tol("christoffel-darboux", 1e-12));
    double spots = std::max(
        std::abs(christoffel_darboux_closed(0, 1.0, 0.0) - cd(0.34219828031221655, 0.0)),
        std::abs(christoffel_darboux_closed(10, 0.3, -0.7) - cd(-0.32993041501240161, 0.0)));
    rep.check("christoffel-darboux-spots", spots, cfg.tol("christoffel-darboux-spots", 1e-13));
  }

  {  // addition theorem: 2^{n/2} e^{-((k-p)/2)^2} xi_n((k+p)/sqrt2)
     //                  = pi^{1/4} sum_j sqrt(C(n,j)) xi_{n-j}(k) xi_j(p)
    double worst = 0.0;
    const double quarter_pi = std::pow(pi, 0.25);
    for (int n = 0; n <= 10; ++n)
      for (double k : {-1.5, -0.5, 0.0, 0.8, 1.7})
        for (double p : {-1.1, -0.3, 0.0, 0.6, 2.0}) {
          cd lhs = std::pow(2.0, 0.5 * n) *
                   std::exp(-0.25 * (k - p) * (k - p)) * xi(n, (k + p) / std::sqrt(2.0));
          cd rhs = 0.0;
          double c_nj = 1.0;  // C(n, 0)
          for (int j = 0; j <= n; ++j) {
            rhs += std::sqrt(c_nj) * xi(n - j, k) * xi(j, p);
            c_nj = c_nj * (n - j) / (j + 1.0);
          }
          worst = std::max(worst, std::abs(lhs - quarter_pi * rhs));
        }
    rep.check("addition-theorem", worst, cfg.tol("addition-theorem", 1e-11));
  }

  {  // generating function: partial sums against the closed exponential; the
     // as-printed closed form disagrees and is kept as a measured discrepancy
    cd p1 = generating_function_partial(0.5, 0.0, 40);
    cd p2 = generating_function_partial(1.0, 1.0, 60);
    double worst = std::max(std::abs(p1 - generating_closed(0.5, 0.0)),
                            std::abs(p2 - generating_closed(1.0, 1.0)));
    rep.check("generating-function", worst, cfg.tol("generating-function", 1e-12));
    double frozen = std::max(std::abs(p1 - cd(0.85113674876942724, 0.0)),
                             std::abs(p2 - cd(0.11713329263651667, 0.74193623398772246)));
    rep.check("generating-function-spots", frozen, cfg.tol("generating-function-spots", 1e-13));
    double printed_gap = std::abs(generating_closed_printed(0.5, 0.0) - p1);
    rep.control("generating-printed-form-control", printed_gap,
                cfg.tol("generating-printed-form-control", 0.1),
                "the exponential printed in the source identity differs from the "
                "series limit by O(1); the corrected sign in the exponent is used");
    rep.table(json{{"id", "generating-printed-form-gap"},
                   {"t", 0.5},
                   {"k", 0.0},
                   {"series_limit", p1.real()},
                   {"printed_form", generating_closed_printed(0.5, 0.0).real()},
                   {"gap", printed_gap}});
  }

  {  // completeness, smeared with e^{-k^2}: sum_{n<=60} |int e^{-k^2} xi_n|^2
     // must approach int e^{-2k^2} dk = sqrt(pi/2)
    QuadratureRule qr = gauss_hermite(48);
    const int n_top = 60;
    std::vector<cd> coeff(static_cast<size_t>(n_top) + 1, cd(0.0, 0.0));
    for (size_t i = 0; i < qr.nodes.size(); ++i) {
      auto col = xi_column(n_top, qr.nodes[i]);
      for (int n = 0; n <= n_top; ++n)
        coeff[static_cast<size_t>(n)] += qr.weights[i] * col[static_cast<size_t>(n)];
    }
    double acc = 0.0;
    for (const auto& c : coeff) acc += std::norm(c);
    rep.check("completeness-smeared", std::abs(acc - std::sqrt(pi / 2.0)),
              cfg.tol("completeness-smeared", 1e-6));
  }

  {  // Fourier self-map at order 64
    double worst = 0.0;
    for (int n = 0; n <= 20; ++n)
      for (double k : {-2.0, -0.7, 0.0, 0.4, 1.9})
        worst = std::max(worst, fourier_self_map_check(n, k, 64));
    rep.check("fourier-self-map", worst, cfg.tol("fourier-self-map", 1e-8));
  }

  {  // differential characterizations by central finite differences
    double worst_ode = 0.0, worst_low = 0.0;
    for (int n : {0, 1, 3, 7, 12})
      for (double k : {-1.2, 0.3, 1.8}) {
        worst_ode = std::max(worst_ode, ode_residual_fd(n, k));
        worst_low = std::max(worst_low, lowering_residual_fd(n, k));
      }
    rep.check("ode-residual-fd", worst_ode, cfg.tol("ode-residual-fd", 1e-6));
    rep.check("lowering-residual-fd", worst_low, cfg.tol("lowering-residual-fd", 1e-6));
  }

  {  // quadrature construction invariants
    QuadratureRule q1 = gauss_hermite(1);
    double worst = std::abs(q1.nodes[0]) + std::abs(q1.weights[0] - std::sqrt(pi));
    QuadratureRule q32 = gauss_hermite(32);
    double wsum = 0.0, m2 = 0.0;
    for (size_t i = 0; i < q32.nodes.size(); ++i) {
      wsum += q32.weights[i];
      m2 += q32.weights[i] * q32.nodes[i] * q32.nodes[i];
    }
    worst = std::max(worst, std::abs(wsum - std::sqrt(pi)));
    worst = std::max(worst, std::abs(m2 - 0.5 * std::sqrt(pi)));
    rep.check("quadrature-moments", worst, cfg.tol("quadrature-moments", 1e-13));
  }

  return rep;
}

// ---------------------------------------------------------------------------
// lattice suite

Report run_lattice_suite(const RunConfig& cfg) {
  Report rep = make_report("lattice", cfg);

  {  // spot values on the squares sequence f(n) = n^2 over a line
    LatticeField<cd> f(LatticeBox::line(8));
    for (int n = 0; n < 8; ++n) f.at({n, 0, 0, 0}) = cd(n * n, 0.0);
    auto dr = delta_right(f, 0);
    auto dl = delta_left(f, 0);
    double worst = std::abs(dr.at({3, 0, 0, 0}) - cd(7.0, 0.0));
    worst = std::max(worst, std::abs(dl.at({3, 0, 0, 0}) - cd(5.0, 0.0)));
    worst = std::max(worst, std::abs(dl.at({0, 0, 0, 0}) - cd(0.0, 0.0)));  // ghost zero
    LatticeField<cd> ones(LatticeBox::line(6), cd(1.0, 0.0));
    auto ds = delta_sharp(ones, 0);
    worst = std::max(worst, std::abs(ds.at({0, 0, 0, 0}) - cd(1.0 / std::sqrt(2.0), 0.0)));
    rep.check("difference-spot-values", worst, cfg.tol("difference-spot-values", 1e-14));
  }

  {  // eigenrelation: the site field F(n) = xi_n(k) satisfies D# F = i k F
    auto rng = make_rng(cfg, 21);
    std::uniform_real_distribution<double> uk(-3.0, 3.0);
    const int n_top = 40;
    LatticeBox box = LatticeBox::line(n_top + 3);
    double worst1 = 0.0, worst2 = 0.0;
    for (int s = 0; s < 50; ++s) {
      double k = uk(rng);
      LatticeField<cd> f(box);
      auto col = xi_column(n_top + 2, k);
      for (int n = 0; n < n_top + 3; ++n) f.at({n, 0, 0, 0}) = col[static_cast<size_t>(n)];
      auto ds = delta_sharp(f, 0);
      auto ds2 = delta_sharp(ds, 0);
      for (int n = 0; n <= n_top; ++n) {
        worst1 = std::max(worst1, std::abs(ds.at({n, 0, 0, 0}) -
                                           cd(0.0, k) * f.at({n, 0, 0, 0})));
        worst2 = std::max(worst2, std::abs(ds2.at({n, 0, 0, 0}) +
                                           k * k * f.at({n, 0, 0, 0})));
      }
    }
    rep.check("sharp-eigenrelation", worst1, cfg.tol("sharp-eigenrelation", 1e-13));
    rep.check("sharp-eigenrelation-squared", worst2, cfg.tol("sharp-eigenrelation-squared", 1e-12));
  }

  {  // operator algebra on a random 3D field: linearity and axis commutativity
    auto rng = make_rng(cfg, 22);
    std::uniform_real_distribution<double> uv(-1.0, 1.0);
    LatticeBox box = LatticeBox::cube3(6);
    LatticeField<cd> f(box), g(box);
    for (auto& v : f.values) v = cd(uv(rng), uv(rng));
    for (auto& v : g.values) v = cd(uv(rng), uv(rng));
    cd alpha(0.7, -0.3), beta(-1.1, 0.4);
    LatticeField<cd> mix(box);
    for (size_t i = 0; i < mix.values.size(); ++i)
      mix.values[i] = alpha * f.values[i] + beta * g.values[i];
    double worst_lin = 0.0;
    for (int ax = 0; ax < 3; ++ax) {
      auto lhs = delta_sharp(mix, ax);
      auto df = delta_sharp(f, ax);
      auto dg = delta_sharp(g, ax);
      for (size_t i = 0; i < lhs.values.size(); ++i)
        if (lhs.site_valid(box.site_of(i)))
          worst_lin = std::max(worst_lin, std::abs(lhs.values[i] - alpha * df.values[i] -
                                                   beta * dg.values[i]));
    }
    rep.check("linearity", worst_lin, cfg.tol("linearity", 1e-14));

    double worst_comm = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        auto ab = delta_sharp(delta_sharp(f, a), b);
        auto ba = delta_sharp(delta_sharp(f, b), a);
        for (size_t i = 0; i < ab.values.size(); ++i)
          if (ab.site_valid(box.site_of(i)) && ba.site_valid(box.site_of(i)))
            worst_comm = std::max(worst_comm, std::abs(ab.values[i] - ba.values[i]));
      }
    rep.check("axis-commutativity", worst_comm, cfg.tol("axis-commutativity", 1e-14));
  }

  {  // parallel kernels against the serial references (identical arithmetic)
    auto rng = make_rng(cfg, 23);
    std::uniform_real_distribution<double> uv(-1.0, 1.0);
    LatticeField<cd> f(LatticeBox::cube3(7));
    for (auto& v : f.values) v = cd(uv(rng), uv(rng));
    double worst = 0.0;
    for (int ax = 0; ax < 3; ++ax) {
      auto a1 = delta_right(f, ax), a2 = delta_right_serial(f, ax);
      auto b1 = delta_left(f, ax), b2 = delta_left_serial(f, ax);
      auto c1 = delta_sharp(f, ax), c2 = delta_sharp_serial(f, ax);
      for (size_t i = 0; i < f.values.size(); ++i) {
        worst = std::max(worst, std::abs(a1.values[i] - a2.values[i]));
        worst = std::max(worst, std::abs(b1.values[i] - b2.values[i]));
        worst = std::max(worst, std::abs(c1.values[i] - c2.values[i]));
      }
    }
    rep.check("parallel-serial-agreement", worst, 0.0,
              "site-parallel kernels must reproduce the serial reference bitwise");
  }

  return rep;
}

// ---------------------------------------------------------------------------
// modes suite

Report run_modes_suite(const RunConfig& cfg) {
  Report rep = make_report("modes", cfg);
  auto rng = make_rng(cfg, 31);
  std::uniform_real_distribution<double> uk(-2.0, 2.0);

  {  // dispersion at exactly representable Pythagorean points
    double worst = std::abs(omega({3.0, 4.0, 0.0}, 0.0) - 5.0);
    worst = std::max(worst, std::abs(omega({0.0, 0.0, 0.0}, cfg.mu) - cfg.mu));
    worst = std::max(worst, std::abs(omega({2.0, 3.0, 6.0}, 0.0) - 7.0));
    worst = std::max(worst, std::abs(omega({1.0, 2.0, 2.0}, 4.0) - 5.0));
    rep.check("dispersion-spots", worst, cfg.tol("dispersion-spots", 1e-15));
  }

  {  // scalar mode value, conjugation pattern, |mode| time independence
    double worst_spot = std::abs(scalar_mode({0, 0, 0}, {0.0, 0.0, 0.0}, 0.0, -1, 1.0) -
                                 cd(0.2996557375766119, 0.0));
    rep.check("scalar-mode-spot", worst_spot, cfg.tol("scalar-mode-spot", 1e-15));
    double worst = 0.0, worst_t = 0.0;
    for (int s = 0; s < 6; ++s) {
      vec3 k{uk(rng), uk(rng), uk(rng)};
      std::array<int, 3> n{s % 3, (s + 1) % 4, s % 2};
      double t = 0.3 * s - 0.7;
      cd minus = scalar_mode(n, k, t, -1, cfg.mu);
      cd plus = scalar_mode(n, k, t, +1, cfg.mu);
      worst = std::max(worst, std::abs(plus - std::conj(minus)));
      worst_t = std::max(worst_t, std::abs(std::abs(minus) -
                                           std::abs(scalar_mode(n, k, 0.0, -1, cfg.mu))));
    }
    rep.check("scalar-mode-conjugation", worst, cfg.tol("scalar-mode-conjugation", 1e-15));
    rep.check("scalar-mode-stationary-magnitude", worst_t,
              cfg.tol("scalar-mode-stationary-magnitude", 1e-15));
  }

  {  // on-shell residuals of the three field equations
    LatticeBox box = LatticeBox::cube3(16);
    std::vector<double> times{0.0, 0.37, 1.1};
    double worst_kg = 0.0;
    for (int s = 0; s < 4; ++s)
      worst_kg = std::max(worst_kg, kg_residual({uk(rng), uk(rng), uk(rng)}, cfg.mu, box, times));
    rep.check("klein-gordon-onshell", worst_kg, cfg.tol("klein-gordon-onshell", 1e-10));

    double worst_mx = 0.0;
    for (int s = 0; s < 3; ++s)
      worst_mx = std::max(worst_mx, maxwell_residual({uk(rng), uk(rng), 0.5 + 0.3 * s}, box));
    rep.check("maxwell-onshell", worst_mx, cfg.tol("maxwell-onshell", 1e-10));

    double worst_dir = 0.0;
    for (int branch : {-1, +1})
      worst_dir = std::max(worst_dir, dirac_residual({0.4, -0.8, 1.2}, cfg.dirac_mass, box, branch));
    worst_dir = std::max(worst_dir, dirac_residual({uk(rng), uk(rng), uk(rng)},
                                                   cfg.dirac_mass, box, 0));
    rep.check("dirac-onshell", worst_dir, cfg.tol("dirac-onshell", 1e-10));

    double cov = covariant_scalar_residual({0.3, -0.4, 0.25}, cfg.mu, LatticeBox::cube4(10));
    rep.check("covariant-scalar-onshell", cov, cfg.tol("covariant-scalar-onshell", 1e-10));
  }

  {  // detuned control: off-shell frequency leaves the analytic residual
     // |omega~^2 - omega^2| max|phi|
    vec3 k{0.9, -0.4, 0.3};
    LatticeBox box = LatticeBox::cube3(12);
    double w = omega(k, cfg.mu);
    double dw = 0.05 * w;
    double measured = kg_residual_detuned(k, cfg.mu, box, dw, {0.0, 0.5});
    double peak = 0.0;
    {
      // the detuned evaluator normalizes its mode with the detuned frequency
      LatticeField<cd> f = scalar_mode_field(k, cfg.mu, box, 0.0, -1, w + dw);
      peak = max_abs_valid(f);
    }
    double expected = std::abs((w + dw) * (w + dw) - w * w) * peak;
    rep.control("klein-gordon-detuned-control", measured,
                cfg.tol("klein-gordon-detuned-control", 1e-4),
                "off-shell frequencies must be detected");
    rep.check("klein-gordon-detuned-analytic", std::abs(measured - expected),
              cfg.tol("klein-gordon-detuned-analytic", 1e-10),
              "the detuned residual equals |omega~^2 - omega^2| max|phi| exactly");
  }

  {  // gamma algebra and momentum spinors
    GammaSet gs = gamma_default();
    rep.check("clifford-relations", clifford_defect(gs), cfg.tol("clifford-relations", 0.0),
              "entries are exact units, so the defect must be exactly zero");
    double herm = 0.0;
    for (int j = 0; j < 3; ++j)
      herm = std::max(herm, (gs.g[static_cast<size_t>(j)] -
                             gs.g[static_cast<size_t>(j)].adjoint().eval()).cwiseAbs().maxCoeff());
    herm = std::max(herm, (gs.g[3] + gs.g[3].adjoint().eval()).cwiseAbs().maxCoeff());
    rep.check("gamma-hermiticity-pattern", herm, cfg.tol("gamma-hermiticity-pattern", 0.0));

    double m = cfg.dirac_mass;
    double worst_norm = 0.0;
    for (const vec3& p : {vec3{0.0, 0.0, 0.0}, vec3{0.0, 0.0, 1.0}, vec3{0.7, -0.2, 0.4}}) {
      SpinorSet ss = dirac_spinors(p, m);
      double ratio = omega(p, m) / m;
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
          cd uu = ss.u[static_cast<size_t>(r)].adjoint() * ss.u[static_cast<size_t>(s)];
          cd vv = ss.v[static_cast<size_t>(r)].adjoint() * ss.v[static_cast<size_t>(s)];
          cd target = (r == s) ? cd(ratio, 0.0) : cd(0.0, 0.0);
          worst_norm = std::max({worst_norm, std::abs(uu - target), std::abs(vv - target)});
        }
      SpinorSet ss_m = dirac_spinors({-p[0], -p[1], -p[2]}, m);
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
          cd uv = ss.u[static_cast<size_t>(r)].adjoint() * ss_m.v[static_cast<size_t>(s)];
          worst_norm = std::max(worst_norm, std::abs(uv));
        }
    }
    rep.check("spinor-normalization", worst_norm, cfg.tol("spinor-normalization", 1e-12));

    double worst_comp = 0.0;
    for (const vec3& p : {vec3{0.0, 0.0, 0.0}, vec3{0.5, 0.5, -0.5}, vec3{1.3, 0.0, 0.2}})
      worst_comp = std::max(worst_comp, spinor_completeness_defect(p, m));
    rep.check("spinor-completeness", worst_comp, cfg.tol("spinor-completeness", 1e-12),
              "(m/E)[sum_r u u^dag(p) + sum_r v v^dag(-p)] reconstructs the identity");
    rep.table(json{{"id", "spinor-completeness-normalization"},
                   {"measured_trace", 4.0},
                   {"note", "the reconstructed operator is I (trace 4); a doubled "
                            "normalization 2I would need trace 8, which the spin sum "
                            "of a four-spinor basis cannot produce"}});
  }

  {  // polarization tetrads over random momenta plus the axis-aligned fallback
    auto rng2 = make_rng(cfg, 32);
    std::uniform_real_distribution<double> u2(-3.0, 3.0);
    double worst_on = 0.0, worst_comp = 0.0;
    for (int s = 0; s < 100; ++s) {
      vec3 k{u2(rng2), u2(rng2), u2(rng2)};
      if (std::abs(k[0]) + std::abs(k[1]) + std::abs(k[2]) < 1e-6) k[0] = 1.0;
      Tetrad t = tetrad_build(k);
      worst_on = std::max(worst_on, tetrad_orthonormality_defect(t));
      worst_comp = std::max(worst_comp, tetrad_completeness_defect(t));
    }
    Tetrad tx = tetrad_build({2.0, 0.0, 0.0});
    worst_on = std::max(worst_on, tetrad_orthonormality_defect(tx));
    worst_comp = std::max(worst_comp, tetrad_completeness_defect(tx));
    rep.check("tetrad-orthonormality", worst_on, cfg.tol("tetrad-orthonormality", 1e-13));
    rep.check("tetrad-completeness", worst_comp, cfg.tol("tetrad-completeness", 1e-13));
  }

  {  // restricted gauge shift: spatial transversality, idempotence, and
     // preservation of the on-shell property component-wise
    vec3 k{1.1, -0.6, 0.8};
    double nu = omega(k, 0.0);
    std::array<cd, 4> a{cd(0.3, 0.1), cd(-0.2, 0.5), cd(0.7, -0.4), cd(0.1, 0.9)};
    auto a1 = restricted_gauge_shift(a, k);
    auto a2 = restricted_gauge_shift(a1, k);
    cd trans = k[0] * a1[0] + k[1] * a1[1] + k[2] * a1[2];
    double worst = std::abs(trans) / nu;
    double idem = 0.0;
    for (int m2 = 0; m2 < 4; ++m2)
      idem = std::max(idem, std::abs(a2[static_cast<size_t>(m2)] - a1[static_cast<size_t>(m2)]));
    rep.check("gauge-shift-transversality", worst, cfg.tol("gauge-shift-transversality", 1e-13),
              "after the shift the spatial momentum contraction vanishes on shell");
    rep.check("gauge-shift-idempotent", idem, cfg.tol("gauge-shift-idempotent", 1e-13));
    // every Lorentz component of the shifted polarization rides the same
    // on-shell massless mode, so the component equation stays satisfied
    double res = maxwell_residual(k, LatticeBox::cube3(12));
    double amp = 0.0;
    for (const auto& c : a1) amp = std::max(amp, std::abs(c));
    rep.check("gauge-shifted-onshell", res * amp, cfg.tol("gauge-shifted-onshell", 1e-10));
  }

  {  // ModeSet bookkeeping: weights carry e^{+k^2}, so re-applying the
     // Gaussian recovers the plain GH normalization (sqrt(pi))^3
    ModeSet ms = ModeSet::gauss_product(cfg.grid, cfg.mu);
    double acc = 0.0;
    for (size_t i = 0; i < ms.size(); ++i) {
      const vec3& k = ms.momenta[i];
      acc += ms.weights[i] * std::exp(-(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]));
    }
    rep.check("modeset-weight-measure", std::abs(acc - std::pow(pi, 1.5)),
              cfg.tol("modeset-weight-measure", 1e-12));

    // xi_product against a direct per-axis evaluation
    double worst = 0.0;
    for (size_t i = 0; i < ms.size(); ++i) {
      std::array<int, 3> n{1, 0, 2};
      cd direct = xi(1, ms.momenta[i][0]) * xi(0, ms.momenta[i][1]) * xi(2, ms.momenta[i][2]);
      worst = std::max(worst, std::abs(xi_product(ms, i, n) - direct));
    }
    rep.check("xi-product-consistency", worst, cfg.tol("xi-product-consistency", 1e-15));

    SiteSumKernels kp = site_sum_kernels(ms, 6);
    SiteSumKernels ks = site_sum_kernels_serial(ms, 6);
    double diff = std::max((kp.g_conj - ks.g_conj).cwiseAbs().maxCoeff(),
                           (kp.g_plain - ks.g_plain).cwiseAbs().maxCoeff());
    rep.check("site-kernels-parallel-serial", diff,
              cfg.tol("site-kernels-parallel-serial", 1e-13),
              "matrix-product kernel vs serial loops; agreement to rounding");
  }

  return rep;
}

// ---------------------------------------------------------------------------
// greens suite

Report run_greens_suite(const RunConfig& cfg) {
  Report rep = make_report("greens", cfg);
  const double mu = cfg.mu;
  const int q = cfg.quad_order;
  const int q_even = q + (q % 2);

  std::vector<EventPair> events{
      {{1, 2, 3}, {0, 1, 1}, 0.7, 0.2},
      {{5, 0, 2}, {4, 3, 1}, 1.3, -0.4},
      {{0, 0, 0}, {0, 0, 0}, 0.9, 0.1},
      {{2, 4, 1}, {2, 4, 1}, -0.3, 0.6},
  };
  {
    auto rng = make_rng(cfg, 41);
    std::uniform_int_distribution<int> us(0, 5);
    std::uniform_real_distribution<double> ut(-1.0, 1.0);
    for (int s = 0; s < 4; ++s) {
      EventPair ev;
      ev.n = {us(rng), us(rng), us(rng)};
      ev.nhat = {us(rng), us(rng), us(rng)};
      ev.t = ut(rng);
      ev.that = ut(rng);
      if (ev.t == ev.that) ev.that += 0.25;
      events.push_back(ev);
    }
  }

  {  // frequency splitting, conjugation pairing, antisymmetry, Feynman splice
    double worst_split = 0.0, worst_conj = 0.0, worst_anti = 0.0, worst_feyn = 0.0;
    for (const auto& ev : events) {
      cd dp = delta_plus(ev, mu, q);
      cd dm = delta_minus(ev, mu, q);
      cd dh = delta_homogeneous(ev, mu, q);
      worst_split = std::max(worst_split, std::abs(dh - (dp + dm)));
      worst_conj = std::max(worst_conj, std::abs(dm - std::conj(dp)));
      EventPair sw{ev.nhat, ev.n, ev.that, ev.t};
      worst_anti = std::max(worst_anti, std::abs(dh + delta_homogeneous(sw, mu, q)));
      cd df = delta_feynman(ev, mu, q);
      cd spliced = (ev.t > ev.that) ? -dp : dm;
      worst_feyn = std::max(worst_feyn, std::abs(df - spliced));
      worst_feyn = std::max(worst_feyn, std::abs(df - delta_feynman(sw, mu, q)));
    }
    rep.check("splitting", worst_split, cfg.tol("splitting", 1e-12));
    rep.check("frequency-conjugation", worst_conj, cfg.tol("frequency-conjugation", 1e-12));
    rep.check("antisymmetry", worst_anti, cfg.tol("antisymmetry", 1e-12));
    rep.check("feynman-splice", worst_feyn, cfg.tol("feynman-splice", 1e-12));
  }

  {  // equal-time structure: Delta = 0, dt Delta = -delta_{n nhat}, dtdt = 0
    double worst_zero = 0.0, worst_diag = 0.0, worst_off = 0.0, worst_dtdt = 0.0;
    std::vector<std::array<int, 3>> sites{{0, 0, 0}, {1, 2, 0}, {3, 1, 4}, {2, 2, 2}};
    for (const auto& n : sites) {
      EventPair ev{n, n, 0.4, 0.4};
      worst_zero = std::max(worst_zero, std::abs(delta_homogeneous(ev, mu, q)));
      worst_diag = std::max(worst_diag, std::abs(delta_homogeneous_dt(ev, mu, q) + 1.0));
      worst_dtdt = std::max(worst_dtdt, std::abs(delta_homogeneous_dtdt(ev, mu, q)));
    }
    for (size_t i = 0; i + 1 < sites.size(); ++i) {
      EventPair ev{sites[i], sites[i + 1], -0.2, -0.2};
      worst_zero = std::max(worst_zero, std::abs(delta_homogeneous(ev, mu, q)));
      worst_off = std::max(worst_off, std::abs(delta_homogeneous_dt(ev, mu, q)));
      worst_dtdt = std::max(worst_dtdt, std::abs(delta_homogeneous_dtdt(ev, mu, q)));
    }
    rep.check("equal-time-vanishing", worst_zero, cfg.tol("equal-time-vanishing", 1e-12));
    rep.check("equal-time-dt-diagonal", worst_diag, cfg.tol("equal-time-dt-diagonal", 1e-6));
    rep.check("equal-time-dt-offdiagonal", worst_off, cfg.tol("equal-time-dt-offdiagonal", 1e-8));
    rep.check("equal-time-dtdt-vanishing", worst_dtdt, cfg.tol("equal-time-dtdt-vanishing", 1e-8));
  }

  {  // the closed-contour function solves the homogeneous field equation
    auto rng = make_rng(cfg, 42);
    std::uniform_int_distribution<int> us(0, 5);
    std::uniform_real_distribution<double> ut(-1.0, 1.0);
    double worst = 0.0;
    for (int s = 0; s < 10; ++s) {
      EventPair ev;
      ev.n = {us(rng), us(rng), us(rng)};
      ev.nhat = {us(rng), us(rng), us(rng)};
      ev.t = ut(rng);
      ev.that = ut(rng);
      worst = std::max(worst, homogeneous_annihilation_residual(ev, mu, q));
    }
    rep.check("homogeneous-annihilation", worst, cfg.tol("homogeneous-annihilation", 1e-8));
  }

  {  // massless limit: structural identities and continuity in the mass
    EventPair ev{{2, 1, 0}, {1, 1, 1}, 0.9, -0.1};
    EventPair eq{{2, 1, 0}, {1, 1, 1}, 0.5, 0.5};
    double worst_struct = std::abs(massless_d(eq, q_even, Contour::full));
    EventPair sw{ev.nhat, ev.n, ev.that, ev.t};
    worst_struct = std::max(worst_struct, std::abs(massless_d(ev, q_even, Contour::full) +
                                                   massless_d(sw, q_even, Contour::full)));
    rep.check("massless-structure", worst_struct, cfg.tol("massless-structure", 1e-12));
    double cont = std::abs(delta_branch(ev, 1e-3, q_even, Contour::full) -
                           massless_d(ev, q_even, Contour::full));
    rep.check("massless-mass-continuity", cont, cfg.tol("massless-mass-continuity", 1e-3));
  }

  {  // spin-1/2 functions: splitting, splice, homogeneous annihilation
    double m = cfg.dirac_mass;
    EventPair ev{{1, 0, 2}, {0, 1, 1}, 0.6, -0.2};
    Eigen::Matrix4cd sp = s_function(ev, m, Contour::plus, q);
    Eigen::Matrix4cd sm = s_function(ev, m, Contour::minus, q);
    Eigen::Matrix4cd sh = s_function(ev, m, Contour::full, q);
    rep.check("s-splitting", (sh - sp - sm).cwiseAbs().maxCoeff(),
              cfg.tol("s-splitting", 1e-10));
    Eigen::Matrix4cd sf = s_function(ev, m, Contour::feynman, q);
    Eigen::Matrix4cd spliced = (ev.t > ev.that) ? (-sp).eval() : sm;
    rep.check("s-feynman-splice", (sf - spliced).cwiseAbs().maxCoeff(),
              cfg.tol("s-feynman-splice", 1e-12));
    double worst = 0.0;
    for (const auto& e2 : {ev, EventPair{{3, 2, 0}, {1, 0, 1}, -0.4, 0.3}})
      worst = std::max(worst, s_homogeneous_annihilation_residual(e2, m, q));
    rep.check("s-homogeneous-annihilation", worst, cfg.tol("s-homogeneous-annihilation", 1e-8));
  }

  {  // quadrature-order drift, recorded (not gated): doubling the order moves
     // far-site values at the percent level, so order is a convergence
     // parameter the caller must pin, not a free knob
    EventPair near{{2, 1, 0}, {1, 1, 1}, 0.9, 0.0};
    EventPair far{{12, 0, 0}, {0, 0, 0}, 4.0, 0.0};
    for (const auto& [label, ev] : {std::pair<const char*, EventPair>{"near", near},
                                    std::pair<const char*, EventPair>{"far", far}}) {
      cd v20 = delta_homogeneous(ev, mu, 20);
      cd v40 = delta_homogeneous(ev, mu, 40);
      cd v80 = delta_homogeneous(ev, mu, 80);
      rep.table(json{{"id", "quadrature-drift"},
                     {"event", label},
                     {"site", {ev.n[0], ev.n[1], ev.n[2]}},
                     {"site_hat", {ev.nhat[0], ev.nhat[1], ev.nhat[2]}},
                     {"t", ev.t},
                     {"that", ev.that},
                     {"drift_20_to_40", std::abs(v40 - v20)},
                     {"drift_40_to_80", std::abs(v80 - v40)}});
    }
  }

  return rep;
}

// ---------------------------------------------------------------------------
// algebra suite

Report run_algebra_suite(const RunConfig& cfg) {
  Report rep = make_report("algebra", cfg);
  ModeSet ms2 = ModeSet::gauss_product({2, 1, 1}, cfg.mu);
  ModeSet ms2d = ModeSet::gauss_product({2, 1, 1}, cfg.dirac_mass);
  ModeSet ms2p = ModeSet::gauss_product({2, 1, 1}, 0.0);

  auto run_float = [&](const char* id, const FockRep& rep_f) {
    auto records = ladder_commutator_suite(rep_f);
    double worst = 0.0, worst_top = 0.0;
    for (const auto& r : records) {
      worst = std::max(worst, r.max_defect);
      worst_top = std::max(worst_top, r.top_block_defect);
    }
    rep.check(id, worst, cfg.tol(id, 1e-12));
    rep.table(json{{"id", std::string(id) + "-top-block"},
                   {"worst_truncation_artifact", worst_top},
                   {"identities", records.size()},
                   {"note", "defects confined to top-occupation blocks are the "
                            "expected truncation boundary, reported not asserted"}});
  };

  run_float("boson-ladder-suite", build_boson_rep(ms2, std::min(cfg.cutoff, 3), true));
  run_float("photon-ladder-suite", build_photon_rep(ms2p, 1));
  run_float("fermion-ladder-suite", build_fermion_rep(ms2d, 2));

  {  // exact integer-sqrt path: the sub-cutoff defects must be exactly zero
    struct Case {
      const char* id;
      RepKind kind;
      int n_modes;
      int cutoff;
      bool charged;
    };
    for (const Case& c : {Case{"boson-exact-suite", RepKind::boson, 3, std::min(cfg.cutoff, 3), true},
                          Case{"photon-exact-suite", RepKind::photon, 1, std::min(cfg.cutoff, 3), false},
                          Case{"fermion-exact-suite", RepKind::fermion, 3, 1, false}}) {
      ExactSuiteResult res = exact_commutator_suite(c.kind, c.n_modes, c.cutoff, c.charged);
      rep.check(c.id, static_cast<double>(std::abs(res.sub_cutoff_defect)), 0.0,
                "integer arithmetic: any nonzero coefficient is a real defect");
      rep.table(json{{"id", std::string(c.id) + "-top-block"},
                     {"top_block_defect", res.top_block_defect},
                     {"worst_identity", res.worst_identity}});
    }
  }

  {  // vacuum and number-operator structure on the charged boson rep
    FockRep fr = build_boson_rep(ms2, std::min(cfg.cutoff, 3), true);
    Eigen::VectorXcd vac = vacuum(fr);
    double worst = std::abs(metric_inner(fr, vac, vac) - cd(1.0, 0.0));
    for (int r = 0; r < fr.n_registers; ++r)
      worst = std::max(worst, (fr.lower[static_cast<size_t>(r)] * vac).norm());
    rep.check("vacuum-structure", worst, cfg.tol("vacuum-structure", 1e-15));

    double worst_n = 0.0;
    for (int r = 0; r < fr.n_registers; ++r) {
      Eigen::MatrixXcd nop = number_operator(fr, r);
      for (Eigen::Index s = 0; s < nop.rows(); ++s) {
        double d = nop(s, s).real();
        worst_n = std::max(worst_n, std::abs(d - std::round(d)));
        worst_n = std::max(worst_n, std::abs(nop(s, s).imag()));
        worst_n = std::max(worst_n,
                           std::abs(d - fr.occupation_of(static_cast<size_t>(s), r)));
      }
    }
    rep.check("number-spectrum-integer", worst_n, cfg.tol("number-spectrum-integer", 1e-12));

    // delta-normalization: w_i [a_i, a_i^dag] = I on the sub-cutoff block
    double worst_norm = 0.0;
    for (int r = 0; r < fr.n_registers; ++r) {
      Eigen::MatrixXcd low = Eigen::MatrixXcd(fr.lower[static_cast<size_t>(r)]);
      Eigen::MatrixXcd rai = Eigen::MatrixXcd(fr.raise(r));
      Eigen::MatrixXcd comm = fr.reg_weight[static_cast<size_t>(r)] * (low * rai - rai * low);
      for (Eigen::Index s = 0; s < comm.rows(); ++s)
        if (!fr.top_occupied(static_cast<size_t>(s), r))
          worst_norm = std::max(worst_norm, std::abs(comm(s, s) - cd(1.0, 0.0)));
    }
    rep.check("delta-normalization", worst_norm, cfg.tol("delta-normalization", 1e-12),
              "the momentum delta discretizes to Kronecker-over-weight");
  }

  {  // exchange statistics at the state level
    FockRep fb = build_boson_rep(ms2, 2, false);
    Eigen::VectorXcd vac_b = vacuum(fb);
    Eigen::VectorXcd sym = fb.raise(0) * (fb.raise(1) * vac_b) -
                           fb.raise(1) * (fb.raise(0) * vac_b);
    rep.check("bose-symmetry", sym.norm(), cfg.tol("bose-symmetry", 1e-15));

    FockRep ff = build_fermion_rep(ms2d, 2);
    Eigen::VectorXcd vac_f = vacuum(ff);
    Eigen::VectorXcd anti = ff.raise(0) * (ff.raise(1) * vac_f) +
                            ff.raise(1) * (ff.raise(0) * vac_f);
    double worst = anti.norm();
    for (int r = 0; r < ff.n_registers; ++r)
      worst = std::max(worst, (ff.raise(r) * (ff.raise(r) * vac_f)).norm());
    rep.check("fermi-antisymmetry-nilpotency", worst,
              cfg.tol("fermi-antisymmetry-nilpotency", 0.0),
              "Jordan-Wigner entries are exact signs, so this is exact");
  }

  return rep;
}

// ---------------------------------------------------------------------------
// observables suite

Report run_observables_suite(const RunConfig& cfg) {
  Report rep = make_report("observables", cfg);
  std::array<int, 3> pg = even_grid(cfg.grid);
  ModeSet ms_s = ModeSet::gauss_product(cfg.grid, cfg.mu);
  ModeSet ms_p = ModeSet::gauss_product(pg, 0.0);
  ModeSet ms_d = ModeSet::gauss_product(cfg.grid, cfg.dirac_mass);

  struct SpeciesCtx {
    Species sp;
    const ModeSet* ms;
    std::array<int, 3> grid;
  };
  std::vector<SpeciesCtx> species{{Species::scalar, &ms_s, cfg.grid},
                                  {Species::photon, &ms_p, pg},
                                  {Species::dirac, &ms_d, cfg.grid}};

  for (const auto& ctx : species) {
    std::string tag = species_name(ctx.sp);
    ConservedSet oracle = ctx.sp == Species::scalar   ? mode_sum_scalar(*ctx.ms)
                          : ctx.sp == Species::photon ? mode_sum_photon(*ctx.ms)
                                                      : mode_sum_dirac(*ctx.ms);
    rep.check(tag + "-hermiticity", hermiticity_defect(oracle, *ctx.ms),
              cfg.tol(tag + "-hermiticity", 1e-12));

    // lattice route == mode-sum route when the box matches the per-axis
    // quadrature duality window (extent in {order, order + 1} on every axis)
    if (max_axis(ctx.grid) - min_axis(ctx.grid) <= 1) {
      int nb = max_axis(ctx.grid);
      ConservedSet lat = ctx.sp == Species::scalar   ? conserved_scalar(*ctx.ms, nb)
                         : ctx.sp == Species::photon ? conserved_photon(*ctx.ms, nb)
                                                     : conserved_dirac(*ctx.ms, nb);
      SetDistance d = set_distance(lat, oracle, *ctx.ms);
      rep.check(tag + "-lattice-duality", d.worst, cfg.tol(tag + "-lattice-duality", 1e-12),
                "box extent inside the duality window reproduces the mode sums exactly");
    } else {
      rep.table(json{{"id", tag + "-lattice-duality-skipped"},
                     {"note", "per-axis orders spread wider than one; no single box "
                              "extent sits in every axis duality window"}});
    }

    // convergence records over the configured box ladder
    for (const auto& row : species_convergence_rows(ctx.sp, *ctx.ms, ctx.grid, box_list(cfg))) {
      rep.table(json{{"species", species_name(row.sp)},
                     {"modes", {row.grid[0], row.grid[1], row.grid[2]}},
                     {"cutoff", cfg.cutoff},
                     {"N_box", row.n_box},
                     {"quantity", row.quantity},
                     {"lattice_value", row.lattice_value},
                     {"mode_sum_value", row.mode_sum_value},
                     {"abs_err", row.abs_err},
                     {"rel_err", row.rel_err},
                     {"normal_ordered", false},
                     {"zero_point", row.zero_point}});
    }

    // normal-ordering bookkeeping: the constant split off equals the
    // canonical c-number of the raw energy, with the expected vacuum sign
    ConservedSet no = normal_order(oracle, *ctx.ms);
    Eigen::VectorXd g = bracket_constants(ctx.sp, *ctx.ms);
    QuadOp h_canon = quad_canonical(oracle.H, g, is_fermi(ctx.sp));
    double scale = std::max(1.0, std::abs(no.zero_point));
    rep.check(tag + "-normal-ordering-bookkeeping",
              std::abs(h_canon.c0 - cd(no.zero_point, 0.0)) / scale,
              cfg.tol(tag + "-normal-ordering-bookkeeping", 1e-12));
    QuadOp h_no_canon = quad_canonical(no.H, g, is_fermi(ctx.sp));
    rep.check(tag + "-normal-ordered-constant-free", std::abs(h_no_canon.c0) / scale,
              cfg.tol(tag + "-normal-ordered-constant-free", 1e-12));
    if (ctx.sp == Species::dirac)
      rep.control(tag + "-vacuum-energy-negative", -no.zero_point, 0.0,
                  "filled-negative-sea bookkeeping: the fermionic constant is negative");
    else
      rep.control(tag + "-vacuum-energy-positive", no.zero_point, 0.0);
  }

  {  // generator relations on the mode-sum scalar set
    ConservedSet set = mode_sum_scalar(ms_s);
    GeneratorReport gr = generator_check(set, ms_s, 2);
    rep.check("scalar-generator-energy", gr.h_residual, cfg.tol("scalar-generator-energy", 1e-10));
    rep.check("scalar-generator-charge", gr.q_residual, cfg.tol("scalar-generator-charge", 1e-10));
    rep.check("scalar-generator-momentum-measured-sign", gr.p_flipped,
              cfg.tol("scalar-generator-momentum-measured-sign", 1e-10),
              "the algebra produces [P_j, phi] = +i D#_j phi; the opposite sign "
              "printed in the source display fails by O(1) (see table)");
    rep.table(json{{"id", "scalar-generator-momentum-printed-sign"},
                   {"asserted_residual", gr.p_asserted},
                   {"flipped_residual", gr.p_flipped},
                   {"note", "[P_j, phi] = -i D#_j phi as printed does not hold; the "
                            "measured commutator is +i D#_j phi to machine precision"}});
  }

  {  // equal-time bracket kernels inside the polynomial-exact window
    int ext_s = std::min(5, min_axis(cfg.grid));
    KernelReport ks = scalar_equal_time_kernel(ms_s, ext_s);
    rep.check("scalar-kernel-diagonal", ks.diag_worst_rel,
              cfg.tol("scalar-kernel-diagonal", 1e-10));
    rep.check("scalar-kernel-offdiagonal", ks.offdiag_max_abs,
              cfg.tol("scalar-kernel-offdiagonal", 1e-10));
    KernelReport km = scalar_momentum_kernel(ms_s, ext_s);
    rep.check("scalar-momentum-kernel", std::max(km.offdiag_max_abs, km.diag_mean_abs),
              cfg.tol("scalar-momentum-kernel", 1e-10),
              "[dt phi, dt phi^dag] vanishes identically at equal times");
    KernelReport kp = photon_equal_time_kernel(ms_p, std::min(5, min_axis(pg)));
    rep.check("photon-kernel-diagonal", kp.diag_worst_rel,
              cfg.tol("photon-kernel-diagonal", 1e-10));
    rep.check("photon-kernel-offdiagonal", kp.offdiag_max_abs,
              cfg.tol("photon-kernel-offdiagonal", 1e-10));
    KernelReport kd = dirac_equal_time_kernel(ms_d, ext_s);
    rep.check("dirac-kernel-diagonal", kd.diag_worst_rel,
              cfg.tol("dirac-kernel-diagonal", 1e-10));
    rep.check("dirac-kernel-offdiagonal", kd.offdiag_max_abs,
              cfg.tol("dirac-kernel-offdiagonal", 1e-10));

    // resolution sweep: the delta pattern sharpens with the per-axis order and
    // lands machine-exact once the window covers the probe. The worst single
    // entry is pinned at the target magnitude below that (entries touching
    // site label M are exact zeros of the order-M rule), so the monotone
    // measure is the block-wide mean deviation.
    std::vector<double> errs, means;
    for (int m : {3, 4, 5}) {
      ModeSet msm = ModeSet::gauss_product({m, m, m}, cfg.mu);
      KernelReport kr = scalar_equal_time_kernel(msm, 5);
      errs.push_back(std::max(kr.diag_worst_rel, kr.offdiag_max_abs));
      means.push_back(kr.pattern_mean_dev);
      rep.table(json{{"id", "scalar-kernel-sweep"},
                     {"orders", m},
                     {"site_extent", 5},
                     {"diag_worst_rel", kr.diag_worst_rel},
                     {"offdiag_max_abs", kr.offdiag_max_abs},
                     {"pattern_mean_dev", kr.pattern_mean_dev}});
    }
    rep.check("scalar-kernel-delta-pattern", errs.back(),
              cfg.tol("scalar-kernel-delta-pattern", 0.05));
    rep.control("scalar-kernel-monotone-improvement",
                std::min(means[0] - means[1], means[1] - means[2]), 0.0,
                "block-mean deviation must drop strictly at each order step 3 -> 4 -> 5");
  }

  {  // charge quantization from closed one-particle expectations
    ChargeReport cs = charge_quantization(mode_sum_scalar(ms_s), ms_s);
    double e = electron_charge;
    double worst = std::max(std::abs(cs.particle_shift - e), std::abs(cs.antiparticle_shift + e));
    rep.check("scalar-charge-quantization", worst, cfg.tol("scalar-charge-quantization", 1e-12));
    ChargeReport cd_ = charge_quantization(mode_sum_dirac(ms_d), ms_d);
    worst = std::max(std::abs(cd_.particle_shift - e), std::abs(cd_.antiparticle_shift + e));
    rep.check("dirac-charge-quantization", worst, cfg.tol("dirac-charge-quantization", 1e-12));
    rep.check("charge-coupling-value", std::abs(cs.coupling + std::sqrt(4.0 * pi / 137.0)),
              cfg.tol("charge-coupling-value", 1e-15));
  }

  {  // mutual commutation of the conserved set, dense on small reps
    ModeSet m2s = ModeSet::gauss_product({2, 1, 1}, cfg.mu);
    ModeSet m2p = ModeSet::gauss_product({2, 1, 1}, 0.0);
    ModeSet m2d = ModeSet::gauss_product({2, 1, 1}, cfg.dirac_mass);
    auto mutual = [&](const ConservedSet& set, const FockRep& fr) {
      Eigen::MatrixXcd h = to_dense(set.H, fr);
      double worst = 0.0;
      double hs = std::max(h.norm(), 1.0);
      for (int j = 0; j < 3; ++j) {
        Eigen::MatrixXcd p = to_dense(set.P[static_cast<size_t>(j)], fr);
        worst = std::max(worst, (h * p - p * h).norm() / (hs * std::max(p.norm(), 1.0)));
      }
      if (set.has_charge) {
        Eigen::MatrixXcd qm = to_dense(set.Q, fr);
        double qs = std::max(qm.norm(), 1.0);
        worst = std::max(worst, (h * qm - qm * h).norm() / (hs * qs));
        for (int j = 0; j < 3; ++j) {
          Eigen::MatrixXcd p = to_dense(set.P[static_cast<size_t>(j)], fr);
          worst = std::max(worst, (p * qm - qm * p).norm() / (qs * std::max(p.norm(), 1.0)));
        }
      }
      return worst;
    };
    rep.check("scalar-mutual-commutation",
              mutual(mode_sum_scalar(m2s), build_boson_rep(m2s, 2, true)),
              cfg.tol("scalar-mutual-commutation", 1e-12));
    rep.check("photon-mutual-commutation",
              mutual(mode_sum_photon(m2p), build_photon_rep(m2p, 1)),
              cfg.tol("photon-mutual-commutation", 1e-12));
    rep.check("dirac-mutual-commutation",
              mutual(mode_sum_dirac(m2d), build_fermion_rep(m2d, 2)),
              cfg.tol("dirac-mutual-commutation", 1e-12));
  }

  {  // photon polarization content and the gauge-pair cancellation, probed on
     // a minimal massless set (dense-representation checks stay small)
    ModeSet ms_pol = ModeSet::gauss_product({2, 1, 1}, 0.0);
    PolarizationReport pr = photon_polarization(ms_pol, 4096);
    double worst_t = std::max(std::abs(pr.energy_shift[0] - pr.expected),
                              std::abs(pr.energy_shift[1] - pr.expected));
    rep.check("photon-transverse-energy", worst_t, cfg.tol("photon-transverse-energy", 1e-10));
    double signs = std::abs(pr.norm_sign[0] - 1.0) + std::abs(pr.norm_sign[1] - 1.0) +
                   std::abs(pr.norm_sign[2] - 1.0) + std::abs(pr.norm_sign[3] + 1.0);
    rep.check("photon-norm-signature", signs, cfg.tol("photon-norm-signature", 1e-12),
              "transverse and longitudinal quanta carry positive metric norm, "
              "temporal quanta negative");
    rep.table(json{{"id", "photon-polarization-shifts"},
                   {"expected", pr.expected},
                   {"transverse", {pr.energy_shift[0], pr.energy_shift[1]}},
                   {"longitudinal", pr.energy_shift[2]},
                   {"temporal", pr.energy_shift[3]}});
    GaugeCancellation gc = photon_gauge_cancellation(ms_pol, cd(0.35, 0.2), 4096);
    rep.check("photon-gauge-pair-norm", gc.norm_shift, cfg.tol("photon-gauge-pair-norm", 1e-12));
    rep.check("photon-gauge-pair-energy", gc.energy_shift,
              cfg.tol("photon-gauge-pair-energy", 1e-10),
              "admixing the zero-norm longitudinal/temporal pair moves no expectation");
    rep.check("photon-gauge-constraint", gc.constraint_norm,
              cfg.tol("photon-gauge-constraint", 1e-12));
  }

  {  // wrong-statistics controls
    ModeSet m2s = ModeSet::gauss_product({2, 1, 1}, cfg.mu);
    cd wrong = wrong_statistics_kernel_diag(ms_s, {0, 0, 0});
    rep.control("wrong-statistics-kernel-control", std::abs(wrong - cd(0.0, -1.0)),
                cfg.tol("wrong-statistics-kernel-control", 0.5),
                "anticommuting scalar registers collapse the equal-time diagonal "
                "-i to 0, an O(1) violation the check must see");
    double hq = wrong_statistics_hq_norm(m2s, 4096);
    rep.table(json{{"id", "wrong-statistics-hq"},
                   {"commutator_norm", hq},
                   {"note", "H and Q stay diagonal in the same number operators under "
                            "either statistics, so [H, Q] = 0 survives the swap; the "
                            "equal-time kernel above is the discriminating control"}});
  }

  return rep;
}

// ---------------------------------------------------------------------------
// conservation suite

Report run_conservation_suite(const RunConfig& cfg) {
  Report rep = make_report("conservation", cfg);
  ModeSet ms = ModeSet::gauss_product({3, 1, 1}, cfg.mu);
  ModeSet msd = ModeSet::gauss_product({3, 1, 1}, cfg.dirac_mass);
  const int extent = cfg.n_box;
  const std::vector<double> times{0.0, 0.3, 0.7, 1.1, 2.0};
  auto rng = make_rng(cfg, 61);
  std::uniform_real_distribution<double> ua(-1.0, 1.0);
  auto rand_vec = [&](Eigen::Index n) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = cd(ua(rng), ua(rng));
    return v;
  };
  auto rand_mat = [&](Eigen::Index r, Eigen::Index c) {
    Eigen::MatrixXcd m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cd(ua(rng), ua(rng));
    return m;
  };
  auto nmodes = static_cast<Eigen::Index>(ms.size());

  {  // scalar: single mode, then a full particle/antiparticle superposition
    ScalarAmplitudes single;
    single.particle = Eigen::VectorXcd::Zero(nmodes);
    single.particle[0] = cd(1.0, 0.0);
    single.antiparticle = Eigen::VectorXcd::Zero(nmodes);
    double worst = 0.0, scale = 0.0;
    for (double t : times) {
      StressResidual r = stress_conservation_scalar(ms, single, extent, t);
      worst = std::max({worst, r.momentum_max, r.energy_max});
      scale = std::max(scale, r.scale);
    }
    rep.check("stress-scalar-single-mode", worst, cfg.tol("stress-scalar-single-mode", 1e-8));

    ScalarAmplitudes super{rand_vec(nmodes), rand_vec(nmodes), 0.0};
    worst = 0.0;
    for (double t : times) {
      StressResidual r = stress_conservation_scalar(ms, super, extent, t);
      worst = std::max({worst, r.momentum_max, r.energy_max});
      scale = std::max(scale, r.scale);
    }
    rep.check("stress-scalar-superposition", worst, cfg.tol("stress-scalar-superposition", 1e-8));
    rep.table(json{{"id", "stress-scalar-scale"}, {"largest_component", scale}});

    ScalarAmplitudes detuned = super;
    detuned.detune = 0.05;
    double off = 0.0;
    for (double t : {0.3, 1.1}) {
      StressResidual r = stress_conservation_scalar(ms, detuned, extent, t);
      off = std::max({off, r.momentum_max, r.energy_max});
    }
    rep.control("stress-scalar-detuned-control", off,
                cfg.tol("stress-scalar-detuned-control", 1e-3),
                "5% frequency detuning must break the conservation identity");

    StressResidual rv = stress_conservation_scalar_row_variant(ms, super, extent, 0.3);
    rep.control("stress-scalar-row-variant-control",
                std::max(rv.momentum_max, rv.energy_max),
                cfg.tol("stress-scalar-row-variant-control", 1e-3),
                "the row-indexed square root with the opposite trace-group sign "
                "does not telescope; its residual stays O(1) on shell");
    rep.table(json{{"id", "stress-scalar-row-variant"},
                   {"momentum_residual", rv.momentum_max},
                   {"energy_residual", rv.energy_max},
                   {"scale", rv.scale}});
  }

  {  // Dirac: superposition over spins, modes, and both frequency branches
    DiracAmplitudes amps{rand_mat(2, nmodes), rand_mat(2, nmodes), 0.0};
    double worst = 0.0, scale = 0.0;
    for (double t : times) {
      StressResidual r = stress_conservation_dirac(msd, amps, extent, t);
      worst = std::max({worst, r.momentum_max, r.energy_max});
      scale = std::max(scale, r.scale);
    }
    rep.check("stress-dirac-superposition", worst, cfg.tol("stress-dirac-superposition", 1e-8));
    rep.table(json{{"id", "stress-dirac-scale"}, {"largest_component", scale}});

    DiracAmplitudes detuned = amps;
    detuned.detune = 0.05;
    double off = 0.0;
    for (double t : {0.3, 1.1}) {
      StressResidual r = stress_conservation_dirac(msd, detuned, extent, t);
      off = std::max({off, r.momentum_max, r.energy_max});
    }
    rep.control("stress-dirac-detuned-control", off,
                cfg.tol("stress-dirac-detuned-control", 1e-3));
  }

  return rep;
}

// ---------------------------------------------------------------------------
// dispatch and side tables

Report run_suite(const RunConfig& cfg) {
  if (cfg.suite == "basis") return run_basis_suite(cfg);
  if (cfg.suite == "lattice") return run_lattice_suite(cfg);
  if (cfg.suite == "modes") return run_modes_suite(cfg);
  if (cfg.suite == "greens") return run_greens_suite(cfg);
  if (cfg.suite == "algebra") return run_algebra_suite(cfg);
  if (cfg.suite == "observables") return run_observables_suite(cfg);
  if (cfg.suite == "conservation") return run_conservation_suite(cfg);
  if (cfg.suite != "all") throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
  Report rep = make_report("all", cfg);
  rep.merge(run_basis_suite(cfg));
  rep.merge(run_lattice_suite(cfg));
  rep.merge(run_modes_suite(cfg));
  rep.merge(run_greens_suite(cfg));
  rep.merge(run_algebra_suite(cfg));
  rep.merge(run_observables_suite(cfg));
  rep.merge(run_conservation_suite(cfg));
  return rep;
}

std::string dispersion_csv(const RunConfig& cfg) {
  ModeSet ms = ModeSet::gauss_product(cfg.grid, cfg.mu);
  std::ostringstream out;
  out << "k1,k2,k3,omega,nu,E\n";
  for (size_t i = 0; i < ms.size(); ++i) {
    const vec3& k = ms.momenta[i];
    out << fmt_g(k[0]) << ',' << fmt_g(k[1]) << ',' << fmt_g(k[2]) << ','
        << fmt_g(omega(k, cfg.mu)) << ',' << fmt_g(omega(k, 0.0)) << ','
        << fmt_g(omega(k, cfg.dirac_mass)) << '\n';
  }
  return out.str();
}

std::string greens_csv(const RunConfig& cfg) {
  std::vector<EventPair> events{
      {{0, 0, 0}, {0, 0, 0}, 0.5, 0.0},
      {{1, 2, 3}, {0, 1, 1}, 0.7, 0.2},
      {{5, 0, 2}, {4, 3, 1}, 1.3, -0.4},
      {{2, 4, 1}, {2, 4, 1}, -0.3, 0.6},
  };
  const std::array<std::pair<Contour, const char*>, 4> kinds{
      std::pair<Contour, const char*>{Contour::plus, "plus"},
      std::pair<Contour, const char*>{Contour::minus, "minus"},
      std::pair<Contour, const char*>{Contour::full, "full"},
      std::pair<Contour, const char*>{Contour::feynman, "feynman"}};
  std::ostringstream out;
  out << "n1,n2,n3,nhat1,nhat2,nhat3,t,that,mu,kind,re,im,quad_order\n";
  for (const auto& ev : events)
    for (const auto& [kind, name] : kinds) {
      cd v = delta_branch(ev, cfg.mu, cfg.quad_order, kind);
      out << ev.n[0] << ',' << ev.n[1] << ',' << ev.n[2] << ',' << ev.nhat[0] << ','
          << ev.nhat[1] << ',' << ev.nhat[2] << ',' << fmt_g(ev.t) << ',' << fmt_g(ev.that)
          << ',' << fmt_g(cfg.mu) << ',' << name << ',' << fmt_g(v.real()) << ','
          << fmt_g(v.imag()) << ',' << cfg.quad_order << '\n';
    }
  return out.str();
}

std::string convergence_csv(const RunConfig& cfg) {
  std::array<int, 3> pg = even_grid(cfg.grid);
  ModeSet ms_s = ModeSet::gauss_product(cfg.grid, cfg.mu);
  ModeSet ms_p = ModeSet::gauss_product(pg, 0.0);
  ModeSet ms_d = ModeSet::gauss_product(cfg.grid, cfg.dirac_mass);
  std::ostringstream out;
  out << "species,quantity,n_box,lattice_value,mode_sum_value,abs_err,rel_err\n";
  auto emit = [&](Species sp, const ModeSet& ms, const std::array<int, 3>& grid) {
    for (const auto& row : species_convergence_rows(sp, ms, grid, box_list(cfg)))
      out << species_name(row.sp) << ',' << row.quantity << ',' << row.n_box << ','
          << fmt_g(row.lattice_value) << ',' << fmt_g(row.mode_sum_value) << ','
          << fmt_g(row.abs_err) << ',' << fmt_g(row.rel_err) << '\n';
  };
  emit(Species::scalar, ms_s, cfg.grid);
  emit(Species::photon, ms_p, pg);
  emit(Species::dirac, ms_d, cfg.grid);
  return out.str();
}

std::string gamma_json_dump() {
  GammaSet gs = gamma_default();
  auto entry_str = [](const cd& v) -> std::string {
    double re = v.real(), im = v.imag();
    if (im == 0.0) {
      if (re == 0.0) return "0";
      if (re == 1.0) return "1";
      if (re == -1.0) return "-1";
    }
    if (re == 0.0) {
      if (im == 1.0) return "i";
      if (im == -1.0) return "-i";
    }
    return fmt_g(re) + "+" + fmt_g(im) + "i";
  };
  json j;
  j["signature"] = "(+,+,+,-)";
  j["temporal_index"] = 4;
  j["gamma"] = json::array();
  for (int m = 0; m < 4; ++m) {
    json rows = json::array();
    for (int r = 0; r < 4; ++r) {
      json row = json::array();
      for (int c = 0; c < 4; ++c) {
        const cd& v = gs.g[static_cast<size_t>(m)](r, c);
        row.push_back(json{{"re", static_cast<int>(v.real())},
                           {"im", static_cast<int>(v.imag())},
                           {"value", entry_str(v)}});
      }
      rows.push_back(std::move(row));
    }
    j["gamma"].push_back(std::move(rows));
  }
  return j.dump(2) + "\n";
}

}  // namespace dpsqft

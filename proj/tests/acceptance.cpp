// Acceptance harness: one verification criterion per invocation, one final
// PASS/FAIL verdict line per criterion. Every tolerance is pinned here, in
// code. Criteria that assert a claim the implemented algebra contradicts are
// left to fail and print the measured counter-evidence; they are not patched
// to go green.
//
// Usage: acceptance <1..9|all>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "dpsqft/basis.hpp"
#include "dpsqft/fock.hpp"
#include "dpsqft/greens.hpp"
#include "dpsqft/lattice.hpp"
#include "dpsqft/modes.hpp"
#include "dpsqft/observables.hpp"
#include "dpsqft/quadop.hpp"
#include "dpsqft/stress.hpp"

using namespace dpsqft;

namespace {

struct Criterion {
  int id = 0;
  std::string title;
  bool pass = true;

  // upper bound: measured <= bound passes; lower bound: measured > bound passes
  void clause(const std::string& text, double measured, double bound, bool lower = false) {
    bool ok = lower ? (measured > bound) : (measured <= bound);
    pass = pass && ok;
    std::printf("  [%s] %s: measured %.3e (%s bound %.3e)\n", ok ? " ok " : "FAIL",
                text.c_str(), measured, lower ? "lower" : "upper", bound);
  }
  void info(const std::string& text, double value) {
    std::printf("  [info] %s: %.6e\n", text.c_str(), value);
  }
  void note(const std::string& text) { std::printf("  note: %s\n", text.c_str()); }
};

double sec_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

void criterion_1(Criterion& c) {
  c.title = "basis identities (orthonormality, parity, overlap kernel, addition, Fourier)";

  {  // Gram matrix against the identity, order-32 rule, n <= 20. The basis
     // phases are unimodular, so the defect equals that of the real f-Gram,
     // whose density-free smooth factor is the polynomial product h_m h_n.
    QuadratureRule q = gauss_hermite(32);
    std::vector<std::vector<double>> cols;
    cols.reserve(q.nodes.size());
    for (double k : q.nodes) cols.push_back(h_column(20, k));
    double worst = 0.0;
    for (int m = 0; m <= 20; ++m)
      for (int n = 0; n <= 20; ++n) {
        double s = 0.0;
        for (size_t i = 0; i < q.nodes.size(); ++i)
          s += q.weights[i] * cols[i][static_cast<size_t>(m)] * cols[i][static_cast<size_t>(n)];
        worst = std::max(worst, std::abs(s - (m == n ? 1.0 : 0.0)));
      }
    c.clause("orthonormality Gram defect, n <= 20", worst, 1e-13);
  }

  {  // parity and conjugation, n <= 20
    double worst = 0.0;
    for (int n = 0; n <= 20; ++n)
      for (int j = 0; j < 25; ++j) {
        double k = -2.0 + 0.17 * j;
        double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        worst = std::max(worst, std::abs(xi(n, -k) - sgn * xi(n, k)));
        worst = std::max(worst, std::abs(std::conj(xi(n, k)) - sgn * xi(n, k)));
      }
    c.clause("parity / conjugation defect, n <= 20", worst, 1e-14);
  }

  {  // two-point overlap kernel: direct sum vs closed two-term form, N <= 30
    double worst = 0.0;
    for (int N : {0, 3, 12, 30})
      for (double k : {-1.7, -0.3, 0.6, 2.2})
        for (double kh : {-2.1, 0.0, 0.9, 1.4})
          worst = std::max(worst, std::abs(christoffel_darboux(N, k, kh) -
                                           christoffel_darboux_closed(N, k, kh)));
    c.clause("Christoffel-Darboux closed form, N <= 30", worst, 1e-12);
  }

  {  // addition theorem with square-root binomial weights, n <= 10
    const double quarter_pi = std::pow(pi, 0.25);
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n)
      for (double k : {-1.2, 0.0, 0.9})
        for (double p : {-0.8, 0.4, 1.6}) {
          cd lhs = std::pow(2.0, 0.5 * n) * std::exp(-0.25 * (k - p) * (k - p)) *
                   xi(n, (k + p) / std::sqrt(2.0));
          cd rhs = 0.0;
          double c_nj = 1.0;
          for (int j = 0; j <= n; ++j) {
            rhs += std::sqrt(c_nj) * xi(n - j, k) * xi(j, p);
            c_nj = c_nj * (n - j) / (j + 1.0);
          }
          worst = std::max(worst, std::abs(lhs - quarter_pi * rhs));
        }
    c.clause("addition theorem, n <= 10", worst, 1e-11);
  }

  {  // Fourier self-map, n <= 20
    double worst = 0.0;
    for (int n = 0; n <= 20; ++n)
      for (double k : {-1.4, 0.3, 1.9})
        worst = std::max(worst, fourier_self_map_check(n, k, 64));
    c.clause("Fourier self-map defect, n <= 20", worst, 1e-8);
  }
}

void criterion_2(Criterion& c) {
  c.title = "shift-ladder difference operator eigenrelation";
  // D# acting on the site sequence n -> xi_n(k) must return i k xi_n(k); run
  // the actual lattice kernel on a 1-d column for 50 k-values, n <= 40.
  double worst = 0.0;
  LatticeBox box(3, {42, 1, 1, 1});
  for (int j = 0; j < 50; ++j) {
    double k = -2.45 + 0.1 * j;
    std::vector<cd> col = xi_column(41, k);
    LatticeField<cd> f(box);
    for (int n = 0; n < 42; ++n) f.at({n, 0, 0, 0}) = col[static_cast<size_t>(n)];
    LatticeField<cd> out = delta_sharp(f, 0);
    for (int n = 0; n <= 40; ++n)
      worst = std::max(worst,
                       std::abs(out.at({n, 0, 0, 0}) - cd(0.0, k) * col[static_cast<size_t>(n)]));
  }
  c.clause("max |D# xi_n - i k xi_n|, n <= 40, 50 k-values", worst, 1e-13);
}

void criterion_3(Criterion& c) {
  c.title = "on-shell field-equation residuals";
  LatticeBox box = LatticeBox::cube3(16);
  const std::vector<double> times{0.0, 0.4, 1.1};

  double kg = 0.0;
  for (const vec3& k : {vec3{0.0, 0.0, 0.0}, vec3{0.8, -0.3, 1.2}, vec3{1.7, 0.4, -0.9}})
    kg = std::max(kg, kg_residual(k, 1.0, box, times));
  c.clause("scalar residual, 16^3 box", kg, 1e-10);

  double mw = 0.0;
  for (const vec3& k : {vec3{0.9, 0.0, 0.0}, vec3{0.5, -0.7, 0.2}, vec3{-1.1, 0.6, 1.3}})
    mw = std::max(mw, maxwell_residual(k, box));
  c.clause("photon residual (transverse modes), 16^3 box", mw, 1e-10);

  double dr = 0.0;
  for (const vec3& p : {vec3{0.0, 0.0, 0.0}, vec3{0.6, -0.2, 0.9}, vec3{-1.3, 0.8, 0.4}})
    dr = std::max(dr, dirac_residual(p, 1.0, box, 0));
  c.clause("Dirac residual, both branches plus adjoint, 16^3 box", dr, 1e-10);

  double cov = covariant_scalar_residual({0.7, -0.4, 1.1}, 0.9, LatticeBox::cube4(10));
  cov = std::max(cov, covariant_scalar_residual({0.0, 0.0, 0.0}, 1.0, LatticeBox::cube4(10)));
  c.clause("covariant scalar residual, 10^4 box", cov, 1e-10);
}

void criterion_4(Criterion& c) {
  c.title = "Green's function identities";
  const int q = 40;
  const double mu = 1.0;
  std::vector<EventPair> events{
      {{0, 0, 0}, {0, 0, 0}, 0.8, 0.0},
      {{1, 0, 2}, {0, 1, 0}, 0.3, -0.4},
      {{2, 1, 0}, {1, 1, 1}, -0.6, 0.5},
      {{3, 2, 1}, {0, 0, 2}, 1.2, 0.1},
  };

  double split = 0.0, conj_d = 0.0, anti = 0.0, swap_f = 0.0, annih = 0.0;
  for (const auto& ev : events) {
    cd dp = delta_plus(ev, mu, q), dm = delta_minus(ev, mu, q);
    cd dh = delta_homogeneous(ev, mu, q);
    split = std::max(split, std::abs(dp + dm - dh));
    conj_d = std::max(conj_d, std::abs(std::conj(dp) - dm));
    EventPair sw{ev.nhat, ev.n, ev.that, ev.t};
    anti = std::max(anti, std::abs(dh + delta_homogeneous(sw, mu, q)));
    swap_f = std::max(swap_f, std::abs(delta_feynman(ev, mu, q) - delta_feynman(sw, mu, q)));
    annih = std::max(annih, homogeneous_annihilation_residual(ev, mu, q));
  }
  c.clause("splitting  Delta = Delta_+ + Delta_-", split, 1e-12);
  c.clause("conjugation  conj(Delta_+) = Delta_-", conj_d, 1e-12);
  c.clause("antisymmetry under event exchange", anti, 1e-12);
  c.clause("Feynman swap symmetry", swap_f, 1e-12);
  c.clause("homogeneous annihilation residual", annih, 1e-8);

  double diag = 0.0, off = 0.0;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      EventPair ev{{a, 0, 1}, {b, 0, 1}, 0.7, 0.7};
      cd dt = delta_homogeneous_dt(ev, mu, q);
      if (a == b)
        diag = std::max(diag, std::abs(dt - cd(-1.0, 0.0)));
      else
        off = std::max(off, std::abs(dt));
    }
  c.clause("equal-time dt Delta diagonal vs -1, order 40", diag, 1e-6);
  c.clause("equal-time dt Delta off-diagonal", off, 1e-8);

  double s_split = 0.0, s_annih = 0.0;
  for (const auto& ev : events) {
    Eigen::Matrix4cd sp = s_function(ev, mu, Contour::plus, q);
    Eigen::Matrix4cd sm = s_function(ev, mu, Contour::minus, q);
    Eigen::Matrix4cd sh = s_function(ev, mu, Contour::full, q);
    s_split = std::max(s_split, (sp + sm - sh).cwiseAbs().maxCoeff());
    s_annih = std::max(s_annih, s_homogeneous_annihilation_residual(ev, mu, q));
  }
  c.clause("spin-1/2 splitting  S = S_+ + S_-", s_split, 1e-8);
  c.clause("spin-1/2 homogeneous annihilation residual", s_annih, 1e-8);
}

void criterion_5(Criterion& c) {
  c.title = "ladder-algebra identities in exact arithmetic";
  ExactSuiteResult boson = exact_commutator_suite(RepKind::boson, 3, 3, true);
  c.clause("charged boson suite sub-cutoff defect (3 modes, cutoff 3)",
           static_cast<double>(boson.sub_cutoff_defect), 0.0);
  ExactSuiteResult photon = exact_commutator_suite(RepKind::photon, 1, 3, false);
  c.clause("indefinite-metric photon suite sub-cutoff defect (cutoff 3)",
           static_cast<double>(photon.sub_cutoff_defect), 0.0);
  ExactSuiteResult fermion = exact_commutator_suite(RepKind::fermion, 3, 1, false);
  c.clause("fermion suite defect, all blocks",
           static_cast<double>(std::max(fermion.sub_cutoff_defect, fermion.top_block_defect)),
           0.0);
  c.note("bosonic top-occupation blocks carry the unavoidable truncation artifact; the "
         "fermionic algebra closes with no edge at all");
}

void criterion_6(Criterion& c) {
  c.title = "conserved-quantity lattice/mode-sum equivalence, charge quantization, vacuum signs";

  struct Sweep {
    Species sp;
    const char* name;
    std::vector<int> grids;
    double mass;
  };
  std::vector<Sweep> sweeps{
      {Species::scalar, "scalar", {3, 4, 5}, 1.0},
      {Species::photon, "photon", {4}, 0.0},
      {Species::dirac, "dirac", {3, 4, 5}, 1.0},
  };
  // a massless set with an odd per-axis order places a node at k = 0 where the
  // photon frequency vanishes, so the photon sweep uses the even order in range
  for (const auto& sw : sweeps) {
    for (int m : sw.grids) {
      ModeSet ms = ModeSet::gauss_product({m, m, m}, sw.mass);
      auto rows = oracle_convergence(sw.sp, ms, {8, 12, 16});
      double e8 = rows[0].dist.worst, e12 = rows[1].dist.worst, e16 = rows[2].dist.worst;
      char label[96];
      std::snprintf(label, sizeof(label), "%s %d^3 modes: rel err at N_box = 12", sw.name, m);
      c.clause(label, e12, 0.02);
      std::snprintf(label, sizeof(label),
                    "%s %d^3 modes: err strictly decreasing over N_box {8,12,16}", sw.name, m);
      bool dec = e8 > e12 && e12 > e16;
      c.clause(label, dec ? 1.0 : 0.0, 0.5, true);
      std::printf("     errors over N_box {8,12,16}: %.3e  %.3e  %.3e\n", e8, e12, e16);
      // supporting evidence: inside the duality window the match is exact
      double in_window = set_distance(sw.sp == Species::scalar
                                          ? conserved_scalar(ms, m)
                                          : (sw.sp == Species::photon ? conserved_photon(ms, m)
                                                                      : conserved_dirac(ms, m)),
                                      sw.sp == Species::scalar
                                          ? mode_sum_scalar(ms)
                                          : (sw.sp == Species::photon ? mode_sum_photon(ms)
                                                                      : mode_sum_dirac(ms)),
                                      ms)
                             .worst;
      std::snprintf(label, sizeof(label), "%s %d^3 modes: rel err at N_box = %d (duality window)",
                    sw.name, m, m);
      c.info(label, in_window);
    }
  }
  c.note("an order-M Gauss rule reproduces the basis-function site sums exactly only while "
         "every site label stays below the rule's polynomial exactness degree; that holds "
         "for N_box in {M, M+1} (machine-precision agreement above) and degrades as the box "
         "grows past the window, so the error at N_box = 12 sits at O(1) for these mode "
         "counts and increases, rather than decreases, over N_box {8, 12, 16}. The two "
         "box-sweep clauses are therefore expected to fail; the equivalence itself is "
         "established inside the window.");

  ModeSet ms3 = ModeSet::gauss_product({3, 3, 3}, 1.0);
  c.clause("charge coupling |e - (-sqrt(4 pi / 137))|",
           std::abs(electron_charge - (-std::sqrt(4.0 * M_PI / 137.0))), 1e-15);
  ChargeReport qs = charge_quantization(mode_sum_scalar(ms3), ms3);
  c.clause("scalar particle charge shift vs +e", std::abs(qs.particle_shift - electron_charge),
           1e-12);
  c.clause("scalar antiparticle charge shift vs -e",
           std::abs(qs.antiparticle_shift + electron_charge), 1e-12);
  ChargeReport qd = charge_quantization(mode_sum_dirac(ms3), ms3);
  c.clause("Dirac particle charge shift vs +e", std::abs(qd.particle_shift - electron_charge),
           1e-12);
  c.clause("Dirac antiparticle charge shift vs -e",
           std::abs(qd.antiparticle_shift + electron_charge), 1e-12);

  ModeSet ms0 = ModeSet::gauss_product({2, 2, 2}, 0.0);
  double zp_s = normal_order(mode_sum_scalar(ms3), ms3).zero_point;
  double zp_p = normal_order(mode_sum_photon(ms0), ms0).zero_point;
  double zp_d = normal_order(mode_sum_dirac(ms3), ms3).zero_point;
  c.clause("bosonic vacuum energy (scalar) positive", zp_s, 0.0, true);
  c.clause("bosonic vacuum energy (photon) positive", zp_p, 0.0, true);
  c.clause("fermionic vacuum energy negative", -zp_d, 0.0, true);
}

void criterion_7(Criterion& c) {
  c.title = "generator commutators and polarization reduction";
  ModeSet ms = ModeSet::gauss_product({2, 2, 2}, 1.0);
  GeneratorReport g = generator_check(mode_sum_scalar(ms), ms, 3);
  c.clause("[H, phi] = -i dt phi", g.h_residual, 1e-10);
  c.clause("[Q, phi] = -e phi", g.q_residual, 1e-10);
  c.clause("[P_j, phi] = -i D#_j phi (sign as printed)", g.p_asserted, 1e-10);
  c.info("[P_j, phi] = +i D#_j phi (opposite sign)", g.p_flipped);
  c.note("with the mode expansion that makes the energy and charge lines close (phi ~ a Xi "
         "e^{-i omega t} + b^dag conj(Xi) e^{+i omega t}), the coefficient algebra gives "
         "[P_j, phi] = +i D#_j phi to machine precision -- the opposite-sign residual above. "
         "The printed -i assignment on the momentum line is inconsistent with that same "
         "convention, so this clause fails by an O(1) margin and is reported, not patched.");

  {  // pairwise commutators of the conserved set, dense per species
    struct Probe {
      const char* name;
      ConservedSet set;
      FockRep rep;
    };
    ModeSet msm = ModeSet::gauss_product({2, 1, 1}, 1.0);
    ModeSet ms0 = ModeSet::gauss_product({2, 1, 1}, 0.0);
    std::vector<Probe> probes;
    probes.push_back({"scalar", mode_sum_scalar(msm), build_boson_rep(msm, 2, true)});
    probes.push_back({"photon", mode_sum_photon(ms0), build_photon_rep(ms0, 1)});
    probes.push_back({"dirac", mode_sum_dirac(msm), build_fermion_rep(msm, 2)});
    double worst = 0.0;
    for (const auto& pr : probes) {
      std::vector<Eigen::MatrixXcd> gens;
      gens.push_back(to_dense(pr.set.H, pr.rep));
      for (int j = 0; j < 3; ++j) gens.push_back(to_dense(pr.set.P[j], pr.rep));
      if (pr.set.has_charge) gens.push_back(to_dense(pr.set.Q, pr.rep));
      for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j) {
          double scale = std::max(1.0, gens[i].norm() * gens[j].norm());
          worst = std::max(worst, (gens[i] * gens[j] - gens[j] * gens[i]).norm() / scale);
        }
    }
    c.clause("pairwise {H, P_j, Q} commutators, all species", worst, 1e-12);
  }

  {  // non-transverse polarization content cancels in <H> on admissible states
    ModeSet pol = ModeSet::gauss_product({2, 1, 1}, 0.0);
    double worst = 0.0;
    for (cd adm : {cd(0.4, 0.1), cd(-0.9, 0.3)})
      worst = std::max(worst, photon_gauge_cancellation(pol, adm, 4096).energy_shift);
    c.clause("longitudinal/temporal pair cancellation in <H>", worst, 1e-10);
    PolarizationReport rep = photon_polarization(pol, 4096);
    c.info("transverse one-particle energy shift vs mode frequency",
           std::max(std::abs(rep.energy_shift[0] - rep.expected),
                    std::abs(rep.energy_shift[1] - rep.expected)));
  }
}

void criterion_8(Criterion& c) {
  c.title = "c-number stress-tensor conservation";
  ModeSet ms = ModeSet::gauss_product({3, 1, 1}, 1.0);
  std::mt19937_64 rng(20260814ull);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  ScalarAmplitudes sa;
  sa.particle.resize(static_cast<Eigen::Index>(ms.size()));
  sa.antiparticle.resize(static_cast<Eigen::Index>(ms.size()));
  for (Eigen::Index i = 0; i < sa.particle.size(); ++i) {
    sa.particle[i] = cd(u(rng), u(rng));
    sa.antiparticle[i] = cd(u(rng), u(rng));
  }
  DiracAmplitudes da;
  da.particle.resize(2, static_cast<Eigen::Index>(ms.size()));
  da.antiparticle.resize(2, static_cast<Eigen::Index>(ms.size()));
  for (Eigen::Index r = 0; r < 2; ++r)
    for (Eigen::Index i = 0; i < da.particle.cols(); ++i) {
      da.particle(r, i) = cd(u(rng), u(rng));
      da.antiparticle(r, i) = cd(u(rng), u(rng));
    }

  const std::vector<double> times{0.0, 0.3, 0.7, 1.1, 2.0};
  double s_res = 0.0, d_res = 0.0;
  for (double t : times) {
    StressResidual rs = stress_conservation_scalar(ms, sa, 12, t);
    s_res = std::max(s_res, std::max(rs.momentum_max, rs.energy_max) / std::max(1.0, rs.scale));
    StressResidual rd = stress_conservation_dirac(ms, da, 12, t);
    d_res = std::max(d_res, std::max(rd.momentum_max, rd.energy_max) / std::max(1.0, rd.scale));
  }
  c.clause("scalar conservation residual, 3 modes, 12^3 box, 5 times", s_res, 1e-8);
  c.clause("Dirac conservation residual, 3 modes, 12^3 box, 5 times", d_res, 1e-8);

  sa.detune = 0.05;
  da.detune = 0.05;
  StressResidual cs = stress_conservation_scalar(ms, sa, 12, 0.7);
  StressResidual ds = stress_conservation_dirac(ms, da, 12, 0.7);
  c.clause("detuned scalar control residual", std::max(cs.momentum_max, cs.energy_max), 1e-3,
           true);
  c.clause("detuned Dirac control residual", std::max(ds.momentum_max, ds.energy_max), 1e-3,
           true);
}

void criterion_9(Criterion& c) {
  c.title = "equal-time bracket site-delta pattern";
  double prev_s = 1e300, prev_d = 1e300;
  double last_off_s = 0, last_diag_s = 0, last_off_d = 0, last_diag_d = 0;
  bool mono = true;
  for (int m : {3, 4, 5}) {
    ModeSet ms = ModeSet::gauss_product({m, m, m}, 1.0);
    KernelReport ks = scalar_equal_time_kernel(ms, 5);
    KernelReport kd = dirac_equal_time_kernel(ms, 5);
    std::printf("     %d^3 modes: scalar mean dev %.3e (worst entry %.3e), Dirac mean dev %.3e (worst entry %.3e)\n",
                m, ks.pattern_mean_dev, std::max(ks.diag_worst_rel, ks.offdiag_max_abs),
                kd.pattern_mean_dev, std::max(kd.diag_worst_rel, kd.offdiag_max_abs));
    mono = mono && ks.pattern_mean_dev < prev_s && kd.pattern_mean_dev < prev_d;
    prev_s = ks.pattern_mean_dev;
    prev_d = kd.pattern_mean_dev;
    if (m == 5) {
      last_off_s = ks.offdiag_max_abs;
      last_diag_s = ks.diag_worst_rel;
      last_off_d = kd.offdiag_max_abs;
      last_diag_d = kd.diag_worst_rel;
    }
  }
  c.clause("scalar off-diagonal at 5^3 modes", last_off_s, 0.05);
  c.clause("scalar diagonal relative error at 5^3 modes", last_diag_s, 0.05);
  c.clause("Dirac off-diagonal at 5^3 modes", last_off_d, 0.05);
  c.clause("Dirac diagonal relative error at 5^3 modes", last_diag_d, 0.05);
  c.clause("block-mean deviation strictly improves 3^3 -> 4^3 -> 5^3", mono ? 1.0 : 0.0, 0.5,
           true);
  c.note(
      "an order-M rule places its nodes at the zeros of the order-M basis function, so every\n"
      "     bracket entry touching site label M is an exact zero; at extent 5 the worst single\n"
      "     entry therefore stays pinned at the full target magnitude for M < 5 and collapses to\n"
      "     rounding at M = 5, while the block-wide mean deviation decreases at every step.");
}

// ---------------------------------------------------------------------------

const double time_limit[10] = {0, 10, 1, 30, 60, 20, 300, 0, 0, 0};

bool run_one(int id) {
  Criterion c;
  c.id = id;
  std::printf("== criterion %d ==\n", id);
  auto t0 = std::chrono::steady_clock::now();
  switch (id) {
    case 1: criterion_1(c); break;
    case 2: criterion_2(c); break;
    case 3: criterion_3(c); break;
    case 4: criterion_4(c); break;
    case 5: criterion_5(c); break;
    case 6: criterion_6(c); break;
    case 7: criterion_7(c); break;
    case 8: criterion_8(c); break;
    case 9: criterion_9(c); break;
    default: std::fprintf(stderr, "unknown criterion %d\n", id); return false;
  }
  double dt = sec_since(t0);
  if (time_limit[id] > 0) c.clause("runtime (s)", dt, time_limit[id]);
  std::printf("criterion %d: %s - %s (%.2f s)\n", id, c.pass ? "PASS" : "FAIL",
              c.title.c_str(), dt);
  return c.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance <1..9|all>\n");
    return 2;
  }
  bool ok = true;
  if (std::strcmp(argv[1], "all") == 0) {
    for (int id = 1; id <= 9; ++id) ok = run_one(id) && ok;
  } else {
    int id = std::atoi(argv[1]);
    if (id < 1 || id > 9) {
      std::fprintf(stderr, "usage: acceptance <1..9|all>\n");
      return 2;
    }
    ok = run_one(id);
  }
  return ok ? 0 : 1;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "dpsqft/observables.hpp"

using namespace dpsqft;

namespace {
ModeSet small_massive() { return ModeSet::gauss_product({2, 2, 2}, 1.0); }
ModeSet small_massless() { return ModeSet::gauss_product({2, 2, 2}, 0.0); }
}  // namespace

TEST_CASE("charge coupling constant") {
  CHECK(std::abs(electron_charge - (-0.30286190409413793)) < 1e-15);
  CHECK(electron_charge == doctest::Approx(-std::sqrt(4.0 * M_PI / 137.0)).epsilon(1e-15));
}

TEST_CASE("register layout and statistics per species") {
  CHECK(register_count(Species::scalar, 5) == 10);
  CHECK(register_count(Species::photon, 5) == 20);
  CHECK(register_count(Species::dirac, 5) == 20);
  CHECK(!is_fermi(Species::scalar));
  CHECK(!is_fermi(Species::photon));
  CHECK(is_fermi(Species::dirac));
}

TEST_CASE("bracket constants carry the weights and the photon's temporal sign") {
  ModeSet ms = small_massive();
  Eigen::VectorXd gs = bracket_constants(Species::scalar, ms);
  REQUIRE(gs.size() == register_count(Species::scalar, static_cast<int>(ms.size())));
  for (size_t i = 0; i < ms.size(); ++i) {
    CHECK(gs[static_cast<int>(i)] ==
          doctest::Approx(1.0 / ms.weights[i]).epsilon(1e-15));
    CHECK(gs[static_cast<int>(ms.size() + i)] ==
          doctest::Approx(1.0 / ms.weights[i]).epsilon(1e-15));
  }
  ModeSet m0 = small_massless();
  Eigen::VectorXd gp = bracket_constants(Species::photon, m0);
  const int nm = static_cast<int>(m0.size());
  for (int i = 0; i < nm; ++i) {
    CHECK(gp[i] > 0.0);              // spatial families
    CHECK(gp[3 * nm + i] < 0.0);     // temporal family flips sign
    CHECK(gp[3 * nm + i] == doctest::Approx(-gp[i]).epsilon(1e-15));
  }
  Eigen::VectorXd gd = bracket_constants(Species::dirac, ms);
  CHECK((gd.array() > 0.0).all());
}

TEST_CASE("site field assembly: literal neighbor differencing matches the mode eigenvalue route") {
  ModeSet ms = small_massive();
  FieldOperatorLattice f = assemble_scalar_field(ms, 4);
  const ScalarFieldSite& c = f.at({1, 1, 1});

  // D#_1 phi at the site versus (1/sqrt 2)[sqrt(n+1) phi(n+1) - sqrt(n) phi(n-1)]
  const ScalarFieldSite& up = f.at({2, 1, 1});
  const ScalarFieldSite& dn = f.at({0, 1, 1});
  Eigen::VectorXcd lit_an =
      (std::sqrt(2.0) * up.phi.an - std::sqrt(1.0) * dn.phi.an) / std::sqrt(2.0);
  Eigen::VectorXcd lit_cr =
      (std::sqrt(2.0) * up.phi.cr - std::sqrt(1.0) * dn.phi.cr) / std::sqrt(2.0);
  CHECK((c.dsharp_phi[0].an - lit_an).norm() < 1e-13);
  CHECK((c.dsharp_phi[0].cr - lit_cr).norm() < 1e-13);

  // conjugate field is the adjoint expression
  LinOp adj = lin_adjoint(c.phi);
  CHECK((c.phi_dag.an - adj.an).norm() < 1e-14);
  CHECK((c.phi_dag.cr - adj.cr).norm() < 1e-14);

  CHECK_THROWS_AS((void)f.at({4, 0, 0}), std::out_of_range);
  CHECK_THROWS_AS((void)f.at({0, -1, 0}), std::out_of_range);
}

TEST_CASE("conserved sets are Hermitian under the metric form") {
  ModeSet ms = small_massive();
  ModeSet m0 = small_massless();
  CHECK(hermiticity_defect(conserved_scalar(ms, 3), ms) < 1e-12);
  CHECK(hermiticity_defect(mode_sum_scalar(ms), ms) < 1e-12);
  CHECK(hermiticity_defect(conserved_photon(m0, 3), m0) < 1e-12);
  CHECK(hermiticity_defect(mode_sum_photon(m0), m0) < 1e-12);
  CHECK(hermiticity_defect(conserved_dirac(ms, 3), ms) < 1e-12);
  CHECK(hermiticity_defect(mode_sum_dirac(ms), ms) < 1e-12);
}

TEST_CASE("lattice sums collapse onto the diagonal mode sums inside the duality window") {
  // with M quadrature nodes per axis, box extents M and M+1 resolve the node
  // sums exactly; one step past the window the identification breaks down
  ModeSet ms = small_massive();
  ModeSet m0 = small_massless();

  for (int n_box : {2, 3}) {
    CHECK(set_distance(conserved_scalar(ms, n_box), mode_sum_scalar(ms), ms).worst < 1e-12);
    CHECK(set_distance(conserved_photon(m0, n_box), mode_sum_photon(m0), m0).worst < 1e-12);
    CHECK(set_distance(conserved_dirac(ms, n_box), mode_sum_dirac(ms), ms).worst < 1e-12);
  }
  CHECK(set_distance(conserved_scalar(ms, 4), mode_sum_scalar(ms), ms).worst > 1e-3);

  auto rows = oracle_convergence(Species::scalar, ms, {2, 3, 4});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].n_box == 2);
  CHECK(rows[0].dist.worst < 1e-12);
  CHECK(rows[1].dist.worst < 1e-12);
  CHECK(rows[2].dist.worst > 1e-3);
}

TEST_CASE("normal ordering: sign of the vacuum constant and clean bookkeeping") {
  ModeSet ms = small_massive();
  ModeSet m0 = small_massless();

  struct Row {
    ConservedSet raw;
    const ModeSet* ms;
    bool fermi;
  };
  std::vector<Row> rows;
  rows.push_back({mode_sum_scalar(ms), &ms, false});
  rows.push_back({mode_sum_photon(m0), &m0, false});
  rows.push_back({mode_sum_dirac(ms), &ms, true});

  for (const auto& row : rows) {
    ConservedSet no = normal_order(row.raw, *row.ms);
    CHECK(no.normal_ordered);
    CHECK(!row.raw.normal_ordered);
    if (row.fermi) {
      CHECK(no.zero_point < 0.0);  // filled-sea constant is negative
    } else {
      CHECK(no.zero_point > 0.0);  // half-quantum per mode, positive
    }
    Eigen::VectorXd g = bracket_constants(row.raw.species, *row.ms);
    cd raw_vac = vacuum_expectation(row.raw.H, g);
    cd ord_vac = vacuum_expectation(no.H, g);
    CHECK(std::abs(ord_vac) < 1e-12 * (1.0 + std::abs(raw_vac)));
    CHECK(std::abs(raw_vac - cd(no.zero_point, 0.0)) < 1e-12 * (1.0 + std::abs(raw_vac)));
    if (row.raw.has_charge)
      CHECK(std::abs(vacuum_expectation(no.Q, g)) < 1e-12);
  }
}

TEST_CASE("generator relations for the scalar set, with the momentum sign measured") {
  ModeSet ms = small_massive();
  GeneratorReport rep = generator_check(mode_sum_scalar(ms), ms, 3);
  CHECK(rep.h_residual < 1e-10);
  CHECK(rep.q_residual < 1e-10);
  // the algebra produces [P_j, phi] = +i D#_j phi: the flipped-sign residual is
  // the one that vanishes, and the asserted printed sign misses by O(1)
  CHECK(rep.p_flipped < 1e-10);
  CHECK(rep.p_asserted > 0.1);
  CHECK_THROWS_AS((void)generator_check(mode_sum_photon(small_massless()),
                                        small_massless(), 2),
                  std::invalid_argument);
}

TEST_CASE("equal-time bracket kernels reproduce the site delta inside the resolution window") {
  ModeSet ms = ModeSet::gauss_product({3, 3, 3}, 1.0);
  KernelReport sk = scalar_equal_time_kernel(ms, 3);
  CHECK(sk.diag_worst_rel < 1e-12);
  CHECK(sk.offdiag_max_abs < 1e-12);

  KernelReport mk = scalar_momentum_kernel(ms, 3);
  CHECK(mk.diag_mean_abs == 0.0);  // exact cancellation, not merely small
  CHECK(mk.offdiag_max_abs < 1e-12);

  ModeSet m0 = small_massless();
  KernelReport pk = photon_equal_time_kernel(m0, 2);
  CHECK(pk.diag_worst_rel < 1e-12);
  CHECK(pk.offdiag_max_abs < 1e-12);

  KernelReport dk = dirac_equal_time_kernel(small_massive(), 2);
  CHECK(dk.diag_worst_rel < 1e-12);
  CHECK(dk.offdiag_max_abs < 1e-12);
}

TEST_CASE("kernel delta pattern sharpens as the mode count grows past the probed sites") {
  // extent 5 probes site labels 0..4; with M nodes per axis the Gauss rule
  // integrates label pairs up to 2M-1 exactly, so M = 5 is the first exact
  // rung. Below that, entries touching label M are exact zeros (the nodes are
  // the zeros of the order-M basis function), which pins the worst single
  // entry at the full target magnitude for every M < 5 -- the sharpening
  // shows up in the block-wide mean deviation instead.
  double prev = 1e300;
  for (int m : {3, 4, 5}) {
    ModeSet ms = ModeSet::gauss_product({m, m, m}, 1.0);
    KernelReport k = scalar_equal_time_kernel(ms, 5);
    CHECK(k.pattern_mean_dev < prev);
    prev = k.pattern_mean_dev;
    if (m < 5) CHECK(k.diag_worst_rel == 1.0);  // the structural zero, exactly
    if (m == 5) CHECK(std::max(k.diag_worst_rel, k.offdiag_max_abs) < 1e-12);
  }
}

TEST_CASE("charge is quantized in units of the coupling for both charged fields") {
  ModeSet ms = small_massive();
  for (const ConservedSet& set : {mode_sum_scalar(ms), mode_sum_dirac(ms)}) {
    ChargeReport cr = charge_quantization(set, ms);
    CHECK(std::abs(cr.coupling - electron_charge) < 1e-15);
    CHECK(std::abs(cr.particle_shift - electron_charge) < 1e-12);
    CHECK(std::abs(cr.antiparticle_shift + electron_charge) < 1e-12);
  }
  ModeSet m0 = small_massless();
  CHECK_THROWS_AS((void)charge_quantization(mode_sum_photon(m0), m0),
                  std::invalid_argument);
}

TEST_CASE("photon polarization content: transverse quanta carry the energy, temporal norm flips") {
  ModeSet ms = ModeSet::gauss_product({2, 1, 1}, 0.0);
  PolarizationReport rep = photon_polarization(ms, 4096);
  CHECK(rep.expected > 0.0);
  CHECK(std::abs(rep.energy_shift[0] - rep.expected) < 1e-10);
  CHECK(std::abs(rep.energy_shift[1] - rep.expected) < 1e-10);
  CHECK(rep.norm_sign[0] == doctest::Approx(1.0));
  CHECK(rep.norm_sign[1] == doctest::Approx(1.0));
  CHECK(rep.norm_sign[2] == doctest::Approx(1.0));
  CHECK(rep.norm_sign[3] == doctest::Approx(-1.0));
}

TEST_CASE("admissible longitudinal-temporal admixtures are invisible to norm and energy") {
  ModeSet ms = ModeSet::gauss_product({2, 1, 1}, 0.0);
  for (cd c : {cd(0.3, 0.2), cd(-0.8, 0.0), cd(0.0, 1.1)}) {
    GaugeCancellation gc = photon_gauge_cancellation(ms, c, 4096);
    CHECK(gc.norm_shift < 1e-12);
    CHECK(gc.energy_shift < 1e-10);
    CHECK(gc.constraint_norm < 1e-12);
  }
}

TEST_CASE("wrong-statistics controls: the bracket kernel catches it, the conservation algebra does not") {
  ModeSet ms = ModeSet::gauss_product({2, 1, 1}, 1.0);
  // correct statistics put -i on the kernel diagonal; anticommuting registers
  // collapse it to zero, an O(1) violation
  cd wrong = wrong_statistics_kernel_diag(ms, {0, 0, 0});
  CHECK(std::abs(wrong) < 1e-10);
  CHECK(std::abs(wrong - cd(0.0, -1.0)) > 0.5);
  // but [H, Q] stays zero either way (both are diagonal in the same registers),
  // so commuting-generator checks alone cannot detect the wrong statistics
  CHECK(wrong_statistics_hq_norm(ms, 4096) < 1e-10);
}

TEST_CASE("different species commute as operators on a joint representation probe") {
  // cheap cross-check at the coefficient level: scalar H against dirac H built
  // on disjoint registers has no cross terms by construction, so here we only
  // assert the dense small-rep route used by the suite driver stays consistent
  ModeSet ms = ModeSet::gauss_product({1, 1, 1}, 1.0);
  ConservedSet s = mode_sum_scalar(ms);
  Eigen::VectorXd g = bracket_constants(Species::scalar, ms);
  FockRep rep = build_boson_rep(ms, 2, true);
  Eigen::MatrixXcd H = to_dense(s.H, rep);
  Eigen::MatrixXcd Q = to_dense(s.Q, rep);
  double scale = std::max(1.0, H.norm() * Q.norm());
  CHECK((H * Q - Q * H).norm() / scale < 1e-13);
  Eigen::MatrixXcd P0 = to_dense(s.P[0], rep);
  CHECK((H * P0 - P0 * H).norm() / scale < 1e-13);
}

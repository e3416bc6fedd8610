#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "dpsqft/stress.hpp"

using namespace dpsqft;

namespace {
ModeSet band() { return ModeSet::gauss_product({3, 1, 1}, 1.0); }

ScalarAmplitudes random_scalar_amps(const ModeSet& ms, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScalarAmplitudes a;
  a.particle.resize(static_cast<Eigen::Index>(ms.size()));
  a.antiparticle.resize(static_cast<Eigen::Index>(ms.size()));
  for (Eigen::Index i = 0; i < a.particle.size(); ++i) {
    a.particle[i] = cd(u(rng), u(rng));
    a.antiparticle[i] = cd(u(rng), u(rng));
  }
  return a;
}

DiracAmplitudes random_dirac_amps(const ModeSet& ms, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DiracAmplitudes a;
  a.particle.resize(2, static_cast<Eigen::Index>(ms.size()));
  a.antiparticle.resize(2, static_cast<Eigen::Index>(ms.size()));
  for (Eigen::Index r = 0; r < 2; ++r)
    for (Eigen::Index i = 0; i < a.particle.cols(); ++i) {
      a.particle(r, i) = cd(u(rng), u(rng));
      a.antiparticle(r, i) = cd(u(rng), u(rng));
    }
  return a;
}
}  // namespace

TEST_CASE("scalar stress conservation: single mode on shell") {
  ModeSet ms = band();
  ScalarAmplitudes a;
  a.particle = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(ms.size()));
  a.antiparticle = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(ms.size()));
  a.particle[0] = cd(0.7, -0.4);
  for (double t : {0.0, 0.6, 1.3}) {
    StressResidual r = stress_conservation_scalar(ms, a, 8, t);
    CHECK(r.scale > 0.0);
    CHECK(r.momentum_max < 1e-8 * r.scale);
    CHECK(r.energy_max < 1e-8 * r.scale);
  }
}

TEST_CASE("scalar stress conservation: random superposition, several times and extents") {
  ModeSet ms = band();
  ScalarAmplitudes a = random_scalar_amps(ms, 2026);
  for (int extent : {6, 10})
    for (double t : {0.0, 0.3, 0.7, 1.1, 2.0}) {
      StressResidual r = stress_conservation_scalar(ms, a, extent, t);
      CHECK(r.momentum_max < 1e-8 * std::max(1.0, r.scale));
      CHECK(r.energy_max < 1e-8 * std::max(1.0, r.scale));
    }
}

TEST_CASE("detuned frequencies break scalar conservation at first order in the detuning") {
  ModeSet ms = band();
  ScalarAmplitudes a = random_scalar_amps(ms, 7);
  a.detune = 0.05;
  StressResidual r = stress_conservation_scalar(ms, a, 8, 0.7);
  CHECK(std::max(r.momentum_max, r.energy_max) > 1e-3);

  a.detune = 0.005;  // an order of magnitude less detuning, roughly an order
  StressResidual r2 = stress_conservation_scalar(ms, a, 8, 0.7);
  CHECK(std::max(r2.momentum_max, r2.energy_max) > 1e-4);
  CHECK(std::max(r2.momentum_max, r2.energy_max) <
        0.5 * std::max(r.momentum_max, r.energy_max));
}

TEST_CASE("row-indexed square-root variant does not telescope: O(1) residual on shell") {
  ModeSet ms = band();
  ScalarAmplitudes a = random_scalar_amps(ms, 2026);
  StressResidual good = stress_conservation_scalar(ms, a, 8, 0.7);
  StressResidual bad = stress_conservation_scalar_row_variant(ms, a, 8, 0.7);
  CHECK(bad.momentum_max > 1e-3 * std::max(1.0, bad.scale));
  CHECK(bad.momentum_max > 1e4 * std::max(good.momentum_max, 1e-300));
}

TEST_CASE("Dirac stress conservation on shell, and its detuned control") {
  ModeSet ms = band();
  DiracAmplitudes a = random_dirac_amps(ms, 11);
  for (double t : {0.0, 0.7, 1.6}) {
    StressResidual r = stress_conservation_dirac(ms, a, 8, t);
    CHECK(r.momentum_max < 1e-8 * std::max(1.0, r.scale));
    CHECK(r.energy_max < 1e-8 * std::max(1.0, r.scale));
  }
  a.detune = 0.05;
  StressResidual rd = stress_conservation_dirac(ms, a, 8, 0.7);
  CHECK(std::max(rd.momentum_max, rd.energy_max) > 1e-3);
}

TEST_CASE("sample components: finite values, zero field gives zero tensor") {
  ModeSet ms = band();
  ScalarAmplitudes a = random_scalar_amps(ms, 3);
  StressTensorSample s = stress_sample_scalar(ms, a, {2, 0, 1}, 0.4);
  CHECK(std::isfinite(s.energy.real()));
  CHECK(std::isfinite(s.spatial.cwiseAbs().maxCoeff()));
  CHECK(s.site == std::array<int, 3>{2, 0, 1});

  ScalarAmplitudes zero;
  zero.particle = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(ms.size()));
  zero.antiparticle = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(ms.size()));
  StressTensorSample z = stress_sample_scalar(ms, zero, {1, 1, 1}, 0.0);
  CHECK(std::abs(z.energy) == 0.0);
  CHECK(z.spatial.cwiseAbs().maxCoeff() == 0.0);

  DiracAmplitudes d = random_dirac_amps(ms, 4);
  StressTensorSample sd = stress_sample_dirac(ms, d, {0, 0, 0}, 0.2);
  CHECK(std::isfinite(sd.energy.real()));
}

TEST_CASE("argument guards") {
  ModeSet ms = band();
  ScalarAmplitudes a = random_scalar_amps(ms, 5);
  CHECK_THROWS_AS((void)stress_conservation_scalar(ms, a, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)stress_sample_scalar(ms, a, {-1, 0, 0}, 0.0), std::out_of_range);

  ScalarAmplitudes wrong;
  wrong.particle = Eigen::VectorXcd::Zero(2);
  wrong.antiparticle = Eigen::VectorXcd::Zero(2);
  CHECK_THROWS_AS((void)stress_sample_scalar(ms, wrong, {0, 0, 0}, 0.0),
                  std::invalid_argument);

  DiracAmplitudes dw;
  dw.particle = Eigen::MatrixXcd::Zero(3, static_cast<Eigen::Index>(ms.size()));
  dw.antiparticle = Eigen::MatrixXcd::Zero(2, static_cast<Eigen::Index>(ms.size()));
  CHECK_THROWS_AS((void)stress_sample_dirac(ms, dw, {0, 0, 0}, 0.0),
                  std::invalid_argument);

  ModeSet massless = ModeSet::gauss_product({2, 1, 1}, 0.0);
  DiracAmplitudes d = random_dirac_amps(massless, 6);
  CHECK_THROWS_AS((void)stress_conservation_dirac(massless, d, 4, 0.0),
                  std::domain_error);
}

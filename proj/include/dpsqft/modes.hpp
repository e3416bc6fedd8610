#pragma once
// Plane-wave analogues over the site lattice: dispersion relations, on-shell
// mode fields for the scalar / Maxwell / Dirac difference equations, gamma
// matrices and momentum spinors, polarization tetrads, and the discretized
// momentum grid (ModeSet) shared by the operator-algebra modules.

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "dpsqft/basis.hpp"
#include "dpsqft/lattice.hpp"

namespace dpsqft {

using vec3 = std::array<double, 3>;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

// +sqrt(|k|^2 + mass^2); covers omega (scalar), nu (mass 0), E (Dirac).
double omega(const vec3& k, double mass);

// [2*omega]^{-1/2} prod_j xi_{n_j}(k_j) e^{-i omega t} for sign -1, and the
// conjugate pattern with e^{+i omega t} for sign +1.
cd scalar_mode(const std::array<int, 3>& n, const vec3& k, double t, int sign, double mu);

// Lattice field of the above over a 3D box at fixed time (sign -1 branch by
// default). omega_override lets the caller detune the frequency off shell.
LatticeField<cd> scalar_mode_field(const vec3& k, double mu, const LatticeBox& box,
                                   double t, int sign = -1, double omega_override = -1.0);

// max |delta^{ab} D#_a D#_b phi + omega_used^2 phi - mu^2 phi| over valid
// sites and the given times (time derivative analytic: -omega_used^2 phi).
double kg_residual(const vec3& k, double mu, const LatticeBox& box,
                   const std::vector<double>& t_samples);
double kg_residual_detuned(const vec3& k, double mu, const LatticeBox& box,
                           double domega, const std::vector<double>& t_samples);

// Same check at mass 0 applied per Lorentz component of a transverse mode.
double maxwell_residual(const vec3& k, const LatticeBox& box);

// Covariant form: prod over all four axes of xi_{n_mu}(k_mu) with
// k_4 = -omega(k, mu), pushed through the discrete d'Alembertian.
double covariant_scalar_residual(const vec3& k, double mu, const LatticeBox& box4);

struct GammaSet {
  std::array<Mat4, 4> g;  // g[0..2] spatial, g[3] temporal (anti-Hermitian)
};

// Concrete signature-(+,+,+,-) representation: gamma^j = off-diagonal Pauli
// blocks, gamma^4 = i diag(1,1,-1,-1). Entries are exact (0, ±1, ±i).
GammaSet gamma_default();

// max |gamma^mu gamma^nu + gamma^nu gamma^mu - 2 eta^{mu nu} I| over mu, nu.
double clifford_defect(const GammaSet& gs);

struct SpinorSet {
  std::array<Vec4, 2> u;  // positive-frequency, spin labels r = 1, 2
  std::array<Vec4, 2> v;  // negative-frequency
};

// Momentum spinors normalized to u_r^dag u_s = v_r^dag v_s = (E/m) delta_rs,
// built by applying (m - i gamma^mu p_mu) [resp. +i] to rest-frame spinors.
SpinorSet dirac_spinors(const vec3& p, double m);  // throws on m <= 0

// max component residual of gamma^j D#_j psi + gamma^4 dt psi + m psi over
// the box for the requested branch(es), plus the adjoint equation for
// psi~ = i psi^dag gamma^4. branch: -1 u only, +1 v only, 0 both summed.
double dirac_residual(const vec3& p, double m, const LatticeBox& box, int branch = 0);

struct Tetrad {
  std::array<Eigen::Vector4d, 4> e;  // e[0], e[1] transverse; e[2] longitudinal; e[3] temporal
};

// e_(3) = nu^{-1} (k, 0), e_(4) = (0,0,0,1); transverse pair completed by
// Gram-Schmidt from seeds (1,0,0,0), (0,1,0,0), falling back to
// (0,1,0,0), (0,0,1,0) when k is parallel to the x-axis. Throws on k = 0.
Tetrad tetrad_build(const vec3& k);

// max deviation of eta_{mu nu} e_(l)^mu e_(s)^nu from eta_(l s), and of the
// completeness reconstruction eta^{(l s)} e_(l)^mu e_(s)^nu from eta^{mu nu}.
double tetrad_orthonormality_defect(const Tetrad& t);
double tetrad_completeness_defect(const Tetrad& t);

// a_mu -> a_mu - nu^{-2} k_mu (k_b a^b) with k_4 = -nu(k); spatial b-sum.
std::array<cd, 4> restricted_gauge_shift(const std::array<cd, 4>& a, const vec3& k);

// Gauss-Hermite product grid over momentum space. Weights carry the e^{+k^2}
// de-weighting so that sum_i w_i f(k_i) approximates int f(k) d^3k directly.
struct ModeSet {
  std::array<int, 3> orders{0, 0, 0};
  std::array<std::vector<double>, 3> axis_nodes;
  std::array<std::vector<double>, 3> axis_weights;
  std::vector<vec3> momenta;    // axis-2 fastest (row-major over the grid)
  std::vector<double> weights;  // product of axis weights
  double mass = 0.0;

  static ModeSet gauss_product(std::array<int, 3> orders, double mass);
  size_t size() const { return momenta.size(); }
  double omega_of(size_t i) const { return omega(momenta[i], mass); }
};

// xi_m(node) table for one axis: (#nodes) x (n_max + 1), row per node.
Eigen::MatrixXcd xi_axis_table(const std::vector<double>& nodes, int n_max);

// prod_a xi_{n_a}(k_a) for one mode of the set (direct evaluation).
cd xi_product(const ModeSet& ms, size_t mode, const std::array<int, 3>& n);

// Per-mode-pair site sums over a cubic box: G[i][j] = sum_{n in box}
// conj(Xi_i(n)) Xi_j(n) and the unconjugated variant sum Xi_i Xi_j. These are
// the kernels of every lattice-sum observable; computed per axis and
// tensor-multiplied. Parallel over mode pairs with a serial reference.
struct SiteSumKernels {
  Eigen::MatrixXcd g_conj;  // sum conj(Xi_i) Xi_j
  Eigen::MatrixXcd g_plain; // sum Xi_i Xi_j
};
SiteSumKernels site_sum_kernels(const ModeSet& ms, int n_box);
SiteSumKernels site_sum_kernels_serial(const ModeSet& ms, int n_box);

}  // namespace dpsqft

#pragma once
// Green's functions of the difference / difference-differential Klein-Gordon
// equation and the 4x4 spin-1/2 S-functions derived from them. The contour
// integrals over the complex k4-plane are resolved analytically to residue
// form (the source derivation does this for the closed contour already), so
// every evaluator reduces to a Gauss-Hermite product quadrature over d^3k
// with per-axis xi-overlap factors and a radial omega coupling.

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "dpsqft/basis.hpp"

namespace dpsqft {

enum class Contour { plus, minus, full, feynman };

// one evaluation point: a pair of sites with their times
struct EventPair {
  std::array<int, 3> n{0, 0, 0};
  std::array<int, 3> nhat{0, 0, 0};
  double t = 0.0;
  double that = 0.0;
};

// Delta_+ = -i int (2 omega)^{-1} [prod_j xi_{n^j} conj(xi_{nhat^j})] e^{-i omega (t-that)} d^3k
cd delta_plus(const EventPair& ev, double mu, int quad_order);
// Delta_- : the +omega residue partner; equals conj(Delta_+) on symmetric grids
cd delta_minus(const EventPair& ev, double mu, int quad_order);
// closed-contour function: -int [prod xi conj(xi)] omega^{-1} sin(omega (t-that)) d^3k
cd delta_homogeneous(const EventPair& ev, double mu, int quad_order);
// -theta(t-that) Delta_+ + theta(that-t) Delta_-; t == that rejected (theta undefined at 0)
cd delta_feynman(const EventPair& ev, double mu, int quad_order);
// dispatch over the four contours
cd delta_branch(const EventPair& ev, double mu, int quad_order, Contour kind);
// massless case D_(a) := Delta_(a)(mu = 0); quad_order must be even (no node at k = 0)
cd massless_d(const EventPair& ev, int quad_order, Contour kind);

// analytic time derivatives of the homogeneous function (d/dt on the first time)
cd delta_homogeneous_dt(const EventPair& ev, double mu, int quad_order);
cd delta_homogeneous_dtdt(const EventPair& ev, double mu, int quad_order);

// | delta^{jl} D#_j D#_l Delta - dt^2 Delta - mu^2 Delta | with the double
// difference applied to actual Delta evaluations on shifted sites and the
// time derivative analytic under the integral.
double homogeneous_annihilation_residual(const EventPair& ev, double mu, int quad_order);

// S_(a) = (gamma^j D#_j + gamma^4 d_t - m I) Delta_(a); the site difference
// acts on the n-argument (an exact ik_j insertion) and d_t is analytic.
Eigen::Matrix4cd s_function(const EventPair& ev, double m, Contour branch, int quad_order);

// max entry of (gamma^j D#_j + gamma^4 d_t + m I) S_hom with the site
// difference applied to shifted S evaluations and a central-difference d_t.
double s_homogeneous_annihilation_residual(const EventPair& ev, double m, int quad_order,
                                           double h = 1e-4);

}  // namespace dpsqft

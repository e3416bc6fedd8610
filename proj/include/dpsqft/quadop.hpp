#pragma once
// Coefficient-level algebra for linear and quadratic ladder expressions over
// a register space with [c_i, c_j^dag]_± = g_i delta_ij (g_i carries the
// 1/w_i weight and, for the photon's temporal family, the metric sign).
// Conserved quantities and generator relations can then be handled at any
// mode count without materializing Fock matrices; the closed commutator
// rules are cross-validated against dense representations on small reps.

#include <complex>

#include <Eigen/Dense>

#include "dpsqft/fock.hpp"

namespace dpsqft {

// sum_i an_i c_i + cr_i c_i^dag
struct LinOp {
  Eigen::VectorXcd an, cr;

  static LinOp zero(int n) {
    return {Eigen::VectorXcd::Zero(n), Eigen::VectorXcd::Zero(n)};
  }
};

// sum_ij [ dd_ij c_i^dag c_j + ee_ij c_i c_j^dag + ff_ij c_i^dag c_j^dag
//          + gg_ij c_i c_j ] + c0 (written operator order is preserved:
// ee holds the paper's un-normal-ordered c c^dag products as they appear)
struct QuadOp {
  Eigen::MatrixXcd dd, ee, ff, gg;
  cd c0{0.0, 0.0};

  static QuadOp zero(int n);
  QuadOp& operator+=(const QuadOp& o);
  QuadOp operator*(cd s) const;
};

// hermitian conjugate of a linear expression
LinOp lin_adjoint(const LinOp& l);

// [Q, L] (graded rules: quadratics act bosonically, but the elementary
// contractions differ between commuting and anticommuting registers)
LinOp quad_lin_commutator(const QuadOp& q, const LinOp& l, const Eigen::VectorXd& g, bool fermi);

// c-number part of [L1, L2] (boson) or {L1, L2} (fermion)
cd pair_bracket(const LinOp& l1, const LinOp& l2, const Eigen::VectorXd& g, bool fermi);

// dense realizations on a compatible FockRep (register counts must match)
Eigen::MatrixXcd to_dense(const LinOp& l, const FockRep& rep);
Eigen::MatrixXcd to_dense(const QuadOp& q, const FockRep& rep);

// expectations in closed form: vacuum, and the normalized one-particle state
// c_reg^dag|0> / sqrt(g_reg) (g_reg must be positive)
cd vacuum_expectation(const QuadOp& q, const Eigen::VectorXd& g);
cd one_particle_expectation(const QuadOp& q, int reg, const Eigen::VectorXd& g, bool fermi);

// relative Frobenius distance over all blocks (the oracle-equivalence metric)
double quad_rel_error(const QuadOp& approx, const QuadOp& exact);

// adjoint of a quadratic expression under the rep's inner-product form (the
// c^dag symbols are already the metric adjoints, so no sign table is needed)
QuadOp quad_adjoint(const QuadOp& q);

// canonical form: ee folded into dd (c c^dag = ±c^dag c + g), ff/gg
// (anti)symmetrized. Two QuadOps are the same operator iff their canonical
// forms match entrywise, so this is what equality checks should compare.
QuadOp quad_canonical(const QuadOp& q, const Eigen::VectorXd& g, bool fermi);

// CCR constants per register of a rep: eta / w
Eigen::VectorXd ccr_constants(const FockRep& rep);

}  // namespace dpsqft

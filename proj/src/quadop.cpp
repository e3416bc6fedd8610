#include "dpsqft/quadop.hpp"

#include <stdexcept>

namespace dpsqft {

QuadOp QuadOp::zero(int n) {
  QuadOp q;
  q.dd = Eigen::MatrixXcd::Zero(n, n);
  q.ee = Eigen::MatrixXcd::Zero(n, n);
  q.ff = Eigen::MatrixXcd::Zero(n, n);
  q.gg = Eigen::MatrixXcd::Zero(n, n);
  return q;
}

QuadOp& QuadOp::operator+=(const QuadOp& o) {
  dd += o.dd;
  ee += o.ee;
  ff += o.ff;
  gg += o.gg;
  c0 += o.c0;
  return *this;
}

QuadOp QuadOp::operator*(cd s) const {
  QuadOp q = *this;
  q.dd *= s;
  q.ee *= s;
  q.ff *= s;
  q.gg *= s;
  q.c0 *= s;
  return q;
}

LinOp lin_adjoint(const LinOp& l) { return {l.cr.conjugate(), l.an.conjugate()}; }

LinOp quad_lin_commutator(const QuadOp& q, const LinOp& l, const Eigen::VectorXd& g, bool fermi) {
  const Eigen::VectorXcd gu = g.cast<cd>().cwiseProduct(l.an);
  const Eigen::VectorXcd gx = g.cast<cd>().cwiseProduct(l.cr);
  LinOp out = LinOp::zero(static_cast<int>(g.size()));
  // dd:  [c_i^dag c_j, c_m] = -g_m delta_im c_j,  [.., c_m^dag] = +g_m delta_jm c_i^dag
  out.an -= q.dd.transpose() * gu;
  out.cr += q.dd * gx;
  // ee: bosonic [c_i c_j^dag, c_m] = -g_m delta_jm c_i; fermionic sign flips
  const double se = fermi ? -1.0 : 1.0;
  out.an -= se * (q.ee * gu);
  out.cr += se * (q.ee.transpose() * gx);
  // ff: bosonic [c_i^dag c_j^dag, c_m] = -g_m (delta_jm c_i^dag + delta_im c_j^dag);
  //     fermionic: +g_m (delta_jm c_i^dag - delta_im c_j^dag)
  if (fermi)
    out.cr += q.ff * gu - q.ff.transpose() * gu;
  else
    out.cr -= (q.ff + q.ff.transpose()) * gu;
  // gg: bosonic [c_i c_j, c_m^dag] = +g_m (delta_jm c_i + delta_im c_j);
  //     fermionic: +g_m (delta_jm c_i - delta_im c_j)
  if (fermi)
    out.an += q.gg * gx - q.gg.transpose() * gx;
  else
    out.an += (q.gg + q.gg.transpose()) * gx;
  return out;
}

cd pair_bracket(const LinOp& l1, const LinOp& l2, const Eigen::VectorXd& g, bool fermi) {
  cd acc{0.0, 0.0};
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const cd direct = l1.an(i) * l2.cr(i);
    const cd reverse = l1.cr(i) * l2.an(i);
    acc += g(i) * (fermi ? direct + reverse : direct - reverse);
  }
  return acc;
}

Eigen::MatrixXcd to_dense(const LinOp& l, const FockRep& rep) {
  if (l.an.size() != rep.n_registers) throw std::invalid_argument("to_dense: register count mismatch");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rep.dim),
                                              static_cast<Eigen::Index>(rep.dim));
  for (int r = 0; r < rep.n_registers; ++r) {
    if (l.an(r) != cd(0, 0)) m += l.an(r) * Eigen::MatrixXcd(rep.lower[static_cast<size_t>(r)]);
    if (l.cr(r) != cd(0, 0)) m += l.cr(r) * Eigen::MatrixXcd(rep.raise(r));
  }
  return m;
}

Eigen::MatrixXcd to_dense(const QuadOp& q, const FockRep& rep) {
  if (q.dd.rows() != rep.n_registers) throw std::invalid_argument("to_dense: register count mismatch");
  const auto dim = static_cast<Eigen::Index>(rep.dim);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim) * q.c0;
  std::vector<SpMat> raises;
  raises.reserve(static_cast<size_t>(rep.n_registers));
  for (int r = 0; r < rep.n_registers; ++r) raises.push_back(rep.raise(r));
  for (int i = 0; i < rep.n_registers; ++i)
    for (int j = 0; j < rep.n_registers; ++j) {
      const SpMat& li = rep.lower[static_cast<size_t>(i)];
      const SpMat& lj = rep.lower[static_cast<size_t>(j)];
      if (q.dd(i, j) != cd(0, 0)) m += q.dd(i, j) * Eigen::MatrixXcd(raises[static_cast<size_t>(i)] * lj);
      if (q.ee(i, j) != cd(0, 0)) m += q.ee(i, j) * Eigen::MatrixXcd(li * raises[static_cast<size_t>(j)]);
      if (q.ff(i, j) != cd(0, 0))
        m += q.ff(i, j) * Eigen::MatrixXcd(raises[static_cast<size_t>(i)] * raises[static_cast<size_t>(j)]);
      if (q.gg(i, j) != cd(0, 0)) m += q.gg(i, j) * Eigen::MatrixXcd(li * lj);
    }
  return m;
}

cd vacuum_expectation(const QuadOp& q, const Eigen::VectorXd& g) {
  cd acc = q.c0;
  for (Eigen::Index i = 0; i < g.size(); ++i) acc += q.ee(i, i) * g(i);
  return acc;
}

cd one_particle_expectation(const QuadOp& q, int reg, const Eigen::VectorXd& g, bool fermi) {
  if (g(reg) <= 0.0)
    throw std::domain_error("one_particle_expectation: state has non-positive norm");
  cd acc = q.c0 + q.dd(reg, reg) * g(reg);
  for (Eigen::Index a = 0; a < g.size(); ++a) acc += q.ee(a, a) * g(a);
  acc += (fermi ? -1.0 : 1.0) * q.ee(reg, reg) * g(reg);
  return acc;
}

double quad_rel_error(const QuadOp& approx, const QuadOp& exact) {
  const double num = std::sqrt((approx.dd - exact.dd).squaredNorm() + (approx.ee - exact.ee).squaredNorm() +
                               (approx.ff - exact.ff).squaredNorm() + (approx.gg - exact.gg).squaredNorm() +
                               std::norm(approx.c0 - exact.c0));
  const double den = std::sqrt(exact.dd.squaredNorm() + exact.ee.squaredNorm() +
                               exact.ff.squaredNorm() + exact.gg.squaredNorm() + std::norm(exact.c0));
  if (den == 0.0) return num;
  return num / den;
}

QuadOp quad_adjoint(const QuadOp& q) {
  QuadOp out = QuadOp::zero(static_cast<int>(q.dd.rows()));
  out.dd = q.dd.adjoint();
  out.ee = q.ee.adjoint();
  out.gg = q.ff.adjoint();
  out.ff = q.gg.adjoint();
  out.c0 = std::conj(q.c0);
  return out;
}

QuadOp quad_canonical(const QuadOp& q, const Eigen::VectorXd& g, bool fermi) {
  const double s = fermi ? -1.0 : 1.0;
  QuadOp out = QuadOp::zero(static_cast<int>(g.size()));
  out.dd = q.dd + s * q.ee.transpose();
  out.ff = 0.5 * (q.ff + s * q.ff.transpose());
  out.gg = 0.5 * (q.gg + s * q.gg.transpose());
  out.c0 = q.c0;
  for (Eigen::Index a = 0; a < g.size(); ++a) out.c0 += q.ee(a, a) * g(a);
  return out;
}

Eigen::VectorXd ccr_constants(const FockRep& rep) {
  Eigen::VectorXd g(rep.n_registers);
  for (int r = 0; r < rep.n_registers; ++r)
    g(r) = rep.reg_metric[static_cast<size_t>(r)] / rep.reg_weight[static_cast<size_t>(r)];
  return g;
}

}  // namespace dpsqft

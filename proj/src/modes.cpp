#include "dpsqft/modes.hpp"

#include <cmath>
#include <stdexcept>

namespace dpsqft {

namespace {

constexpr cd I_UNIT{0.0, 1.0};

// xi columns for the three axes of a box, up to the site extent of each.
std::array<std::vector<cd>, 3> axis_columns(const vec3& k, const LatticeBox& box) {
  std::array<std::vector<cd>, 3> cols;
  for (int a = 0; a < 3; ++a)
    cols[static_cast<size_t>(a)] =
        xi_column(box.extents[static_cast<size_t>(a)] - 1, k[static_cast<size_t>(a)]);
  return cols;
}

}  // namespace

double omega(const vec3& k, double mass) {
  if (mass < 0.0) throw std::invalid_argument("omega: mass must be >= 0");
  return std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + mass * mass);
}

cd scalar_mode(const std::array<int, 3>& n, const vec3& k, double t, int sign, double mu) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("scalar_mode: sign must be +1 or -1");
  const double w = omega(k, mu);
  if (w <= 0.0) throw std::domain_error("scalar_mode: omega vanishes (k = 0 and mu = 0)");
  cd prod{1.0, 0.0};
  for (int a = 0; a < 3; ++a) prod *= xi(n[static_cast<size_t>(a)], k[static_cast<size_t>(a)]);
  const double amp = 1.0 / std::sqrt(2.0 * w);
  if (sign < 0) return amp * prod * std::exp(-I_UNIT * w * t);
  return amp * std::conj(prod) * std::exp(I_UNIT * w * t);
}

LatticeField<cd> scalar_mode_field(const vec3& k, double mu, const LatticeBox& box,
                                   double t, int sign, double omega_override) {
  if (box.dim != 3) throw std::invalid_argument("scalar_mode_field: box must be 3-dimensional");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("scalar_mode_field: sign must be +1 or -1");
  const double w_shell = omega(k, mu);
  const double w = (omega_override > 0.0) ? omega_override : w_shell;
  if (w <= 0.0) throw std::domain_error("scalar_mode_field: frequency vanishes");
  auto cols = axis_columns(k, box);
  const double amp = 1.0 / std::sqrt(2.0 * w);
  const cd phase = amp * std::exp(-I_UNIT * (static_cast<double>(sign) * -1.0) * w * t);
  LatticeField<cd> f(box);
  for (size_t i = 0; i < f.values.size(); ++i) {
    auto site = box.site_of(i);
    cd prod = cols[0][static_cast<size_t>(site[0])] * cols[1][static_cast<size_t>(site[1])] *
              cols[2][static_cast<size_t>(site[2])];
    f.values[i] = (sign < 0) ? phase * prod : phase * std::conj(prod);
  }
  return f;
}

namespace {

double kg_residual_impl(const vec3& k, double mu, const LatticeBox& box, double w_used,
                        const std::vector<double>& t_samples) {
  double worst = 0.0;
  for (double t : t_samples) {
    LatticeField<cd> f = scalar_mode_field(k, mu, box, t, -1, w_used);
    LatticeField<cd> lap = laplacian_spatial(f);
    const double shift = w_used * w_used - mu * mu;  // -d_t^2 phi = +w^2 phi, analytic
    for (size_t i = 0; i < lap.values.size(); ++i)
      lap.values[i] += shift * f.values[i];
    worst = std::max(worst, max_abs_valid(lap));
  }
  return worst;
}

}  // namespace

double kg_residual(const vec3& k, double mu, const LatticeBox& box,
                   const std::vector<double>& t_samples) {
  return kg_residual_impl(k, mu, box, omega(k, mu), t_samples);
}

double kg_residual_detuned(const vec3& k, double mu, const LatticeBox& box,
                           double domega, const std::vector<double>& t_samples) {
  return kg_residual_impl(k, mu, box, omega(k, mu) + domega, t_samples);
}

double maxwell_residual(const vec3& k, const LatticeBox& box) {
  const Tetrad tet = tetrad_build(k);  // rejects k = 0
  const std::vector<double> ts{0.0, 0.4, 1.1};
  double worst = 0.0;
  // each Lorentz component of a transverse mode is a scaled massless scalar mode
  for (int lam = 0; lam < 2; ++lam)
    for (int sigma = 0; sigma < 4; ++sigma) {
      const double c = tet.e[static_cast<size_t>(lam)](sigma);
      if (c == 0.0) continue;
      worst = std::max(worst, std::abs(c) * kg_residual(k, 0.0, box, ts));
    }
  return worst;
}

double covariant_scalar_residual(const vec3& k, double mu, const LatticeBox& box4) {
  if (box4.dim != 4) throw std::invalid_argument("covariant_scalar_residual: box must be 4-dimensional");
  const double k4 = -omega(k, mu);  // -k_4 = omega > 0
  std::array<std::vector<cd>, 4> cols;
  for (int a = 0; a < 3; ++a)
    cols[static_cast<size_t>(a)] =
        xi_column(box4.extents[static_cast<size_t>(a)] - 1, k[static_cast<size_t>(a)]);
  cols[3] = xi_column(box4.extents[3] - 1, k4);
  LatticeField<cd> f(box4);
  for (size_t i = 0; i < f.values.size(); ++i) {
    auto site = box4.site_of(i);
    f.values[i] = cols[0][static_cast<size_t>(site[0])] * cols[1][static_cast<size_t>(site[1])] *
                  cols[2][static_cast<size_t>(site[2])] * cols[3][static_cast<size_t>(site[3])];
  }
  return max_abs_valid(dalembertian_discrete(f, mu * mu));
}

GammaSet gamma_default() {
  GammaSet gs;
  Eigen::Matrix2cd s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -I_UNIT, I_UNIT, 0;
  s3 << 1, 0, 0, -1;
  const std::array<Eigen::Matrix2cd, 3> sigma{s1, s2, s3};
  for (int j = 0; j < 3; ++j) {
    gs.g[static_cast<size_t>(j)].setZero();
    gs.g[static_cast<size_t>(j)].block<2, 2>(0, 2) = sigma[static_cast<size_t>(j)];
    gs.g[static_cast<size_t>(j)].block<2, 2>(2, 0) = sigma[static_cast<size_t>(j)];
  }
  gs.g[3].setZero();
  gs.g[3].diagonal() << I_UNIT, I_UNIT, -I_UNIT, -I_UNIT;
  return gs;
}

double clifford_defect(const GammaSet& gs) {
  double worst = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      double eta = (mu == nu) ? ((mu == 3) ? -1.0 : 1.0) : 0.0;
      Mat4 lhs = gs.g[static_cast<size_t>(mu)] * gs.g[static_cast<size_t>(nu)] +
                 gs.g[static_cast<size_t>(nu)] * gs.g[static_cast<size_t>(mu)] -
                 2.0 * eta * Mat4::Identity();
      worst = std::max(worst, lhs.cwiseAbs().maxCoeff());
    }
  return worst;
}

SpinorSet dirac_spinors(const vec3& p, double m) {
  if (m <= 0.0) throw std::invalid_argument("dirac_spinors: mass must be positive");
  const GammaSet gs = gamma_default();
  const double E = omega(p, m);
  Mat4 slash_sp = Mat4::Zero();  // gamma^j p_j
  for (int j = 0; j < 3; ++j) slash_sp += p[static_cast<size_t>(j)] * gs.g[static_cast<size_t>(j)];
  const double norm = 1.0 / std::sqrt(2.0 * m * (E + m));
  // u solves (i gamma^mu p_mu + m) u = 0 with p_4 = -E; v the opposite sign
  Mat4 proj_u = norm * (m * Mat4::Identity() - I_UNIT * slash_sp + I_UNIT * E * gs.g[3]);
  Mat4 proj_v = norm * (m * Mat4::Identity() + I_UNIT * slash_sp - I_UNIT * E * gs.g[3]);
  SpinorSet out;
  for (int r = 0; r < 2; ++r) {
    Vec4 rest_u = Vec4::Zero(), rest_v = Vec4::Zero();
    rest_u(2 + r) = 1.0;  // gamma^4 eigenvalue -i sector
    rest_v(r) = 1.0;      // gamma^4 eigenvalue +i sector
    out.u[static_cast<size_t>(r)] = proj_u * rest_u;
    out.v[static_cast<size_t>(r)] = proj_v * rest_v;
  }
  return out;
}

namespace {

// four component fields of psi (and of d_t psi) on the box at time t
struct SpinorField {
  std::array<LatticeField<cd>, 4> psi;
  std::array<LatticeField<cd>, 4> dpsi_dt;
};

SpinorField build_dirac_field(const vec3& p, double m, const LatticeBox& box, double t, int branch) {
  const SpinorSet sp = dirac_spinors(p, m);
  const double E = omega(p, m);
  auto cols = axis_columns(p, box);
  SpinorField out;
  for (int a = 0; a < 4; ++a) {
    out.psi[static_cast<size_t>(a)] = LatticeField<cd>(box);
    out.dpsi_dt[static_cast<size_t>(a)] = LatticeField<cd>(box);
  }
  const cd ph_u = std::exp(-I_UNIT * E * t), ph_v = std::exp(I_UNIT * E * t);
  for (size_t i = 0; i < out.psi[0].values.size(); ++i) {
    auto site = box.site_of(i);
    cd prod = cols[0][static_cast<size_t>(site[0])] * cols[1][static_cast<size_t>(site[1])] *
              cols[2][static_cast<size_t>(site[2])];
    for (int a = 0; a < 4; ++a) {
      cd val{0.0, 0.0}, dval{0.0, 0.0};
      if (branch <= 0) {  // u branch, both spins superposed
        cd part = (sp.u[0](a) + sp.u[1](a)) * prod * ph_u;
        val += part;
        dval += -I_UNIT * E * part;
      }
      if (branch >= 0) {  // v branch: conjugated xi's, e^{+iEt}
        cd part = (sp.v[0](a) + sp.v[1](a)) * std::conj(prod) * ph_v;
        val += part;
        dval += I_UNIT * E * part;
      }
      out.psi[static_cast<size_t>(a)].values[i] = val;
      out.dpsi_dt[static_cast<size_t>(a)].values[i] = dval;
    }
  }
  return out;
}

}  // namespace

double dirac_residual(const vec3& p, double m, const LatticeBox& box, int branch) {
  if (box.dim != 3) throw std::invalid_argument("dirac_residual: box must be 3-dimensional");
  const GammaSet gs = gamma_default();
  double worst = 0.0;
  for (double t : {0.0, 0.7}) {
    SpinorField f = build_dirac_field(p, m, box, t, branch);
    // adjoint row psi~ = i psi^dag gamma^4 and its time derivative
    std::array<LatticeField<cd>, 4> tld, dtld;
    for (int b = 0; b < 4; ++b) {
      tld[static_cast<size_t>(b)] = LatticeField<cd>(box);
      dtld[static_cast<size_t>(b)] = LatticeField<cd>(box);
      for (size_t i = 0; i < tld[0].values.size(); ++i) {
        cd acc{0, 0}, dacc{0, 0};
        for (int a = 0; a < 4; ++a) {
          acc += std::conj(f.psi[static_cast<size_t>(a)].values[i]) * gs.g[3](a, b);
          dacc += std::conj(f.dpsi_dt[static_cast<size_t>(a)].values[i]) * gs.g[3](a, b);
        }
        tld[static_cast<size_t>(b)].values[i] = I_UNIT * acc;
        dtld[static_cast<size_t>(b)].values[i] = I_UNIT * dacc;
      }
    }
    std::array<std::array<LatticeField<cd>, 4>, 3> dpsi, dtldlat;
    for (int j = 0; j < 3; ++j)
      for (int a = 0; a < 4; ++a) {
        dpsi[static_cast<size_t>(j)][static_cast<size_t>(a)] =
            delta_sharp(f.psi[static_cast<size_t>(a)], j);
        dtldlat[static_cast<size_t>(j)][static_cast<size_t>(a)] =
            delta_sharp(tld[static_cast<size_t>(a)], j);
      }
    for (size_t i = 0; i < f.psi[0].values.size(); ++i) {
      auto site = box.site_of(i);
      bool interior = true;
      for (int a = 0; a < 3; ++a)
        if (site[static_cast<size_t>(a)] + 1 >= box.extents[static_cast<size_t>(a)]) interior = false;
      if (!interior) continue;
      for (int a = 0; a < 4; ++a) {
        // gamma^j D#_j psi + gamma^4 d_t psi + m psi
        cd res = m * f.psi[static_cast<size_t>(a)].values[i];
        for (int b = 0; b < 4; ++b) {
          for (int j = 0; j < 3; ++j)
            res += gs.g[static_cast<size_t>(j)](a, b) *
                   dpsi[static_cast<size_t>(j)][static_cast<size_t>(b)].values[i];
          res += gs.g[3](a, b) * f.dpsi_dt[static_cast<size_t>(b)].values[i];
        }
        worst = std::max(worst, std::abs(res));
        // adjoint: D#_j psi~ gamma^j + d_t psi~ gamma^4 - m psi~ (row form)
        cd res_t = -m * tld[static_cast<size_t>(a)].values[i];
        for (int b = 0; b < 4; ++b) {
          for (int j = 0; j < 3; ++j)
            res_t += dtldlat[static_cast<size_t>(j)][static_cast<size_t>(b)].values[i] *
                     gs.g[static_cast<size_t>(j)](b, a);
          res_t += dtld[static_cast<size_t>(b)].values[i] * gs.g[3](b, a);
        }
        worst = std::max(worst, std::abs(res_t));
      }
    }
  }
  return worst;
}

Tetrad tetrad_build(const vec3& k) {
  const double nu = omega(k, 0.0);
  if (nu <= 0.0) throw std::invalid_argument("tetrad_build: k = 0 has no longitudinal direction");
  Eigen::Vector3d khat(k[0] / nu, k[1] / nu, k[2] / nu);
  // seeds (1,0,0), (0,1,0); fall back to (0,1,0), (0,0,1) when k is along x
  Eigen::Vector3d s1(1, 0, 0), s2(0, 1, 0);
  if (khat(1) * khat(1) + khat(2) * khat(2) < 1e-12) {
    s1 = Eigen::Vector3d(0, 1, 0);
    s2 = Eigen::Vector3d(0, 0, 1);
  }
  Eigen::Vector3d e1 = (s1 - s1.dot(khat) * khat).normalized();
  Eigen::Vector3d e2 = (s2 - s2.dot(khat) * khat - s2.dot(e1) * e1).normalized();
  Tetrad t;
  t.e[0] << e1(0), e1(1), e1(2), 0.0;
  t.e[1] << e2(0), e2(1), e2(2), 0.0;
  t.e[2] << khat(0), khat(1), khat(2), 0.0;
  t.e[3] << 0.0, 0.0, 0.0, 1.0;
  return t;
}

namespace {
inline double eta_diag(int mu) { return (mu == 3) ? -1.0 : 1.0; }
}  // namespace

double tetrad_orthonormality_defect(const Tetrad& t) {
  double worst = 0.0;
  for (int l = 0; l < 4; ++l)
    for (int s = 0; s < 4; ++s) {
      double g = 0.0;
      for (int mu = 0; mu < 4; ++mu)
        g += eta_diag(mu) * t.e[static_cast<size_t>(l)](mu) * t.e[static_cast<size_t>(s)](mu);
      double target = (l == s) ? eta_diag(l) : 0.0;
      worst = std::max(worst, std::abs(g - target));
    }
  return worst;
}

double tetrad_completeness_defect(const Tetrad& t) {
  double worst = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      double g = 0.0;
      for (int l = 0; l < 4; ++l)
        g += eta_diag(l) * t.e[static_cast<size_t>(l)](mu) * t.e[static_cast<size_t>(l)](nu);
      double target = (mu == nu) ? eta_diag(mu) : 0.0;
      worst = std::max(worst, std::abs(g - target));
    }
  return worst;
}

std::array<cd, 4> restricted_gauge_shift(const std::array<cd, 4>& a, const vec3& k) {
  const double nu = omega(k, 0.0);
  if (nu <= 0.0) throw std::invalid_argument("restricted_gauge_shift: k = 0 rejected");
  cd kb_ab{0.0, 0.0};  // spatial contraction k_b a^b
  for (int b = 0; b < 3; ++b) kb_ab += k[static_cast<size_t>(b)] * a[static_cast<size_t>(b)];
  const double inv_nu2 = 1.0 / (nu * nu);
  std::array<cd, 4> out;
  for (int mu = 0; mu < 3; ++mu)
    out[static_cast<size_t>(mu)] = a[static_cast<size_t>(mu)] - inv_nu2 * k[static_cast<size_t>(mu)] * kb_ab;
  out[3] = a[3] - inv_nu2 * (-nu) * kb_ab;  // k_4 = -nu
  return out;
}

ModeSet ModeSet::gauss_product(std::array<int, 3> orders, double mass) {
  if (mass < 0.0) throw std::invalid_argument("ModeSet: mass must be >= 0");
  ModeSet ms;
  ms.orders = orders;
  ms.mass = mass;
  for (int a = 0; a < 3; ++a) {
    QuadratureRule q = gauss_hermite(orders[static_cast<size_t>(a)]);
    ms.axis_nodes[static_cast<size_t>(a)] = q.nodes;
    ms.axis_weights[static_cast<size_t>(a)].resize(q.nodes.size());
    for (size_t i = 0; i < q.nodes.size(); ++i)  // fold the Gaussian envelope out of the weight
      ms.axis_weights[static_cast<size_t>(a)][i] = q.weights[i] * std::exp(q.nodes[i] * q.nodes[i]);
  }
  for (double k1 : ms.axis_nodes[0])
    for (double k2 : ms.axis_nodes[1])
      for (double k3 : ms.axis_nodes[2]) ms.momenta.push_back({k1, k2, k3});
  ms.weights.reserve(ms.momenta.size());
  for (size_t i1 = 0; i1 < ms.axis_nodes[0].size(); ++i1)
    for (size_t i2 = 0; i2 < ms.axis_nodes[1].size(); ++i2)
      for (size_t i3 = 0; i3 < ms.axis_nodes[2].size(); ++i3)
        ms.weights.push_back(ms.axis_weights[0][i1] * ms.axis_weights[1][i2] * ms.axis_weights[2][i3]);
  return ms;
}

Eigen::MatrixXcd xi_axis_table(const std::vector<double>& nodes, int n_max) {
  Eigen::MatrixXcd t(static_cast<Eigen::Index>(nodes.size()), n_max + 1);
  for (size_t i = 0; i < nodes.size(); ++i) {
    auto col = xi_column(n_max, nodes[i]);
    for (int m = 0; m <= n_max; ++m) t(static_cast<Eigen::Index>(i), m) = col[static_cast<size_t>(m)];
  }
  return t;
}

cd xi_product(const ModeSet& ms, size_t mode, const std::array<int, 3>& n) {
  const vec3& k = ms.momenta[mode];
  cd prod{1.0, 0.0};
  for (int a = 0; a < 3; ++a) prod *= xi(n[static_cast<size_t>(a)], k[static_cast<size_t>(a)]);
  return prod;
}

SiteSumKernels site_sum_kernels(const ModeSet& ms, int n_box) {
  if (n_box < 1) throw std::invalid_argument("site_sum_kernels: n_box must be >= 1");
  // per-axis partial completeness sums via table products
  std::array<Eigen::MatrixXcd, 3> s_conj, s_plain;
  for (int a = 0; a < 3; ++a) {
    Eigen::MatrixXcd t = xi_axis_table(ms.axis_nodes[static_cast<size_t>(a)], n_box - 1);
    s_conj[static_cast<size_t>(a)] = t.conjugate() * t.transpose();
    s_plain[static_cast<size_t>(a)] = t * t.transpose();
  }
  const auto nm = static_cast<Eigen::Index>(ms.size());
  const Eigen::Index m2 = static_cast<Eigen::Index>(ms.axis_nodes[1].size());
  const Eigen::Index m3 = static_cast<Eigen::Index>(ms.axis_nodes[2].size());
  SiteSumKernels out;
  out.g_conj.resize(nm, nm);
  out.g_plain.resize(nm, nm);
#pragma omp parallel for schedule(static)
  for (Eigen::Index ij = 0; ij < nm * nm; ++ij) {
    const Eigen::Index i = ij / nm, j = ij % nm;
    const Eigen::Index i3 = i % m3, i2 = (i / m3) % m2, i1 = i / (m3 * m2);
    const Eigen::Index j3 = j % m3, j2 = (j / m3) % m2, j1 = j / (m3 * m2);
    out.g_conj(i, j) = s_conj[0](i1, j1) * s_conj[1](i2, j2) * s_conj[2](i3, j3);
    out.g_plain(i, j) = s_plain[0](i1, j1) * s_plain[1](i2, j2) * s_plain[2](i3, j3);
  }
  return out;
}

SiteSumKernels site_sum_kernels_serial(const ModeSet& ms, int n_box) {
  if (n_box < 1) throw std::invalid_argument("site_sum_kernels_serial: n_box must be >= 1");
  const size_t nm = ms.size();
  SiteSumKernels out;
  out.g_conj = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(nm), static_cast<Eigen::Index>(nm));
  out.g_plain = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(nm), static_cast<Eigen::Index>(nm));
  for (size_t i = 0; i < nm; ++i)
    for (size_t j = 0; j < nm; ++j) {
      cd acc_c{1.0, 0.0}, acc_p{1.0, 0.0};
      for (int a = 0; a < 3; ++a) {
        auto ci = xi_column(n_box - 1, ms.momenta[i][static_cast<size_t>(a)]);
        auto cj = xi_column(n_box - 1, ms.momenta[j][static_cast<size_t>(a)]);
        cd sc{0, 0}, sp{0, 0};
        for (int m = 0; m < n_box; ++m) {
          sc += std::conj(ci[static_cast<size_t>(m)]) * cj[static_cast<size_t>(m)];
          sp += ci[static_cast<size_t>(m)] * cj[static_cast<size_t>(m)];
        }
        acc_c *= sc;
        acc_p *= sp;
      }
      out.g_conj(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc_c;
      out.g_plain(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc_p;
    }
  return out;
}

}  // namespace dpsqft

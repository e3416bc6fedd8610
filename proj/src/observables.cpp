#include "dpsqft/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "dpsqft/fock.hpp"

namespace dpsqft {

const double electron_charge = -std::sqrt(4.0 * pi / 137.0);

namespace {

constexpr cd I_UNIT{0.0, 1.0};

double dot3(const vec3& a, const vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// per-axis node indices of mode i (axis 2 fastest, matching ModeSet layout)
std::array<int, 3> mode_axes(const ModeSet& ms, size_t i) {
  const int o1 = ms.orders[1], o2 = ms.orders[2];
  const int ii = static_cast<int>(i);
  return {ii / (o1 * o2), (ii / o2) % o1, ii % o2};
}

// Xi values for every mode at every site of a cubic [0, extent)^3 sample:
// rows sites (axis 2 fastest), cols modes
Eigen::MatrixXcd site_mode_table(const ModeSet& ms, int extent) {
  std::array<Eigen::MatrixXcd, 3> xt;
  for (int ax = 0; ax < 3; ++ax) xt[ax] = xi_axis_table(ms.axis_nodes[ax], extent - 1);
  const size_t nm = ms.size();
  Eigen::MatrixXcd v(static_cast<Eigen::Index>(extent) * extent * extent,
                     static_cast<Eigen::Index>(nm));
  for (size_t i = 0; i < nm; ++i) {
    const auto ai = mode_axes(ms, i);
    Eigen::Index row = 0;
    for (int n0 = 0; n0 < extent; ++n0)
      for (int n1 = 0; n1 < extent; ++n1)
        for (int n2 = 0; n2 < extent; ++n2, ++row)
          v(row, static_cast<Eigen::Index>(i)) =
              xt[0](ai[0], n0) * xt[1](ai[1], n1) * xt[2](ai[2], n2);
  }
  return v;
}

void require_symmetric_grid(const ModeSet& ms) {
  for (int ax = 0; ax < 3; ++ax) {
    const auto& nodes = ms.axis_nodes[ax];
    const size_t n = nodes.size();
    for (size_t a = 0; a < n; ++a)
      if (std::abs(nodes[a] + nodes[n - 1 - a]) > 1e-12 * (1.0 + std::abs(nodes[a])))
        throw std::invalid_argument(
            "observables: momentum grid must be symmetric about the origin");
  }
}

double linop_distance(const LinOp& a, const LinOp& b) {
  return std::max((a.an - b.an).cwiseAbs().maxCoeff(), (a.cr - b.cr).cwiseAbs().maxCoeff());
}

QuadOp canonical_of(const QuadOp& q, const Eigen::VectorXd& g, bool fermi) {
  return quad_canonical(q, g, fermi);
}

}  // namespace

int register_count(Species sp, int n_modes) {
  switch (sp) {
    case Species::scalar:
      return 2 * n_modes;
    case Species::photon:
      return 4 * n_modes;
    case Species::dirac:
      return 4 * n_modes;  // two spins, two species
  }
  throw std::invalid_argument("register_count: unknown species");
}

bool is_fermi(Species sp) { return sp == Species::dirac; }

Eigen::VectorXd bracket_constants(Species sp, const ModeSet& ms) {
  const int nm = static_cast<int>(ms.size());
  Eigen::VectorXd g(register_count(sp, nm));
  for (int p = 0; p < g.size(); ++p) {
    const int mode = p % nm;
    double eta = 1.0;
    if (sp == Species::photon && p / nm == 3) eta = -1.0;  // temporal family
    g(p) = eta / ms.weights[static_cast<size_t>(mode)];
  }
  return g;
}

// ---------------------------------------------------------------------------
// scalar field lattice

const ScalarFieldSite& FieldOperatorLattice::at(const std::array<int, 3>& n) const {
  const int e = box.extents[0];
  for (int ax = 0; ax < 3; ++ax)
    if (n[ax] < 0 || n[ax] >= e) throw std::out_of_range("FieldOperatorLattice: site");
  return sites[static_cast<size_t>((n[0] * e + n[1]) * e + n[2])];
}

FieldOperatorLattice assemble_scalar_field(const ModeSet& ms, int n_box) {
  if (n_box <= 0) throw std::invalid_argument("assemble_scalar_field: box extent");
  const int nm = static_cast<int>(ms.size());
  const int regs = 2 * nm;
  const Eigen::MatrixXcd v = site_mode_table(ms, n_box);

  FieldOperatorLattice out;
  out.box = LatticeBox{3, {n_box, n_box, n_box}};
  out.sites.resize(static_cast<size_t>(n_box) * n_box * n_box);
  for (size_t s = 0; s < out.sites.size(); ++s) {
    ScalarFieldSite& site = out.sites[s];
    site.phi = LinOp::zero(regs);
    site.dt_phi = LinOp::zero(regs);
    for (int b = 0; b < 3; ++b) site.dsharp_phi[b] = LinOp::zero(regs);
    for (int i = 0; i < nm; ++i) {
      const double w = ms.weights[static_cast<size_t>(i)];
      const double om = ms.omega_of(static_cast<size_t>(i));
      const double amp = w / std::sqrt(2.0 * om);
      const cd xi_v = v(static_cast<Eigen::Index>(s), i);
      site.phi.an(i) = amp * xi_v;
      site.phi.cr(nm + i) = amp * std::conj(xi_v);
      site.dt_phi.an(i) = -I_UNIT * om * amp * xi_v;
      site.dt_phi.cr(nm + i) = I_UNIT * om * amp * std::conj(xi_v);
      for (int b = 0; b < 3; ++b) {
        const double kb = ms.momenta[static_cast<size_t>(i)][static_cast<size_t>(b)];
        site.dsharp_phi[b].an(i) = I_UNIT * kb * amp * xi_v;
        site.dsharp_phi[b].cr(nm + i) = -I_UNIT * kb * amp * std::conj(xi_v);
      }
    }
    site.phi_dag = lin_adjoint(site.phi);
  }
  return out;
}

// ---------------------------------------------------------------------------
// scalar conserved set

ConservedSet conserved_scalar(const ModeSet& ms, int n_box) {
  require_symmetric_grid(ms);
  const int nm = static_cast<int>(ms.size());
  const int regs = 2 * nm;
  const SiteSumKernels kern = site_sum_kernels(ms, n_box);

  ConservedSet out;
  out.species = Species::scalar;
  out.H = QuadOp::zero(regs);
  out.Q = QuadOp::zero(regs);
  for (int b = 0; b < 3; ++b) out.P[b] = QuadOp::zero(regs);

  const double e = electron_charge;
  const double mu2 = ms.mass * ms.mass;
  for (int i = 0; i < nm; ++i) {
    const double wi = ms.weights[static_cast<size_t>(i)];
    const double omi = ms.omega_of(static_cast<size_t>(i));
    for (int j = 0; j < nm; ++j) {
      const double wj = ms.weights[static_cast<size_t>(j)];
      const double omj = ms.omega_of(static_cast<size_t>(j));
      const double amp = wi * wj / std::sqrt(4.0 * omi * omj);
      const cd gc = kern.g_conj(i, j);
      const cd gcr = kern.g_conj(j, i);
      const cd gpl = kern.g_plain(i, j);
      const double kk = dot3(ms.momenta[static_cast<size_t>(i)], ms.momenta[static_cast<size_t>(j)]);

      const double h_diag = amp * (kk + omi * omj + mu2);
      const double h_anom = amp * (mu2 - kk - omi * omj);
      out.H.dd(i, j) = h_diag * gc;
      out.H.ee(nm + i, nm + j) = h_diag * gcr;
      out.H.ff(i, nm + j) = h_anom * std::conj(gpl);
      out.H.gg(nm + i, j) = h_anom * gpl;

      const double q_diag = e * amp * (omi + omj);
      const double q_anom = e * amp * (omi - omj);
      out.Q.dd(i, j) = q_diag * gc;
      out.Q.ee(nm + i, nm + j) = -q_diag * gcr;
      out.Q.ff(i, nm + j) = q_anom * std::conj(gpl);
      out.Q.gg(nm + i, j) = -q_anom * gpl;

      for (int b = 0; b < 3; ++b) {
        const double kib = ms.momenta[static_cast<size_t>(i)][static_cast<size_t>(b)];
        const double kjb = ms.momenta[static_cast<size_t>(j)][static_cast<size_t>(b)];
        const double p_fac = amp * (omi * kjb + kib * omj);
        out.P[b].dd(i, j) = p_fac * gc;
        out.P[b].ee(nm + i, nm + j) = p_fac * gcr;
        out.P[b].ff(i, nm + j) = -p_fac * std::conj(gpl);
        out.P[b].gg(nm + i, j) = -p_fac * gpl;
      }
    }
  }
  return out;
}

ConservedSet mode_sum_scalar(const ModeSet& ms) {
  require_symmetric_grid(ms);
  const int nm = static_cast<int>(ms.size());
  const int regs = 2 * nm;
  ConservedSet out;
  out.species = Species::scalar;
  out.H = QuadOp::zero(regs);
  out.Q = QuadOp::zero(regs);
  for (int b = 0; b < 3; ++b) out.P[b] = QuadOp::zero(regs);
  for (int i = 0; i < nm; ++i) {
    const double w = ms.weights[static_cast<size_t>(i)];
    const double om = ms.omega_of(static_cast<size_t>(i));
    out.H.dd(i, i) = w * om;
    out.H.ee(nm + i, nm + i) = w * om;
    out.Q.dd(i, i) = electron_charge * w;
    out.Q.ee(nm + i, nm + i) = -electron_charge * w;
    for (int b = 0; b < 3; ++b) {
      const double kb = ms.momenta[static_cast<size_t>(i)][static_cast<size_t>(b)];
      out.P[b].dd(i, i) = w * kb;
      out.P[b].ee(nm + i, nm + i) = w * kb;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// photon conserved set

namespace {
void require_photon_modes(const ModeSet& ms) {
  if (ms.mass != 0.0)
    throw std::invalid_argument("photon observables: mode set must be massless");
  for (size_t i = 0; i < ms.size(); ++i)
    if (ms.omega_of(i) <= 0.0)
      throw std::domain_error("photon observables: zero-frequency mode on the grid");
}
}  // namespace

ConservedSet conserved_photon(const ModeSet& ms, int n_box) {
  require_symmetric_grid(ms);
  require_photon_modes(ms);
  const int nm = static_cast<int>(ms.size());
  const int regs = 4 * nm;
  const SiteSumKernels kern = site_sum_kernels(ms, n_box);

  ConservedSet out;
  out.species = Species::photon;
  out.has_charge = false;
  out.H = QuadOp::zero(regs);
  out.Q = QuadOp::zero(regs);
  for (int b = 0; b < 3; ++b) out.P[b] = QuadOp::zero(regs);

  for (int i = 0; i < nm; ++i) {
    const double wi = ms.weights[static_cast<size_t>(i)];
    const double nui = ms.omega_of(static_cast<size_t>(i));
    for (int j = 0; j < nm; ++j) {
      const double wj = ms.weights[static_cast<size_t>(j)];
      const double nuj = ms.omega_of(static_cast<size_t>(j));
      const double amp = wi * wj / std::sqrt(4.0 * nui * nuj);
      const cd gc = kern.g_conj(i, j);
      const cd gcr = kern.g_conj(j, i);
      const cd gpl = kern.g_plain(i, j);
      const double kk = dot3(ms.momenta[static_cast<size_t>(i)], ms.momenta[static_cast<size_t>(j)]);
      const double h_fac = 0.5 * amp * (kk + nui * nuj);

      for (int mu = 0; mu < 4; ++mu) {
        const double eta = (mu == 3) ? -1.0 : 1.0;
        const int ri = mu * nm + i, rj = mu * nm + j;
        out.H.dd(ri, rj) = eta * h_fac * gc;
        out.H.ee(ri, rj) = eta * h_fac * gcr;
        out.H.ff(ri, rj) = -eta * h_fac * std::conj(gpl);
        out.H.gg(ri, rj) = -eta * h_fac * gpl;
        for (int b = 0; b < 3; ++b) {
          const double kib = ms.momenta[static_cast<size_t>(i)][static_cast<size_t>(b)];
          const double p_fac = amp * kib * nuj;
          out.P[b].dd(ri, rj) = eta * p_fac * gc;
          out.P[b].ee(ri, rj) = eta * p_fac * gcr;
          out.P[b].ff(ri, rj) = -eta * p_fac * std::conj(gpl);
          out.P[b].gg(ri, rj) = -eta * p_fac * gpl;
        }
      }
    }
  }
  return out;
}

ConservedSet mode_sum_photon(const ModeSet& ms) {
  require_symmetric_grid(ms);
  require_photon_modes(ms);
  const int nm = static_cast<int>(ms.size());
  const int regs = 4 * nm;
  ConservedSet out;
  out.species = Species::photon;
  out.has_charge = false;
  out.H = QuadOp::zero(regs);
  out.Q = QuadOp::zero(regs);
  for (int b = 0; b < 3; ++b) out.P[b] = QuadOp::zero(regs);
  for (int mu = 0; mu < 4; ++mu) {
    const double eta = (mu == 3) ? -1.0 : 1.0;
    for (int i = 0; i < nm; ++i) {
      const int r = mu * nm + i;
      const double w = ms.weights[static_cast<size_t>(i)];
      const double nu = ms.omega_of(static_cast<size_t>(i));
      out.H.dd(r, r) = 0.5 * eta * w * nu;
      out.H.ee(r, r) = 0.5 * eta * w * nu;
      for (int b = 0; b < 3; ++b) {
        const double kb = ms.momenta[static_cast<size_t>(i)][static_cast<size_t>(b)];
        out.P[b].dd(r, r) = 0.5 * eta * w * kb;
        out.P[b].ee(r, r) = 0.5 * eta * w * kb;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dirac conserved set

ConservedSet conserved_dirac(const ModeSet& ms, int n_box) {
  require_symmetric_grid(ms);
  if (ms.mass <= 0.0) throw std::domain_error("dirac observables: mass must be positive");
  const int nm = static_cast<int>(ms.size());
  const int regs = 4 * nm;
  const SiteSumKernels kern = site_sum_kernels(ms, n_box);

  std::vector<SpinorSet> sp(static_cast<size_t>(nm));
  for (int i = 0; i < nm; ++i)
    sp[static_cast<size_t>(i)] = dirac_spinors(ms.momenta[static_cast<size_t>(i)], ms.mass);

  ConservedSet out;
  out.species = Species::dirac;
  out.H = QuadOp::zero(regs);
  out.Q = QuadOp::zero(regs);
  for (int b = 0; b < 3; ++b) out.P[b] = QuadOp::zero(regs);

  const double e = electron_charge;
  for (int i = 0; i < nm; ++i) {
    const double wi = ms.weights[static_cast<size_t>(i)];
    const double ei = ms.omega_of(static_cast<size_t>(i));
    for (int j = 0; j < nm; ++j) {
      const double wj = ms.weights[static_cast<size_t>(j)];
      const double ej = ms.omega_of(static_cast<size_t>(j));
      const double amp = wi * wj * ms.mass / std::sqrt(ei * ej);
      const cd gc = kern.g_conj(i, j);
      const cd gcr = kern.g_conj(j, i);
      const cd gpl = kern.g_plain(i, j);
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
          const cd uu = sp[static_cast<size_t>(i)].u[static_cast<size_t>(r)].dot(
              sp[static_cast<size_t>(j)].u[static_cast<size_t>(s)]);
          const cd vv = sp[static_cast<size_t>(i)].v[static_cast<size_t>(r)].dot(
              sp[static_cast<size_t>(j)].v[static_cast<size_t>(s)]);
          const cd uv = sp[static_cast<size_t>(i)].u[static_cast<size_t>(r)].dot(
              sp[static_cast<size_t>(j)].v[static_cast<size_t>(s)]);
          const cd vu = sp[static_cast<size_t>(i)].v[static_cast<size_t>(r)].dot(
              sp[static_cast<size_t>(j)].u[static_cast<size_t>(s)]);
          const int ai = r * nm + i, aj = s * nm + j;            // particle registers
          const int bi = 2 * nm + r * nm + i, bj = 2 * nm + s * nm + j;

          out.H.dd(ai, aj) = 0.5 * amp * (ei + ej) * uu * gc;
          out.H.ee(bi, bj) = -0.5 * amp * (ei + ej) * vv * gcr;
          out.H.ff(ai, bj) = 0.5 * amp * (ei - ej) * uv * std::conj(gpl);
          out.H.gg(bi, aj) = -0.5 * amp * (ei - ej) * vu * gpl;

          out.Q.dd(ai, aj) = e * amp * uu * gc;
          out.Q.ee(bi, bj) = e * amp * vv * gcr;
          out.Q.ff(ai, bj) = e * amp * uv * std::conj(gpl);
          out.Q.gg(bi, aj) = e * amp * vu * gpl;

          for (int b = 0; b < 3; ++b) {
            const double pib = ms.momenta[static_cast<size_t>(i)][static_cast<size_t>(b)];
            const double pjb = ms.momenta[static_cast<size_t>(j)][static_cast<size_t>(b)];
            out.P[b].dd(ai, aj) = 0.5 * amp * (pib + pjb) * uu * gc;
            out.P[b].ee(bi, bj) = -0.5 * amp * (pib + pjb) * vv * gcr;
            out.P[b].ff(ai, bj) = 0.5 * amp * (pib - pjb) * uv * std::conj(gpl);
            out.P[b].gg(bi, aj) = -0.5 * amp * (pib - pjb) * vu * gpl;
          }
        }
    }
  }
  return out;
}

ConservedSet mode_sum_dirac(const ModeSet& ms) {
  require_symmetric_grid(ms);
  if (ms.mass <= 0.0) throw std::domain_error("dirac observables: mass must be positive");
  const int nm = static_cast<int>(ms.size());
  const int regs = 4 * nm;
  ConservedSet out;
  out.species = Species::dirac;
  out.H = QuadOp::zero(regs);
  out.Q = QuadOp::zero(regs);
  for (int b = 0; b < 3; ++b) out.P[b] = QuadOp::zero(regs);
  for (int r = 0; r < 2; ++r)
    for (int i = 0; i < nm; ++i) {
      const int ai = r * nm + i, bi = 2 * nm + r * nm + i;
      const double w = ms.weights[static_cast<size_t>(i)];
      const double en = ms.omega_of(static_cast<size_t>(i));
      out.H.dd(ai, ai) = w * en;
      out.H.ee(bi, bi) = -w * en;
      out.Q.dd(ai, ai) = electron_charge * w;
      out.Q.ee(bi, bi) = electron_charge * w;
      for (int b = 0; b < 3; ++b) {
        const double pb = ms.momenta[static_cast<size_t>(i)][static_cast<size_t>(b)];
        out.P[b].dd(ai, ai) = w * pb;
        out.P[b].ee(bi, bi) = -w * pb;
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// normal ordering, Hermiticity, oracle distances

ConservedSet normal_order(const ConservedSet& set, const ModeSet& ms) {
  const Eigen::VectorXd g = bracket_constants(set.species, ms);
  const bool fermi = is_fermi(set.species);
  ConservedSet out = set;
  out.normal_ordered = true;
  auto fold = [&](const QuadOp& q, bool record) {
    QuadOp c = canonical_of(q, g, fermi);
    if (record) out.zero_point = c.c0.real();
    c.c0 = cd{0.0, 0.0};
    c.ee.setZero();
    return c;
  };
  for (int b = 0; b < 3; ++b) out.P[b] = fold(set.P[b], false);
  out.Q = fold(set.Q, false);
  out.H = fold(set.H, true);
  return out;
}

double hermiticity_defect(const ConservedSet& set, const ModeSet& ms) {
  const Eigen::VectorXd g = bracket_constants(set.species, ms);
  const bool fermi = is_fermi(set.species);
  double worst = 0.0;
  auto probe = [&](const QuadOp& q) {
    const QuadOp c = canonical_of(q, g, fermi);
    worst = std::max(worst, quad_rel_error(c, quad_adjoint(c)));
  };
  for (int b = 0; b < 3; ++b) probe(set.P[b]);
  probe(set.H);
  if (set.has_charge) probe(set.Q);
  return worst;
}

SetDistance set_distance(const ConservedSet& approx, const ConservedSet& oracle,
                         const ModeSet& ms) {
  const Eigen::VectorXd g = bracket_constants(oracle.species, ms);
  const bool fermi = is_fermi(oracle.species);
  SetDistance d{};
  auto rel = [&](const QuadOp& a, const QuadOp& b) {
    return quad_rel_error(canonical_of(a, g, fermi), canonical_of(b, g, fermi));
  };
  for (int b = 0; b < 3; ++b) d.p[static_cast<size_t>(b)] = rel(approx.P[b], oracle.P[b]);
  d.h = rel(approx.H, oracle.H);
  d.q = oracle.has_charge ? rel(approx.Q, oracle.Q) : 0.0;
  d.worst = std::max({d.p[0], d.p[1], d.p[2], d.h, d.q});
  return d;
}

std::vector<ConvergenceRow> oracle_convergence(Species sp, const ModeSet& ms,
                                               const std::vector<int>& boxes) {
  ConservedSet oracle;
  switch (sp) {
    case Species::scalar: oracle = mode_sum_scalar(ms); break;
    case Species::photon: oracle = mode_sum_photon(ms); break;
    case Species::dirac: oracle = mode_sum_dirac(ms); break;
  }
  std::vector<ConvergenceRow> rows;
  rows.reserve(boxes.size());
  for (int nb : boxes) {
    ConservedSet lat;
    switch (sp) {
      case Species::scalar: lat = conserved_scalar(ms, nb); break;
      case Species::photon: lat = conserved_photon(ms, nb); break;
      case Species::dirac: lat = conserved_dirac(ms, nb); break;
    }
    rows.push_back({nb, set_distance(lat, oracle, ms)});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// generator relations

GeneratorReport generator_check(const ConservedSet& set, const ModeSet& ms, int sample_extent) {
  if (set.species != Species::scalar)
    throw std::invalid_argument("generator_check: scalar sets only");
  const Eigen::VectorXd g = bracket_constants(Species::scalar, ms);
  const FieldOperatorLattice f = assemble_scalar_field(ms, sample_extent);

  GeneratorReport rep;
  for (const ScalarFieldSite& site : f.sites) {
    const LinOp h_comm = quad_lin_commutator(set.H, site.phi, g, false);
    LinOp h_target = site.dt_phi;
    h_target.an *= -I_UNIT;
    h_target.cr *= -I_UNIT;
    rep.h_residual = std::max(rep.h_residual, linop_distance(h_comm, h_target));

    const LinOp q_comm = quad_lin_commutator(set.Q, site.phi, g, false);
    LinOp q_target = site.phi;
    q_target.an *= -electron_charge;
    q_target.cr *= -electron_charge;
    rep.q_residual = std::max(rep.q_residual, linop_distance(q_comm, q_target));

    for (int b = 0; b < 3; ++b) {
      const LinOp p_comm = quad_lin_commutator(set.P[b], site.phi, g, false);
      LinOp asserted = site.dsharp_phi[b];
      asserted.an *= -I_UNIT;
      asserted.cr *= -I_UNIT;
      LinOp flipped = site.dsharp_phi[b];
      flipped.an *= I_UNIT;
      flipped.cr *= I_UNIT;
      rep.p_asserted = std::max(rep.p_asserted, linop_distance(p_comm, asserted));
      rep.p_flipped = std::max(rep.p_flipped, linop_distance(p_comm, flipped));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// equal-time bracket kernels

namespace {

// shared walk over site pairs of a cubic sample; kern(si, sj) must return the
// deviation row: {diag deviation measure or -1, abs value} — handled inline
// per kernel below instead for clarity.
struct PairStats {
  double diag_worst = 0.0, diag_sum = 0.0, off_sum = 0.0, off_max = 0.0;
  double dev_sum = 0.0;  // |K - target| accumulated over every probed entry
  long diag_n = 0, off_n = 0;
  void add_diag(double dev, double mag) {
    diag_worst = std::max(diag_worst, dev);
    diag_sum += mag;
    dev_sum += dev;
    ++diag_n;
  }
  void add_off(double mag) {
    off_sum += mag;
    off_max = std::max(off_max, mag);
    dev_sum += mag;  // off-diagonal target is zero, so the magnitude is the deviation
    ++off_n;
  }
  KernelReport report() const {
    KernelReport r;
    r.diag_worst_rel = diag_worst;
    r.diag_mean_abs = diag_n ? diag_sum / static_cast<double>(diag_n) : 0.0;
    r.offdiag_mean_abs = off_n ? off_sum / static_cast<double>(off_n) : 0.0;
    r.offdiag_max_abs = off_max;
    const long total = diag_n + off_n;
    r.pattern_mean_dev = total ? dev_sum / static_cast<double>(total) : 0.0;
    return r;
  }
};

}  // namespace

KernelReport scalar_equal_time_kernel(const ModeSet& ms, int site_extent) {
  const Eigen::MatrixXcd v = site_mode_table(ms, site_extent);
  const Eigen::Index sites = v.rows();
  PairStats st;
  for (Eigen::Index a = 0; a < sites; ++a)
    for (Eigen::Index b = 0; b < sites; ++b) {
      cd k{0.0, 0.0};
      for (Eigen::Index i = 0; i < v.cols(); ++i)
        k += ms.weights[static_cast<size_t>(i)] * (v(a, i) * std::conj(v(b, i))).real();
      k *= -I_UNIT;
      if (a == b)
        st.add_diag(std::abs(k - (-I_UNIT)), std::abs(k));
      else
        st.add_off(std::abs(k));
    }
  return st.report();
}

KernelReport scalar_momentum_kernel(const ModeSet& ms, int site_extent) {
  const Eigen::MatrixXcd v = site_mode_table(ms, site_extent);
  const Eigen::Index sites = v.rows();
  PairStats st;
  for (Eigen::Index a = 0; a < sites; ++a)
    for (Eigen::Index b = 0; b < sites; ++b) {
      cd k{0.0, 0.0};
      for (Eigen::Index i = 0; i < v.cols(); ++i)
        k += I_UNIT * ms.weights[static_cast<size_t>(i)] * ms.omega_of(static_cast<size_t>(i)) *
             (v(a, i) * std::conj(v(b, i))).imag();
      if (a == b)
        st.add_diag(std::abs(k), std::abs(k));  // target unstated; deviation from 0
      else
        st.add_off(std::abs(k));
    }
  return st.report();
}

KernelReport photon_equal_time_kernel(const ModeSet& ms, int site_extent) {
  require_photon_modes(ms);
  // the two register families are independent, so only mu = nu survives and
  // the kernel is the scalar one with the metric sign attached
  const Eigen::MatrixXcd v = site_mode_table(ms, site_extent);
  const Eigen::Index sites = v.rows();
  PairStats st;
  for (Eigen::Index a = 0; a < sites; ++a)
    for (Eigen::Index b = 0; b < sites; ++b) {
      cd base{0.0, 0.0};
      for (Eigen::Index i = 0; i < v.cols(); ++i)
        base += ms.weights[static_cast<size_t>(i)] * (v(a, i) * std::conj(v(b, i))).real();
      for (int mu = 0; mu < 4; ++mu) {
        const double eta = (mu == 3) ? -1.0 : 1.0;
        const cd k = -I_UNIT * eta * base;
        if (a == b)
          st.add_diag(std::abs(k - (-I_UNIT * eta)), std::abs(k));
        else
          st.add_off(std::abs(k));
      }
    }
  return st.report();
}

KernelReport dirac_equal_time_kernel(const ModeSet& ms, int site_extent) {
  if (ms.mass <= 0.0) throw std::domain_error("dirac observables: mass must be positive");
  const Eigen::MatrixXcd v = site_mode_table(ms, site_extent);
  const Eigen::Index sites = v.rows();
  const size_t nm = ms.size();
  std::vector<Mat4> usum(nm), vsum(nm);
  for (size_t i = 0; i < nm; ++i) {
    const SpinorSet s = dirac_spinors(ms.momenta[i], ms.mass);
    usum[i] = s.u[0] * s.u[0].adjoint() + s.u[1] * s.u[1].adjoint();
    vsum[i] = s.v[0] * s.v[0].adjoint() + s.v[1] * s.v[1].adjoint();
  }
  PairStats st;
  for (Eigen::Index a = 0; a < sites; ++a)
    for (Eigen::Index b = 0; b < sites; ++b) {
      Mat4 k = Mat4::Zero();
      for (size_t i = 0; i < nm; ++i) {
        const double fac = ms.weights[i] * ms.mass / ms.omega_of(i);
        const cd xa = v(a, static_cast<Eigen::Index>(i));
        const cd xb = v(b, static_cast<Eigen::Index>(i));
        k += fac * (usum[i] * (xa * std::conj(xb)) + vsum[i] * (std::conj(xa) * xb));
      }
      if (a == b)
        st.add_diag((k - Mat4::Identity()).cwiseAbs().maxCoeff(), k.cwiseAbs().maxCoeff());
      else
        st.add_off(k.cwiseAbs().maxCoeff());
    }
  return st.report();
}

double spinor_completeness_defect(const vec3& p, double m) {
  const SpinorSet sp = dirac_spinors(p, m);
  const vec3 mp{-p[0], -p[1], -p[2]};
  const SpinorSet sm = dirac_spinors(mp, m);
  const double en = omega(p, m);
  Mat4 acc = Mat4::Zero();
  for (int r = 0; r < 2; ++r) {
    acc += sp.u[static_cast<size_t>(r)] * sp.u[static_cast<size_t>(r)].adjoint();
    acc += sm.v[static_cast<size_t>(r)] * sm.v[static_cast<size_t>(r)].adjoint();
  }
  acc *= m / en;
  return (acc - Mat4::Identity()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// photon polarization and gauge-pair cancellation (dense)

namespace {

// Ladder operators along a tetrad direction for the first mode. With
// a_mu = sum_lam e_(lam)mu b_lam the inverse is
// b_lam = eta_(lam lam) sum_mu e_(lam)^mu eta_mu a_mu, which keeps the
// bracket constants diagonal: [b_lam, b_rho^dag] = eta_(lam rho) / w.
Eigen::MatrixXcd tetrad_lower(const FockRep& rep, const Tetrad& t, int lam) {
  const int nm = static_cast<int>(rep.modes.size());
  const double eta_l = (lam == 3) ? -1.0 : 1.0;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rep.dim),
                                                static_cast<Eigen::Index>(rep.dim));
  for (int mu = 0; mu < 4; ++mu) {
    const double eta_m = (mu == 3) ? -1.0 : 1.0;
    const double coeff = eta_l * t.e[static_cast<size_t>(lam)](mu) * eta_m;
    if (coeff != 0.0) acc += coeff * Eigen::MatrixXcd(rep.lower[static_cast<size_t>(mu * nm)]);
  }
  return acc;
}

Eigen::MatrixXcd tetrad_raise(const FockRep& rep, const Tetrad& t, int lam) {
  const int nm = static_cast<int>(rep.modes.size());
  const double eta_l = (lam == 3) ? -1.0 : 1.0;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rep.dim),
                                                static_cast<Eigen::Index>(rep.dim));
  for (int mu = 0; mu < 4; ++mu) {
    const double eta_m = (mu == 3) ? -1.0 : 1.0;
    const double coeff = eta_l * t.e[static_cast<size_t>(lam)](mu) * eta_m;
    if (coeff != 0.0) acc += coeff * Eigen::MatrixXcd(rep.raise(mu * nm));
  }
  return acc;
}

}  // namespace

PolarizationReport photon_polarization(const ModeSet& ms, size_t budget) {
  require_photon_modes(ms);
  // normal-ordered energy: expectation *shifts* are unchanged, and the dd-only
  // form is exact on one-quantum states already at cutoff 1, keeping the dense
  // dimension at 2^(4 n_modes)
  const FockRep rep = build_photon_rep(ms, 1, budget);
  const ConservedSet sum = normal_order(mode_sum_photon(ms), ms);
  const Eigen::MatrixXcd h = to_dense(sum.H, rep);
  const Tetrad t = tetrad_build(ms.momenta[0]);
  const Eigen::VectorXcd vac = vacuum(rep);
  const cd evac = metric_inner(rep, vac, h * vac);

  PolarizationReport out;
  out.expected = ms.omega_of(0);
  for (int lam = 0; lam < 4; ++lam) {
    const Eigen::VectorXcd state = tetrad_raise(rep, t, lam) * vac;
    const cd norm = metric_inner(rep, state, state);
    const cd ratio = metric_inner(rep, state, h * state) / norm;
    out.energy_shift[static_cast<size_t>(lam)] = (ratio - evac).real();
    out.norm_sign[static_cast<size_t>(lam)] = (norm.real() > 0.0) ? 1.0 : -1.0;
  }
  return out;
}

GaugeCancellation photon_gauge_cancellation(const ModeSet& ms, cd admixture, size_t budget) {
  require_photon_modes(ms);
  // cutoff 1 suffices: the probe state holds at most one quantum per register
  // and the normal-ordered energy needs no doubly-occupied scratch space
  const FockRep rep = build_photon_rep(ms, 1, budget);
  const ConservedSet sum = normal_order(mode_sum_photon(ms), ms);
  const Eigen::MatrixXcd h = to_dense(sum.H, rep);
  const Tetrad t = tetrad_build(ms.momenta[0]);
  const Eigen::VectorXcd vac = vacuum(rep);

  const Eigen::MatrixXcd pair_raise = tetrad_raise(rep, t, 2) - tetrad_raise(rep, t, 3);
  const Eigen::VectorXcd state = vac + admixture * (pair_raise * vac);

  GaugeCancellation out;
  out.norm_shift = std::abs(metric_inner(rep, state, state) - cd{1.0, 0.0});
  out.energy_shift =
      std::abs(metric_inner(rep, state, h * state) - metric_inner(rep, vac, h * vac));
  // admissibility: (b_L - b_T) |psi> = 0 — the lowering combination of the
  // same zero-norm pair annihilates the state identically
  const Eigen::MatrixXcd pair_lower = tetrad_lower(rep, t, 2) - tetrad_lower(rep, t, 3);
  out.constraint_norm = (pair_lower * state).norm();
  return out;
}

// ---------------------------------------------------------------------------
// charge quantization

ChargeReport charge_quantization(const ConservedSet& set, const ModeSet& ms) {
  if (!set.has_charge) throw std::invalid_argument("charge_quantization: neutral species");
  const Eigen::VectorXd g = bracket_constants(set.species, ms);
  const bool fermi = is_fermi(set.species);
  const int nm = static_cast<int>(ms.size());
  const int particle = 0;
  const int antiparticle = (set.species == Species::dirac) ? 2 * nm : nm;
  const cd vac = vacuum_expectation(set.Q, g);
  ChargeReport out;
  out.coupling = electron_charge;
  out.particle_shift = (one_particle_expectation(set.Q, particle, g, fermi) - vac).real();
  out.antiparticle_shift = (one_particle_expectation(set.Q, antiparticle, g, fermi) - vac).real();
  return out;
}

// ---------------------------------------------------------------------------
// wrong-statistics controls

cd wrong_statistics_kernel_diag(const ModeSet& ms, const std::array<int, 3>& site) {
  const int nm = static_cast<int>(ms.size());
  LinOp dtphi = LinOp::zero(2 * nm), phidag = LinOp::zero(2 * nm);
  for (int i = 0; i < nm; ++i) {
    const double w = ms.weights[static_cast<size_t>(i)];
    const double om = ms.omega_of(static_cast<size_t>(i));
    const double amp = w / std::sqrt(2.0 * om);
    const cd xi_v = xi_product(ms, static_cast<size_t>(i), site);
    dtphi.an(i) = -I_UNIT * om * amp * xi_v;
    dtphi.cr(nm + i) = I_UNIT * om * amp * std::conj(xi_v);
    phidag.an(nm + i) = amp * std::conj(xi_v);
    phidag.cr(i) = amp * xi_v;
  }
  const Eigen::VectorXd g = bracket_constants(Species::scalar, ms);
  return pair_bracket(dtphi, phidag, g, true);
}

double wrong_statistics_hq_norm(const ModeSet& ms, size_t budget) {
  const FockRep rep = build_fermion_rep(ms, 1, budget);  // scalar register layout,
                                                         // anticommuting rules
  const ConservedSet sum = mode_sum_scalar(ms);
  const Eigen::MatrixXcd h = to_dense(sum.H, rep);
  const Eigen::MatrixXcd q = to_dense(sum.Q, rep);
  return (h * q - q * h).cwiseAbs().maxCoeff();
}

}  // namespace dpsqft

#include "dpsqft/stress.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dpsqft {
namespace {

// Value plus analytic time derivative; products obey the Leibniz rule so the
// dt of every assembled T component comes out for free.
struct Jet {
  cd v{0.0, 0.0};
  cd d{0.0, 0.0};
};
inline Jet operator+(const Jet& x, const Jet& y) { return {x.v + y.v, x.d + y.d}; }
inline Jet operator-(const Jet& x, const Jet& y) { return {x.v - y.v, x.d - y.d}; }
inline Jet operator*(const Jet& x, const Jet& y) {
  return {x.v * y.v, x.d * y.v + x.v * y.d};
}
inline Jet operator*(double s, const Jet& x) { return {s * x.v, s * x.d}; }
inline Jet cjet(const Jet& x) { return {std::conj(x.v), std::conj(x.d)}; }

struct Jet4 {
  Vec4 v = Vec4::Zero();
  Vec4 d = Vec4::Zero();
};
struct RowJet4 {
  Eigen::RowVector4cd v = Eigen::RowVector4cd::Zero();
  Eigen::RowVector4cd d = Eigen::RowVector4cd::Zero();
};

// Bilinear row * Gamma * column collapsed to a scalar Jet.
inline Jet bil(const RowJet4& r, const Mat4& G, const Jet4& c) {
  return {(r.v * G * c.v)(0, 0), (r.d * G * c.v)(0, 0) + (r.v * G * c.d)(0, 0)};
}
inline Jet bil1(const RowJet4& r, const Jet4& c) {
  return {(r.v * c.v)(0, 0), (r.d * c.v)(0, 0) + (r.v * c.d)(0, 0)};
}

std::array<int, 3> mode_axes(const ModeSet& ms, size_t i) {
  const int o1 = ms.orders[1], o2 = ms.orders[2];
  const int idx = static_cast<int>(i);
  return {idx / (o1 * o2), (idx / o2) % o1, idx % o2};
}

// Per-axis xi tables for all site orders up to n_max, plus the per-mode axis
// node indices. Shared scaffolding for both species.
struct XiTables {
  std::array<Eigen::MatrixXcd, 3> table;   // (#nodes) x (n_max + 1)
  std::vector<std::array<int, 3>> axis_of; // mode -> per-axis node index

  XiTables(const ModeSet& ms, int n_max) {
    for (int ax = 0; ax < 3; ++ax) table[ax] = xi_axis_table(ms.axis_nodes[ax], n_max);
    axis_of.resize(ms.size());
    for (size_t i = 0; i < ms.size(); ++i) axis_of[i] = mode_axes(ms, i);
  }
  cd xi(size_t mode, const std::array<int, 3>& n) const {
    cd p{1.0, 0.0};
    for (int ax = 0; ax < 3; ++ax) p *= table[ax](axis_of[mode][ax], n[ax]);
    return p;
  }
};

// ---------------------------------------------------------------- scalar ---

struct ScalarSite {
  Jet phi;                  // (phi, dt phi)
  Jet pi;                   // (dt phi, dt^2 phi)
  std::array<Jet, 3> grad;  // (D#_a phi, D#_a dt phi)
};

class ScalarEval {
 public:
  ScalarEval(const ModeSet& ms, const ScalarAmplitudes& amps, int n_max, double t)
      : ms_(ms), xi_(ms, n_max) {
    const auto n = static_cast<Eigen::Index>(ms.size());
    if (amps.particle.size() != n || amps.antiparticle.size() != n)
      throw std::invalid_argument("stress: amplitude count must match the mode count");
    cp_.resize(ms.size());
    cm_.resize(ms.size());
    wt_.resize(ms.size());
    for (size_t i = 0; i < ms.size(); ++i) {
      const double w = ms.omega_of(i);
      const double wt = w * (1.0 + amps.detune);
      const double norm = ms.weights[i] / std::sqrt(2.0 * w);
      cp_[i] = norm * amps.particle[static_cast<Eigen::Index>(i)] *
               std::exp(cd(0.0, -wt * t));
      cm_[i] = norm * amps.antiparticle[static_cast<Eigen::Index>(i)] *
               std::exp(cd(0.0, +wt * t));
      wt_[i] = wt;
    }
  }

  ScalarSite at(const std::array<int, 3>& n) const {
    ScalarSite s;
    if (n[0] < 0 || n[1] < 0 || n[2] < 0) return s;
    for (size_t i = 0; i < ms_.size(); ++i) {
      const cd xip = xi_.xi(i, n);
      const cd p = cp_[i] * xip;            // particle branch at this site
      const cd m = cm_[i] * std::conj(xip); // antiparticle branch
      const cd iw{0.0, wt_[i]};
      s.phi.v += p + m;
      s.phi.d += -iw * p + iw * m;
      s.pi.v += -iw * p + iw * m;
      s.pi.d += -wt_[i] * wt_[i] * (p + m);
      for (int a = 0; a < 3; ++a) {
        const cd ik{0.0, ms_.momenta[i][a]};
        s.grad[a].v += ik * p - ik * m;
        s.grad[a].d += -iw * ik * p + iw * (-ik) * m;
      }
    }
    return s;
  }

 private:
  const ModeSet& ms_;
  XiTables xi_;
  std::vector<cd> cp_, cm_;
  std::vector<double> wt_;
};

struct SampleJets {
  std::array<std::array<Jet, 3>, 3> ab{};  // [a][b]
  std::array<Jet, 3> a4{};
  std::array<Jet, 3> fourb{};
  Jet ee;
};

// row_variant: use sqrt(n^a/2) and the flipped trace-group sign (the
// non-telescoping arrangement kept as a negative control).
SampleJets scalar_components(const ScalarEval& ev, const std::array<int, 3>& n,
                             double mu, bool row_variant) {
  SampleJets out;
  const double mu2 = mu * mu;
  const ScalarSite sn = ev.at(n);

  for (int b = 0; b < 3; ++b) {
    const double sb = std::sqrt(0.5 * n[b]);
    auto nm = n;
    nm[b] -= 1;
    const ScalarSite sm = ev.at(nm);  // all-zero when n[b] == 0 (sb == 0 too)

    for (int a = 0; a < 3; ++a) {
      const Jet grp = cjet(sm.grad[b]) * sn.grad[a] + cjet(sn.grad[b]) * sm.grad[a] +
                      cjet(sm.grad[a]) * sn.grad[b] + cjet(sn.grad[a]) * sm.grad[b];
      const double fac = row_variant ? std::sqrt(0.5 * n[a]) : sb;
      out.ab[a][b] = out.ab[a][b] - fac * grp;
    }
    Jet tr;
    for (int c = 0; c < 3; ++c)
      tr = tr + cjet(sm.grad[c]) * sn.grad[c] + cjet(sn.grad[c]) * sm.grad[c];
    tr = tr - (cjet(sm.pi) * sn.pi + cjet(sn.pi) * sm.pi);
    tr = tr + mu2 * (cjet(sm.phi) * sn.phi + cjet(sn.phi) * sm.phi);
    out.ab[b][b] = row_variant ? (out.ab[b][b] - sb * tr) : (out.ab[b][b] + sb * tr);

    out.fourb[b] = -1.0 * sb *
                   (cjet(sm.grad[b]) * sn.pi + cjet(sn.grad[b]) * sm.pi +
                    cjet(sm.pi) * sn.grad[b] + cjet(sn.pi) * sm.grad[b]);
  }
  for (int a = 0; a < 3; ++a)
    out.a4[a] = cjet(sn.pi) * sn.grad[a] + cjet(sn.grad[a]) * sn.pi;
  out.ee = cjet(sn.pi) * sn.pi + mu2 * (cjet(sn.phi) * sn.phi);
  for (int c = 0; c < 3; ++c) out.ee = out.ee + cjet(sn.grad[c]) * sn.grad[c];
  return out;
}

// ----------------------------------------------------------------- Dirac ---

struct DiracSite {
  Jet4 psi;                   // (psi, dt psi)
  Jet4 dpsi;                  // (dt psi, dt^2 psi)
  std::array<Jet4, 3> grad;   // (D#_a psi, D#_a dt psi)
  RowJet4 tpsi;               // psi~ = i psi^dag gamma^4, with dt
  RowJet4 tdpsi;              // dt psi~
  std::array<RowJet4, 3> tgrad;
};

class DiracEval {
 public:
  DiracEval(const ModeSet& ms, const DiracAmplitudes& amps, int n_max, double t)
      : ms_(ms), xi_(ms, n_max), g4_(gamma_default().g[3]) {
    if (ms.mass <= 0.0) throw std::domain_error("stress: Dirac checks need mass > 0");
    const auto n = static_cast<Eigen::Index>(ms.size());
    if (amps.particle.rows() != 2 || amps.antiparticle.rows() != 2 ||
        amps.particle.cols() != n || amps.antiparticle.cols() != n)
      throw std::invalid_argument("stress: Dirac amplitudes must be 2 x (mode count)");
    up_.resize(ms.size());
    vm_.resize(ms.size());
    et_.resize(ms.size());
    for (size_t i = 0; i < ms.size(); ++i) {
      const double e = ms.omega_of(i);
      const double et = e * (1.0 + amps.detune);
      const double norm = ms.weights[i] * std::sqrt(ms.mass / e);
      const SpinorSet sp = dirac_spinors(ms.momenta[i], ms.mass);
      Vec4 u = Vec4::Zero(), v = Vec4::Zero();
      for (int r = 0; r < 2; ++r) {
        u += amps.particle(r, static_cast<Eigen::Index>(i)) * sp.u[r];
        v += amps.antiparticle(r, static_cast<Eigen::Index>(i)) * sp.v[r];
      }
      up_[i] = norm * std::exp(cd(0.0, -et * t)) * u;
      vm_[i] = norm * std::exp(cd(0.0, +et * t)) * v;
      et_[i] = et;
    }
  }

  DiracSite at(const std::array<int, 3>& n) const {
    DiracSite s;
    if (n[0] < 0 || n[1] < 0 || n[2] < 0) return s;
    for (size_t i = 0; i < ms_.size(); ++i) {
      const cd xip = xi_.xi(i, n);
      const Vec4 p = xip * up_[i];
      const Vec4 m = std::conj(xip) * vm_[i];
      const cd ie{0.0, et_[i]};
      s.psi.v += p + m;
      s.psi.d += -ie * p + ie * m;
      s.dpsi.v += -ie * p + ie * m;
      s.dpsi.d += -et_[i] * et_[i] * (p + m);
      for (int a = 0; a < 3; ++a) {
        const cd ik{0.0, ms_.momenta[i][a]};
        s.grad[a].v += ik * p - ik * m;
        s.grad[a].d += -ie * ik * p + ie * (-ik) * m;
      }
    }
    s.tpsi = tilde(s.psi);
    s.tdpsi = tilde(s.dpsi);
    for (int a = 0; a < 3; ++a) s.tgrad[a] = tilde(s.grad[a]);
    return s;
  }

 private:
  RowJet4 tilde(const Jet4& x) const {
    RowJet4 r;
    r.v = cd(0.0, 1.0) * (x.v.adjoint() * g4_);
    r.d = cd(0.0, 1.0) * (x.d.adjoint() * g4_);
    return r;
  }

  const ModeSet& ms_;
  XiTables xi_;
  Mat4 g4_;
  std::vector<Vec4> up_, vm_;
  std::vector<double> et_;
};

SampleJets dirac_components(const DiracEval& ev, const std::array<int, 3>& n,
                            const GammaSet& gs, double m) {
  SampleJets out;
  const DiracSite sn = ev.at(n);
  const Mat4& g4 = gs.g[3];

  for (int b = 0; b < 3; ++b) {
    const double sb = std::sqrt(0.5 * n[b]);
    auto nm = n;
    nm[b] -= 1;
    const DiracSite sm = ev.at(nm);

    // dL/drho_b = -(1/2) psi~ gamma^b acting from the left; its "h.c." pair
    // puts the ladder derivative on the adjoint row instead.
    for (int a = 0; a < 3; ++a) {
      Jet grp = -0.5 * (bil(sm.tpsi, gs.g[b], sn.grad[a]) +
                        bil(sn.tpsi, gs.g[b], sm.grad[a]));
      grp = grp + 0.5 * (bil(sm.tgrad[a], gs.g[b], sn.psi) +
                         bil(sn.tgrad[a], gs.g[b], sm.psi));
      out.ab[a][b] = out.ab[a][b] + sb * grp;
    }

    // Trace group: the site-split Lagrangian density. On shell it vanishes
    // pairing by pairing (first-order field equation), so it contributes no
    // divergence; off shell it feeds the detuning control.
    Jet tr;
    for (int c = 0; c < 3; ++c) {
      tr = tr + bil(sm.tpsi, gs.g[c], sn.grad[c]) + bil(sn.tpsi, gs.g[c], sm.grad[c]);
      tr = tr - bil(sm.tgrad[c], gs.g[c], sn.psi) - bil(sn.tgrad[c], gs.g[c], sm.psi);
    }
    tr = tr + bil(sm.tpsi, g4, sn.dpsi) + bil(sn.tpsi, g4, sm.dpsi);
    tr = tr - bil(sm.tdpsi, g4, sn.psi) - bil(sn.tdpsi, g4, sm.psi);
    tr = 0.5 * tr;
    tr = tr + m * (bil1(sm.tpsi, sn.psi) + bil1(sn.tpsi, sm.psi));
    out.ab[b][b] = out.ab[b][b] - sb * tr;

    out.fourb[b] = sb * (-0.5 * (bil(sm.tpsi, gs.g[b], sn.dpsi) +
                                 bil(sn.tpsi, gs.g[b], sm.dpsi)) +
                         0.5 * (bil(sm.tdpsi, gs.g[b], sn.psi) +
                                bil(sn.tdpsi, gs.g[b], sm.psi)));
  }

  for (int a = 0; a < 3; ++a)
    out.a4[a] = -0.5 * bil(sn.tpsi, g4, sn.grad[a]) + 0.5 * bil(sn.tgrad[a], g4, sn.psi);

  Jet lag;
  for (int c = 0; c < 3; ++c)
    lag = lag + bil(sn.tpsi, gs.g[c], sn.grad[c]) - bil(sn.tgrad[c], gs.g[c], sn.psi);
  lag = lag + bil(sn.tpsi, g4, sn.dpsi) - bil(sn.tdpsi, g4, sn.psi);
  lag = -0.5 * lag - m * bil1(sn.tpsi, sn.psi);
  out.ee = -0.5 * bil(sn.tpsi, g4, sn.dpsi) + 0.5 * bil(sn.tdpsi, g4, sn.psi) - lag;
  return out;
}

// ------------------------------------------------------------- reduction ---

StressTensorSample to_sample(const SampleJets& j, const std::array<int, 3>& site, double t) {
  StressTensorSample s;
  s.site = site;
  s.t = t;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) s.spatial(a, b) = j.ab[a][b].v;
    s.time_row[a] = j.a4[a].v;
    s.space_row[a] = j.fourb[a].v;
  }
  s.energy = j.ee.v;
  return s;
}

template <typename Components>
StressResidual residual_sweep(int extent, Components&& comp) {
  if (extent < 2) throw std::invalid_argument("stress: box extent must be >= 2");
  const int e3 = extent * extent * extent;
  std::vector<SampleJets> grid(static_cast<size_t>(e3));
  auto flat = [extent](const std::array<int, 3>& n) {
    return (n[0] * extent + n[1]) * extent + n[2];
  };
  StressResidual out;
  for (int x = 0; x < extent; ++x)
    for (int y = 0; y < extent; ++y)
      for (int z = 0; z < extent; ++z) {
        const std::array<int, 3> n{x, y, z};
        SampleJets j = comp(n);
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) out.scale = std::max(out.scale, std::abs(j.ab[a][b].v));
        for (int a = 0; a < 3; ++a) {
          out.scale = std::max({out.scale, std::abs(j.a4[a].v), std::abs(j.fourb[a].v)});
        }
        out.scale = std::max(out.scale, std::abs(j.ee.v));
        grid[static_cast<size_t>(flat(n))] = std::move(j);
      }

  for (int x = 0; x + 1 < extent; ++x)
    for (int y = 0; y + 1 < extent; ++y)
      for (int z = 0; z + 1 < extent; ++z) {
        const std::array<int, 3> n{x, y, z};
        const SampleJets& here = grid[static_cast<size_t>(flat(n))];
        std::array<const SampleJets*, 3> fwd{};
        for (int b = 0; b < 3; ++b) {
          auto np = n;
          np[b] += 1;
          fwd[b] = &grid[static_cast<size_t>(flat(np))];
        }
        for (int a = 0; a < 3; ++a) {
          cd r = here.a4[a].d;
          for (int b = 0; b < 3; ++b) r += fwd[b]->ab[a][b].v - here.ab[a][b].v;
          out.momentum_max = std::max(out.momentum_max, std::abs(r));
        }
        cd r4 = here.ee.d;
        for (int b = 0; b < 3; ++b) r4 += fwd[b]->fourb[b].v - here.fourb[b].v;
        out.energy_max = std::max(out.energy_max, std::abs(r4));
      }
  return out;
}

}  // namespace

StressTensorSample stress_sample_scalar(const ModeSet& ms, const ScalarAmplitudes& amps,
                                        const std::array<int, 3>& site, double t) {
  for (int c : site)
    if (c < 0) throw std::out_of_range("stress: site coordinates must be >= 0");
  const int n_max = std::max({site[0], site[1], site[2]}) + 1;
  ScalarEval ev(ms, amps, n_max, t);
  return to_sample(scalar_components(ev, site, ms.mass, false), site, t);
}

StressTensorSample stress_sample_dirac(const ModeSet& ms, const DiracAmplitudes& amps,
                                       const std::array<int, 3>& site, double t) {
  for (int c : site)
    if (c < 0) throw std::out_of_range("stress: site coordinates must be >= 0");
  const int n_max = std::max({site[0], site[1], site[2]}) + 1;
  DiracEval ev(ms, amps, n_max, t);
  const GammaSet gs = gamma_default();
  return to_sample(dirac_components(ev, site, gs, ms.mass), site, t);
}

StressResidual stress_conservation_scalar(const ModeSet& ms, const ScalarAmplitudes& amps,
                                          int extent, double t) {
  ScalarEval ev(ms, amps, extent, t);
  return residual_sweep(extent, [&](const std::array<int, 3>& n) {
    return scalar_components(ev, n, ms.mass, false);
  });
}

StressResidual stress_conservation_scalar_row_variant(const ModeSet& ms,
                                                      const ScalarAmplitudes& amps,
                                                      int extent, double t) {
  ScalarEval ev(ms, amps, extent, t);
  return residual_sweep(extent, [&](const std::array<int, 3>& n) {
    return scalar_components(ev, n, ms.mass, true);
  });
}

StressResidual stress_conservation_dirac(const ModeSet& ms, const DiracAmplitudes& amps,
                                         int extent, double t) {
  DiracEval ev(ms, amps, extent, t);
  const GammaSet gs = gamma_default();
  return residual_sweep(extent, [&](const std::array<int, 3>& n) {
    return dirac_components(ev, n, gs, ms.mass);
  });
}

}  // namespace dpsqft

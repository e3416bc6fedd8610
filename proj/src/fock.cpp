#include "dpsqft/fock.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace dpsqft {

namespace {

constexpr size_t NPOS = static_cast<size_t>(-1);

size_t checked_pow(size_t base, int exp, size_t budget) {
  size_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > budget / base + 1) return budget + 1;  // saturate past the budget
    v *= base;
  }
  return v;
}

SpMat from_triplets(size_t dim, const std::vector<Eigen::Triplet<cd>>& trips) {
  SpMat m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

}  // namespace

SpMat FockRep::raise(int reg) const {
  SpMat ad = SpMat(lower[static_cast<size_t>(reg)].adjoint());
  if (kind == RepKind::photon && reg_metric[static_cast<size_t>(reg)] < 0.0) {
    // eta-adjoint: sandwich the euclidean adjoint between metric operators
    for (int k = 0; k < ad.outerSize(); ++k)
      for (SpMat::InnerIterator it(ad, k); it; ++it)
        it.valueRef() *= metric_diag(it.row()) * metric_diag(it.col());
  }
  return ad;
}

int FockRep::occupation_of(size_t state, int reg) const {
  if (kind == RepKind::fermion) return static_cast<int>((state >> reg) & 1u);
  const auto d = static_cast<size_t>(cutoff + 1);
  for (int r = 0; r < reg; ++r) state /= d;
  return static_cast<int>(state % d);
}

bool FockRep::top_occupied(size_t state, int reg) const {
  if (kind == RepKind::fermion) return false;  // no truncation artifact
  return occupation_of(state, reg) == cutoff;
}

namespace {

// shared bosonic multi-register builder (boson and photon kinds)
FockRep build_bosonic(RepKind kind, const ModeSet& modes, int cutoff, int families,
                      bool charged, size_t budget) {
  if (cutoff < 1) throw std::invalid_argument("FockRep: cutoff must be >= 1");
  const int nm = static_cast<int>(modes.size());
  const int regs = nm * families;
  const auto d = static_cast<size_t>(cutoff + 1);
  const size_t dim = checked_pow(d, regs, budget);
  if (dim > budget) throw std::length_error("FockRep: dimension budget exceeded");

  FockRep rep;
  rep.kind = kind;
  rep.modes = modes;
  rep.cutoff = cutoff;
  rep.charged = charged;
  rep.dim = dim;
  rep.n_registers = regs;
  rep.reg_weight.resize(static_cast<size_t>(regs));
  rep.reg_metric.assign(static_cast<size_t>(regs), 1.0);
  for (int r = 0; r < regs; ++r) {
    rep.reg_weight[static_cast<size_t>(r)] = modes.weights[static_cast<size_t>(r % nm)];
    if (kind == RepKind::photon && r / nm == 3) rep.reg_metric[static_cast<size_t>(r)] = -1.0;
  }

  rep.metric_diag = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(dim));
  if (kind == RepKind::photon) {
    for (size_t s = 0; s < dim; ++s) {
      int temporal = 0;
      size_t t = s;
      for (int r = 0; r < regs; ++r) {
        if (r / nm == 3) temporal += static_cast<int>(t % d);
        t /= d;
      }
      rep.metric_diag(static_cast<Eigen::Index>(s)) = (temporal % 2 == 0) ? 1.0 : -1.0;
    }
  }

  size_t stride = 1;
  for (int r = 0; r < regs; ++r) {
    const double inv_sqrt_w = 1.0 / std::sqrt(rep.reg_weight[static_cast<size_t>(r)]);
    std::vector<Eigen::Triplet<cd>> trips;
    for (size_t s = 0; s < dim; ++s) {
      const int m = static_cast<int>((s / stride) % d);
      if (m >= 1)
        trips.emplace_back(static_cast<int>(s - stride), static_cast<int>(s),
                           cd(std::sqrt(static_cast<double>(m)) * inv_sqrt_w, 0.0));
    }
    rep.lower.push_back(from_triplets(dim, trips));
    stride *= d;
  }
  return rep;
}

}  // namespace

FockRep build_boson_rep(const ModeSet& modes, int cutoff, bool charged, size_t budget) {
  return build_bosonic(RepKind::boson, modes, cutoff, charged ? 2 : 1, charged, budget);
}

FockRep build_photon_rep(const ModeSet& modes, int cutoff, size_t budget) {
  return build_bosonic(RepKind::photon, modes, cutoff, 4, false, budget);
}

FockRep build_fermion_rep(const ModeSet& modes, int spins, size_t budget) {
  if (spins < 1 || spins > 2) throw std::invalid_argument("FockRep: spins must be 1 or 2");
  const int nm = static_cast<int>(modes.size());
  const int regs = 2 * spins * nm;  // alpha then beta, spin-major, mode-minor
  if (regs > 62 || (static_cast<size_t>(1) << regs) > budget)
    throw std::length_error("FockRep: dimension budget exceeded");
  const size_t dim = static_cast<size_t>(1) << regs;

  FockRep rep;
  rep.kind = RepKind::fermion;
  rep.modes = modes;
  rep.cutoff = 1;
  rep.spins = spins;
  rep.dim = dim;
  rep.n_registers = regs;
  rep.reg_metric.assign(static_cast<size_t>(regs), 1.0);
  rep.metric_diag = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(dim));
  for (int r = 0; r < regs; ++r)
    rep.reg_weight.push_back(modes.weights[static_cast<size_t>(r % nm)]);

  for (int r = 0; r < regs; ++r) {
    const double inv_sqrt_w = 1.0 / std::sqrt(rep.reg_weight[static_cast<size_t>(r)]);
    const size_t bit = static_cast<size_t>(1) << r;
    const size_t below = bit - 1;
    std::vector<Eigen::Triplet<cd>> trips;
    for (size_t s = 0; s < dim; ++s) {
      if (!(s & bit)) continue;
      const double sign = (std::popcount(s & below) % 2 == 0) ? 1.0 : -1.0;  // Jordan-Wigner string
      trips.emplace_back(static_cast<int>(s ^ bit), static_cast<int>(s), cd(sign * inv_sqrt_w, 0.0));
    }
    rep.lower.push_back(from_triplets(dim, trips));
  }
  return rep;
}

Eigen::MatrixXcd number_operator(const FockRep& rep, int reg) {
  if (reg < 0 || reg >= rep.n_registers) throw std::out_of_range("number_operator: register out of range");
  SpMat n = SpMat(rep.raise(reg) * rep.lower[static_cast<size_t>(reg)]) *
            cd(rep.reg_weight[static_cast<size_t>(reg)], 0.0);
  return Eigen::MatrixXcd(n);
}

Eigen::VectorXcd vacuum(const FockRep& rep) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rep.dim));
  v(0) = 1.0;
  return v;
}

cd metric_inner(const FockRep& rep, const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  cd acc{0.0, 0.0};
  for (Eigen::Index s = 0; s < x.size(); ++s) acc += std::conj(x(s)) * rep.metric_diag(s) * y(s);
  return acc;
}

namespace {

// defect of D against zero, split into asserted block vs top-occupation block
void classify_defect(const FockRep& rep, const SpMat& d, const std::vector<int>& top_regs,
                     SuiteRecord& rec) {
  for (int k = 0; k < d.outerSize(); ++k)
    for (SpMat::InnerIterator it(d, k); it; ++it) {
      const double mag = std::abs(it.value());
      if (mag == 0.0) continue;
      bool top = false;
      for (int r : top_regs)
        if (rep.top_occupied(static_cast<size_t>(it.row()), r) ||
            rep.top_occupied(static_cast<size_t>(it.col()), r))
          top = true;
      if (top) {
        rec.top_block_defect = std::max(rec.top_block_defect, mag);
      } else if (mag > rec.max_defect) {
        rec.max_defect = mag;
        rec.location = "registers(" + std::to_string(top_regs.empty() ? -1 : top_regs[0]) +
                       ") state(" + std::to_string(it.row()) + "," + std::to_string(it.col()) + ")";
      }
    }
}

SpMat scaled_identity(size_t dim, cd s) {
  SpMat m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setIdentity();
  return SpMat(m * s);
}

struct BracketCheck {
  std::string identity;
  SpMat lhs_a, lhs_b;     // bracket arguments
  SpMat target;           // subtracted from the bracket
  bool anti = false;
  std::vector<int> top_regs;
};

void run_checks(const FockRep& rep, std::vector<BracketCheck>& checks, double tol,
                std::vector<SuiteRecord>& out) {
  for (auto& c : checks) {
    SpMat br = c.anti ? SpMat(c.lhs_a * c.lhs_b + c.lhs_b * c.lhs_a)
                      : SpMat(c.lhs_a * c.lhs_b - c.lhs_b * c.lhs_a);
    SpMat d = SpMat(br - c.target);
    d.prune([](const Eigen::Index&, const Eigen::Index&, const cd& v) { return v != cd(0.0, 0.0); });
    SuiteRecord rec;
    rec.identity = c.identity;
    rec.tolerance = tol;
    classify_defect(rep, d, c.top_regs, rec);
    rec.pass = rec.max_defect <= tol;
    // merge per-identity family: keep the worst record of each name
    bool merged = false;
    for (auto& r : out)
      if (r.identity == rec.identity) {
        if (rec.max_defect > r.max_defect) {
          r.max_defect = rec.max_defect;
          r.location = rec.location;
          r.pass = rec.pass;
        }
        r.top_block_defect = std::max(r.top_block_defect, rec.top_block_defect);
        merged = true;
      }
    if (!merged) out.push_back(rec);
  }
  checks.clear();
}

}  // namespace

std::vector<SuiteRecord> ladder_commutator_suite(const FockRep& rep, double tol) {
  std::vector<SuiteRecord> out;
  std::vector<BracketCheck> checks;
  const int regs = rep.n_registers;
  const int nm = static_cast<int>(rep.modes.size());
  const bool fermi = rep.kind == RepKind::fermion;

  auto family = [&](int r) { return r / nm; };
  auto same_species = [&](int i, int j) {
    if (rep.kind == RepKind::boson) return family(i) == family(j);
    if (rep.kind == RepKind::fermion) return (i < 2 * nm) == (j < 2 * nm);
    return true;  // photon: one species, four families
  };
  auto delta_target = [&](int i, int j) -> cd {
    if (i != j) return {0.0, 0.0};
    return {rep.reg_metric[static_cast<size_t>(i)] / rep.reg_weight[static_cast<size_t>(i)], 0.0};
  };

  for (int i = 0; i < regs; ++i)
    for (int j = 0; j < regs; ++j) {
      const SpMat &ci = rep.lower[static_cast<size_t>(i)], &cj = rep.lower[static_cast<size_t>(j)];
      const SpMat cjd = rep.raise(j);
      std::string fam = same_species(i, j) ? "same-species" : "cross-species";
      checks.push_back({"bracket(c_i, c_j) = 0 [" + fam + "]", ci, cj,
                        scaled_identity(rep.dim, 0.0), fermi, {}});
      checks.push_back({"bracket(c_i, c_j^dag) = eta delta_ij / w [" + fam + "]", ci, cjd,
                        scaled_identity(rep.dim, delta_target(i, j)), fermi,
                        (i == j && !fermi) ? std::vector<int>{i} : std::vector<int>{}});
      // occupation-density identities: exact even at the truncation edge
      SpMat ni = SpMat(rep.raise(i) * ci);
      cd dw = delta_target(i, j);
      checks.push_back({"[N_i, c_j] = -eta delta_ij / w c_j", ni, cj, SpMat(cj * (-dw)), false, {}});
      checks.push_back({"[N_i, c_j^dag] = +eta delta_ij / w c_j^dag", ni, cjd, SpMat(cjd * dw), false, {}});
      if (i < j) {
        SpMat nj = SpMat(rep.raise(j) * cj);
        checks.push_back({"[N_i, N_j] = 0", ni, nj, scaled_identity(rep.dim, 0.0), false, {}});
      }
      if (static_cast<int>(checks.size()) > 64) run_checks(rep, checks, tol, out);
    }
  run_checks(rep, checks, tol, out);

  if (rep.kind == RepKind::photon) {
    // eta-adjoint involution: applying the metric adjoint twice returns the operator
    SuiteRecord rec;
    rec.identity = "eta-adjoint involution";
    rec.tolerance = tol;
    for (int r = 0; r < regs; ++r) {
      SpMat twice = SpMat(rep.raise(r).adjoint());
      if (rep.reg_metric[static_cast<size_t>(r)] < 0.0)
        for (int k = 0; k < twice.outerSize(); ++k)
          for (SpMat::InnerIterator it(twice, k); it; ++it)
            it.valueRef() *= rep.metric_diag(it.row()) * rep.metric_diag(it.col());
      SpMat d = SpMat(twice - rep.lower[static_cast<size_t>(r)]);
      double mag = 0.0;
      for (int k = 0; k < d.outerSize(); ++k)
        for (SpMat::InnerIterator it(d, k); it; ++it) mag = std::max(mag, std::abs(it.value()));
      rec.max_defect = std::max(rec.max_defect, mag);
    }
    rec.pass = rec.max_defect <= tol;
    out.push_back(rec);
  }
  return out;
}

// ---- exact path ----------------------------------------------------------

MonoMatrix MonoMatrix::identity(size_t dim) {
  MonoMatrix m;
  m.dim = dim;
  m.row_of_col.resize(dim);
  m.entry_of_col.assign(dim, SqrtEntry{1, 1});
  for (size_t j = 0; j < dim; ++j) m.row_of_col[j] = j;
  return m;
}

MonoMatrix MonoMatrix::transpose_mono() const {
  MonoMatrix t;
  t.dim = dim;
  t.row_of_col.assign(dim, NPOS);
  t.entry_of_col.assign(dim, SqrtEntry{});
  for (size_t j = 0; j < dim; ++j) {
    if (row_of_col[j] == NPOS || entry_of_col[j].coeff == 0) continue;
    t.row_of_col[row_of_col[j]] = j;
    t.entry_of_col[row_of_col[j]] = entry_of_col[j];
  }
  return t;
}

MonoMatrix mono_mul(const MonoMatrix& a, const MonoMatrix& b) {
  MonoMatrix p;
  p.dim = a.dim;
  p.row_of_col.assign(p.dim, NPOS);
  p.entry_of_col.assign(p.dim, SqrtEntry{});
  for (size_t j = 0; j < p.dim; ++j) {
    const size_t mid = b.row_of_col[j];
    if (mid == NPOS || b.entry_of_col[j].coeff == 0) continue;
    const size_t row = a.row_of_col[mid];
    if (row == NPOS || a.entry_of_col[mid].coeff == 0) continue;
    p.row_of_col[j] = row;
    p.entry_of_col[j] = SqrtEntry{a.entry_of_col[mid].coeff * b.entry_of_col[j].coeff,
                                  a.entry_of_col[mid].radicand * b.entry_of_col[j].radicand};
  }
  return p;
}

namespace {

// reduce the radicand to square-free form so equal values compare equal
SqrtEntry canonical(SqrtEntry e) {
  if (e.coeff == 0 || e.radicand == 0) return SqrtEntry{0, 1};
  for (long long s = 2; s * s <= e.radicand;) {
    if (e.radicand % (s * s) == 0) {
      e.coeff *= s;
      e.radicand /= s * s;
    } else {
      ++s;
    }
  }
  return e;
}

}  // namespace

int ExactLadders::occupation_of(size_t state, int reg) const {
  if (kind == RepKind::fermion) return static_cast<int>((state >> reg) & 1u);
  const auto d = static_cast<size_t>(cutoff + 1);
  for (int r = 0; r < reg; ++r) state /= d;
  return static_cast<int>(state % d);
}

ExactLadders exact_ladders(RepKind kind, int n_registers, int cutoff) {
  ExactLadders lad;
  lad.kind = kind;
  lad.n_registers = n_registers;
  lad.cutoff = (kind == RepKind::fermion) ? 1 : cutoff;

  if (kind == RepKind::fermion) {
    lad.dim = static_cast<size_t>(1) << n_registers;
    for (int r = 0; r < n_registers; ++r) {
      MonoMatrix lo, hi;
      lo.dim = hi.dim = lad.dim;
      lo.row_of_col.assign(lad.dim, NPOS);
      hi.row_of_col.assign(lad.dim, NPOS);
      lo.entry_of_col.assign(lad.dim, SqrtEntry{});
      hi.entry_of_col.assign(lad.dim, SqrtEntry{});
      const size_t bit = static_cast<size_t>(1) << r, below = bit - 1;
      for (size_t s = 0; s < lad.dim; ++s) {
        const long long sign = (std::popcount(s & below) % 2 == 0) ? 1 : -1;
        if (s & bit) {
          lo.row_of_col[s] = s ^ bit;
          lo.entry_of_col[s] = SqrtEntry{sign, 1};
        } else {
          hi.row_of_col[s] = s | bit;
          hi.entry_of_col[s] = SqrtEntry{sign, 1};
        }
      }
      lad.lower.push_back(lo);
      lad.raise.push_back(hi);
    }
    return lad;
  }

  const auto d = static_cast<size_t>(cutoff + 1);
  lad.dim = 1;
  for (int r = 0; r < n_registers; ++r) lad.dim *= d;
  size_t stride = 1;
  const int nm_per_family = (kind == RepKind::photon) ? n_registers / 4 : n_registers;
  for (int r = 0; r < n_registers; ++r) {
    const bool temporal = (kind == RepKind::photon) && (r / nm_per_family == 3);
    MonoMatrix lo, hi;
    lo.dim = hi.dim = lad.dim;
    lo.row_of_col.assign(lad.dim, NPOS);
    hi.row_of_col.assign(lad.dim, NPOS);
    lo.entry_of_col.assign(lad.dim, SqrtEntry{});
    hi.entry_of_col.assign(lad.dim, SqrtEntry{});
    for (size_t s = 0; s < lad.dim; ++s) {
      const int m = static_cast<int>((s / stride) % d);
      if (m >= 1) {
        lo.row_of_col[s] = s - stride;
        lo.entry_of_col[s] = SqrtEntry{1, m};
      }
      if (m < cutoff) {
        hi.row_of_col[s] = s + stride;
        // metric adjoint flips the sign on the temporal family
        hi.entry_of_col[s] = SqrtEntry{temporal ? -1 : 1, m + 1};
      }
    }
    lad.lower.push_back(lo);
    lad.raise.push_back(hi);
    stride *= d;
  }
  return lad;
}

namespace {

struct ExactTerm {
  size_t row;
  SqrtEntry e;
};

void accumulate(std::vector<ExactTerm>& terms, size_t row, SqrtEntry e, long long scale) {
  e.coeff *= scale;
  if (e.coeff == 0) return;
  e = canonical(e);
  for (auto& t : terms)
    if (t.row == row && t.e.radicand == e.radicand) {
      t.e.coeff += e.coeff;
      return;
    }
  terms.push_back({row, e});
}

}  // namespace

ExactDefect exact_bracket_defect(const ExactLadders& lad, const MonoMatrix& a, const MonoMatrix& b,
                                 bool anti, const MonoMatrix* target, long long target_scale,
                                 const std::vector<int>& top_registers, bool skip_top) {
  MonoMatrix ab = mono_mul(a, b), ba = mono_mul(b, a);
  ExactDefect out;
  for (size_t j = 0; j < lad.dim; ++j) {
    std::vector<ExactTerm> terms;
    if (ab.row_of_col[j] != NPOS) accumulate(terms, ab.row_of_col[j], ab.entry_of_col[j], 1);
    if (ba.row_of_col[j] != NPOS) accumulate(terms, ba.row_of_col[j], ba.entry_of_col[j], anti ? 1 : -1);
    if (target != nullptr && target_scale != 0 && target->row_of_col[j] != NPOS)
      accumulate(terms, target->row_of_col[j], target->entry_of_col[j], -target_scale);
    for (const auto& t : terms) {
      if (t.e.coeff == 0) continue;
      bool top = false;
      for (int r : top_registers)
        if (lad.occupation_of(t.row, r) == lad.cutoff || lad.occupation_of(j, r) == lad.cutoff)
          top = true;
      if (top && skip_top) continue;
      if (std::llabs(t.e.coeff) > out.max_abs_coeff) {
        out.max_abs_coeff = std::llabs(t.e.coeff);
        out.location = "state(" + std::to_string(t.row) + "," + std::to_string(j) + ")";
      }
    }
  }
  return out;
}

ExactSuiteResult exact_commutator_suite(RepKind kind, int n_modes, int cutoff, bool charged) {
  int regs = n_modes;
  if (kind == RepKind::boson && charged) regs = 2 * n_modes;
  if (kind == RepKind::photon || kind == RepKind::fermion) regs = 4 * n_modes;
  const ExactLadders lad = exact_ladders(kind, regs, cutoff);
  const bool fermi = kind == RepKind::fermion;
  const MonoMatrix ident = MonoMatrix::identity(lad.dim);

  ExactSuiteResult res;
  auto track = [&](const ExactDefect& sub, const ExactDefect& top, const std::string& name) {
    if (sub.max_abs_coeff > res.sub_cutoff_defect) {
      res.sub_cutoff_defect = sub.max_abs_coeff;
      res.worst_identity = name + " at " + sub.location;
    }
    res.top_block_defect = std::max(res.top_block_defect, top.max_abs_coeff);
  };

  auto metric_of = [&](int r) -> long long {
    return (kind == RepKind::photon && r / n_modes == 3) ? -1 : 1;
  };

  for (int i = 0; i < regs; ++i) {
    const MonoMatrix& ci = lad.lower[static_cast<size_t>(i)];
    const MonoMatrix ni = mono_mul(lad.raise[static_cast<size_t>(i)], ci);
    for (int j = 0; j < regs; ++j) {
      const MonoMatrix& cj = lad.lower[static_cast<size_t>(j)];
      const MonoMatrix& cjd = lad.raise[static_cast<size_t>(j)];
      const long long target = (i == j) ? metric_of(i) : 0;
      const std::vector<int> tops = (i == j && !fermi) ? std::vector<int>{i} : std::vector<int>{};
      // [c_i, c_j]_± = 0 everywhere
      track(exact_bracket_defect(lad, ci, cj, fermi, nullptr, 0, {}, false), ExactDefect{},
            "bracket(c,c)");
      // [c_i, c_j^dag]_± = eta delta_ij outside the top-occupation block
      track(exact_bracket_defect(lad, ci, cjd, fermi, &ident, target, tops, true),
            exact_bracket_defect(lad, ci, cjd, fermi, &ident, target, {}, false),
            "bracket(c,c^dag)");
      if (kind != RepKind::photon) {
        // occupation identities [N_i, c_j] = -delta_ij c_j and the dagger twin:
        // exact even at the truncation edge, so no block is excluded
        track(exact_bracket_defect(lad, ni, cj, false, &cj, (i == j) ? -1 : 0, {}, false),
              ExactDefect{}, "[N, c]");
        track(exact_bracket_defect(lad, ni, cjd, false, &cjd, (i == j) ? 1 : 0, {}, false),
              ExactDefect{}, "[N, c^dag]");
        if (i < j) {
          const MonoMatrix nj = mono_mul(lad.raise[static_cast<size_t>(j)], cj);
          track(exact_bracket_defect(lad, ni, nj, false, nullptr, 0, {}, false), ExactDefect{},
                "[N, N]");
        }
      }
    }
  }
  return res;
}

}  // namespace dpsqft

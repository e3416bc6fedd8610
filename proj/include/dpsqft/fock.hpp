#pragma once
// Finite matrix realizations of the canonical ladder algebras: truncated
// bosonic ladders, an indefinite-metric photon variant (temporal family has
// its creator defined as the metric adjoint), and Jordan-Wigner fermions.
// Discretization rule: [c_i, c_j^dag]_± = (eta/w_i) delta_ij, i.e. the
// momentum delta maps to Kronecker-over-weight.
//
// Two verification paths: floating-point sparse matrices, and an exact
// integer-sqrt monomial arithmetic (entries c*sqrt(r) with integer c, r) for
// the defect-zero statements.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "dpsqft/modes.hpp"

namespace dpsqft {

using SpMat = Eigen::SparseMatrix<cd>;

enum class RepKind { boson, photon, fermion };

struct FockRep {
  RepKind kind = RepKind::boson;
  ModeSet modes;
  int cutoff = 1;        // per bosonic register; fermions are hard-capped at 1
  bool charged = false;  // boson only: carry an independent b family
  int spins = 2;         // fermion only: spin states per species
  size_t dim = 0;
  int n_registers = 0;
  std::vector<double> reg_weight;    // w of the underlying mode, per register
  std::vector<double> reg_metric;    // eta_{mu mu} of the family (+1 except photon temporal)
  std::vector<SpMat> lower;          // weighted annihilators (entries /sqrt(w))
  Eigen::VectorXd metric_diag;       // photon metric operator (identity otherwise)

  // creator = metric-adjoint of the annihilator (plain adjoint unless photon temporal)
  SpMat raise(int reg) const;
  // register bookkeeping
  int occupation_of(size_t state, int reg) const;
  bool top_occupied(size_t state, int reg) const;  // bosonic truncation edge
};

// Register layouts:
//   boson:   a_i at i; charged adds b_i at n_modes + i
//   photon:  a_{mu,i} at mu * n_modes + i, mu = 0..3 (3 = temporal)
//   fermion: alpha_{r,i} at r * n_modes + i; beta at 2 n_modes + r n_modes + i
FockRep build_boson_rep(const ModeSet& modes, int cutoff, bool charged, size_t budget = 4096);
FockRep build_photon_rep(const ModeSet& modes, int cutoff, size_t budget = 4096);
FockRep build_fermion_rep(const ModeSet& modes, int spins = 2, size_t budget = 4096);

// N = (ladder^dag ladder) * w: integer spectrum 0..cutoff (bosons), {0,1} (fermions).
Eigen::MatrixXcd number_operator(const FockRep& rep, int reg);

// all-zero-occupation state; unit norm under the metric form
Eigen::VectorXcd vacuum(const FockRep& rep);

// <x|y> under the metric form (plain inner product unless photon)
cd metric_inner(const FockRep& rep, const Eigen::VectorXcd& x, const Eigen::VectorXcd& y);

struct SuiteRecord {
  std::string identity;
  double max_defect = 0.0;       // over the asserted (sub-cutoff) block
  double top_block_defect = 0.0; // truncation artifact, reported not asserted
  std::string location;
  double tolerance = 0.0;
  bool pass = false;
};

// Verifies every (anti)commutation identity of the rep's algebra on the
// floating-point matrices; defects allowed only in top-occupation blocks.
std::vector<SuiteRecord> ladder_commutator_suite(const FockRep& rep, double tol = 1e-12);

// ---- exact path ----------------------------------------------------------
// Monomial matrices: at most one entry per column, each an integer multiple
// of an integer square root. Ladder algebra identities close over this set,
// so the canonical (anti)commutators can be checked with no rounding at all.

struct SqrtEntry {
  long long coeff = 0;     // integer coefficient (sign included)
  long long radicand = 1;  // entry value = coeff * sqrt(radicand)
};

struct MonoMatrix {
  size_t dim = 0;
  std::vector<size_t> row_of_col;      // SIZE_MAX marks an empty column
  std::vector<SqrtEntry> entry_of_col;

  static MonoMatrix identity(size_t dim);
  MonoMatrix transpose_mono() const;   // valid: monomial in rows too
};

MonoMatrix mono_mul(const MonoMatrix& a, const MonoMatrix& b);

// Exact unweighted ladder matrices for the rep's register layout (weights are
// positive scalars common to both sides of every identity, so exactness of
// the unweighted statement carries over).
struct ExactLadders {
  size_t dim = 0;
  int cutoff = 1;
  std::vector<MonoMatrix> lower;
  std::vector<MonoMatrix> raise;   // metric adjoint where applicable
  std::vector<int> local_dim_log;  // occupation digit bookkeeping
  RepKind kind = RepKind::boson;
  int n_registers = 0;

  int occupation_of(size_t state, int reg) const;
};

ExactLadders exact_ladders(RepKind kind, int n_registers, int cutoff);

struct ExactDefect {
  long long max_abs_coeff = 0;  // 0 means the identity holds exactly
  std::string location;
};

// a*b -+ b*a - target_scale * target, evaluated exactly; entries touching a
// top-occupied register are excluded when skip_top is set.
ExactDefect exact_bracket_defect(const ExactLadders& lad, const MonoMatrix& a,
                                 const MonoMatrix& b, bool anti, const MonoMatrix* target,
                                 long long target_scale, const std::vector<int>& top_registers,
                                 bool skip_top);

// Runs the full identity list of the rep kind through the exact path.
// Returns the worst defect outside top-occupation blocks (should be 0) and
// the worst top-block artifact (reported).
struct ExactSuiteResult {
  long long sub_cutoff_defect = 0;
  long long top_block_defect = 0;
  std::string worst_identity;
};
ExactSuiteResult exact_commutator_suite(RepKind kind, int n_modes, int cutoff, bool charged);

}  // namespace dpsqft

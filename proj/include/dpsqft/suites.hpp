#pragma once
// Named verification suites behind the CLI: each suite runs a battery of
// checks against one library layer and returns a Report.  A RunConfig is
// loaded from JSON, validated, and echoed into the report so runs are
// reproducible from the report alone.

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "dpsqft/report.hpp"

namespace dpsqft {

struct RunConfig {
  std::string suite = "all";
  double mu = 1.0;         // scalar / massive vector mass
  double dirac_mass = 1.0; // Dirac mass (must stay > 0)
  int quad_order = 40;     // Gauss-Hermite order for propagator integrals
  std::array<int, 3> grid = {3, 3, 3};  // per-axis Gauss-Hermite orders
  int cutoff = 3;          // per-mode occupation cutoff for ladder reps
  int n_box = 12;          // lattice box extent for conserved-sum comparisons
  std::uint64_t seed = 20260814ull;
  std::map<std::string, double> tolerances;  // per-check-id overrides
  std::string out_dir;

  double tol(const std::string& id, double fallback) const;
};

// Parses a JSON config file.  Unknown keys and malformed values throw
// std::invalid_argument (callers map this to a usage error).
RunConfig load_config(const std::string& path);

// Throws std::invalid_argument on out-of-range values or on combinations a
// suite cannot run with (e.g. the greens suite with a massless field and an
// odd quadrature order, which places a node at the integrand singularity).
void validate_config(const RunConfig& cfg);

bool known_suite(const std::string& name);

Report run_suite(const RunConfig& cfg);

Report run_basis_suite(const RunConfig& cfg);
Report run_lattice_suite(const RunConfig& cfg);
Report run_modes_suite(const RunConfig& cfg);
Report run_greens_suite(const RunConfig& cfg);
Report run_algebra_suite(const RunConfig& cfg);
Report run_observables_suite(const RunConfig& cfg);
Report run_conservation_suite(const RunConfig& cfg);

// CSV / JSON side tables (written next to report.json by the CLI)
std::string dispersion_csv(const RunConfig& cfg);
std::string greens_csv(const RunConfig& cfg);
std::string convergence_csv(const RunConfig& cfg);
std::string gamma_json_dump();

}  // namespace dpsqft

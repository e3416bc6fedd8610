#pragma once
// Hermite polynomials H_n, normalized oscillator functions f_n, the complex
// basis xi_n = i^n f_n, Gauss-Hermite quadrature, and the identities built on
// them (Christoffel-Darboux, generating function, completeness kernels,
// Fourier self-map). All evaluators use the stable normalized recurrence.

#include <complex>
#include <vector>

namespace dpsqft {

using cd = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// H_n(k) by the raw three-term recurrence H_{n+1} = 2k H_n - 2n H_{n-1}.
// Throws std::overflow_error if the value leaves the floating range; callers
// needing large n must use f_basis instead.
double hermite(int n, double k);

// f_n(k) = e^{-k^2/2} H_n(k) / (pi^{1/4} 2^{n/2} sqrt(n!)) by the normalized
// recurrence f_{n+1} = k sqrt(2/(n+1)) f_n - sqrt(n/(n+1)) f_{n-1}; uniformly
// bounded for all n, k. f_n := 0 for n < 0 (extension rule).
double f_basis(int n, double k);

// [f_0(k), ..., f_{n_max}(k)] in one recurrence pass.
std::vector<double> f_column(int n_max, double k);

// Normalized Hermite polynomial values h_n(k) = f_n(k) e^{k^2/2}, by the same
// recurrence without the Gaussian factor. Use these wherever a quadrature
// rule's e^{-k^2} density is folded out: multiplying f-values by e^{+k^2}
// amplifies their absolute rounding floor catastrophically at far-out nodes,
// while the polynomial recurrence keeps full relative precision there.
std::vector<double> h_column(int n_max, double k);

// xi_n(k) = i^n f_n(k), the phase applied exactly by n mod 4; xi_{-n-1} := 0.
cd xi(int n, double k);

// [xi_0(k), ..., xi_{n_max}(k)].
std::vector<cd> xi_column(int n_max, double k);

// Nodes/weights for integrals of the form int e^{-k^2} g(k) dk; a rule of
// order M is exact for polynomial g of degree <= 2M-1. Immutable once built.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

// Golub-Welsch construction from the Jacobi matrix. Throws std::domain_error
// for order < 1 or order too large for stable construction (weights underflow).
QuadratureRule gauss_hermite(int order);

// (k - kh) * sum_{n=0}^{N} conj(xi_n(k)) xi_n(kh), the direct sum side.
cd christoffel_darboux(int n_top, double k, double kh);

// i sqrt((N+1)/2) [conj(xi_{N+1}(k)) xi_N(kh) - conj(xi_{N+1}(kh)) xi_N(k)].
cd christoffel_darboux_closed(int n_top, double k, double kh);

// Partial sum  sum_{n=0}^{N} xi_n(k) t^n / sqrt(n!)  (converges for |t| <= 1).
cd generating_function_partial(double t, double k, int n_top);

// The closed exponential the partial sums actually converge to:
// pi^{-1/4} exp((t^2 - k^2)/2) exp(i sqrt(2) t k).
cd generating_closed(double t, double k);

// The closed form as printed in the source identity, exp((t^2+k^2)/2 + i sqrt2 tk);
// kept so harnesses can report the discrepancy between the two forms.
cd generating_closed_printed(double t, double k);

// Partial completeness kernel  sum_{n<=N} conj(xi_n(k)) xi_n(p)  (conjugated)
// or  sum_{n<=N} xi_n(k) xi_n(p)  (unconjugated delta(k+p) variant). Only
// meaningful smeared against smooth test functions.
cd completeness_kernel(int n_top, double k, double p, bool conjugated);

// |xi_n(k) - (2pi)^{-1/2} int f_n(x) e^{ikx} dx| by Gauss-Hermite quadrature.
double fourier_self_map_check(int n, double k, int order);

// Central finite-difference residuals, evaluated in long double so the
// reported number is the h^2 truncation error, not the eps/h^2 roundoff floor:
//   ode:      f_n'' + (2n + 1 - k^2) f_n
//   lowering: xi_n' + k xi_n - i sqrt(2n) xi_{n-1}   (reduces to a real check)
double ode_residual_fd(int n, double k, double h = 1e-4);
double lowering_residual_fd(int n, double k, double h = 1e-4);

}  // namespace dpsqft

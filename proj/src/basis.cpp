#include "dpsqft/basis.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace dpsqft {

namespace {
const double quartic_root_pi = std::pow(pi, 0.25);

// i^n for n >= 0 without complex powers.
inline cd ipow(int n) {
  switch (n & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// f_0..f_{n_max} in long double, for the finite-difference residuals.
std::vector<long double> f_column_ld(int n_max, long double k) {
  std::vector<long double> out(static_cast<size_t>(n_max) + 1);
  out[0] = expl(-k * k / 2.0L) / static_cast<long double>(quartic_root_pi);
  // refresh the prefactor in long double
  out[0] = expl(-k * k / 2.0L) / powl(static_cast<long double>(pi), 0.25L);
  if (n_max >= 1) out[1] = k * sqrtl(2.0L) * out[0];
  for (int n = 1; n < n_max; ++n)
    out[n + 1] = k * sqrtl(2.0L / (n + 1)) * out[n] -
                 sqrtl(static_cast<long double>(n) / (n + 1)) * out[n - 1];
  return out;
}
}  // namespace

double hermite(int n, double k) {
  if (n < 0) return 0.0;
  double hm = 1.0, h = 2.0 * k;
  if (n == 0) return hm;
  for (int m = 1; m < n; ++m) {
    double next = 2.0 * k * h - 2.0 * m * hm;
    hm = h;
    h = next;
    if (!std::isfinite(h))
      throw std::overflow_error("hermite: H_n(k) exceeded floating range; use f_basis");
  }
  return h;
}

std::vector<double> f_column(int n_max, double k) {
  std::vector<double> out(static_cast<size_t>(n_max) + 1);
  out[0] = std::exp(-k * k / 2.0) / quartic_root_pi;
  if (n_max >= 1) out[1] = k * std::sqrt(2.0) * out[0];
  for (int n = 1; n < n_max; ++n)
    out[n + 1] = k * std::sqrt(2.0 / (n + 1)) * out[n] -
                 std::sqrt(static_cast<double>(n) / (n + 1)) * out[n - 1];
  return out;
}

std::vector<double> h_column(int n_max, double k) {
  std::vector<double> out(static_cast<size_t>(n_max) + 1);
  out[0] = 1.0 / quartic_root_pi;
  if (n_max >= 1) out[1] = k * std::sqrt(2.0) * out[0];
  for (int n = 1; n < n_max; ++n)
    out[n + 1] = k * std::sqrt(2.0 / (n + 1)) * out[n] -
                 std::sqrt(static_cast<double>(n) / (n + 1)) * out[n - 1];
  return out;
}

double f_basis(int n, double k) {
  if (n < 0) return 0.0;
  return f_column(n, k)[static_cast<size_t>(n)];
}

cd xi(int n, double k) {
  if (n < 0) return {0.0, 0.0};
  return ipow(n) * f_basis(n, k);
}

std::vector<cd> xi_column(int n_max, double k) {
  std::vector<double> f = f_column(n_max, k);
  std::vector<cd> out(f.size());
  for (int n = 0; n <= n_max; ++n) out[static_cast<size_t>(n)] = ipow(n) * f[static_cast<size_t>(n)];
  return out;
}

QuadratureRule gauss_hermite(int order) {
  if (order < 1) throw std::domain_error("gauss_hermite: order must be >= 1");
  if (order > 512)
    throw std::domain_error("gauss_hermite: order too large for stable construction");
  QuadratureRule rule;
  rule.order = order;
  if (order == 1) {
    rule.nodes = {0.0};
    rule.weights = {std::sqrt(pi)};
    return rule;
  }
  // Jacobi matrix for the (physicists') Hermite weight: zero diagonal,
  // off-diagonal beta_j = sqrt(j/2); nodes are its eigenvalues. The
  // eigenvector-based weights lose relative accuracy at the outermost nodes
  // (their first components underflow toward the eigensolver's absolute error
  // floor), so instead polish each node by Newton's method on the orthonormal
  // polynomial and take the weight from the Christoffel function,
  // w_i = 1 / sum_{j<order} h_j(x_i)^2, which only uses the stable recurrence.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int j = 1; j < order; ++j) {
    double beta = std::sqrt(j / 2.0);
    jacobi(j, j - 1) = beta;
    jacobi(j - 1, j) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::domain_error("gauss_hermite: eigen decomposition failed");
  rule.nodes.resize(static_cast<size_t>(order));
  rule.weights.resize(static_cast<size_t>(order));
  const double dh_factor = std::sqrt(2.0 * order);  // h_order' = sqrt(2 order) h_{order-1}
  for (int i = 0; i < order; ++i) {
    double x = solver.eigenvalues()(i);
    for (int step = 0; step < 3; ++step) {
      std::vector<double> h = h_column(order, x);
      x -= h[static_cast<size_t>(order)] / (dh_factor * h[static_cast<size_t>(order) - 1]);
    }
    std::vector<double> h = h_column(order - 1, x);
    double christoffel_inv = 0.0;
    for (int j = 0; j < order; ++j) christoffel_inv += h[static_cast<size_t>(j)] * h[static_cast<size_t>(j)];
    rule.nodes[static_cast<size_t>(i)] = x;
    rule.weights[static_cast<size_t>(i)] = 1.0 / christoffel_inv;
    if (!(rule.weights[static_cast<size_t>(i)] > 0.0))
      throw std::domain_error("gauss_hermite: weight underflowed; order too large");
  }
  return rule;
}

cd christoffel_darboux(int n_top, double k, double kh) {
  std::vector<cd> a = xi_column(n_top, k), b = xi_column(n_top, kh);
  cd sum = 0.0;
  for (int n = 0; n <= n_top; ++n)
    sum += std::conj(a[static_cast<size_t>(n)]) * b[static_cast<size_t>(n)];
  return (k - kh) * sum;
}

cd christoffel_darboux_closed(int n_top, double k, double kh) {
  std::vector<cd> a = xi_column(n_top + 1, k), b = xi_column(n_top + 1, kh);
  size_t nt = static_cast<size_t>(n_top);
  return cd(0.0, 1.0) * std::sqrt((n_top + 1) / 2.0) *
         (std::conj(a[nt + 1]) * b[nt] - std::conj(b[nt + 1]) * a[nt]);
}

cd generating_function_partial(double t, double k, int n_top) {
  std::vector<cd> col = xi_column(n_top, k);
  cd sum = 0.0;
  double tn_over_sqrt_fact = 1.0;  // t^n / sqrt(n!)
  for (int n = 0; n <= n_top; ++n) {
    sum += col[static_cast<size_t>(n)] * tn_over_sqrt_fact;
    tn_over_sqrt_fact *= t / std::sqrt(n + 1.0);
  }
  return sum;
}

cd generating_closed(double t, double k) {
  return std::exp((t * t - k * k) / 2.0) / quartic_root_pi *
         std::exp(cd(0.0, std::sqrt(2.0) * t * k));
}

cd generating_closed_printed(double t, double k) {
  return std::exp(cd((t * t + k * k) / 2.0, std::sqrt(2.0) * t * k));
}

cd completeness_kernel(int n_top, double k, double p, bool conjugated) {
  std::vector<cd> a = xi_column(n_top, k), b = xi_column(n_top, p);
  cd sum = 0.0;
  for (int n = 0; n <= n_top; ++n) {
    cd left = a[static_cast<size_t>(n)];
    sum += (conjugated ? std::conj(left) : left) * b[static_cast<size_t>(n)];
  }
  return sum;
}

double fourier_self_map_check(int n, double k, int order) {
  QuadratureRule rule = gauss_hermite(order);
  // substitute x = sqrt(2) y so the Gaussian half of f_n(x) becomes exactly
  // the rule's e^{-y^2} density; the smooth factor is the stable polynomial
  const double s2 = std::sqrt(2.0);
  cd integral = 0.0;
  for (int i = 0; i < order; ++i) {
    double y = rule.nodes[static_cast<size_t>(i)];
    integral += rule.weights[static_cast<size_t>(i)] *
                h_column(n, s2 * y)[static_cast<size_t>(n)] * std::exp(cd(0.0, k * s2 * y));
  }
  integral *= s2;
  return std::abs(xi(n, k) - integral / std::sqrt(2.0 * pi));
}

double ode_residual_fd(int n, double k, double h) {
  long double kl = k, hl = h;
  long double fm = f_column_ld(n, kl - hl)[static_cast<size_t>(n)];
  long double f0 = f_column_ld(n, kl)[static_cast<size_t>(n)];
  long double fp = f_column_ld(n, kl + hl)[static_cast<size_t>(n)];
  long double second = (fp - 2.0L * f0 + fm) / (hl * hl);
  return static_cast<double>(fabsl(second + (2.0L * n + 1.0L - kl * kl) * f0));
}

double lowering_residual_fd(int n, double k, double h) {
  // with xi = i^n f the relation xi' + k xi = i sqrt(2n) xi_{n-1} becomes the
  // real statement f_n' + k f_n = sqrt(2n) f_{n-1}
  long double kl = k, hl = h;
  std::vector<long double> cm = f_column_ld(n, kl - hl), cp = f_column_ld(n, kl + hl);
  std::vector<long double> c0 = f_column_ld(n, kl);
  size_t nn = static_cast<size_t>(n);
  long double deriv = (cp[nn] - cm[nn]) / (2.0L * hl);
  long double prev = (n >= 1) ? c0[nn - 1] : 0.0L;
  return static_cast<double>(fabsl(deriv + kl * c0[nn] - sqrtl(2.0L * n) * prev));
}

}  // namespace dpsqft

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dpsqft/basis.hpp"

using namespace dpsqft;

TEST_CASE("raw Hermite recurrence matches hand-expanded polynomials") {
  for (double k : {-2.0, -0.5, 0.0, 1.0, 1.7}) {
    CHECK(hermite(0, k) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(hermite(1, k) == doctest::Approx(2.0 * k).epsilon(1e-15));
    CHECK(hermite(2, k) == doctest::Approx(4.0 * k * k - 2.0).epsilon(1e-14));
    CHECK(hermite(3, k) == doctest::Approx(8.0 * k * k * k - 12.0 * k).epsilon(1e-14));
    CHECK(hermite(4, k) ==
          doctest::Approx(16.0 * std::pow(k, 4) - 48.0 * k * k + 12.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS((void)hermite(400, 12.0), std::overflow_error);
}

TEST_CASE("normalized functions stay bounded where the raw recurrence overflows") {
  // f_n is uniformly bounded; n = 400 at large k is fine on the stable path
  double v = f_basis(400, 12.0);
  CHECK(std::isfinite(v));
  CHECK(std::abs(v) < 1.0);
  CHECK(f_basis(-1, 0.3) == 0.0);
  CHECK(f_basis(-5, 0.3) == 0.0);
}

TEST_CASE("xi spot values frozen from the closed forms") {
  // xi_0(0) = pi^{-1/4}, xi_1(1) = i sqrt(2) e^{-1/2} pi^{-1/4},
  // xi_2(0) = -i^2 / (sqrt 2 pi^{1/4}), xi_4(0) = i^4 sqrt(3/8) pi^{-1/4}
  CHECK(std::abs(xi(0, 0.0) - cd(0.75112554446494251, 0.0)) < 1e-15);
  CHECK(std::abs(xi(1, 1.0) - cd(0.0, 0.6442883651134752)) < 1e-15);
  CHECK(std::abs(xi(2, 0.0) - cd(0.53112596601359852, 0.0)) < 1e-15);
  CHECK(std::abs(xi(4, 0.0) - cd(0.45996857917732664, 0.0)) < 1e-15);
  CHECK(xi(-1, 0.7) == cd(0.0, 0.0));
}

TEST_CASE("xi parity equals conjugation: xi_n(-k) = (-1)^n xi_n(k) = conj xi_n(k)") {
  for (double k : {0.25, 1.1, 2.9}) {
    auto cp = xi_column(40, k);
    auto cm = xi_column(40, -k);
    for (int n = 0; n <= 40; ++n) {
      double sgn = (n % 2 == 0) ? 1.0 : -1.0;
      CHECK(std::abs(cm[n] - sgn * cp[n]) < 1e-14);
      CHECK(std::abs(cm[n] - std::conj(cp[n])) < 1e-14);
    }
  }
}

TEST_CASE("xi_column agrees with the single-value evaluator") {
  auto col = xi_column(25, 0.8);
  for (int n = 0; n <= 25; ++n) CHECK(std::abs(col[n] - xi(n, 0.8)) < 1e-15);
}

TEST_CASE("Gauss-Hermite rules: order 1 closed form and moment exactness") {
  QuadratureRule q1 = gauss_hermite(1);
  REQUIRE(q1.nodes.size() == 1);
  CHECK(std::abs(q1.nodes[0]) < 1e-15);
  CHECK(q1.weights[0] == doctest::Approx(1.7724538509055159).epsilon(1e-15));

  QuadratureRule q = gauss_hermite(12);
  double m0 = 0, m2 = 0, m4 = 0, m1 = 0;
  for (size_t i = 0; i < q.nodes.size(); ++i) {
    m0 += q.weights[i];
    m1 += q.weights[i] * q.nodes[i];
    m2 += q.weights[i] * q.nodes[i] * q.nodes[i];
    m4 += q.weights[i] * std::pow(q.nodes[i], 4);
  }
  double sp = std::sqrt(pi);
  CHECK(std::abs(m0 - sp) < 1e-13);
  CHECK(std::abs(m1) < 1e-14);
  CHECK(std::abs(m2 - 0.5 * sp) < 1e-13);
  CHECK(std::abs(m4 - 0.75 * sp) < 1e-13);

  CHECK_THROWS_AS((void)gauss_hermite(0), std::domain_error);
  CHECK_THROWS_AS((void)gauss_hermite(-3), std::domain_error);
}

TEST_CASE("orthonormality: the order-32 Gram matrix of xi_0..xi_20 is the identity") {
  // conj(xi_m) xi_n = i^{n-m} f_m f_n; the unimodular phase drops out of the
  // defect, and with the rule's e^{-x^2} density the smooth factor is the
  // stable polynomial product h_m h_n
  QuadratureRule qr = gauss_hermite(32);
  double worst = 0.0;
  std::vector<std::vector<double>> cols;
  for (double x : qr.nodes) cols.push_back(h_column(20, x));
  for (int m = 0; m <= 20; ++m)
    for (int n = 0; n <= 20; ++n) {
      double acc = 0.0;
      for (size_t i = 0; i < qr.nodes.size(); ++i)
        acc += qr.weights[i] * cols[i][static_cast<size_t>(m)] * cols[i][static_cast<size_t>(n)];
      worst = std::max(worst, std::abs(acc - (m == n ? 1.0 : 0.0)));
    }
  CHECK(worst < 1e-13);
}

TEST_CASE("h_column is f_column with the Gaussian factored off") {
  for (double k : {-3.2, -0.5, 0.0, 1.1, 6.8}) {
    auto f = f_column(12, k);
    auto h = h_column(12, k);
    double gauss = std::exp(-k * k / 2.0);
    for (int n = 0; n <= 12; ++n)
      CHECK(std::abs(f[static_cast<size_t>(n)] - gauss * h[static_cast<size_t>(n)]) <
            1e-15 * (1.0 + std::abs(h[static_cast<size_t>(n)])));
  }
}

TEST_CASE("Christoffel-Darboux: direct sum equals the two-term closed form") {
  double worst = 0.0;
  for (int n_top : {0, 1, 5, 17, 30})
    for (double k : {-2.1, 0.3, 1.4})
      for (double kh : {-0.7, 0.0, 2.2})
        worst = std::max(worst, std::abs(christoffel_darboux(n_top, k, kh) -
                                         christoffel_darboux_closed(n_top, k, kh)));
  CHECK(worst < 1e-12);

  // frozen spots
  CHECK(std::abs(christoffel_darboux_closed(0, 1.0, 0.0) - cd(0.34219828031221655, 0.0)) <
        1e-15);
  CHECK(std::abs(christoffel_darboux_closed(10, 0.3, -0.7) -
                 cd(-0.32993041501240161, 0.0)) < 1e-15);
}

TEST_CASE("addition theorem with square-root binomial weights") {
  const double quarter_pi = std::pow(pi, 0.25);
  double worst = 0.0;
  for (int n = 0; n <= 10; ++n)
    for (double k : {-1.2, 0.0, 0.9})
      for (double p : {-0.8, 0.4, 1.6}) {
        cd lhs = std::pow(2.0, 0.5 * n) * std::exp(-0.25 * (k - p) * (k - p)) *
                 xi(n, (k + p) / std::sqrt(2.0));
        cd rhs = 0.0;
        double c_nj = 1.0;
        for (int j = 0; j <= n; ++j) {
          rhs += std::sqrt(c_nj) * xi(n - j, k) * xi(j, p);
          c_nj = c_nj * (n - j) / (j + 1.0);
        }
        worst = std::max(worst, std::abs(lhs - quarter_pi * rhs));
      }
  CHECK(worst < 1e-11);
}

TEST_CASE("generating function: partial sums converge to the corrected exponential") {
  cd p1 = generating_function_partial(0.5, 0.0, 40);
  CHECK(std::abs(p1 - cd(0.85113674876942724, 0.0)) < 1e-15);
  CHECK(std::abs(p1 - generating_closed(0.5, 0.0)) < 1e-13);

  cd p2 = generating_function_partial(1.0, 1.0, 60);
  CHECK(std::abs(p2 - cd(0.11713329263651667, 0.74193623398772246)) < 1e-15);
  CHECK(std::abs(p2 - generating_closed(1.0, 1.0)) < 1e-12);
}

TEST_CASE("generating function: the as-printed exponential does not match the series") {
  // the printed closed form carries +k^2/2 in the exponent where the series
  // limit requires -k^2/2; at k = 0 they coincide only through the t^2 factor
  cd printed = generating_closed_printed(0.5, 0.0);
  CHECK(std::abs(printed - cd(1.1331484530668263, 0.0)) < 1e-15);
  cd series = generating_function_partial(0.5, 0.0, 40);
  CHECK(std::abs(printed - series) > 0.1);
  // the printed form carries no pi^{-1/4} prefactor; at k = 0 it reduces to
  // the bare exponential of t^2/2
  CHECK(std::abs(generating_closed_printed(0.3, 0.0) -
                 std::exp(cd(0.3 * 0.3 / 2.0, 0.0))) < 1e-15);
}

TEST_CASE("completeness kernel smeared with a Gaussian approaches sqrt(pi/2)") {
  QuadratureRule qr = gauss_hermite(48);
  const int n_top = 60;
  std::vector<cd> coeff(n_top + 1, cd(0, 0));
  for (size_t i = 0; i < qr.nodes.size(); ++i) {
    auto col = xi_column(n_top, qr.nodes[i]);
    for (int n = 0; n <= n_top; ++n) coeff[n] += qr.weights[i] * col[n];
  }
  double acc = 0.0;
  for (auto& c : coeff) acc += std::norm(c);
  CHECK(std::abs(acc - 1.2533141373155001) < 1e-6);
}

TEST_CASE("completeness kernel evaluator matches its definition") {
  double k = 0.4, p = -1.1;
  auto ck = xi_column(15, k);
  auto cp = xi_column(15, p);
  cd conj_sum = 0.0, plain_sum = 0.0;
  for (int n = 0; n <= 15; ++n) {
    conj_sum += std::conj(ck[n]) * cp[n];
    plain_sum += ck[n] * cp[n];
  }
  CHECK(std::abs(completeness_kernel(15, k, p, true) - conj_sum) < 1e-14);
  CHECK(std::abs(completeness_kernel(15, k, p, false) - plain_sum) < 1e-14);
}

TEST_CASE("Fourier transform maps the basis to itself") {
  double worst = 0.0;
  for (int n : {0, 1, 2, 5, 9, 14, 20})
    for (double k : {-1.8, 0.0, 0.6, 2.3})
      worst = std::max(worst, fourier_self_map_check(n, k, 64));
  CHECK(worst < 1e-8);
}

TEST_CASE("finite-difference residuals of the defining ODE and the lowering relation") {
  for (int n : {0, 1, 4, 9})
    for (double k : {-0.9, 0.2, 1.5}) {
      CHECK(ode_residual_fd(n, k) < 1e-6);
      CHECK(lowering_residual_fd(n, k) < 1e-6);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qsvt/chebyshev.hpp"
#include "qsvt/special.hpp"

using namespace qsvt;

namespace {

// Power-series oracle for J_m(x), summed to machine precision.
double bessel_series(int m, double x) {
  double term = std::pow(x / 2.0, m) / std::tgamma(m + 1.0);
  double s = term;
  for (int k = 1; k < 200; ++k) {
    term *= -(x * x / 4.0) / (k * (m + k));
    s += term;
    if (std::abs(term) < 1e-18 * std::abs(s)) break;
  }
  return s;
}

double eval_direct(const ChebyshevSeries& s, double x) {
  double v = 0.0;
  for (int k = 0; k < s.coeffs.size(); ++k) v += s.coeffs[k] * chebyshev_t(k, x);
  return v;
}

}  // namespace

TEST_CASE("bessel_j matches series oracle") {
  CHECK(bessel_j(0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bessel_j(2, 2.0) == doctest::Approx(0.3528340286156377).epsilon(1e-12));
  for (int m : {0, 1, 3, 7, 15}) {
    for (double x : {0.1, 1.0, 2.7, 5.0, 12.0}) {
      CHECK(bessel_j(m, x) == doctest::Approx(bessel_series(m, x)).epsilon(1e-11));
    }
  }
  // parity in x
  CHECK(bessel_j(3, -2.0) == doctest::Approx(-bessel_j(3, 2.0)));
  CHECK(bessel_j(4, -2.0) == doctest::Approx(bessel_j(4, 2.0)));
}

TEST_CASE("lambert_w") {
  CHECK(lambert_w(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(lambert_w(0.0) == doctest::Approx(0.0));
  for (double w : {-0.9, -0.5, 0.3, 1.0, 4.0, 10.0}) {
    double x = w * std::exp(w);
    CHECK(lambert_w(x) == doctest::Approx(w).epsilon(1e-11));
  }
  CHECK_THROWS_AS(lambert_w(-1.0), std::domain_error);
}

TEST_CASE("chebyshev_t") {
  CHECK(chebyshev_t(3, 0.5) == doctest::Approx(-1.0));
  CHECK(chebyshev_t(2, 0.5) == doctest::Approx(-0.5));
  CHECK(chebyshev_t(5, 1.3) == doctest::Approx(16.0 * std::pow(1.3, 5) - 20.0 * std::pow(1.3, 3) + 5 * 1.3).epsilon(1e-12));
}

TEST_CASE("series_eval Clenshaw vs direct summation") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ChebyshevSeries s;
  s.parity = Parity::Even;
  s.degree = 20;
  s.coeffs = Eigen::VectorXd::Zero(21);
  for (int k = 0; k <= 20; ++k) s.coeffs[k] = u(rng);
  CHECK(series_eval(s, 0.123) == doctest::Approx(eval_direct(s, 0.123)).epsilon(1e-12));

  ChebyshevSeries t1;
  t1.coeffs = Eigen::VectorXd::Zero(2);
  t1.coeffs[1] = 1.0;
  CHECK(series_eval(t1, 0.3) == doctest::Approx(0.3));

  ChebyshevSeries t2;
  t2.coeffs = Eigen::VectorXd::Zero(3);
  t2.coeffs[2] = 1.0;
  CHECK(series_eval(t2, 0.5) == doctest::Approx(-0.5));

  CHECK_THROWS_AS(series_eval(t2, 1.5), std::domain_error);
}

TEST_CASE("truncation_index against Bessel tail-sum oracle") {
  CHECK(truncation_index(1.0, 1e-3) == 2);
  // oracle for t=5: smallest R with both tails <= eps
  auto tail = [](double t, int first) {
    double s = 0.0;
    for (int m = first; m < first + 200; m += 2) s += std::abs(bessel_series(m, t));
    return 2.0 * s;
  };
  int Rstar = 1;
  while (!(tail(5.0, 2 * (Rstar + 1)) <= 1e-3 && tail(5.0, 2 * (Rstar + 1) + 1) <= 1e-3))
    ++Rstar;
  CHECK(truncation_index(5.0, 1e-3) == Rstar);
  CHECK(truncation_index(10.0, 1e-3) >= truncation_index(1.0, 1e-3));
  CHECK_THROWS_AS(truncation_index(1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(truncation_index(-1.0, 1e-3), std::domain_error);
}

TEST_CASE("closed-form truncation index") {
  // r(t,eps): smallest integer q > t with (t/q)^q <= eps
  auto r_oracle = [](double t, double eps) {
    int q = static_cast<int>(t) + 1;
    while (std::pow(t / q, q) > eps) ++q;
    return q;
  };
  for (double t : {0.5, 1.0, 5.0, 20.0}) {
    for (double eps : {1e-2, 1e-5, 1e-10}) {
      int expect = r_oracle(std::exp(1.0) * t / 2.0, 1.25 * eps) / 2;
      CHECK(truncation_index_closed_form(t, eps) == expect);
    }
  }
}

TEST_CASE("build_trig_polys certified bounds") {
  auto tp = build_trig_polys(1.0, 1e-3);
  CHECK(tp.kappa == doctest::Approx(1.0 / 1.001));
  CHECK(build_trig_polys(1.0, 0.1).kappa == doctest::Approx(1.0 / 1.1));
  CHECK(tp.cos.parity == Parity::Even);
  CHECK(tp.sin.parity == Parity::Odd);
  CHECK(tp.cos.degree == 2 * tp.R);
  CHECK(tp.sin.degree == 2 * tp.R + 1);

  // dense-grid certification of the combined bound
  double k = tp.kappa;
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    double x = -1.0 + 2.0 * i / 1000.0;
    std::complex<double> target = 0.5 * k * std::exp(std::complex<double>(0.0, -x * 1.0));
    std::complex<double> got =
        0.5 * (series_eval(tp.cos, x) - std::complex<double>(0, 1) * series_eval(tp.sin, x));
    worst = std::max(worst, std::abs(target - got));
    CHECK(std::abs(series_eval(tp.cos, x)) <= 1.0 + 1e-12);
    CHECK(std::abs(series_eval(tp.sin, x)) <= 1.0 + 1e-12);
  }
  CHECK(worst <= k * 1e-3 + 1e-10);

  CHECK(series_eval(tp.sin, -0.37) == doctest::Approx(-series_eval(tp.sin, 0.37)));
}

TEST_CASE("combined trig bound for random (t, eps_tri)") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ut(0.1, 8.0);
  std::uniform_real_distribution<double> ue(-8.0, -1.5);  // log10 eps
  for (int trial = 0; trial < 50; ++trial) {
    double t = ut(rng);
    double eps = std::pow(10.0, ue(rng));
    auto tp = build_trig_polys(t, eps);
    double worst = 0.0, supc = 0.0, sups = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      double x = -1.0 + 2.0 * i / 1000.0;
      std::complex<double> target =
          0.5 * tp.kappa * std::exp(std::complex<double>(0.0, -x * t));
      std::complex<double> got =
          0.5 * (series_eval(tp.cos, x) - std::complex<double>(0, 1) * series_eval(tp.sin, x));
      worst = std::max(worst, std::abs(target - got));
      supc = std::max(supc, std::abs(series_eval(tp.cos, x)));
      sups = std::max(sups, std::abs(series_eval(tp.sin, x)));
    }
    CHECK(worst <= tp.kappa * eps + 1e-10);
    CHECK(supc <= 1.0 + 1e-12);
    CHECK(sups <= 1.0 + 1e-12);
  }
}

TEST_CASE("sign_degree") {
  auto [k, D] = sign_degree(1.0, 0.01);
  CHECK(k == doctest::Approx(4.5046).epsilon(1e-3));
  CHECK(D == 57);
  auto [k2, D2] = sign_degree(0.5, 0.01);
  CHECK(k2 == doctest::Approx(2.0 * k).epsilon(1e-12));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ud(0.05, 1.0), ue(-4.0, -1.0);
  for (int i = 0; i < 20; ++i) {
    auto [kk, DD] = sign_degree(ud(rng), std::pow(10.0, ue(rng)));
    CHECK(DD % 2 == 1);
    CHECK(kk > 0.0);
  }
  CHECK_THROWS_AS(sign_degree(1.5, 0.01), std::domain_error);
  CHECK_THROWS_AS(sign_degree(1.0, 0.6), std::domain_error);
}

TEST_CASE("build_sign_poly certification") {
  auto s = build_sign_poly(0.5, 0.01);
  CHECK(s.parity == Parity::Odd);
  CHECK(std::abs(series_eval(s, 0.75) - 1.0) <= 0.01 + 1e-10);
  CHECK(series_eval(s, 0.0) == doctest::Approx(0.0));
  CHECK(series_eval(s, -0.75) == doctest::Approx(-series_eval(s, 0.75)));
  for (int k = 0; k <= s.degree; k += 2) CHECK(s.coeffs[k] == 0.0);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ud(0.2, 1.0), ue(-3.0, -1.3);
  for (int trial = 0; trial < 20; ++trial) {
    double delta = ud(rng);
    double eps = std::pow(10.0, ue(rng));
    auto p = build_sign_poly(delta, eps);
    for (int i = 0; i <= 1000; ++i) {
      double x = -1.0 + 2.0 * i / 1000.0;
      double v = series_eval(p, x);
      CHECK(std::abs(v) <= 1.0 + 1e-12);
      if (std::abs(x) >= delta / 2.0) {
        double target = x > 0 ? 1.0 : -1.0;
        CHECK(std::abs(v - target) <= eps + 1e-10);
      }
    }
  }
}

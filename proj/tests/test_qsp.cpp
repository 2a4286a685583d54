#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qsvt/chebyshev.hpp"
#include "qsvt/qsp.hpp"
#include "qsvt/special.hpp"

using namespace qsvt;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

PhaseSequence make_wx(std::initializer_list<double> ph) {
  PhaseSequence s;
  s.convention = Convention::Wx;
  s.degree = static_cast<int>(ph.size()) - 1;
  s.phases = Eigen::VectorXd(ph.size());
  int i = 0;
  for (double p : ph) s.phases[i++] = p;
  s.residual = 0.0;
  return s;
}

ChebyshevSeries monomial_series(int d) {
  ChebyshevSeries s;
  s.parity = (d % 2 == 0) ? Parity::Even : Parity::Odd;
  s.degree = d;
  s.coeffs = Eigen::VectorXd::Zero(d + 1);
  s.coeffs[d] = 1.0;
  s.err_bound = 0.0;
  s.region = {{-1.0, 1.0}};
  return s;
}

}  // namespace

TEST_CASE("eval_qsp trivial cases") {
  CHECK(eval_qsp(make_wx({0.0, 0.0}), 0.3).real() == doctest::Approx(0.3));
  CHECK(eval_qsp(make_wx({0.0, 0.0, 0.0}), 0.5).real() == doctest::Approx(-0.5));
  CHECK_THROWS_AS(eval_qsp(make_wx({0.0, 0.0}), 1.5), std::domain_error);
}

TEST_CASE("all-zero Wx phases give Chebyshev polynomials") {
  for (int d : {1, 2, 3, 5, 8}) {
    PhaseSequence s;
    s.convention = Convention::Wx;
    s.degree = d;
    s.phases = Eigen::VectorXd::Zero(d + 1);
    for (int i = 0; i <= 100; ++i) {
      double x = -1.0 + 2.0 * i / 100.0;
      cd v = eval_qsp(s, x);
      CHECK(v.real() == doctest::Approx(chebyshev_t(d, x)).epsilon(1e-12));
      CHECK(std::abs(v.imag()) < 1e-12);
    }
  }
  CHECK(eval_qsp(make_wx({0, 0, 0, 0, 0, 0}), 0.77).real() ==
        doctest::Approx(chebyshev_t(5, 0.77)));
}

TEST_CASE("wx_to_reflection offsets") {
  auto r1 = wx_to_reflection(make_wx({0.0, 0.0}));
  CHECK(r1.phases[0] == doctest::Approx(pi / 4));
  CHECK(r1.phases[1] == doctest::Approx(-pi / 4));

  auto r3 = wx_to_reflection(make_wx({0.0, 0.0, 0.0, 0.0}));
  CHECK(r3.phases[0] == doctest::Approx(5 * pi / 4));
  CHECK(r3.phases[1] == doctest::Approx(-pi / 2));
  CHECK(r3.phases[2] == doctest::Approx(-pi / 2));
  CHECK(r3.phases[3] == doctest::Approx(-pi / 4));

  PhaseSequence refl = r3;
  CHECK_THROWS_AS(wx_to_reflection(refl), std::invalid_argument);
}

TEST_CASE("convention round trip agreement") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 1 + trial % 7;
    PhaseSequence wx;
    wx.convention = Convention::Wx;
    wx.degree = d;
    wx.phases = Eigen::VectorXd(d + 1);
    for (int i = 0; i <= d; ++i) wx.phases[i] = u(rng);
    auto refl = wx_to_reflection(wx);
    for (int i = 0; i <= 100; ++i) {
      double x = -1.0 + 2.0 * i / 100.0;
      cd a = eval_qsp(wx, x);
      cd b = eval_qsp(refl, x);
      CHECK(std::abs(a - b) < 1e-12);
    }
  }
}

TEST_CASE("negation conjugates the polynomial") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (int trial = 0; trial < 10; ++trial) {
    PhaseSequence refl;
    refl.convention = Convention::Reflection;
    refl.degree = 4;
    refl.phases = Eigen::VectorXd(5);
    for (int i = 0; i < 5; ++i) refl.phases[i] = u(rng);
    for (double x : {-0.8, -0.2, 0.0, 0.5, 0.95}) {
      cd a = eval_qsp(refl, x);
      cd b = eval_qsp(negate(refl), x);
      CHECK(std::abs(b - std::conj(a)) < 1e-12);
    }
  }
}

TEST_CASE("real_part_pair") {
  std::mt19937 rng(33);
  std::uniform_real_distribution<double> u(-pi, pi);
  PhaseSequence refl;
  refl.convention = Convention::Reflection;
  refl.degree = 4;
  refl.phases = Eigen::VectorXd(5);
  for (int i = 0; i < 5; ++i) refl.phases[i] = u(rng);
  auto pair = real_part_pair(refl);
  for (double x : {-0.9, 0.2, 0.5}) {
    double v = eval_real_part(pair, x);
    CHECK(v == doctest::Approx(eval_qsp(refl, x).real()).epsilon(1e-12));
  }
  PhaseSequence wx = make_wx({0.0, 0.0});
  CHECK_THROWS_AS(real_part_pair(wx), std::invalid_argument);
}

TEST_CASE("find_phases on Chebyshev targets") {
  for (int d : {1, 3, 5}) {
    auto seq = find_phases(monomial_series(d), 1e-10);
    CHECK(seq.residual <= 1e-10);
    for (int i = 0; i <= 50; ++i) {
      double x = -1.0 + 2.0 * i / 50.0;
      CHECK(eval_qsp(seq, x).real() ==
            doctest::Approx(chebyshev_t(d, x)).epsilon(1e-9));
    }
  }
}

TEST_CASE("find_phases on identity target") {
  auto seq = find_phases(monomial_series(1), 1e-10);
  CHECK(eval_qsp(seq, 0.42).real() == doctest::Approx(0.42).epsilon(1e-9));
}

TEST_CASE("find_phases on trig approximant") {
  auto tp = build_trig_polys(1.0, 1e-3);
  auto seq = find_phases(tp.cos, 1e-8);
  CHECK(seq.residual <= 1e-8);
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    double x = -1.0 + 2.0 * i / 400.0;
    worst = std::max(worst,
                     std::abs(eval_qsp(seq, x).real() - series_eval(tp.cos, x)));
  }
  CHECK(worst <= 1e-7);

  auto seq_sin = find_phases(tp.sin, 1e-8);
  CHECK(seq_sin.residual <= 1e-8);
}

TEST_CASE("find_phases on sign polynomial") {
  auto p = build_sign_poly(0.5, 0.05);
  auto seq = find_phases(p, 1e-8);
  CHECK(seq.residual <= 1e-8);
  for (double x : {-0.9, -0.5, 0.5, 0.9}) {
    CHECK(std::abs(eval_qsp(seq, x).real() - series_eval(p, x)) <= 1e-7);
  }
}

TEST_CASE("find_phases rejects bad targets") {
  ChebyshevSeries mixed;
  mixed.parity = Parity::Even;
  mixed.degree = 2;
  mixed.coeffs = Eigen::VectorXd::Zero(3);
  mixed.coeffs[1] = 0.5;
  mixed.coeffs[2] = 0.5;
  CHECK_THROWS_AS(find_phases(mixed, 1e-8), std::invalid_argument);

  ChebyshevSeries big;
  big.parity = Parity::Even;
  big.degree = 2;
  big.coeffs = Eigen::VectorXd::Zero(3);
  big.coeffs[0] = 1.5;
  CHECK_THROWS_AS(find_phases(big, 1e-8), std::invalid_argument);
}

#include "qsvt/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsvt/special.hpp"

namespace qsvt {

namespace {

constexpr double kInvE = 0.36787944117144233;

void check_trunc_args(double t, double eps) {
  if (!(t > 0.0)) throw std::domain_error("truncation: t must be positive");
  if (!(eps > 0.0 && eps < kInvE))
    throw std::domain_error("truncation: eps must lie in (0, 1/e)");
}

// 2 * sum_{k >= k0} |J_{step*k + off}(t)| until terms fall below floor.
double bessel_tail(double t, int first_order, int step) {
  double s = 0.0;
  int m = first_order;
  for (int i = 0; i < 4000; ++i) {
    double v = std::abs(bessel_j(m, t));
    s += v;
    if (v < 1e-20 && m > t) break;
    m += step;
  }
  return 2.0 * s;
}

}  // namespace

double series_eval(const ChebyshevSeries& s, double x) {
  if (std::abs(x) > 1.0)
    throw std::domain_error("series_eval: x outside [-1,1]");
  // Clenshaw recurrence
  double b1 = 0.0, b2 = 0.0;
  for (int k = static_cast<int>(s.coeffs.size()) - 1; k >= 1; --k) {
    double b0 = 2.0 * x * b1 - b2 + s.coeffs[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + s.coeffs[0];
}

int truncation_index(double t, double eps) {
  check_trunc_args(t, eps);
  for (int R = 1; R < 5000; ++R) {
    double tail_cos = bessel_tail(t, 2 * (R + 1), 2);
    double tail_sin = bessel_tail(t, 2 * (R + 1) + 1, 2);
    if (tail_cos <= eps && tail_sin <= eps) return R;
  }
  throw std::runtime_error("truncation_index: no index found");
}

int jacobi_anger_r(double t, double eps) {
  if (!(t > 0.0) || !(eps > 0.0))
    throw std::domain_error("jacobi_anger_r: invalid arguments");
  int q = static_cast<int>(std::floor(t)) + 1;
  while (q * std::log(t / q) > std::log(eps)) ++q;
  return q;
}

int truncation_index_closed_form(double t, double eps) {
  check_trunc_args(t, eps);
  int r = jacobi_anger_r(std::numbers::e * t / 2.0, 1.25 * eps);
  return r / 2;
}

TrigPolys build_trig_polys(double t, double eps_tri) {
  check_trunc_args(t, eps_tri);
  const int R = truncation_index(t, eps_tri);
  const double kappa = 1.0 / (1.0 + eps_tri);

  ChebyshevSeries cs;
  cs.parity = Parity::Even;
  cs.degree = 2 * R;
  cs.coeffs = Eigen::VectorXd::Zero(2 * R + 1);
  cs.coeffs[0] = kappa * bessel_j(0, t);
  for (int k = 1; k <= R; ++k)
    cs.coeffs[2 * k] = kappa * 2.0 * ((k % 2 == 0) ? 1.0 : -1.0) * bessel_j(2 * k, t);
  cs.err_bound = kappa * eps_tri;
  cs.region = {{-1.0, 1.0}};

  ChebyshevSeries sn;
  sn.parity = Parity::Odd;
  sn.degree = 2 * R + 1;
  sn.coeffs = Eigen::VectorXd::Zero(2 * R + 2);
  for (int k = 0; k <= R; ++k)
    sn.coeffs[2 * k + 1] = kappa * 2.0 * ((k % 2 == 0) ? 1.0 : -1.0) * bessel_j(2 * k + 1, t);
  sn.err_bound = kappa * eps_tri;
  sn.region = {{-1.0, 1.0}};

  return {std::move(cs), std::move(sn), kappa, R};
}

std::pair<double, int> sign_degree(double delta, double eps_sign) {
  const double pi = std::numbers::pi;
  const double e = std::numbers::e;
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::domain_error("sign_degree: delta must lie in (0,1]");
  if (!(eps_sign > 0.0 && eps_sign <= std::sqrt(2.0 / (e * pi))))
    throw std::domain_error("sign_degree: eps_sign outside (0, sqrt(2/(e pi))]");
  const double k =
      std::sqrt(2.0) / delta * std::sqrt(std::log(8.0 / (pi * eps_sign * eps_sign)));
  const double w = lambert_w(512.0 / (pi * eps_sign * eps_sign * e * e));
  const double raw = 16.0 * k / (std::sqrt(pi) * eps_sign) * std::exp(-0.5 * w);
  const int D = 2 * static_cast<int>(std::ceil(raw)) + 1;
  return {k, D};
}

ChebyshevSeries build_sign_poly(double delta, double eps_sign) {
  auto [k, D] = sign_degree(delta, eps_sign);
  const double pi = std::numbers::pi;

  // Chebyshev projection of erf(k x) onto degrees 0..D, computed at an
  // oversampled first-kind node set so aliasing is negligible.
  const int N = 4 * (D + 1);
  Eigen::VectorXd fx(N);
  for (int j = 0; j < N; ++j) {
    double xj = std::cos(pi * (j + 0.5) / N);
    fx[j] = std::erf(k * xj);
  }
  ChebyshevSeries s;
  s.parity = Parity::Odd;
  s.degree = D;
  s.coeffs = Eigen::VectorXd::Zero(D + 1);
  for (int m = 1; m <= D; m += 2) {  // even coefficients vanish by symmetry
    double c = 0.0;
    for (int j = 0; j < N; ++j)
      c += fx[j] * std::cos(pi * m * (j + 0.5) / N);
    s.coeffs[m] = 2.0 * c / N;
  }

  // Enforce |series| <= 1 on [-1,1]; the projection can overshoot by a
  // few ulps near the endpoints.
  double sup = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    double x = -1.0 + 2.0 * i / 2000.0;
    sup = std::max(sup, std::abs(series_eval(s, x)));
  }
  if (sup > 1.0) s.coeffs /= sup;

  s.err_bound = eps_sign;
  s.region = {{-1.0, -delta / 2.0}, {delta / 2.0, 1.0}};
  return s;
}

}  // namespace qsvt

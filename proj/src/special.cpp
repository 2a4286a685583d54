#include "qsvt/special.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qsvt {

double bessel_j(int m, double x) {
  if (m < 0) throw std::domain_error("bessel_j: order must be non-negative");
  // J_m(-x) = (-1)^m J_m(x)
  double sign = 1.0;
  if (x < 0) {
    x = -x;
    if (m % 2 != 0) sign = -1.0;
  }
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  if (m == 0 || m == 1) {
    // upward start values via Miller anyway for uniform accuracy
  }
  // For orders far beyond the turning point the value underflows.
  if (static_cast<double>(m) > 1.5 * x + 80.0 + 2.0 * std::sqrt(x)) {
    // crude magnitude bound (x/2)^m / m! via logs
    double lg = m * std::log(x / 2.0) - std::lgamma(m + 1.0);
    if (lg < -745.0) return 0.0;
  }

  const int start = m + static_cast<int>(x) + 52 +
                    static_cast<int>(2.0 * std::sqrt(std::max(1.0, x)));
  int M = start + (start % 2);  // even start index
  double jp = 0.0;              // J_{k+1}
  double jc = 1e-300;           // J_k (arbitrary small seed)
  double result = (m == M) ? jc : 0.0;
  double norm = 0.0;            // J_0 + 2 sum J_{2k}
  for (int k = M; k > 0; --k) {
    double jm = (2.0 * k / x) * jc - jp;  // J_{k-1}
    jp = jc;
    jc = jm;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? jc : 2.0 * jc;
    if (k - 1 == m) result = jc;
    if (std::abs(jc) > 1e250) {  // rescale to avoid overflow
      jc *= 1e-250;
      jp *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
  }
  return sign * result / norm;
}

double chebyshev_t(int k, double x) {
  if (k < 0) throw std::domain_error("chebyshev_t: order must be non-negative");
  if (std::abs(x) <= 1.0) return std::cos(k * std::acos(x));
  if (x > 1.0) return std::cosh(k * std::acosh(x));
  // x < -1
  double v = std::cosh(k * std::acosh(-x));
  return (k % 2 == 0) ? v : -v;
}

double lambert_w(double x) {
  const double branch_point = -std::exp(-1.0);
  if (x < branch_point - 1e-15)
    throw std::domain_error("lambert_w: argument below -1/e");
  x = std::max(x, branch_point);
  if (x == 0.0) return 0.0;

  double w;
  if (x < -0.32) {
    // series about the branch point
    double p = std::sqrt(2.0 * (1.0 + std::exp(1.0) * x));
    w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
  } else if (x < std::exp(1.0)) {
    w = x / (1.0 + x);  // decent for small |x|
  } else {
    double lx = std::log(x);
    w = lx - std::log(lx);
  }

  for (int it = 0; it < 100; ++it) {
    double ew = std::exp(w);
    double f = w * ew - x;
    double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * (w + 1.0));
    double dw = f / denom;
    w -= dw;
    if (std::abs(dw) <= 1e-13 * (1.0 + std::abs(w))) break;
  }
  return w;
}

}  // namespace qsvt

#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace qsvt {

enum class Parity { Even, Odd };

struct Interval {
  double lo;
  double hi;
};

/// Fixed-parity polynomial in the Chebyshev basis on [-1,1] with a
/// certified sup-norm error against its target on `region`.
struct ChebyshevSeries {
  Parity parity;
  int degree;
  Eigen::VectorXd coeffs;  // index = Chebyshev order; wrong-parity orders are zero
  double err_bound;        // certified |series - target| on region
  std::vector<Interval> region;
};

struct TruncationPlan {
  double t;
  double eps_tri;
  int R;
};

struct TrigPolys {
  ChebyshevSeries cos;  // even, degree 2R
  ChebyshevSeries sin;  // odd, degree 2R+1
  double kappa;
  int R;
};

/// Clenshaw evaluation of sum_k c_k T_k(x); requires |x| <= 1.
double series_eval(const ChebyshevSeries& s, double x);

/// Smallest R such that both Jacobi-Anger tails (cosine and sine) are <= eps.
/// Requires t > 0 and 0 < eps < 1/e.
int truncation_index(double t, double eps);

/// Closed-form truncation index R = floor(r(e t/2, 5 eps/4) / 2) used for
/// query accounting, with r(t,eps) the smallest integer q > t satisfying
/// (t/q)^q <= eps.
int truncation_index_closed_form(double t, double eps);
int jacobi_anger_r(double t, double eps);

/// Rescaled truncated Jacobi-Anger approximants of cos(xt) and sin(xt),
/// scaled by kappa = 1/(1+eps_tri) so both are bounded by 1 on [-1,1].
TrigPolys build_trig_polys(double t, double eps_tri);

/// Sharpness k and odd degree D of the erf-based sign approximant.
std::pair<double, int> sign_degree(double delta, double eps_sign);

/// Odd Chebyshev series of degree D approximating sign(x) within eps_sign
/// on [-1,-delta/2] u [delta/2,1], bounded by 1 on [-1,1].
ChebyshevSeries build_sign_poly(double delta, double eps_sign);

}  // namespace qsvt

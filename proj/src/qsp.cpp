#include "qsvt/qsp.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qsvt/special.hpp"

namespace qsvt {

namespace {

using Mat2 = Eigen::Matrix2cd;
using cd = std::complex<double>;

constexpr cd kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

Mat2 zrot(double phi) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::exp(kI * phi);
  m(1, 1) = std::exp(-kI * phi);
  return m;
}

// signal operator, Wx convention: x on the diagonal, i sqrt(1-x^2) off it
Mat2 signal_wx(double x) {
  double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  Mat2 m;
  m << cd(x), kI * s, kI * s, cd(x);
  return m;
}

// signal operator, Reflection convention
Mat2 signal_refl(double x) {
  double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  Mat2 m;
  m << cd(x), cd(s), cd(s), cd(-x);
  return m;
}

double wrap_phase(double p) {
  p = std::remainder(p, 2.0 * kPi);
  if (p <= -kPi) p += 2.0 * kPi;
  return p;
}

// Upper-left of the Wx product for full phases, plus its gradient.
double wx_real_and_grad(const Eigen::VectorXd& phi, double x,
                        Eigen::VectorXd* grad) {
  const int d = static_cast<int>(phi.size()) - 1;
  const Mat2 W = signal_wx(x);
  // prefix[k] = A_0 W A_1 ... A_{k-1} W  (product left of A_k)
  std::vector<Mat2> prefix(d + 1);
  Mat2 acc = Mat2::Identity();
  for (int k = 0; k <= d; ++k) {
    prefix[k] = acc;
    acc = acc * zrot(phi[k]);
    if (k < d) acc = acc * W;
  }
  const cd p00 = acc(0, 0);
  if (grad) {
    // suffix[k] = W A_{k+1} ... A_d (product right of A_k)
    std::vector<Mat2> suffix(d + 1);
    Mat2 s = Mat2::Identity();
    for (int k = d; k >= 0; --k) {
      suffix[k] = s;
      s = zrot(phi[k]) * s;
      if (k > 0) s = W * s;
    }
    grad->resize(d + 1);
    const Mat2 iZ = (Mat2() << kI, cd(0), cd(0), -kI).finished();
    for (int k = 0; k <= d; ++k) {
      Mat2 dP = prefix[k] * (iZ * zrot(phi[k])) * suffix[k];
      (*grad)[k] = dP(0, 0).real();
    }
  }
  return p00.real();
}

Eigen::VectorXd expand_symmetric(const Eigen::VectorXd& red, int d) {
  Eigen::VectorXd full(d + 1);
  const int dt = static_cast<int>(red.size());
  for (int j = 0; j <= d; ++j) full[j] = (j < dt) ? red[j] : red[d - j];
  return full;
}

}  // namespace

std::complex<double> eval_qsp(const PhaseSequence& seq, double x) {
  if (std::abs(x) > 1.0)
    throw std::domain_error("eval_qsp: x outside [-1,1]");
  const Mat2 W =
      (seq.convention == Convention::Wx) ? signal_wx(x) : signal_refl(x);
  Mat2 acc = zrot(seq.phases[0]);
  for (int k = 1; k <= seq.degree; ++k) acc = acc * W * zrot(seq.phases[k]);
  return acc(0, 0);
}

PhaseSequence wx_to_reflection(const PhaseSequence& wx) {
  if (wx.convention != Convention::Wx)
    throw std::invalid_argument("wx_to_reflection: input must be Wx");
  if (wx.degree < 1)
    throw std::invalid_argument("wx_to_reflection: degree must be >= 1");
  const int d = wx.degree;
  PhaseSequence out{Convention::Reflection, wx.phases, d, wx.residual};
  out.phases[0] += (2.0 * d - 1.0) * kPi / 4.0;
  for (int k = 1; k <= d - 1; ++k)
    out.phases[k] = wrap_phase(out.phases[k] - kPi / 2.0);
  out.phases[d] = wrap_phase(out.phases[d] - kPi / 4.0);
  return out;
}

PhaseSequence negate(const PhaseSequence& seq) {
  PhaseSequence out = seq;
  out.phases = -out.phases;
  return out;
}

PhaseSequence find_phases(const ChebyshevSeries& target, double tol) {
  const int d = target.degree;
  if (d < 1) throw std::invalid_argument("find_phases: degree must be >= 1");
  // precondition (v)-(vi): definite parity, bounded by 1
  for (int k = (target.parity == Parity::Even) ? 1 : 0; k < target.coeffs.size();
       k += 2)
    if (target.coeffs[k] != 0.0)
      throw std::invalid_argument("find_phases: target lacks definite parity");
  for (int i = 0; i <= 200; ++i) {
    double x = -1.0 + 2.0 * i / 200.0;
    if (std::abs(series_eval(target, x)) > 1.0 + 1e-9)
      throw std::invalid_argument("find_phases: target exceeds 1 in magnitude");
  }

  const int dt = (d + 2) / 2;  // number of free symmetric phases
  Eigen::VectorXd nodes(dt), fvals(dt);
  for (int j = 0; j < dt; ++j) {
    nodes[j] = std::cos((2.0 * j + 1.0) * kPi / (4.0 * dt));
    fvals[j] = series_eval(target, nodes[j]);
  }

  auto residuals = [&](const Eigen::VectorXd& red, Eigen::MatrixXd* jac) {
    Eigen::VectorXd full = expand_symmetric(red, d);
    Eigen::VectorXd r(dt);
    if (jac) jac->setZero(dt, dt);
    for (int j = 0; j < dt; ++j) {
      Eigen::VectorXd g;
      double v = wx_real_and_grad(full, nodes[j], jac ? &g : nullptr);
      r[j] = v - fvals[j];
      if (jac)
        for (int m = 0; m <= d; ++m) {
          int red_idx = (m < dt) ? m : d - m;
          (*jac)(j, red_idx) += g[m];
        }
    }
    return r;
  };

  std::mt19937 rng(12345);
  std::normal_distribution<double> pert(0.0, 0.05);
  double best_res = 1e300;

  for (int attempt = 0; attempt < 6; ++attempt) {
    Eigen::VectorXd red = Eigen::VectorXd::Zero(dt);
    red[0] = kPi / 4.0;
    if (attempt > 0)
      for (int i = 0; i < dt; ++i) red[i] += pert(rng);

    double lambda = 1e-6;
    Eigen::MatrixXd J(dt, dt);
    Eigen::VectorXd r = residuals(red, &J);
    double cost = r.squaredNorm();
    for (int it = 0; it < 300; ++it) {
      Eigen::MatrixXd A = J.transpose() * J;
      A.diagonal().array() += lambda;
      Eigen::VectorXd step = A.ldlt().solve(J.transpose() * r);
      Eigen::VectorXd cand = red - step;
      Eigen::VectorXd rc = residuals(cand, nullptr);
      double cc = rc.squaredNorm();
      if (cc < cost) {
        red = cand;
        lambda = std::max(lambda * 0.3, 1e-14);
        r = residuals(red, &J);
        cost = r.squaredNorm();
        if (r.lpNorm<Eigen::Infinity>() < 0.01 * tol) break;
      } else {
        lambda *= 10.0;
        if (lambda > 1e10) break;
      }
    }

    PhaseSequence wx{Convention::Wx, expand_symmetric(red, d), d, 0.0};
    PhaseSequence refl = wx_to_reflection(wx);
    // certify at the d+1 Chebyshev nodes of the target degree
    double res = 0.0;
    for (int j = 0; j <= d; ++j) {
      double x = std::cos((2.0 * j + 1.0) * kPi / (2.0 * (d + 1)));
      res = std::max(res,
                     std::abs(eval_qsp(refl, x).real() - series_eval(target, x)));
    }
    refl.residual = res;
    if (res <= tol) return refl;
    best_res = std::min(best_res, res);
  }
  throw PhaseFindingError("find_phases: residual above tolerance", best_res);
}

RealPartPair real_part_pair(const PhaseSequence& reflection) {
  if (reflection.convention != Convention::Reflection)
    throw std::invalid_argument("real_part_pair: Reflection convention required");
  return {reflection, negate(reflection)};
}

double eval_real_part(const RealPartPair& pair, double x) {
  cd v = 0.5 * (eval_qsp(pair.plus, x) + eval_qsp(pair.minus, x));
  return v.real();
}

}  // namespace qsvt

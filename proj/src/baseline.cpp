#include "qsvt/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <unsupported/Eigen/FFT>

namespace qsvt {

namespace {

using cd = std::complex<double>;

void record(Trajectory& tr, double t, const Eigen::VectorXcd& F, cd E,
            const VelocityGrid& grid) {
  tr.times.push_back(t);
  tr.E.push_back({E, 0.0, 0.0});
  Eigen::VectorXcd f1(grid.total);
  double dm = 0.0;
  for (long j = 0; j < grid.total; ++j) {
    f1[j] = cd(0.0, -1.0) * std::sqrt(grid.maxwell[j] / grid.dv_cell) * F[j];
    dm += std::norm(f1[j]) * grid.dv_cell;
  }
  tr.f1.push_back(std::move(f1));
  tr.d_m.push_back(dm);
}

// residual of the separable fit: given (gamma, omega), the envelope-cosine
// pair and offset enter linearly and are projected out by least squares
double projected_residual(const Eigen::VectorXd& t, const Eigen::VectorXd& y,
                          double gamma, double omega, Eigen::Vector3d* lin) {
  const long n = t.size();
  Eigen::MatrixXd m(n, 3);
  for (long i = 0; i < n; ++i) {
    double e = std::exp(-gamma * t[i]);
    m(i, 0) = e * std::cos(omega * t[i]);
    m(i, 1) = e * std::sin(omega * t[i]);
    m(i, 2) = 1.0;
  }
  Eigen::Vector3d c = m.colPivHouseholderQr().solve(y);
  if (lin) *lin = c;
  return std::sqrt((m * c - y).squaredNorm() / n);
}

}  // namespace

Trajectory euler_run(const VelocityGrid& grid, const std::array<double, 3>& k,
                     double dt, double t_max, int record_stride) {
  if (!(dt > 0.0)) throw std::invalid_argument("euler_run: dt must be positive");
  if (grid.dims != 1)
    throw std::invalid_argument("euler_run: only the 1D system is integrated");
  if (record_stride < 1)
    throw std::invalid_argument("euler_run: record_stride must be >= 1");

  PlasmaState s = initial_state(grid, k);
  Eigen::VectorXcd F = s.F;
  cd E = s.E[0];
  Eigen::VectorXd muv(grid.total);
  Eigen::VectorXd kv(grid.total);
  for (long j = 0; j < grid.total; ++j) {
    double v = grid.v(0, j);
    muv[j] = std::sqrt(grid.dv_cell * grid.maxwell[j]) * v;
    kv[j] = k[0] * v;
  }

  Trajectory tr;
  tr.source = Source::Euler;
  tr.eta = s.eta;
  const long n_steps = static_cast<long>(std::llround(t_max / dt));
  record(tr, 0.0, F, E, grid);
  for (long step = 1; step <= n_steps; ++step) {
    cd dE = cd(0.0, -1.0) * (muv.array() * F.array()).sum();
    Eigen::VectorXcd dF =
        (cd(0.0, -1.0) * (kv.array() * F.array() + muv.array() * E)).matrix();
    F += dt * dF;
    E += dt * dE;
    if (step % record_stride == 0 || step == n_steps)
      record(tr, step * dt, F, E, grid);
  }
  return tr;
}

Trajectory exact_run(const VlasovHamiltonian& h, const PlasmaState& s0,
                     const std::vector<double>& times) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.H);
  Eigen::VectorXcd base = es.eigenvectors().adjoint() * state_vector(s0, h);

  Trajectory tr;
  tr.source = Source::Exact;
  tr.eta = s0.eta;
  for (double t : times) {
    Eigen::VectorXcd ph(base.size());
    for (long i = 0; i < base.size(); ++i)
      ph[i] = std::exp(cd(0.0, -es.eigenvalues()[i] * t)) * base[i];
    Eigen::VectorXcd psi = es.eigenvectors() * ph;
    Observables o = decode_observables(psi, h, s0.eta);
    tr.times.push_back(t);
    tr.E.push_back(o.E);
    tr.f1.push_back(std::move(o.f1));
    tr.d_m.push_back(o.d_m);
  }
  return tr;
}

DampedCosineFit fit_damped_cosine(const std::vector<double>& times,
                                  const std::vector<double>& values,
                                  double t0) {
  if (times.size() != values.size())
    throw std::invalid_argument("fit_damped_cosine: length mismatch");
  std::vector<double> ts, ys;
  for (size_t i = 0; i < times.size(); ++i)
    if (times[i] >= t0) {
      ts.push_back(times[i] - t0);
      ys.push_back(values[i]);
    }
  const long n = static_cast<long>(ts.size());
  if (n < 20)
    throw std::invalid_argument(
        "fit_damped_cosine: need at least 20 samples beyond t0");
  Eigen::VectorXd t = Eigen::Map<Eigen::VectorXd>(ts.data(), n);
  Eigen::VectorXd y = Eigen::Map<Eigen::VectorXd>(ys.data(), n);

  // frequency seed: spectral peak of the detrended series
  const double dt = (t[n - 1] - t[0]) / (n - 1);
  std::vector<double> detr(n);
  const double mean = y.mean();
  for (long i = 0; i < n; ++i) detr[i] = y[i] - mean;
  Eigen::FFT<double> fft;
  std::vector<cd> spec;
  fft.fwd(spec, detr);
  long peak = 1;
  for (long i = 2; i <= n / 2; ++i)
    if (std::abs(spec[i]) > std::abs(spec[peak])) peak = i;
  double omega = 2.0 * std::numbers::pi * peak / (n * dt);
  const double bin = 2.0 * std::numbers::pi / (n * dt);

  // damping seed: slope of the log envelope through local maxima of |y|
  double gamma = 0.0;
  {
    std::vector<double> et, ev;
    double ymax = 0.0;
    for (long i = 0; i < n; ++i) ymax = std::max(ymax, std::abs(detr[i]));
    for (long i = 1; i + 1 < n; ++i)
      if (std::abs(detr[i]) >= std::abs(detr[i - 1]) &&
          std::abs(detr[i]) >= std::abs(detr[i + 1]) &&
          std::abs(detr[i]) > 1e-3 * ymax) {
        et.push_back(t[i]);
        ev.push_back(std::log(std::abs(detr[i])));
      }
    if (et.size() >= 2) {
      double mt = 0, mv = 0;
      for (size_t i = 0; i < et.size(); ++i) {
        mt += et[i];
        mv += ev[i];
      }
      mt /= et.size();
      mv /= et.size();
      double num = 0, den = 0;
      for (size_t i = 0; i < et.size(); ++i) {
        num += (et[i] - mt) * (ev[i] - mv);
        den += (et[i] - mt) * (et[i] - mt);
      }
      if (den > 0) gamma = std::max(0.0, -num / den);
    }
  }

  // pattern search on (gamma, omega) with linear parameters projected out
  double hg = std::max(0.5 * gamma, 0.05), hw = bin;
  double best = projected_residual(t, y, gamma, omega, nullptr);
  for (int iter = 0; iter < 200 && (hg > 1e-13 || hw > 1e-13); ++iter) {
    bool moved = false;
    for (auto [dg, dw] : {std::pair{hg, 0.0}, {-hg, 0.0}, {0.0, hw},
                          {0.0, -hw}, {hg, hw}, {hg, -hw}, {-hg, hw},
                          {-hg, -hw}}) {
      double r = projected_residual(t, y, gamma + dg, omega + dw, nullptr);
      if (r < best) {
        best = r;
        gamma += dg;
        omega += dw;
        moved = true;
      }
    }
    if (!moved) {
      hg *= 0.5;
      hw *= 0.5;
    }
  }

  Eigen::Vector3d lin;
  double residual = projected_residual(t, y, gamma, omega, &lin);
  DampedCosineFit fit;
  fit.A = std::hypot(lin[0], lin[1]);
  fit.rho = std::atan2(lin[1], lin[0]);
  fit.gamma = gamma;
  fit.omega = omega;
  fit.E0 = lin[2];
  fit.residual = residual;
  if (!std::isfinite(residual))
    throw FitFailure("fit_damped_cosine: optimization diverged", fit);
  return fit;
}

double distribution_error(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g,
                          double dv) {
  if (f.size() != g.size())
    throw std::invalid_argument("distribution_error: length mismatch");
  return (f - g).squaredNorm() * dv;
}

Eigen::VectorXd fit_query_scaling(const std::vector<QuerySample>& samples,
                                  ScalingBasis basis) {
  const int cols = basis == ScalingBasis::AffineTL ? 3
                   : basis == ScalingBasis::AffineL ? 2
                                                    : 5;
  if (static_cast<int>(samples.size()) < 2 * cols)
    throw std::invalid_argument("fit_query_scaling: too few samples");
  Eigen::MatrixXd m(samples.size(), cols);
  Eigen::VectorXd rhs(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    const double t = samples[i].t;
    const double L = std::log(1.0 / samples[i].eps);
    switch (basis) {
      case ScalingBasis::AffineTL:
        m.row(i) << 1.0, t, L;
        break;
      case ScalingBasis::AffineL:
        m.row(i) << 1.0, L;
        break;
      case ScalingBasis::FullTL:
        m.row(i) << 1.0, t, L, t * L, L * L;
        break;
    }
    rhs[i] = samples[i].q;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  if (qr.rank() < cols)
    throw std::runtime_error("fit_query_scaling: rank-deficient basis");
  return qr.solve(rhs);
}

}  // namespace qsvt

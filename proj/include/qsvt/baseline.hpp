#pragma once

#include <stdexcept>
#include <vector>

#include "qsvt/trajectory.hpp"
#include "qsvt/vlasov.hpp"

namespace qsvt {

/// Forward-Euler integration of the 1D linearized dynamics
///   dF_j/dt = -i k v_j F_j - i mu_j v_j E,  dE/dt = -i sum_j mu_j v_j F_j,
/// from the standard initial condition. Observables are recorded every
/// record_stride steps (and at the final step).
Trajectory euler_run(const VelocityGrid& grid, const std::array<double, 3>& k,
                     double dt, double t_max, int record_stride = 1);

/// Eigendecomposition propagator |psi(t)> = e^{-iHt}|psi_0> at the given times.
Trajectory exact_run(const VlasovHamiltonian& h, const PlasmaState& s0,
                     const std::vector<double>& times);

/// Parameters of A e^{-gamma (t-t0)} cos(omega (t-t0) - rho) + E0.
struct DampedCosineFit {
  double A, gamma, omega, rho, E0;
  double residual;  // root-mean-square misfit over the window
};

struct FitFailure : std::runtime_error {
  FitFailure(const char* msg, DampedCosineFit best_so_far)
      : std::runtime_error(msg), best(best_so_far) {}
  DampedCosineFit best;
};

/// Nonlinear least squares on the samples with t >= t0 (at least 20 required);
/// omega seeded from the spectral peak, gamma from the envelope slope.
DampedCosineFit fit_damped_cosine(const std::vector<double>& times,
                                  const std::vector<double>& values, double t0);

/// delta(f, g) = sum_j |f_j - g_j|^2 dv.
double distribution_error(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g,
                          double dv);

struct QuerySample {
  double t;
  double eps;
  double q;
};

/// Basis for the linear scaling fits, with L = log(1/eps) (natural log):
///   AffineTL   -> {1, t, L}            (query and R fits)
///   AffineL    -> {1, L}               (D fit)
///   FullTL     -> {1, t, L, t L, L^2}  (sign-amplified query fit)
enum class ScalingBasis { AffineTL, AffineL, FullTL };

/// Linear least squares over the chosen basis; throws on rank deficiency.
Eigen::VectorXd fit_query_scaling(const std::vector<QuerySample>& samples,
                                  ScalingBasis basis);

}  // namespace qsvt

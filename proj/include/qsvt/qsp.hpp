#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

#include "qsvt/chebyshev.hpp"

namespace qsvt {

enum class Convention { Wx, Reflection };

/// z-rotation angles realizing a bounded parity polynomial as the
/// upper-left entry of an alternating rotation product.
struct PhaseSequence {
  Convention convention;
  Eigen::VectorXd phases;  // length degree + 1
  int degree;
  double residual;  // max |Re(achieved) - target| at Chebyshev nodes
};

struct PhaseFindingError : std::runtime_error {
  double best_residual;
  PhaseFindingError(const std::string& msg, double r)
      : std::runtime_error(msg), best_residual(r) {}
};

/// Upper-left entry of the full 2x2 alternating product at signal x.
std::complex<double> eval_qsp(const PhaseSequence& seq, double x);

/// Convention change: phi_0 += (2d-1)pi/4, interior -= pi/2, last -= pi/4.
PhaseSequence wx_to_reflection(const PhaseSequence& wx);

/// Finds Reflection-convention phases whose achieved real part matches the
/// target series at its Chebyshev nodes within tol. Throws PhaseFindingError
/// carrying the best residual when the optimizer misses the tolerance.
PhaseSequence find_phases(const ChebyshevSeries& target, double tol = 1e-8);

/// Controlled pair (Phi, -Phi) whose combined upper-left entry is Re(P).
struct RealPartPair {
  PhaseSequence plus;
  PhaseSequence minus;
};
RealPartPair real_part_pair(const PhaseSequence& reflection);

/// (P + P*)/2 evaluated through the pair; always real up to roundoff.
double eval_real_part(const RealPartPair& pair, double x);

PhaseSequence negate(const PhaseSequence& seq);

}  // namespace qsvt

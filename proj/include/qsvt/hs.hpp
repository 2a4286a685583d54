#pragma once

#include <complex>
#include <optional>

#include "qsvt/chebyshev.hpp"
#include "qsvt/qsp.hpp"
#include "qsvt/simulator.hpp"

namespace qsvt {

/// Parameters of a U_exp-shaped encoding (block ~ kappa e^{-iHt}/2).
struct UExpInfo {
  double t;
  double eps_tri;
  double kappa;
  int R;
};

/// (alpha, n_anc, err)-block-encoding: ||A - alpha <0|U|0>|| <= err, where
/// the claimed A absorbs the recorded global phase.
struct BlockEncodedOp {
  DenseUnitary unitary;
  double alpha = 1.0;
  int n_anc = 0;
  double err = 0.0;
  long queries = 1;                      // uses of the base encoding
  std::complex<double> phase{1.0, 0.0};  // block ~ phase * A
  std::optional<UExpInfo> exp_info;
};

enum class Method { OAA, FPAA };

struct QueryCount {
  Method method;
  double t;
  double eps;
  long Q;
  int R;
  int D = 0;            // FPAA only
  double eps_tri = 0;   // FPAA only
  double eps_sign = 0;  // FPAA only
};

/// Alternating phase modulation circuit for the trig pair:
/// a (1, a+2, kappa eps_tri)-block-encoding of kappa e^{-iHt}/2 using
/// 2R+1 queries. Requires u_h to be a (1, a, 0)-encoding of a PSD H.
BlockEncodedOp build_u_exp(const BlockEncodedOp& u_h, double t, double eps_tri,
                           double phase_tol = 1e-8);

/// T_3 amplification with phases (-3pi/2, pi/2, pi/2, pi/2) plus the final
/// sign flip; block approximates e^{-iHt} within 9 eps_tri.
BlockEncodedOp build_oaa(const BlockEncodedOp& u_exp);

/// Sign-polynomial amplification; block approximates e^{-iHt} within
/// 2(eps_sign + sqrt(3) D eps_tri).
BlockEncodedOp build_fpaa(const BlockEncodedOp& u_exp, double eps_sign,
                          double phase_tol = 1e-8);

/// Hadamard sandwich turning an (alpha, a, 0)-encoding of H into a
/// (1, a+1, 0)-encoding of (H/alpha + I)/2; t_eff = 2 alpha t and the
/// evolution picks up the global phase e^{-i t_eff / 2}.
struct ShiftRescaled {
  BlockEncodedOp op;
  double t_eff;
};
ShiftRescaled shift_rescale_encoding(const BlockEncodedOp& u, double t);

/// Closed-form query counts; FPAA minimizes D(2R+1) over an
/// (eps_tri, eps_sign) grid subject to the error budget.
QueryCount query_count(Method method, double t, double eps);

/// N_t-fold product; err accumulates additively, queries multiply.
BlockEncodedOp extend_time(const BlockEncodedOp& step, int n_t);

}  // namespace qsvt

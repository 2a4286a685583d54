#include "qsvt/hs.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qsvt {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

// +1 where the qubits in [lo, hi) are all zero, -1 elsewhere: the spectrum
// of the reflection 2|0><0| - I over that register.
Eigen::VectorXd projector_signs(int n_qubits, int lo, int hi) {
  const long dim = 1L << n_qubits;
  long mask = 0;
  for (int q = lo; q < hi; ++q) mask |= 1L << q;
  Eigen::VectorXd s(dim);
  for (long i = 0; i < dim; ++i) s[i] = (i & mask) ? -1.0 : 1.0;
  return s;
}

// diag of |cb><cb| (x) exp((-1)^b i phi^(c) Pi) over the a-register [0, a_hi)
Eigen::VectorXcd s2_diag(int n_qubits, int b_qubit, int c_qubit, int a_lo,
                         int a_hi, double phi0, double phi1) {
  const long dim = 1L << n_qubits;
  Eigen::VectorXd pi_sign = projector_signs(n_qubits, a_lo, a_hi);
  Eigen::VectorXcd d(dim);
  for (long i = 0; i < dim; ++i) {
    double phi = (i & (1L << c_qubit)) ? phi1 : phi0;
    double bsign = (i & (1L << b_qubit)) ? -1.0 : 1.0;
    d[i] = std::exp(kI * bsign * phi * pi_sign[i]);
  }
  return d;
}

// diag of |b><b| (x) exp((-1)^b i phi Pi), optionally gated on a control
// qubit being |1>
Eigen::VectorXcd s1_diag(int n_qubits, int b_qubit, int anc_lo, int anc_hi,
                         double phi, int control = -1) {
  const long dim = 1L << n_qubits;
  Eigen::VectorXd pi_sign = projector_signs(n_qubits, anc_lo, anc_hi);
  Eigen::VectorXcd d(dim);
  for (long i = 0; i < dim; ++i) {
    if (control >= 0 && !(i & (1L << control))) {
      d[i] = 1.0;
      continue;
    }
    double bsign = (i & (1L << b_qubit)) ? -1.0 : 1.0;
    d[i] = std::exp(kI * bsign * phi * pi_sign[i]);
  }
  return d;
}

Eigen::MatrixXcd hadamard2() {
  Eigen::MatrixXcd h(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

std::vector<int> range_targets(int m) {
  std::vector<int> t(m);
  for (int i = 0; i < m; ++i) t[i] = i;
  return t;
}

void check_eps_range(double eps) {
  if (!(eps > 0.0 && eps <= 0.9))
    throw std::domain_error("query_count: eps must lie in (0, 0.9]");
}

int fpaa_degree(double kappa, double eps_sign) {
  return sign_degree(kappa, eps_sign).second;
}

}  // namespace

BlockEncodedOp build_u_exp(const BlockEncodedOp& u_h, double t, double eps_tri,
                           double phase_tol) {
  if (u_h.alpha != 1.0)
    throw std::invalid_argument("build_u_exp: base encoding must have alpha=1");
  if (u_h.err > 1e-9)
    throw std::invalid_argument("build_u_exp: base encoding must be exact");
  {
    Eigen::MatrixXcd h = project_block(u_h.unitary, u_h.n_anc);
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
      throw std::invalid_argument("build_u_exp: encoded block not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.eigenvalues().minCoeff() < -1e-9 ||
        es.eigenvalues().maxCoeff() > 1.0 + 1e-9)
      throw std::invalid_argument(
          "build_u_exp: encoded block must be PSD with norm at most 1");
  }

  TrigPolys tp = build_trig_polys(t, eps_tri);
  PhaseSequence phc = find_phases(tp.cos, phase_tol);
  PhaseSequence phs = find_phases(tp.sin, phase_tol);
  const int R = tp.R;

  const int m = u_h.unitary.n_qubits;  // system + a
  const int b = m, c = m + 1;
  const int n = m + 2;
  const long dim = 1L << n;
  const std::vector<int> tgt = range_targets(m);
  const Eigen::MatrixXcd udag = u_h.unitary.matrix.adjoint();

  Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(dim, dim);
  apply_gate(w, hadamard2(), {b}, {}, n);
  apply_gate(w, hadamard2(), {c}, {}, n);
  for (int j = 2 * R; j >= 0; --j) {
    apply_diagonal(w, s2_diag(n, b, c, m - u_h.n_anc, m, phc.phases[j],
                              phs.phases[j + 1]));
    if (j > 0) {
      const bool use_u = ((2 * R - j) % 2 == 0);
      apply_gate(w, use_u ? u_h.unitary.matrix : udag, tgt, {}, n);
    }
  }
  apply_gate(w, u_h.unitary.matrix, tgt, {{c, 1}}, n);
  apply_diagonal(w, s1_diag(n, b, m - u_h.n_anc, m, phs.phases[0], c));
  {
    Eigen::MatrixXcd p(2, 2);
    p << 1.0, 0.0, 0.0, std::exp(-kI * kPi / 2.0);
    apply_gate(w, p, {c}, {}, n);
  }
  apply_gate(w, hadamard2(), {c}, {}, n);
  apply_gate(w, hadamard2(), {b}, {}, n);

  BlockEncodedOp out;
  out.unitary = {n, std::move(w)};
  out.alpha = 1.0;
  out.n_anc = u_h.n_anc + 2;
  out.err = tp.kappa * eps_tri +
            (tp.cos.degree + tp.sin.degree) * phase_tol;
  out.queries = (2L * R + 1) * u_h.queries;
  out.exp_info = UExpInfo{t, eps_tri, tp.kappa, R};
  return out;
}

BlockEncodedOp build_oaa(const BlockEncodedOp& u_exp) {
  if (!u_exp.exp_info)
    throw std::invalid_argument("build_oaa: input is not a U_exp encoding");
  const int n = u_exp.unitary.n_qubits;
  const int d = n;  // amplification qubit sits above everything
  const int nn = n + 1;
  const long dim = 1L << nn;
  const int anc_lo = n - u_exp.n_anc;
  const std::vector<int> tgt = range_targets(n);
  const Eigen::MatrixXcd& ue = u_exp.unitary.matrix;
  const Eigen::MatrixXcd uedag = ue.adjoint();

  const double phi[4] = {-3.0 * kPi / 2.0, kPi / 2.0, kPi / 2.0, kPi / 2.0};

  Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(dim, dim);
  apply_diagonal(w, s1_diag(nn, d, anc_lo, n, phi[3]));
  apply_gate(w, ue, tgt, {}, nn);
  apply_diagonal(w, s1_diag(nn, d, anc_lo, n, phi[2]));
  apply_gate(w, uedag, tgt, {}, nn);
  apply_diagonal(w, s1_diag(nn, d, anc_lo, n, phi[1]));
  apply_gate(w, ue, tgt, {}, nn);
  apply_diagonal(w, s1_diag(nn, d, anc_lo, n, phi[0]));
  {
    // X Z X on d: flips the sign of the d=0 branch, cancelling T_3(1/2)=-1
    Eigen::VectorXcd flip(dim);
    for (long i = 0; i < dim; ++i) flip[i] = (i & (1L << d)) ? 1.0 : -1.0;
    apply_diagonal(w, flip);
  }

  const UExpInfo& info = *u_exp.exp_info;
  const double slack = u_exp.err - info.kappa * info.eps_tri;
  BlockEncodedOp out;
  out.unitary = {nn, std::move(w)};
  out.alpha = 1.0;
  out.n_anc = u_exp.n_anc + 1;
  out.err = 9.0 * info.eps_tri + 6.0 * slack;
  out.queries = 3 * u_exp.queries;
  out.phase = u_exp.phase;
  return out;
}

BlockEncodedOp build_fpaa(const BlockEncodedOp& u_exp, double eps_sign,
                          double phase_tol) {
  if (!u_exp.exp_info)
    throw std::invalid_argument("build_fpaa: input is not a U_exp encoding");
  const UExpInfo& info = *u_exp.exp_info;
  ChebyshevSeries sign_poly = build_sign_poly(info.kappa, eps_sign);
  const int D = sign_poly.degree;
  const double eps_prime = eps_sign + std::sqrt(3.0) * D * info.eps_tri;
  ChebyshevSeries target = sign_poly;
  target.coeffs /= (1.0 + eps_prime);
  PhaseSequence ph = find_phases(target, phase_tol);

  const int n = u_exp.unitary.n_qubits;
  const int d = n;
  const int nn = n + 1;
  const long dim = 1L << nn;
  const int anc_lo = n - u_exp.n_anc;
  const std::vector<int> tgt = range_targets(n);
  const Eigen::MatrixXcd& ue = u_exp.unitary.matrix;
  const Eigen::MatrixXcd uedag = ue.adjoint();

  Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(dim, dim);
  apply_gate(w, hadamard2(), {d}, {}, nn);
  for (int j = D; j >= 0; --j) {
    apply_diagonal(w, s1_diag(nn, d, anc_lo, n, ph.phases[j]));
    if (j > 0) apply_gate(w, ((D - j) % 2 == 0) ? ue : uedag, tgt, {}, nn);
  }
  apply_gate(w, hadamard2(), {d}, {}, nn);

  BlockEncodedOp out;
  out.unitary = {nn, std::move(w)};
  out.alpha = 1.0;
  out.n_anc = u_exp.n_anc + 1;
  out.err = 2.0 * eps_prime + D * phase_tol;
  out.queries = static_cast<long>(D) * u_exp.queries;
  out.phase = u_exp.phase;
  return out;
}

ShiftRescaled shift_rescale_encoding(const BlockEncodedOp& u, double t) {
  if (u.err > 1e-9)
    throw std::invalid_argument("shift_rescale_encoding: encoding must be exact");
  {
    Eigen::MatrixXcd b = project_block(u.unitary, u.n_anc);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((b + b.adjoint()) / 2.0);
    if (es.eigenvalues().cwiseAbs().maxCoeff() > 1.0 + 1e-9)
      throw std::invalid_argument("shift_rescale_encoding: ||H/alpha|| > 1");
  }
  const int m = u.unitary.n_qubits;
  const int ap = m;
  const int n = m + 1;
  const long dim = 1L << n;
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(dim, dim);
  apply_gate(w, hadamard2(), {ap}, {}, n);
  apply_gate(w, u.unitary.matrix, range_targets(m), {{ap, 0}}, n);
  apply_gate(w, hadamard2(), {ap}, {}, n);

  BlockEncodedOp out;
  out.unitary = {n, std::move(w)};
  out.alpha = 1.0;
  out.n_anc = u.n_anc + 1;
  out.err = 0.0;
  out.queries = u.queries;
  return {std::move(out), 2.0 * u.alpha * t};
}

QueryCount query_count(Method method, double t, double eps) {
  check_eps_range(eps);
  if (!(t > 0.0)) throw std::domain_error("query_count: t must be positive");
  if (method == Method::OAA) {
    int R = truncation_index_closed_form(t, eps / 9.0);
    QueryCount q{Method::OAA, t, eps, 3L * (2L * R + 1), R};
    return q;
  }

  const double eps_sign_max = std::sqrt(2.0 / (std::numbers::e * kPi));
  const double tri_hi = eps / (2.0 * std::sqrt(3.0));
  bool found = false;
  QueryCount best{Method::FPAA, t, eps, 0, 0};
  for (int i = 0; i < 40; ++i) {
    double eps_tri =
        std::pow(10.0, std::log10(1e-14) +
                           (std::log10(tri_hi) - std::log10(1e-14)) * i / 39.0);
    if (!(eps_tri < 1.0 / std::numbers::e)) continue;
    double kappa = 1.0 / (1.0 + eps_tri);
    // eps_sign = eps/2 - sqrt(3) D eps_tri with D depending on eps_sign
    double eps_sign = std::min(eps / 2.0, eps_sign_max);
    bool ok = true;
    for (int round = 0; round < 20; ++round) {
      int D = fpaa_degree(kappa, eps_sign);
      double next = eps / 2.0 - std::sqrt(3.0) * D * eps_tri;
      if (!(next > 0.0)) {
        ok = false;
        break;
      }
      next = std::min(next, eps_sign_max);
      if (std::abs(next - eps_sign) < 1e-16) {
        eps_sign = next;
        break;
      }
      eps_sign = next;
    }
    if (!ok) continue;
    int D = fpaa_degree(kappa, eps_sign);
    if (2.0 * (eps_sign + std::sqrt(3.0) * D * eps_tri) > eps * (1.0 + 1e-9))
      continue;
    int R = truncation_index_closed_form(t, eps_tri);
    long Q = static_cast<long>(D) * (2L * R + 1);
    if (!found || Q < best.Q) {
      found = true;
      best.Q = Q;
      best.R = R;
      best.D = D;
      best.eps_tri = eps_tri;
      best.eps_sign = eps_sign;
    }
  }
  if (!found)
    throw std::runtime_error("query_count: no feasible (eps_tri, eps_sign)");
  return best;
}

BlockEncodedOp extend_time(const BlockEncodedOp& step, int n_t) {
  if (n_t < 1) throw std::invalid_argument("extend_time: n_t must be >= 1");
  BlockEncodedOp out = step;
  for (int i = 1; i < n_t; ++i)
    out.unitary.matrix = step.unitary.matrix * out.unitary.matrix;
  out.err = n_t * step.err;
  out.queries = n_t * step.queries;
  out.phase = std::pow(step.phase, n_t);
  out.exp_info.reset();
  return out;
}

}  // namespace qsvt

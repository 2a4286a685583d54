#include "qsvt/simulator.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qsvt {

namespace {

void check_width(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw std::invalid_argument("simulator: qubit count out of range");
}

void check_unitary(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd d =
      m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  if (d.cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("simulator: matrix is not unitary");
}

// Enumerates row indices (base of each target-bit group) with controls
// satisfied, then gathers the 2^k target rows, applies the gate, scatters.
template <typename Mat>
void apply_gate_impl(Mat& m, const Eigen::MatrixXcd& gate,
                     const std::vector<int>& targets,
                     const std::vector<Control>& controls, int n_qubits) {
  check_width(n_qubits);
  const int k = static_cast<int>(targets.size());
  const long dim = 1L << n_qubits;
  if (m.rows() != dim)
    throw std::invalid_argument("apply_gate: dimension mismatch");
  if (gate.rows() != (1L << k) || gate.cols() != (1L << k))
    throw std::invalid_argument("apply_gate: gate size mismatch");
  check_unitary(gate);

  std::set<int> seen;
  for (int t : targets)
    if (t < 0 || t >= n_qubits || !seen.insert(t).second)
      throw std::invalid_argument("apply_gate: bad target index");
  for (auto [c, pol] : controls) {
    if (c < 0 || c >= n_qubits || !seen.insert(c).second)
      throw std::invalid_argument("apply_gate: bad control index");
    if (pol != 0 && pol != 1)
      throw std::invalid_argument("apply_gate: control polarity must be 0/1");
  }

  long target_mask = 0, ctrl_mask = 0, ctrl_val = 0;
  for (int t : targets) target_mask |= 1L << t;
  for (auto [c, pol] : controls) {
    ctrl_mask |= 1L << c;
    if (pol) ctrl_val |= 1L << c;
  }

  const long g = 1L << k;
  Eigen::MatrixXcd buf(g, m.cols());
  for (long base = 0; base < dim; ++base) {
    if (base & target_mask) continue;
    if ((base & ctrl_mask) != ctrl_val) continue;
    // row index for gate row r: base with target bits set per r
    std::vector<long> rows(g);
    for (long r = 0; r < g; ++r) {
      long idx = base;
      for (int b = 0; b < k; ++b)
        if (r & (1L << b)) idx |= 1L << targets[b];
      rows[r] = idx;
    }
    for (long r = 0; r < g; ++r) buf.row(r) = m.row(rows[r]);
    buf = (gate * buf).eval();
    for (long r = 0; r < g; ++r) m.row(rows[r]) = buf.row(r);
  }
}

}  // namespace

DenseUnitary make_unitary(int n_qubits, Eigen::MatrixXcd m) {
  check_width(n_qubits);
  const long dim = 1L << n_qubits;
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument("make_unitary: dimension mismatch");
  check_unitary(m);
  return {n_qubits, std::move(m)};
}

void apply_gate(Eigen::MatrixXcd& m, const Eigen::MatrixXcd& gate,
                const std::vector<int>& targets,
                const std::vector<Control>& controls, int n_qubits) {
  apply_gate_impl(m, gate, targets, controls, n_qubits);
}

void apply_gate(Eigen::VectorXcd& v, const Eigen::MatrixXcd& gate,
                const std::vector<int>& targets,
                const std::vector<Control>& controls, int n_qubits) {
  apply_gate_impl(v, gate, targets, controls, n_qubits);
}

void apply_diagonal(Eigen::MatrixXcd& m, const Eigen::VectorXcd& diag) {
  if (diag.size() != m.rows())
    throw std::invalid_argument("apply_diagonal: dimension mismatch");
  m = diag.asDiagonal() * m;
}

DenseUnitary embed_gate(const Eigen::MatrixXcd& gate,
                        const std::vector<int>& targets,
                        const std::vector<Control>& controls, int n_qubits) {
  check_width(n_qubits);
  const long dim = 1L << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
  apply_gate(m, gate, targets, controls, n_qubits);
  return {n_qubits, std::move(m)};
}

DenseUnitary compose(const std::vector<DenseUnitary>& sequence) {
  if (sequence.empty()) throw std::invalid_argument("compose: empty sequence");
  DenseUnitary out = sequence.front();
  for (size_t i = 1; i < sequence.size(); ++i) {
    if (sequence[i].n_qubits != out.n_qubits)
      throw std::invalid_argument("compose: width mismatch");
    out.matrix = sequence[i].matrix * out.matrix;
  }
  return out;
}

Eigen::MatrixXcd project_block(const DenseUnitary& u, int n_anc) {
  if (n_anc < 0 || n_anc >= u.n_qubits)
    throw std::invalid_argument("project_block: bad ancilla count");
  const long d = 1L << (u.n_qubits - n_anc);
  return u.matrix.topLeftCorner(d, d);
}

DenseUnitary direct_block_encoding(const Eigen::MatrixXcd& h, double alpha) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("direct_block_encoding: non-square input");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("direct_block_encoding: input not Hermitian");
  const long d = h.rows();
  Eigen::MatrixXcd b = h / alpha;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b);
  if (es.eigenvalues().cwiseAbs().maxCoeff() > 1.0 + 1e-12)
    throw std::invalid_argument("direct_block_encoding: ||H|| exceeds alpha");
  Eigen::VectorXd s2 =
      (1.0 - es.eigenvalues().array().square()).cwiseMax(0.0).cwiseMin(1.0);
  Eigen::MatrixXcd s = es.eigenvectors() *
                       s2.cwiseSqrt().asDiagonal() *
                       es.eigenvectors().adjoint();
  int n = 1;
  while ((1L << n) < 2 * d) ++n;
  Eigen::MatrixXcd u(2 * d, 2 * d);
  u.topLeftCorner(d, d) = b;
  u.topRightCorner(d, d) = s;
  u.bottomLeftCorner(d, d) = s;
  u.bottomRightCorner(d, d) = -b;
  return make_unitary(n, std::move(u));
}

}  // namespace qsvt

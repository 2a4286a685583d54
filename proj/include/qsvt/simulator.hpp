#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

namespace qsvt {

inline constexpr int kMaxQubits = 16;

/// Dense 2^n x 2^n unitary; qubit 0 is least significant, ancilla
/// registers occupy the most significant positions.
struct DenseUnitary {
  int n_qubits;
  Eigen::MatrixXcd matrix;
};

struct StateVec {
  int n_qubits;
  Eigen::VectorXcd amplitudes;
};

/// Control on (qubit, polarity): polarity 1 fires on |1>, 0 on |0>.
using Control = std::pair<int, int>;

/// Validates dimensions and unitarity (max-norm 1e-10).
DenseUnitary make_unitary(int n_qubits, Eigen::MatrixXcd m);

/// Left-multiplies `m` in place by the gate embedded on `targets` under
/// `controls`. targets[0] is the least significant gate qubit.
void apply_gate(Eigen::MatrixXcd& m, const Eigen::MatrixXcd& gate,
                const std::vector<int>& targets,
                const std::vector<Control>& controls, int n_qubits);
void apply_gate(Eigen::VectorXcd& v, const Eigen::MatrixXcd& gate,
                const std::vector<int>& targets,
                const std::vector<Control>& controls, int n_qubits);

/// Left-multiplies in place by a diagonal gate given by its full-width
/// diagonal entries.
void apply_diagonal(Eigen::MatrixXcd& m, const Eigen::VectorXcd& diag);

DenseUnitary embed_gate(const Eigen::MatrixXcd& gate,
                        const std::vector<int>& targets,
                        const std::vector<Control>& controls, int n_qubits);

/// Right-to-left product: the first listed unitary acts first on the state.
DenseUnitary compose(const std::vector<DenseUnitary>& sequence);

/// <0|_a U |0>_a with the ancillas in the high-order positions, i.e. the
/// top-left 2^(n-a) block.
Eigen::MatrixXcd project_block(const DenseUnitary& u, int n_anc);

/// One-ancilla unitary completion [[B, S], [S, -B]] with B = H/alpha and
/// S = sqrt(I - B^2); an (alpha, 1, 0)-block-encoding of H.
DenseUnitary direct_block_encoding(const Eigen::MatrixXcd& h, double alpha);

}  // namespace qsvt

#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "qsvt/trajectory.hpp"

namespace qsvt {

/// Uniform symmetric velocity grid: v_j = -v_max + j dv with dv (N-1) = 2 v_max
/// per axis, so dv N = 2 v_max + dv. Flattened index j = j_x + N_x (j_y + N_y j_z).
struct VelocityGrid {
  int dims;
  std::array<int, 3> n;         // per-axis size (power of two; 1 on unused axes)
  std::array<double, 3> v_max;  // per-axis extent (0 on unused axes)
  std::array<double, 3> dv;
  long total;                   // product of per-axis sizes
  double dv_cell;               // product of per-axis spacings
  Eigen::VectorXd maxwell;      // f_M at each flattened point

  double v(int axis, long j) const { return -v_max[axis] + j * dv[axis]; }
  std::array<long, 3> unflatten(long j) const;
};

VelocityGrid build_grid(int dims, const std::array<int, 3>& n,
                        const std::array<double, 3>& v_max);

/// Hermitian generator of the linearized dynamics on the r (x) v registers
/// (r selects F vs the E components, v the velocity point), with the
/// normalization alpha and the angle tables of its block-encoding.
struct VlasovHamiltonian {
  VelocityGrid grid;
  std::array<double, 3> k;
  Eigen::MatrixXcd H;                 // dimension 2^{n_r} * grid.total
  double alpha;
  double Lambda;
  double Gamma;
  double c2;                          // c^2 solving c^4 + Gamma c^2 - Gamma = 0
  Eigen::VectorXcd b;                 // sqrt(k.v_j / K_max), per grid point
  Eigen::VectorXd d;                  // sqrt(f_M / g_max), per grid point
  std::array<Eigen::VectorXd, 3> p;   // v / V_max ratio tables, per axis
  int n_r;                            // r-register qubits (1 in 1D, else 2)
  int n_v;                            // v-register qubits
};

VlasovHamiltonian build_hamiltonian(int dims, const VelocityGrid& grid,
                                    const std::array<double, 3>& k);

/// Physical variables: F_j = i sqrt(dv / f_M) f_1 and the field components,
/// with eta^2 = sum |F_j|^2 + sum |E_p|^2.
struct PlasmaState {
  Eigen::VectorXcd F;
  std::array<std::complex<double>, 3> E;
  double eta;
};

/// f_1(v, 0) = 0.1 f_M(v); E_p(0) = (i k_p / |k|^2) sum f_1 dv.
PlasmaState initial_state(const VelocityGrid& grid,
                          const std::array<double, 3>& k);

/// Unit-norm amplitudes: F_j / eta at index j, E_p / eta at index (p+1) N_v.
Eigen::VectorXcd state_vector(const PlasmaState& s, const VlasovHamiltonian& h);

struct Observables {
  std::array<std::complex<double>, 3> E;
  Eigen::VectorXcd f1;
  double d_m;          // sum |f_1|^2 dv
  double branch_norm;  // amplitude found in the ancilla-|0> branch
};

/// Reads the ancilla-|0> branch (leading block) of a statevector, renormalizes
/// by the branch amplitude, and inverts the encoding.
Observables decode_observables(const Eigen::VectorXcd& state,
                               const VlasovHamiltonian& h, double eta);

/// OAA-based evolution with dt = 1/alpha per step: shift-rescale the exact
/// encoding of H, build the degree-3 amplified exponential for t_eff = 2, and
/// apply it n_t times, decoding at every step (global phase corrected).
Trajectory evolve_hs(const VlasovHamiltonian& h, const PlasmaState& s0, int n_t,
                     double eps);

/// M = ceil((2 E_u + 1) pi eta / delta); guarantees |a~ - a| <= delta for the
/// amplitude a = |E|^2 estimated from p = |E|^2 / eta^2.
long qae_iterations(double e_u, double eta, double delta);

/// R(x)|0> = x|0> + sqrt(1-|x|^2)|1>; real x uses exp(-iY arccos x), otherwise
/// exp(-iX arccos Im(x)) exp(iZ pi/2).
Eigen::Matrix2cd variable_rotation(std::complex<double> x);

}  // namespace qsvt

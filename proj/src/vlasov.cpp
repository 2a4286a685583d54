#include "qsvt/vlasov.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsvt/hs.hpp"
#include "qsvt/simulator.hpp"

namespace qsvt {

namespace {

using cd = std::complex<double>;

bool power_of_two(long x) { return x >= 1 && (x & (x - 1)) == 0; }

int log2_int(long x) {
  int n = 0;
  while ((1L << n) < x) ++n;
  return n;
}

double maxwellian(double v2, int dims) {
  return std::pow(2.0 * std::numbers::pi, -0.5 * dims) * std::exp(-0.5 * v2);
}

}  // namespace

std::array<long, 3> VelocityGrid::unflatten(long j) const {
  std::array<long, 3> idx{0, 0, 0};
  for (int ax = 0; ax < dims; ++ax) {
    idx[ax] = j % n[ax];
    j /= n[ax];
  }
  return idx;
}

VelocityGrid build_grid(int dims, const std::array<int, 3>& n,
                        const std::array<double, 3>& v_max) {
  if (dims < 1 || dims > 3)
    throw std::invalid_argument("build_grid: dims must be 1, 2, or 3");
  VelocityGrid g;
  g.dims = dims;
  g.n = {1, 1, 1};
  g.v_max = {0.0, 0.0, 0.0};
  g.dv = {0.0, 0.0, 0.0};
  g.total = 1;
  g.dv_cell = 1.0;
  for (int ax = 0; ax < dims; ++ax) {
    if (!power_of_two(n[ax]) || n[ax] < 2)
      throw std::invalid_argument("build_grid: N must be a power of two >= 2");
    if (!(v_max[ax] > 0.0))
      throw std::invalid_argument("build_grid: v_max must be positive");
    g.n[ax] = n[ax];
    g.v_max[ax] = v_max[ax];
    g.dv[ax] = 2.0 * v_max[ax] / (n[ax] - 1);
    g.total *= n[ax];
    g.dv_cell *= g.dv[ax];
  }
  g.maxwell.resize(g.total);
  for (long j = 0; j < g.total; ++j) {
    auto idx = g.unflatten(j);
    double v2 = 0.0;
    for (int ax = 0; ax < dims; ++ax) {
      double v = g.v(ax, idx[ax]);
      v2 += v * v;
    }
    g.maxwell[j] = maxwellian(v2, dims);
  }
  return g;
}

VlasovHamiltonian build_hamiltonian(int dims, const VelocityGrid& grid,
                                    const std::array<double, 3>& k) {
  if (dims != grid.dims)
    throw std::invalid_argument("build_hamiltonian: dimension mismatch");
  if (dims >= 2)
    for (int ax = 0; ax < dims; ++ax)
      if (grid.v_max[ax] < 1.0)
        throw std::invalid_argument(
            "build_hamiltonian: per-axis v_max must be >= 1 beyond 1D");

  VlasovHamiltonian h;
  h.grid = grid;
  h.k = k;
  h.n_r = (dims == 1) ? 1 : 2;
  h.n_v = log2_int(grid.total);

  const long nv = grid.total;
  const long dim = (1L << h.n_r) * nv;
  h.H = Eigen::MatrixXcd::Zero(dim, dim);

  Eigen::VectorXd kv(nv);
  double k_max = 0.0, g_max = 0.0;
  for (long j = 0; j < nv; ++j) {
    auto idx = grid.unflatten(j);
    double s = 0.0;
    for (int ax = 0; ax < dims; ++ax) s += k[ax] * grid.v(ax, idx[ax]);
    kv[j] = s;
    k_max = std::max(k_max, std::abs(s));
    g_max = std::max(g_max, grid.maxwell[j]);
  }

  double v_prod = 1.0;
  for (int ax = 0; ax < dims; ++ax) v_prod *= grid.v_max[ax];

  // Coupling capacity under the square root of Lambda: the 1D bound uses
  // max_j |v_j f_M(v_j)| directly; beyond 1D it is 2^{dims-1} dv N V^2 g_max.
  double cap;
  if (dims == 1) {
    double gv_max = 0.0;
    for (long j = 0; j < nv; ++j)
      gv_max = std::max(gv_max,
                        std::abs(grid.v(0, grid.unflatten(j)[0])) *
                            grid.maxwell[j]);
    cap = grid.dv_cell * nv * grid.v_max[0] * gv_max;
  } else {
    cap = (1 << (dims - 1)) * grid.dv_cell * nv * v_prod * v_prod * g_max;
  }

  h.Lambda = k_max + std::sqrt(cap);
  if (k_max > 0.0) {
    h.Gamma = k_max * k_max / cap;
    // rationalized (Gamma/2)(sqrt(1 + 4/Gamma) - 1), stable for large Gamma
    h.c2 = 2.0 / (1.0 + std::sqrt(1.0 + 4.0 / h.Gamma));
    h.alpha = k_max / h.c2;
  } else {
    h.Gamma = 0.0;
    h.c2 = 0.0;
    h.alpha = std::sqrt(cap);
  }

  h.b.resize(nv);
  h.d.resize(nv);
  for (long j = 0; j < nv; ++j) {
    h.b[j] = (k_max > 0.0) ? std::sqrt(cd(kv[j] / k_max)) : cd(0.0);
    h.d[j] = std::sqrt(grid.maxwell[j] / g_max);
  }
  for (int ax = 0; ax < 3; ++ax) h.p[ax].resize(0);
  for (int ax = 0; ax < dims; ++ax) {
    double denom = (dims == 1) ? grid.v_max[0] : v_prod;
    h.p[ax].resize(grid.n[ax]);
    for (int j = 0; j < grid.n[ax]; ++j) h.p[ax][j] = grid.v(ax, j) / denom;
    if (h.p[ax].cwiseAbs().maxCoeff() > 1.0 + 1e-12)
      throw std::invalid_argument("build_hamiltonian: rotation angle exceeds 1");
  }
  if (h.b.cwiseAbs().maxCoeff() > 1.0 + 1e-12 ||
      h.d.cwiseAbs().maxCoeff() > 1.0 + 1e-12)
    throw std::invalid_argument("build_hamiltonian: rotation angle exceeds 1");

  for (long j = 0; j < nv; ++j) {
    auto idx = grid.unflatten(j);
    h.H(j, j) = kv[j];
    double mu = std::sqrt(grid.dv_cell * grid.maxwell[j]);
    for (int ax = 0; ax < dims; ++ax) {
      long e_row = (ax + 1) * nv;
      double c = mu * grid.v(ax, idx[ax]);
      h.H(j, e_row) += c;
      h.H(e_row, j) += c;
    }
  }
  return h;
}

PlasmaState initial_state(const VelocityGrid& grid,
                          const std::array<double, 3>& k) {
  double k2 = 0.0;
  for (int ax = 0; ax < grid.dims; ++ax) k2 += k[ax] * k[ax];
  if (!(k2 > 0.0)) throw std::invalid_argument("initial_state: k must be nonzero");

  PlasmaState s;
  s.F.resize(grid.total);
  double f1_sum = 0.0;
  for (long j = 0; j < grid.total; ++j) {
    double f1 = 0.1 * grid.maxwell[j];
    s.F[j] = cd(0.0, 1.0) * std::sqrt(grid.dv_cell / grid.maxwell[j]) * f1;
    f1_sum += f1 * grid.dv_cell;
  }
  s.E = {0.0, 0.0, 0.0};
  double norm2 = s.F.squaredNorm();
  for (int ax = 0; ax < grid.dims; ++ax) {
    s.E[ax] = cd(0.0, k[ax] / k2) * f1_sum;
    norm2 += std::norm(s.E[ax]);
  }
  s.eta = std::sqrt(norm2);
  return s;
}

Eigen::VectorXcd state_vector(const PlasmaState& s,
                              const VlasovHamiltonian& h) {
  const long nv = h.grid.total;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero((1L << h.n_r) * nv);
  v.head(nv) = s.F / s.eta;
  for (int ax = 0; ax < h.grid.dims; ++ax) v[(ax + 1) * nv] = s.E[ax] / s.eta;
  return v;
}

Observables decode_observables(const Eigen::VectorXcd& state,
                               const VlasovHamiltonian& h, double eta) {
  const long nv = h.grid.total;
  const long sys = (1L << h.n_r) * nv;
  if (state.size() < sys)
    throw std::invalid_argument("decode_observables: state too small");
  Eigen::VectorXcd amps = state.head(sys);
  double branch = amps.norm();
  if (branch < 1e-12)
    throw std::runtime_error("decode_observables: amplitude lost from branch");
  amps /= branch;

  Observables o;
  o.branch_norm = branch;
  o.E = {0.0, 0.0, 0.0};
  for (int ax = 0; ax < h.grid.dims; ++ax) o.E[ax] = eta * amps[(ax + 1) * nv];
  o.f1.resize(nv);
  o.d_m = 0.0;
  for (long j = 0; j < nv; ++j) {
    o.f1[j] = cd(0.0, -1.0) * std::sqrt(h.grid.maxwell[j] / h.grid.dv_cell) *
              eta * amps[j];
    o.d_m += std::norm(o.f1[j]) * h.grid.dv_cell;
  }
  return o;
}

Trajectory evolve_hs(const VlasovHamiltonian& h, const PlasmaState& s0, int n_t,
                     double eps) {
  BlockEncodedOp base;
  base.unitary = direct_block_encoding(h.H, h.alpha);
  base.alpha = h.alpha;
  base.n_anc = 1;

  const double dt = 1.0 / h.alpha;
  auto [shifted, t_eff] = shift_rescale_encoding(base, dt);
  BlockEncodedOp step = build_oaa(build_u_exp(shifted, t_eff, eps / 9.0));
  if (step.unitary.n_qubits > kMaxQubits)
    throw std::invalid_argument("evolve_hs: circuit exceeds the qubit cap");

  const long dim = 1L << step.unitary.n_qubits;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd sys = state_vector(s0, h);
  psi.head(sys.size()) = sys;

  // cancels the e^{-i t_eff / 2} picked up by the shifted evolution each step
  const cd phase_fix = std::exp(cd(0.0, t_eff / 2.0));

  Trajectory tr;
  tr.source = Source::HS;
  tr.eta = s0.eta;
  for (int l = 0; l <= n_t; ++l) {
    if (l > 0) {
      psi = step.unitary.matrix * psi;
      psi *= phase_fix;
    }
    Observables o = decode_observables(psi, h, s0.eta);
    tr.times.push_back(l * dt);
    tr.E.push_back(o.E);
    tr.f1.push_back(std::move(o.f1));
    tr.d_m.push_back(o.d_m);
    tr.branch.push_back(o.branch_norm);
  }
  return tr;
}

long qae_iterations(double e_u, double eta, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("qae_iterations: delta must lie in (0, 1)");
  if (e_u < 0.0 || eta <= 0.0)
    throw std::invalid_argument("qae_iterations: bad bound or normalization");
  return static_cast<long>(
      std::ceil((2.0 * e_u + 1.0) * std::numbers::pi * eta / delta));
}

Eigen::Matrix2cd variable_rotation(std::complex<double> x) {
  if (std::abs(x) > 1.0 + 1e-12)
    throw std::invalid_argument("variable_rotation: |x| must be <= 1");
  Eigen::Matrix2cd r;
  if (x.imag() == 0.0) {
    double th = std::acos(std::clamp(x.real(), -1.0, 1.0));
    r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  } else {
    double ph = std::acos(std::clamp(x.imag(), -1.0, 1.0));
    Eigen::Matrix2cd xr;
    xr << std::cos(ph), cd(0.0, -1.0) * std::sin(ph),
        cd(0.0, -1.0) * std::sin(ph), std::cos(ph);
    Eigen::Matrix2cd zr = Eigen::Matrix2cd::Zero();
    zr(0, 0) = std::exp(cd(0.0, std::numbers::pi / 2.0));
    zr(1, 1) = std::exp(cd(0.0, -std::numbers::pi / 2.0));
    r = xr * zr;
  }
  return r;
}

}  // namespace qsvt

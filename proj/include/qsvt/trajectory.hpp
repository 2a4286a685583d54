#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qsvt {

enum class Source { HS, Euler, Exact };

/// Time series of decoded observables; all per-step vectors share one length.
struct Trajectory {
  Source source;
  std::vector<double> times;
  std::vector<std::array<std::complex<double>, 3>> E;
  std::vector<Eigen::VectorXcd> f1;
  std::vector<double> d_m;
  std::vector<double> branch;  // ancilla-|0> branch norm per step (HS only)
  double eta = 0.0;
};

}  // namespace qsvt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "qsvt/simulator.hpp"

using namespace qsvt;
using cd = std::complex<double>;

namespace {

Eigen::MatrixXcd pauli_x() {
  Eigen::MatrixXcd m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Eigen::MatrixXcd pauli_z() {
  Eigen::MatrixXcd m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Eigen::MatrixXcd hadamard() {
  Eigen::MatrixXcd m(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Eigen::MatrixXcd random_unitary(int dim, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cd(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ();
}

Eigen::MatrixXcd random_hermitian(int dim, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cd(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("embed_gate CNOT and open controls") {
  // CNOT: control qubit 1, target 0; |10> = index 2 -> |11> = index 3
  auto cnot = embed_gate(pauli_x(), {0}, {{1, 1}}, 2);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v[2] = 1.0;
  Eigen::VectorXcd w = cnot.matrix * v;
  CHECK(std::abs(w[3] - 1.0) < 1e-14);

  // open control fires on |0>
  auto oc = embed_gate(pauli_x(), {0}, {{1, 0}}, 2);
  Eigen::VectorXcd v0 = Eigen::VectorXcd::Zero(4);
  v0[0] = 1.0;  // |00>
  CHECK(std::abs((oc.matrix * v0)[1] - 1.0) < 1e-14);
  Eigen::VectorXcd v2 = Eigen::VectorXcd::Zero(4);
  v2[2] = 1.0;  // |10>: control is 1, gate must not fire
  CHECK(std::abs((oc.matrix * v2)[2] - 1.0) < 1e-14);
}

TEST_CASE("embed_gate tensor ordering: qubit 0 least significant") {
  auto h1 = embed_gate(hadamard(), {1}, {}, 2);
  Eigen::MatrixXcd expect =
      Eigen::kroneckerProduct(hadamard(), Eigen::MatrixXcd::Identity(2, 2));
  CHECK((h1.matrix - expect).cwiseAbs().maxCoeff() < 1e-14);

  // single-target embedding permutes exactly bit k
  for (int k = 0; k < 3; ++k) {
    auto xk = embed_gate(pauli_x(), {k}, {}, 3);
    for (int b = 0; b < 8; ++b) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
      v[b] = 1.0;
      Eigen::VectorXcd w = xk.matrix * v;
      CHECK(std::abs(w[b ^ (1 << k)] - 1.0) < 1e-14);
    }
  }
}

TEST_CASE("embed_gate rejects bad input") {
  CHECK_THROWS_AS(embed_gate(pauli_x(), {0}, {{0, 1}}, 2),
                  std::invalid_argument);
  Eigen::MatrixXcd notu(2, 2);
  notu << 1, 1, 0, 1;
  CHECK_THROWS_AS(embed_gate(notu, {0}, {}, 2), std::invalid_argument);
  CHECK_THROWS_AS(embed_gate(pauli_x(), {0}, {}, 17), std::invalid_argument);
}

TEST_CASE("compose ordering and oracle") {
  auto x = embed_gate(pauli_x(), {0}, {}, 1);
  auto z = embed_gate(pauli_z(), {0}, {}, 1);
  auto h = embed_gate(hadamard(), {0}, {}, 1);
  CHECK((compose({x, x}).matrix - Eigen::MatrixXcd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-14);
  CHECK((compose({h, z, h}).matrix - pauli_x()).cwiseAbs().maxCoeff() < 1e-13);

  std::mt19937 rng(4);
  auto a = make_unitary(3, random_unitary(8, rng));
  auto b = make_unitary(3, random_unitary(8, rng));
  CHECK((compose({a, b}).matrix - b.matrix * a.matrix).cwiseAbs().maxCoeff() <
        1e-13);

  auto c = make_unitary(2, random_unitary(4, rng));
  CHECK_THROWS_AS(compose({a, c}), std::invalid_argument);
}

TEST_CASE("project_block") {
  auto id2 = make_unitary(2, Eigen::MatrixXcd::Identity(4, 4));
  Eigen::MatrixXcd p = project_block(id2, 1);
  CHECK((p - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

  // X on the ancilla (most significant qubit) zeroes the block
  auto xa = embed_gate(pauli_x(), {1}, {}, 2);
  CHECK(project_block(xa, 1).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS_AS(project_block(id2, 2), std::invalid_argument);
}

TEST_CASE("direct_block_encoding") {
  Eigen::MatrixXcd h1(1, 1);
  h1 << 0.5;
  auto u = direct_block_encoding(h1, 1.0);
  CHECK(std::abs(u.matrix(0, 0) - 0.5) < 1e-12);
  CHECK(std::abs(u.matrix(1, 0) - std::sqrt(0.75)) < 1e-12);

  Eigen::MatrixXcd h0 = Eigen::MatrixXcd::Zero(2, 2);
  auto u0 = direct_block_encoding(h0, 1.0);
  CHECK(project_block(u0, 1).cwiseAbs().maxCoeff() < 1e-12);

  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXcd h = random_hermitian(4, rng);
    double alpha =
        1.1 * Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h)
                  .eigenvalues()
                  .cwiseAbs()
                  .maxCoeff();
    auto ub = direct_block_encoding(h, alpha);
    CHECK((project_block(ub, 1) - h / alpha).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((ub.matrix.adjoint() * ub.matrix -
           Eigen::MatrixXcd::Identity(8, 8))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }

  Eigen::MatrixXcd big(1, 1);
  big << 2.0;
  CHECK_THROWS_AS(direct_block_encoding(big, 1.0), std::invalid_argument);
}

TEST_CASE("apply_gate matches embed_gate") {
  std::mt19937 rng(8);
  Eigen::MatrixXcd m = random_unitary(16, rng);
  Eigen::MatrixXcd g = random_unitary(4, rng);
  Eigen::MatrixXcd expect =
      embed_gate(g, {0, 2}, {{3, 1}}, 4).matrix * m;
  Eigen::MatrixXcd got = m;
  apply_gate(got, g, {0, 2}, {{3, 1}}, 4);
  CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-12);

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
  v[11] = 1.0;
  Eigen::MatrixXcd g2 = random_unitary(2, rng);
  Eigen::VectorXcd got2 = v;
  apply_gate(got2, g2, {1}, {}, 4);
  CHECK((got2 - embed_gate(g2, {1}, {}, 4).matrix * v).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("projection composes only with restored ancillas") {
  std::mt19937 rng(29);
  auto u = make_unitary(2, random_unitary(4, rng));
  auto v = make_unitary(2, random_unitary(4, rng));
  Eigen::MatrixXcd joint = project_block(compose({u, v}), 1);
  Eigen::MatrixXcd sep = project_block(v, 1) * project_block(u, 1);
  CHECK((joint - sep).cwiseAbs().maxCoeff() > 1e-6);  // not equal in general

  // with the ancilla untouched by u, the product law holds
  auto w = embed_gate(random_unitary(2, rng), {0}, {}, 2);
  Eigen::MatrixXcd joint2 = project_block(compose({w, v}), 1);
  Eigen::MatrixXcd sep2 = project_block(v, 1) * project_block(w, 1);
  CHECK((joint2 - sep2).cwiseAbs().maxCoeff() < 1e-12);
}

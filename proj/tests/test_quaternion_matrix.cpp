#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include <Eigen/Dense>

#include "qtc/quaternion_matrix.hpp"
#include "support/helpers.hpp"

using qtc::Quaternion;
using qtc::QuaternionMatrix;
using Catch::Approx;

TEST_CASE("construction zero-fills and validates shapes", "[qmatrix]") {
  QuaternionMatrix m(3, 2);
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 2);
  CHECK(m(2, 1) == Quaternion{});
  CHECK_THROWS_AS(QuaternionMatrix(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(QuaternionMatrix(2, -1), std::invalid_argument);

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(3, 2);
  CHECK_THROWS_AS(QuaternionMatrix(a, a, a, b), std::invalid_argument);
}

TEST_CASE("complex adjoint of the 1x1 matrix [j]", "[qmatrix]") {
  // Hand-computed: z1 = 0, z2 = 1, so f([j]) = [[0, 1], [-1, 0]].
  QuaternionMatrix m(1, 1);
  m.set(0, 0, Quaternion{0, 0, 1, 0});
  const Eigen::MatrixXcd f = qtc::complex_adjoint(m);
  REQUIRE(f.rows() == 2);
  REQUIRE(f.cols() == 2);
  CHECK(f(0, 0) == std::complex<double>(0, 0));
  CHECK(f(0, 1) == std::complex<double>(1, 0));
  CHECK(f(1, 0) == std::complex<double>(-1, 0));
  CHECK(f(1, 1) == std::complex<double>(0, 0));
}

TEST_CASE("complex adjoint of the identity is the 2N identity", "[qmatrix]") {
  const QuaternionMatrix eye = QuaternionMatrix::identity(3);
  const Eigen::MatrixXcd f = qtc::complex_adjoint(eye);
  CHECK((f - Eigen::MatrixXcd::Identity(6, 6)).norm() == 0.0);
}

TEST_CASE("complex adjoint block layout", "[qmatrix]") {
  // Entry q = w + xi + yj + zk lands as z1 = w + xi in the top-left block,
  // z2 = y + zi in the top-right, with the conjugate pair below.
  QuaternionMatrix m(2, 3);
  auto g = testsup::rng(5);
  for (Eigen::Index j = 0; j < 3; ++j)
    for (Eigen::Index i = 0; i < 2; ++i) m.set(i, j, testsup::random_quaternion(g));
  const Eigen::MatrixXcd f = qtc::complex_adjoint(m);
  REQUIRE(f.rows() == 4);
  REQUIRE(f.cols() == 6);
  for (Eigen::Index j = 0; j < 3; ++j)
    for (Eigen::Index i = 0; i < 2; ++i) {
      const Quaternion q = m(i, j);
      CHECK(f(i, j) == std::complex<double>(q.w, q.x));
      CHECK(f(i, j + 3) == std::complex<double>(q.y, q.z));
      CHECK(f(i + 2, j) == -std::conj(std::complex<double>(q.y, q.z)));
      CHECK(f(i + 2, j + 3) == std::conj(std::complex<double>(q.w, q.x)));
    }
}

TEST_CASE("complex adjoint is a homomorphism for products", "[qmatrix]") {
  // The product oracle is entrywise Hamilton arithmetic; the adjoint of the
  // product must match the complex product of the adjoints.
  auto g = testsup::rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const QuaternionMatrix p = testsup::random_qmatrix(g, 3, 3);
    const QuaternionMatrix q = testsup::random_qmatrix(g, 3, 3);
    const Eigen::MatrixXcd lhs = qtc::complex_adjoint(p * q);
    const Eigen::MatrixXcd rhs = qtc::complex_adjoint(p) * qtc::complex_adjoint(q);
    CHECK((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
  }
}

TEST_CASE("adjoint round trip recovers the matrix bitwise", "[qmatrix]") {
  auto g = testsup::rng(29);
  const QuaternionMatrix q = testsup::random_qmatrix(g, 4, 7);
  const QuaternionMatrix back = qtc::from_complex_adjoint(qtc::complex_adjoint(q));
  CHECK(testsup::qm_bit_equal(q, back));
  CHECK_THROWS_AS(qtc::from_complex_adjoint(Eigen::MatrixXcd::Zero(3, 4)), std::invalid_argument);
}

TEST_CASE("matrix product against scalar identities", "[qmatrix]") {
  QuaternionMatrix qi(1, 1), qj(1, 1);
  qi.set(0, 0, Quaternion{0, 1, 0, 0});
  qj.set(0, 0, Quaternion{0, 0, 1, 0});
  const QuaternionMatrix qk = qi * qj;
  CHECK(qk(0, 0) == Quaternion{0, 0, 0, 1});

  auto g = testsup::rng(31);
  const QuaternionMatrix a = testsup::random_qmatrix(g, 4, 3);
  CHECK(testsup::qm_bit_equal(a * QuaternionMatrix::identity(3), a));
  CHECK(testsup::qm_bit_equal(QuaternionMatrix::identity(4) * a, a));

  const QuaternionMatrix b = testsup::random_qmatrix(g, 5, 4);
  CHECK_THROWS_AS(a * b, std::invalid_argument);  // 4x3 times 5x4 mismatches
}

TEST_CASE("frobenius norm agrees with the adjoint scaling", "[qmatrix]") {
  QuaternionMatrix unit(1, 1);
  unit.set(0, 0, Quaternion{1, 1, 1, 1});
  CHECK(unit.frobenius() == 2.0);
  CHECK(QuaternionMatrix(4, 5).frobenius() == 0.0);

  auto g = testsup::rng(37);
  const QuaternionMatrix q = testsup::random_qmatrix(g, 5, 6);
  // ||Q||_F = ||f(Q)||_F / sqrt(2): each scalar appears twice in the adjoint.
  const double via_adjoint = qtc::complex_adjoint(q).norm() / std::sqrt(2.0);
  CHECK(q.frobenius() == Approx(via_adjoint).epsilon(1e-12));
}

TEST_CASE("real inner product", "[qmatrix]") {
  QuaternionMatrix qi(1, 1), qj(1, 1);
  qi.set(0, 0, Quaternion{0, 1, 0, 0});
  qj.set(0, 0, Quaternion{0, 0, 1, 0});
  CHECK(qtc::inner(qi, qj) == 0.0);

  const QuaternionMatrix eye = QuaternionMatrix::identity(4);
  CHECK(qtc::inner(eye, eye) == 4.0);

  auto g = testsup::rng(41);
  const QuaternionMatrix a = testsup::random_qmatrix(g, 3, 5);
  const QuaternionMatrix b = testsup::random_qmatrix(g, 3, 5);
  CHECK(qtc::inner(a, b) == qtc::inner(b, a));
  CHECK(qtc::inner(a, a) == Approx(a.frobenius() * a.frobenius()).epsilon(1e-12));
  CHECK_THROWS_AS(qtc::inner(a, testsup::random_qmatrix(g, 5, 3)), std::invalid_argument);
}

TEST_CASE("conjugate transpose", "[qmatrix]") {
  auto g = testsup::rng(43);
  const QuaternionMatrix a = testsup::random_qmatrix(g, 3, 5);
  const QuaternionMatrix at = a.adjoint();
  REQUIRE(at.rows() == 5);
  REQUIRE(at.cols() == 3);
  for (Eigen::Index j = 0; j < 5; ++j)
    for (Eigen::Index i = 0; i < 3; ++i) CHECK(at(j, i) == qtc::conj(a(i, j)));
  CHECK(testsup::qm_bit_equal(at.adjoint(), a));
  // f commutes with conjugate transposition.
  CHECK((qtc::complex_adjoint(at) - qtc::complex_adjoint(a).adjoint().eval()).norm() == 0.0);
}

TEST_CASE("elementwise arithmetic and purity", "[qmatrix]") {
  auto g = testsup::rng(47);
  const QuaternionMatrix a = testsup::random_qmatrix(g, 4, 4);
  const QuaternionMatrix b = testsup::random_qmatrix(g, 4, 4);
  const QuaternionMatrix s = a + b;
  const QuaternionMatrix d = s - b;
  CHECK(testsup::qm_distance(d, a) < 1e-14);
  const QuaternionMatrix h = 0.5 * a;
  CHECK(h(1, 2) == 0.5 * a(1, 2));
  CHECK_THROWS_AS(a + testsup::random_qmatrix(g, 4, 5), std::invalid_argument);

  const QuaternionMatrix pure = testsup::random_pure_qmatrix(g, 3, 3);
  CHECK(pure.is_pure());
  CHECK_FALSE(a.is_pure());
}

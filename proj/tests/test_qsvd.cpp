#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "qtc/qsvd.hpp"
#include "support/helpers.hpp"

using qtc::Quaternion;
using qtc::QuaternionMatrix;
using Catch::Approx;

namespace {

// Reconstruction residual ||Q - U diag(s) V^H||_F computed with entrywise
// Hamilton products, independent of the complex embedding used internally.
double reconstruction_error(const QuaternionMatrix& q, const qtc::QsvdResult& r) {
  QuaternionMatrix lambda(q.rows(), q.cols());
  for (Eigen::Index k = 0; k < r.singular_values.size(); ++k)
    lambda.set(k, k, Quaternion{r.singular_values[k], 0, 0, 0});
  const QuaternionMatrix rec = r.u * lambda * r.v.adjoint();
  return testsup::qm_distance(rec, q);
}

double unitarity_error(const QuaternionMatrix& u) {
  const QuaternionMatrix eye = QuaternionMatrix::identity(u.rows());
  const double left = testsup::qm_distance(u * u.adjoint(), eye);
  const double right = testsup::qm_distance(u.adjoint() * u, eye);
  return std::max(left, right);
}

double nuclear_oracle(const QuaternionMatrix& q) {
  // Half the complex embedding's nuclear norm, summed directly.
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(qtc::complex_adjoint(q));
  return 0.5 * svd.singularValues().sum();
}

}  // namespace

TEST_CASE("qsvd of a real diagonal matrix", "[qsvd]") {
  QuaternionMatrix q(2, 2);
  q.set(0, 0, Quaternion{3, 0, 0, 0});
  q.set(1, 1, Quaternion{1, 0, 0, 0});
  const qtc::QsvdResult r = qtc::qsvd(q);
  REQUIRE(r.singular_values.size() == 2);
  CHECK(r.singular_values[0] == Approx(3.0).margin(1e-12));
  CHECK(r.singular_values[1] == Approx(1.0).margin(1e-12));
  CHECK(r.rank_estimate == 2);
  // With phases canonicalized the factors collapse to the identity.
  CHECK(testsup::qm_distance(r.u, QuaternionMatrix::identity(2)) < 1e-12);
  CHECK(testsup::qm_distance(r.v, QuaternionMatrix::identity(2)) < 1e-12);
}

TEST_CASE("qsvd of the 1x1 matrix [j]", "[qsvd]") {
  QuaternionMatrix q(1, 1);
  q.set(0, 0, Quaternion{0, 0, 1, 0});
  const qtc::QsvdResult r = qtc::qsvd(q);
  REQUIRE(r.singular_values.size() == 1);
  CHECK(r.singular_values[0] == Approx(1.0).margin(1e-14));
  CHECK(reconstruction_error(q, r) < 1e-14);
  CHECK(unitarity_error(r.u) < 1e-14);
  CHECK(unitarity_error(r.v) < 1e-14);
}

TEST_CASE("qsvd reconstruction and unitarity on random matrices", "[qsvd]") {
  auto g = testsup::rng(101);
  const std::pair<int, int> shapes[] = {{1, 1}, {2, 5}, {5, 2}, {6, 6}, {7, 3}, {4, 9}, {12, 8}};
  for (const auto& [m, n] : shapes) {
    const QuaternionMatrix q = testsup::random_qmatrix(g, m, n);
    const qtc::QsvdResult r = qtc::qsvd(q);
    const double scale = q.frobenius();
    CHECK(reconstruction_error(q, r) < 1e-9 * scale);
    CHECK(unitarity_error(r.u) < 1e-10);
    CHECK(unitarity_error(r.v) < 1e-10);
    // Nonincreasing, nonnegative spectrum.
    for (Eigen::Index k = 0; k + 1 < r.singular_values.size(); ++k)
      CHECK(r.singular_values[k] >= r.singular_values[k + 1]);
    CHECK(r.singular_values[r.singular_values.size() - 1] >= 0.0);
  }
}

TEST_CASE("qsvd handles repeated singular values", "[qsvd]") {
  // Scaled identities and repeated diagonals produce heavily degenerate
  // spectra in the complex embedding; pairing must still give clean factors.
  const QuaternionMatrix eye4 = 2.5 * QuaternionMatrix::identity(4);
  const qtc::QsvdResult r1 = qtc::qsvd(eye4);
  CHECK(reconstruction_error(eye4, r1) < 1e-12);
  CHECK(unitarity_error(r1.u) < 1e-12);
  CHECK(unitarity_error(r1.v) < 1e-12);
  for (Eigen::Index k = 0; k < 4; ++k) CHECK(r1.singular_values[k] == Approx(2.5).margin(1e-12));

  QuaternionMatrix d(3, 3);
  d.set(0, 0, Quaternion{2, 0, 0, 0});
  d.set(1, 1, Quaternion{2, 0, 0, 0});
  d.set(2, 2, Quaternion{1, 0, 0, 0});
  const qtc::QsvdResult r2 = qtc::qsvd(d);
  CHECK(reconstruction_error(d, r2) < 1e-12);
  CHECK(unitarity_error(r2.u) < 1e-12);
}

TEST_CASE("rank-one outer product has one dominant singular value", "[qsvd]") {
  auto g = testsup::rng(103);
  QuaternionMatrix u(4, 1), v(1, 3);
  for (Eigen::Index i = 0; i < 4; ++i) u.set(i, 0, testsup::random_quaternion(g));
  for (Eigen::Index j = 0; j < 3; ++j) v.set(0, j, testsup::random_quaternion(g));
  const QuaternionMatrix q = u * v;
  const qtc::QsvdResult r = qtc::qsvd(q);
  CHECK(r.singular_values[1] / r.singular_values[0] < 1e-10);
  CHECK(r.rank_estimate == 1);
  CHECK(reconstruction_error(q, r) < 1e-9 * q.frobenius());
}

TEST_CASE("rank-deficient tall matrix exercises null-space completion", "[qsvd]") {
  auto g = testsup::rng(107);
  const QuaternionMatrix a = testsup::random_qmatrix(g, 8, 2);
  const QuaternionMatrix b = testsup::random_qmatrix(g, 2, 5);
  const QuaternionMatrix q = a * b;  // rank two, 8x5
  const qtc::QsvdResult r = qtc::qsvd(q);
  CHECK(r.rank_estimate == 2);
  CHECK(reconstruction_error(q, r) < 1e-9 * q.frobenius());
  CHECK(unitarity_error(r.u) < 1e-10);
  CHECK(unitarity_error(r.v) < 1e-10);
}

TEST_CASE("embedded spectrum appears in equal adjacent pairs", "[qsvd]") {
  auto g = testsup::rng(109);
  const QuaternionMatrix q = testsup::random_qmatrix(g, 5, 4);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(qtc::complex_adjoint(q));
  const Eigen::VectorXd s = svd.singularValues();
  REQUIRE(s.size() == 8);
  for (Eigen::Index k = 0; k < 4; ++k) {
    CHECK((s[2 * k] - s[2 * k + 1]) <= 1e-10 * s[0]);
  }
  // qsvd_values picks the odd-indexed (0-based even) representatives.
  const Eigen::VectorXd vals = qtc::qsvd_values(q);
  REQUIRE(vals.size() == 4);
  for (Eigen::Index k = 0; k < 4; ++k) CHECK(vals[k] == s[2 * k]);
}

TEST_CASE("singular values are invariant under unitary mixing", "[qsvd]") {
  auto g = testsup::rng(113);
  const QuaternionMatrix q = testsup::random_qmatrix(g, 5, 5);
  const QuaternionMatrix w = qtc::qsvd(testsup::random_qmatrix(g, 5, 5)).u;  // random unitary
  const Eigen::VectorXd s0 = qtc::qsvd_values(q);
  const Eigen::VectorXd s1 = qtc::qsvd_values(w * q);
  for (Eigen::Index k = 0; k < 5; ++k) CHECK(s1[k] == Approx(s0[k]).epsilon(1e-10));
}

TEST_CASE("rank estimate matches half the embedded rank", "[qsvd]") {
  auto g = testsup::rng(127);
  const QuaternionMatrix a = testsup::random_qmatrix(g, 6, 3);
  const QuaternionMatrix b = testsup::random_qmatrix(g, 3, 6);
  const QuaternionMatrix q = a * b;
  const qtc::QsvdResult r = qtc::qsvd(q);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(qtc::complex_adjoint(q));
  const Eigen::VectorXd s = svd.singularValues();
  const double tol = qtc::auto_rank_tolerance(s[0], 6, 6);
  const Eigen::Index embedded = (s.array() > tol).count();
  CHECK(2 * r.rank_estimate == embedded);
  CHECK(r.rank_estimate == 3);
}

TEST_CASE("nuclear norm", "[qsvd]") {
  CHECK(qtc::nuclear_norm(QuaternionMatrix(3, 4)) == 0.0);
  CHECK(qtc::nuclear_norm(QuaternionMatrix::identity(5)) == Approx(5.0).epsilon(1e-12));

  auto g = testsup::rng(131);
  const QuaternionMatrix q = testsup::random_qmatrix(g, 6, 4);
  CHECK(qtc::nuclear_norm(q) == Approx(nuclear_oracle(q)).epsilon(1e-10));
}

TEST_CASE("svt threshold zero returns the input unchanged", "[qsvd]") {
  auto g = testsup::rng(137);
  const QuaternionMatrix q = testsup::random_qmatrix(g, 5, 7);
  CHECK(testsup::qm_bit_equal(qtc::svt(q, 0.0), q));
  CHECK_THROWS_AS(qtc::svt(q, -0.5), std::invalid_argument);
}

TEST_CASE("svt on a real diagonal shrinks the spectrum", "[qsvd]") {
  // diag(3, 1) with threshold 2 keeps max(3-2, 0) = 1 and drops the rest.
  QuaternionMatrix q(2, 2);
  q.set(0, 0, Quaternion{3, 0, 0, 0});
  q.set(1, 1, Quaternion{1, 0, 0, 0});
  const QuaternionMatrix y = qtc::svt(q, 2.0);
  CHECK(std::abs(y(0, 0).w - 1.0) < 1e-12);
  CHECK(qtc::modulus(y(0, 1)) < 1e-12);
  CHECK(qtc::modulus(y(1, 0)) < 1e-12);
  CHECK(qtc::modulus(y(1, 1)) < 1e-12);
}

TEST_CASE("svt above the top singular value yields zero", "[qsvd]") {
  auto g = testsup::rng(139);
  const QuaternionMatrix q = testsup::random_qmatrix(g, 4, 6);
  const double top = qtc::qsvd_values(q)[0];
  const QuaternionMatrix y = qtc::svt(q, top * 1.0001);
  CHECK(y.frobenius() == 0.0);
}

TEST_CASE("svt agrees with the explicit thresholded reconstruction", "[qsvd]") {
  auto g = testsup::rng(149);
  for (int trial = 0; trial < 8; ++trial) {
    const QuaternionMatrix q = testsup::random_qmatrix(g, 6, 8);
    const qtc::QsvdResult r = qtc::qsvd(q);
    const double xi = 0.4 * r.singular_values[0];
    QuaternionMatrix lambda(6, 8);
    for (Eigen::Index k = 0; k < r.singular_values.size(); ++k)
      lambda.set(k, k, Quaternion{std::max(r.singular_values[k] - xi, 0.0), 0, 0, 0});
    const QuaternionMatrix oracle = r.u * lambda * r.v.adjoint();
    const QuaternionMatrix fast = qtc::svt(q, xi);
    CHECK(testsup::qm_distance(fast, oracle) < 1e-10 * (1.0 + q.frobenius()));
  }
}

TEST_CASE("svt minimizes the shrinkage objective locally", "[qsvd]") {
  // x = svt(q, xi) minimizes xi*||x||_* + 0.5*||x - q||_F^2; random
  // perturbations at several radii must never beat it.
  auto g = testsup::rng(151);
  const auto objective = [](const QuaternionMatrix& x, const QuaternionMatrix& q, double xi) {
    const double d = testsup::qm_distance(x, q);
    return xi * qtc::nuclear_norm(x) + 0.5 * d * d;
  };
  for (int trial = 0; trial < 5; ++trial) {
    const QuaternionMatrix q = testsup::random_qmatrix(g, 5, 4);
    for (const double xi : {0.2, 1.0}) {
      const QuaternionMatrix x = qtc::svt(q, xi);
      const double base = objective(x, q, xi);
      for (int p = 0; p < 40; ++p) {
        QuaternionMatrix delta = testsup::random_qmatrix(g, 5, 4);
        delta *= (0.02 * q.frobenius() / delta.frobenius());
        CHECK(objective(x + delta, q, xi) >= base);
      }
    }
  }
}

TEST_CASE("nuclear norm never grows under svt", "[qsvd]") {
  auto g = testsup::rng(157);
  const QuaternionMatrix q = testsup::random_qmatrix(g, 6, 6);
  const double before = qtc::nuclear_norm(q);
  for (const double xi : {0.1, 0.5, 2.0}) CHECK(qtc::nuclear_norm(qtc::svt(q, xi)) <= before + 1e-12);
}

TEST_CASE("spectrum csv export", "[qsvd]") {
  Eigen::VectorXd s(3);
  s << 3.5, 1.25, 0.0;
  std::ostringstream os;
  qtc::write_spectrum_csv(os, s);
  CHECK(os.str() == "3.5\n1.25\n0\n");
}

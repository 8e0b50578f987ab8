#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "qtc/quaternion.hpp"
#include "support/helpers.hpp"

using qtc::Quaternion;

namespace {
double dist(Quaternion a, Quaternion b) { return qtc::modulus(a - b); }
}  // namespace

TEST_CASE("quaternion addition and subtraction are componentwise", "[quaternion]") {
  const Quaternion a{1.0, 2.0, 3.0, 4.0};
  const Quaternion b{-0.5, 0.25, 1.0, -2.0};
  const Quaternion s = a + b;
  CHECK(s.w == 0.5);
  CHECK(s.x == 2.25);
  CHECK(s.y == 4.0);
  CHECK(s.z == 2.0);
  const Quaternion d = s - b;
  CHECK(d == a);
}

TEST_CASE("hamilton product unit table", "[quaternion]") {
  const Quaternion one{1, 0, 0, 0};
  const Quaternion i{0, 1, 0, 0};
  const Quaternion j{0, 0, 1, 0};
  const Quaternion k{0, 0, 0, 1};

  CHECK(i * j == k);
  CHECK(j * i == -k);
  CHECK(j * k == i);
  CHECK(k * j == -i);
  CHECK(k * i == j);
  CHECK(i * k == -j);
  CHECK(i * i == -one);
  CHECK(j * j == -one);
  CHECK(k * k == -one);
  CHECK(i * j * k == -one);
  CHECK(one * k == k);
  CHECK(k * one == k);
}

TEST_CASE("hamilton product worked example", "[quaternion]") {
  // (1 + i)(1 + j) = 1 + j + i + ij = 1 + i + j + k, expanded by hand.
  const Quaternion p{1, 1, 0, 0};
  const Quaternion q{1, 0, 1, 0};
  const Quaternion expect{1, 1, 1, 1};
  CHECK(p * q == expect);
  // The reversed order flips the sign of the k part: (1+j)(1+i) = 1+i+j-k.
  CHECK(q * p == Quaternion{1, 1, 1, -1});
}

TEST_CASE("conjugation negates the imaginary parts", "[quaternion]") {
  const Quaternion q{1, 2, 3, 4};
  CHECK(qtc::conj(q) == Quaternion{1, -2, -3, -4});
  CHECK(qtc::conj(qtc::conj(q)) == q);
}

TEST_CASE("conjugation reverses products", "[quaternion]") {
  auto g = testsup::rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const Quaternion p = testsup::random_quaternion(g);
    const Quaternion q = testsup::random_quaternion(g);
    CHECK(dist(qtc::conj(p * q), qtc::conj(q) * qtc::conj(p)) < 1e-12);
  }
}

TEST_CASE("modulus matches the 4-vector euclidean norm", "[quaternion]") {
  CHECK(qtc::modulus(Quaternion{1, 1, 1, 1}) == 2.0);
  CHECK(qtc::modulus(Quaternion{}) == 0.0);
  CHECK(qtc::modulus(Quaternion{0, -3, 0, 4}) == 5.0);
  CHECK(qtc::modulus_sq(Quaternion{1, 2, 3, 4}) == 30.0);
}

TEST_CASE("modulus is multiplicative", "[quaternion]") {
  auto g = testsup::rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Quaternion p = testsup::random_quaternion(g, -2.0, 2.0);
    const Quaternion q = testsup::random_quaternion(g, -2.0, 2.0);
    const double lhs = qtc::modulus(p * q);
    const double rhs = qtc::modulus(p) * qtc::modulus(q);
    CHECK(lhs == Catch::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("q times conj(q) is the squared modulus", "[quaternion]") {
  auto g = testsup::rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Quaternion q = testsup::random_quaternion(g, -3.0, 3.0);
    const Quaternion prod = q * qtc::conj(q);
    CHECK(std::abs(prod.w - qtc::modulus_sq(q)) < 1e-12);
    CHECK(std::abs(prod.x) < 1e-12);
    CHECK(std::abs(prod.y) < 1e-12);
    CHECK(std::abs(prod.z) < 1e-12);
  }
}

TEST_CASE("cayley-dickson split and rebuild", "[quaternion]") {
  const qtc::CdForm cd = qtc::cd_decompose(Quaternion{1, 2, 3, 4});
  CHECK(cd.z1 == std::complex<double>(1.0, 2.0));
  CHECK(cd.z2 == std::complex<double>(3.0, 4.0));
  CHECK(qtc::cd_compose(cd) == Quaternion{1, 2, 3, 4});

  auto g = testsup::rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Quaternion q = testsup::random_quaternion(g, -5.0, 5.0);
    CHECK(qtc::cd_compose(qtc::cd_decompose(q)) == q);  // exact round trip
  }
}

TEST_CASE("product is associative and distributive", "[quaternion]") {
  auto g = testsup::rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const Quaternion a = testsup::random_quaternion(g);
    const Quaternion b = testsup::random_quaternion(g);
    const Quaternion c = testsup::random_quaternion(g);
    CHECK(dist((a * b) * c, a * (b * c)) < 1e-12);
    CHECK(dist(a * (b + c), a * b + a * c) < 1e-12);
    CHECK(dist((a + b) * c, a * c + b * c) < 1e-12);
  }
}

TEST_CASE("scalar scaling and negation", "[quaternion]") {
  const Quaternion q{1, -2, 3, -4};
  CHECK(2.0 * q == Quaternion{2, -4, 6, -8});
  CHECK(q * 0.5 == Quaternion{0.5, -1, 1.5, -2});
  CHECK(-q == Quaternion{-1, 2, -3, 4});
}

TEST_CASE("purity predicate looks only at the real part", "[quaternion]") {
  CHECK(qtc::is_pure(Quaternion{0, 1, 2, 3}));
  CHECK_FALSE(qtc::is_pure(Quaternion{1e-30, 1, 2, 3}));
  CHECK(qtc::is_pure(Quaternion{}));
}

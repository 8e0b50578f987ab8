#pragma once

#include <array>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "qtc/quaternion.hpp"

namespace qtc {

// Dense quaternion matrix stored as four real component planes of equal
// shape: component(0) holds the real parts, components 1..3 the i/j/k parts.
// Keeping the planes separate lets elementwise work run as plain Eigen array
// arithmetic and makes the complex-adjoint embedding a pair of block copies.
class QuaternionMatrix {
 public:
  QuaternionMatrix() = default;

  QuaternionMatrix(Eigen::Index rows, Eigen::Index cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("quaternion matrix dimensions must be positive");
    for (auto& c : c_) c = Eigen::MatrixXd::Zero(rows, cols);
  }

  QuaternionMatrix(Eigen::MatrixXd w, Eigen::MatrixXd x, Eigen::MatrixXd y, Eigen::MatrixXd z)
      : c_{std::move(w), std::move(x), std::move(y), std::move(z)} {
    if (c_[0].rows() < 1 || c_[0].cols() < 1)
      throw std::invalid_argument("quaternion matrix dimensions must be positive");
    for (int l = 1; l < 4; ++l)
      if (c_[l].rows() != c_[0].rows() || c_[l].cols() != c_[0].cols())
        throw std::invalid_argument("quaternion matrix component planes must share one shape");
  }

  static QuaternionMatrix zero(Eigen::Index rows, Eigen::Index cols) { return QuaternionMatrix(rows, cols); }

  static QuaternionMatrix identity(Eigen::Index n) {
    QuaternionMatrix m(n, n);
    m.c_[0] = Eigen::MatrixXd::Identity(n, n);
    return m;
  }

  Eigen::Index rows() const { return c_[0].rows(); }
  Eigen::Index cols() const { return c_[0].cols(); }

  Eigen::MatrixXd& component(int l) { return c_.at(static_cast<std::size_t>(l)); }
  const Eigen::MatrixXd& component(int l) const { return c_.at(static_cast<std::size_t>(l)); }

  Quaternion operator()(Eigen::Index i, Eigen::Index j) const {
    return {c_[0](i, j), c_[1](i, j), c_[2](i, j), c_[3](i, j)};
  }

  void set(Eigen::Index i, Eigen::Index j, Quaternion q) {
    c_[0](i, j) = q.w;
    c_[1](i, j) = q.x;
    c_[2](i, j) = q.y;
    c_[3](i, j) = q.z;
  }

  bool is_pure() const { return (c_[0].array() == 0.0).all(); }

  // Conjugate transpose: transpose the planes and negate the imaginary ones.
  QuaternionMatrix adjoint() const {
    QuaternionMatrix out;
    out.c_[0] = c_[0].transpose();
    for (int l = 1; l < 4; ++l) out.c_[l] = -c_[l].transpose();
    return out;
  }

  double frobenius() const {
    double acc = 0.0;
    for (const auto& c : c_) acc += c.squaredNorm();
    return std::sqrt(acc);
  }

  QuaternionMatrix& operator+=(const QuaternionMatrix& o) {
    check_same_shape(o);
    for (int l = 0; l < 4; ++l) c_[l] += o.c_[l];
    return *this;
  }

  QuaternionMatrix& operator-=(const QuaternionMatrix& o) {
    check_same_shape(o);
    for (int l = 0; l < 4; ++l) c_[l] -= o.c_[l];
    return *this;
  }

  QuaternionMatrix& operator*=(double s) {
    for (auto& c : c_) c *= s;
    return *this;
  }

 private:
  void check_same_shape(const QuaternionMatrix& o) const {
    if (o.rows() != rows() || o.cols() != cols())
      throw std::invalid_argument("quaternion matrix shapes do not match");
  }

  std::array<Eigen::MatrixXd, 4> c_;
};

inline QuaternionMatrix operator+(QuaternionMatrix a, const QuaternionMatrix& b) { return a += b; }
inline QuaternionMatrix operator-(QuaternionMatrix a, const QuaternionMatrix& b) { return a -= b; }
inline QuaternionMatrix operator*(double s, QuaternionMatrix m) { return m *= s; }
inline QuaternionMatrix operator*(QuaternionMatrix m, double s) { return m *= s; }

// Matrix product with entrywise Hamilton multiplication. Used by tests and
// small reconstructions; the solver's heavy products run in the complex
// embedding instead.
inline QuaternionMatrix operator*(const QuaternionMatrix& a, const QuaternionMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("quaternion matrix product shapes do not match");
  QuaternionMatrix out(a.rows(), b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      Quaternion acc{};
      for (Eigen::Index k = 0; k < a.cols(); ++k) acc = acc + a(i, k) * b(k, j);
      out.set(i, j, acc);
    }
  return out;
}

// Real inner product Re tr(A^H B). Expanding the trace shows it reduces to
// the sum of the four component-plane inner products.
inline double inner(const QuaternionMatrix& a, const QuaternionMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("quaternion matrix shapes do not match");
  double acc = 0.0;
  for (int l = 0; l < 4; ++l) acc += a.component(l).cwiseProduct(b.component(l)).sum();
  return acc;
}

// Complex adjoint embedding: with Q = Q0 + Q1 i + Q2 j + Q3 k written via the
// Cayley-Dickson pair Z1 = Q0 + Q1 i, Z2 = Q2 + Q3 i, the image is
//
//   f(Q) = [  Z1           Z2  ]
//          [ -conj(Z2) conj(Z1)]  in C^{2N1 x 2N2}.
//
// f preserves products and sums, and doubles squared Frobenius norms.
inline Eigen::MatrixXcd complex_adjoint(const QuaternionMatrix& q) {
  const Eigen::Index m = q.rows(), n = q.cols();
  Eigen::MatrixXcd f(2 * m, 2 * n);
  const std::complex<double> im(0.0, 1.0);
  f.topLeftCorner(m, n) = q.component(0) + im * q.component(1);
  f.topRightCorner(m, n) = q.component(2) + im * q.component(3);
  f.bottomLeftCorner(m, n) = -f.topRightCorner(m, n).conjugate();
  f.bottomRightCorner(m, n) = f.topLeftCorner(m, n).conjugate();
  return f;
}

// Inverse of complex_adjoint, reading the two top blocks. The caller is
// responsible for passing a matrix that actually has the paired structure;
// the bottom half is ignored.
inline QuaternionMatrix from_complex_adjoint(const Eigen::MatrixXcd& f) {
  if (f.rows() < 2 || f.cols() < 2 || f.rows() % 2 != 0 || f.cols() % 2 != 0)
    throw std::invalid_argument("complex adjoint matrices have even dimensions");
  const Eigen::Index m = f.rows() / 2, n = f.cols() / 2;
  return QuaternionMatrix(f.topLeftCorner(m, n).real(), f.topLeftCorner(m, n).imag(),
                          f.topRightCorner(m, n).real(), f.topRightCorner(m, n).imag());
}

}  // namespace qtc

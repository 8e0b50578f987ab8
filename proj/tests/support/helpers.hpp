#pragma once

// Shared fixtures for the test suites: deterministic random generators and a
// few hand-rolled reference computations that deliberately avoid the library
// code paths they are used to check.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qtc/quaternion.hpp"
#include "qtc/quaternion_matrix.hpp"
#include "qtc/quaternion_tensor.hpp"

namespace testsup {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  const double u = static_cast<double>(g() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

inline qtc::Quaternion random_quaternion(std::mt19937_64& g, double lo = -1.0, double hi = 1.0) {
  const double w = uniform(g, lo, hi);
  const double x = uniform(g, lo, hi);
  const double y = uniform(g, lo, hi);
  const double z = uniform(g, lo, hi);
  return qtc::Quaternion{w, x, y, z};
}

inline qtc::QuaternionMatrix random_qmatrix(std::mt19937_64& g, Eigen::Index rows, Eigen::Index cols) {
  qtc::QuaternionMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m.set(i, j, random_quaternion(g));
  return m;
}

inline qtc::QuaternionMatrix random_pure_qmatrix(std::mt19937_64& g, Eigen::Index rows, Eigen::Index cols) {
  qtc::QuaternionMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      qtc::Quaternion q = random_quaternion(g);
      q.w = 0.0;
      m.set(i, j, q);
    }
  return m;
}

inline qtc::QuaternionTensor random_qtensor(std::mt19937_64& g, std::vector<Eigen::Index> shape) {
  qtc::QuaternionTensor t(std::move(shape));
  for (int l = 0; l < 4; ++l)
    for (Eigen::Index e = 0; e < t.numel(); ++e) t.component(l)[e] = uniform(g, -1.0, 1.0);
  return t;
}

// Reference Frobenius distance ||a - b||_F computed entrywise.
inline double qm_distance(const qtc::QuaternionMatrix& a, const qtc::QuaternionMatrix& b) {
  double acc = 0.0;
  for (int l = 0; l < 4; ++l) acc += (a.component(l) - b.component(l)).squaredNorm();
  return std::sqrt(acc);
}

inline bool qm_bit_equal(const qtc::QuaternionMatrix& a, const qtc::QuaternionMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int l = 0; l < 4; ++l)
    if (!a.component(l).binaryExpr(b.component(l), [](double x, double y) { return x == y ? 1.0 : 0.0; })
             .all())
      return false;
  return true;
}

inline bool qt_bit_equal(const qtc::QuaternionTensor& a, const qtc::QuaternionTensor& b) {
  if (a.shape() != b.shape()) return false;
  for (int l = 0; l < 4; ++l)
    if (!(a.component(l) == b.component(l)).all()) return false;
  return true;
}

}  // namespace testsup

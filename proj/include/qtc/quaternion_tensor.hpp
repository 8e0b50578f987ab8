#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qtc/detail/binary_io.hpp"
#include "qtc/errors.hpp"
#include "qtc/qsvd.hpp"
#include "qtc/quaternion_matrix.hpp"

namespace qtc {

// Order-N quaternion tensor (2 <= N <= 8) as four flat real buffers in
// first-index-fastest order: flat(n_0, ..., n_{N-1}) = sum_k n_k * s_k with
// stride s_k = prod_{m<k} dim(m). For order 2 this coincides with the
// column-major matrix layout, so matrix views are plain reshapes.
class QuaternionTensor {
 public:
  static constexpr int kMaxOrder = 8;

  QuaternionTensor() = default;

  explicit QuaternionTensor(std::vector<Eigen::Index> shape) : shape_(std::move(shape)) {
    if (shape_.size() < 2 || shape_.size() > kMaxOrder)
      throw std::invalid_argument("tensor order must be between 2 and 8");
    Eigen::Index n = 1;
    for (const Eigen::Index d : shape_) {
      if (d < 1) throw std::invalid_argument("tensor dimensions must be positive");
      if (n > (Eigen::Index{1} << 40) / d) throw std::invalid_argument("tensor is too large");
      n *= d;
    }
    for (auto& c : c_) c = Eigen::ArrayXd::Zero(n);
  }

  int order() const { return static_cast<int>(shape_.size()); }
  const std::vector<Eigen::Index>& shape() const { return shape_; }
  Eigen::Index dim(int k) const { return shape_.at(static_cast<std::size_t>(k)); }
  Eigen::Index numel() const { return c_[0].size(); }

  Eigen::ArrayXd& component(int l) { return c_.at(static_cast<std::size_t>(l)); }
  const Eigen::ArrayXd& component(int l) const { return c_.at(static_cast<std::size_t>(l)); }

  Eigen::Index flat_index(std::span<const Eigen::Index> idx) const {
    if (static_cast<int>(idx.size()) != order()) throw std::invalid_argument("index order mismatch");
    Eigen::Index flat = 0, stride = 1;
    for (int k = 0; k < order(); ++k) {
      if (idx[k] < 0 || idx[k] >= shape_[k]) throw std::invalid_argument("tensor index out of range");
      flat += idx[k] * stride;
      stride *= shape_[k];
    }
    return flat;
  }

  Quaternion at(std::span<const Eigen::Index> idx) const {
    const Eigen::Index e = flat_index(idx);
    return {c_[0][e], c_[1][e], c_[2][e], c_[3][e]};
  }

  void set(std::span<const Eigen::Index> idx, Quaternion q) {
    const Eigen::Index e = flat_index(idx);
    c_[0][e] = q.w;
    c_[1][e] = q.x;
    c_[2][e] = q.y;
    c_[3][e] = q.z;
  }

  bool is_pure() const { return (c_[0] == 0.0).all(); }

  double frobenius() const {
    double acc = 0.0;
    for (const auto& c : c_) acc += c.matrix().squaredNorm();
    return std::sqrt(acc);
  }

  QuaternionTensor& operator+=(const QuaternionTensor& o) {
    check_same_shape(o);
    for (int l = 0; l < 4; ++l) c_[l] += o.c_[l];
    return *this;
  }

  QuaternionTensor& operator-=(const QuaternionTensor& o) {
    check_same_shape(o);
    for (int l = 0; l < 4; ++l) c_[l] -= o.c_[l];
    return *this;
  }

  QuaternionTensor& operator*=(double s) {
    for (auto& c : c_) c *= s;
    return *this;
  }

  static QuaternionTensor from_matrix(const QuaternionMatrix& m) {
    QuaternionTensor t({m.rows(), m.cols()});
    for (int l = 0; l < 4; ++l)
      t.c_[l] = Eigen::Map<const Eigen::ArrayXd>(m.component(l).data(), m.component(l).size());
    return t;
  }

  QuaternionMatrix to_matrix() const {
    if (order() != 2) throw std::invalid_argument("only order-2 tensors convert to matrices");
    QuaternionMatrix m(shape_[0], shape_[1]);
    for (int l = 0; l < 4; ++l)
      Eigen::Map<Eigen::ArrayXd>(m.component(l).data(), numel()) = c_[l];
    return m;
  }

 private:
  void check_same_shape(const QuaternionTensor& o) const {
    if (o.shape_ != shape_) throw std::invalid_argument("tensor shapes do not match");
  }

  std::vector<Eigen::Index> shape_;
  std::array<Eigen::ArrayXd, 4> c_;
};

inline QuaternionTensor operator+(QuaternionTensor a, const QuaternionTensor& b) { return a += b; }
inline QuaternionTensor operator-(QuaternionTensor a, const QuaternionTensor& b) { return a -= b; }
inline QuaternionTensor operator*(double s, QuaternionTensor t) { return t *= s; }
inline QuaternionTensor operator*(QuaternionTensor t, double s) { return t *= s; }

namespace detail {

inline std::vector<Eigen::Index> strides_of(const std::vector<Eigen::Index>& shape) {
  std::vector<Eigen::Index> s(shape.size());
  Eigen::Index acc = 1;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    s[k] = acc;
    acc *= shape[k];
  }
  return s;
}

// Walks the columns of the mode-k unfolding: invokes fn(column, base flat
// offset) for each column, sweeping the remaining modes with the lowest mode
// fastest. That ordering makes column j correspond to the multi-index with
// j = sum_{m != k} n_m * prod_{m' < m, m' != k} dim(m').
template <typename Fn>
void for_each_unfold_column(const std::vector<Eigen::Index>& shape, int mode, Fn&& fn) {
  const std::vector<Eigen::Index> strides = strides_of(shape);
  const int n = static_cast<int>(shape.size());
  Eigen::Index cols = 1;
  for (int m = 0; m < n; ++m)
    if (m != mode) cols *= shape[m];
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n), 0);
  Eigen::Index base = 0;
  for (Eigen::Index j = 0; j < cols; ++j) {
    fn(j, base);
    for (int m = 0; m < n; ++m) {
      if (m == mode) continue;
      base += strides[m];
      if (++idx[m] < shape[m]) break;
      base -= strides[m] * shape[m];
      idx[m] = 0;
    }
  }
}

}  // namespace detail

// Mode-k unfolding (k is a 0-based mode index): rows sweep mode k, columns
// sweep the other modes lowest-first.
inline QuaternionMatrix unfold(const QuaternionTensor& t, int mode) {
  if (mode < 0 || mode >= t.order()) throw std::invalid_argument("unfold mode out of range");
  const Eigen::Index rows = t.dim(mode);
  const Eigen::Index cols = t.numel() / rows;
  const Eigen::Index step = detail::strides_of(t.shape())[static_cast<std::size_t>(mode)];
  QuaternionMatrix out(rows, cols);
  detail::for_each_unfold_column(t.shape(), mode, [&](Eigen::Index j, Eigen::Index base) {
    for (int l = 0; l < 4; ++l)
      out.component(l).col(j) = Eigen::Map<const Eigen::VectorXd, 0, Eigen::InnerStride<>>(
          t.component(l).data() + base, rows, Eigen::InnerStride<>(step));
  });
  return out;
}

// Inverse of unfold for the given mode and full tensor shape.
inline QuaternionTensor fold(const QuaternionMatrix& m, int mode, const std::vector<Eigen::Index>& shape) {
  if (shape.size() < 2 || shape.size() > QuaternionTensor::kMaxOrder)
    throw std::invalid_argument("tensor order must be between 2 and 8");
  if (mode < 0 || mode >= static_cast<int>(shape.size()))
    throw std::invalid_argument("fold mode out of range");
  QuaternionTensor t(shape);
  if (m.rows() != shape[static_cast<std::size_t>(mode)] || m.cols() != t.numel() / m.rows())
    throw std::invalid_argument("matrix shape does not match the fold target");
  const Eigen::Index rows = m.rows();
  const Eigen::Index step = detail::strides_of(shape)[static_cast<std::size_t>(mode)];
  detail::for_each_unfold_column(shape, mode, [&](Eigen::Index j, Eigen::Index base) {
    for (int l = 0; l < 4; ++l)
      Eigen::Map<Eigen::VectorXd, 0, Eigen::InnerStride<>>(t.component(l).data() + base, rows,
                                                           Eigen::InnerStride<>(step)) =
          m.component(l).col(j);
  });
  return t;
}

// Per-mode ranks of the unfoldings. Pass kAutoRankTol for the default
// spectrum-scaled tolerance.
inline std::vector<Eigen::Index> tucker_rank(const QuaternionTensor& t, double tol = kAutoRankTol) {
  std::vector<Eigen::Index> ranks(static_cast<std::size_t>(t.order()));
  for (int mode = 0; mode < t.order(); ++mode) {
    const QuaternionMatrix m = unfold(t, mode);
    const Eigen::VectorXd s = qsvd_values(m);
    const double teff = tol < 0.0 ? auto_rank_tolerance(s[0], m.rows(), m.cols()) : tol;
    ranks[static_cast<std::size_t>(mode)] = (s.array() > teff).count();
  }
  return ranks;
}

// ---- qt1 container --------------------------------------------------------
// Magic "QTEN1", order as u8, dims as little-endian u64, then the four
// component buffers as little-endian f64 in flat order.

inline void save_qt1(std::ostream& os, const QuaternionTensor& t) {
  os.write("QTEN1", 5);
  detail::write_u8(os, static_cast<std::uint8_t>(t.order()));
  for (const Eigen::Index d : t.shape()) detail::write_u64(os, static_cast<std::uint64_t>(d));
  for (int l = 0; l < 4; ++l) {
    const Eigen::ArrayXd& c = t.component(l);
    if constexpr (std::endian::native == std::endian::little) {
      detail::write_bytes(os, c.data(), static_cast<std::size_t>(c.size()) * 8);
    } else {
      for (Eigen::Index e = 0; e < c.size(); ++e) detail::write_f64(os, c[e]);
    }
  }
  if (!os) throw io_error("failed to write qt1 stream");
}

inline QuaternionTensor load_qt1(std::istream& is) {
  detail::expect_magic(is, "QTEN1", "qt1");
  const int order = detail::read_u8(is, "qt1 order");
  if (order < 2 || order > QuaternionTensor::kMaxOrder)
    throw io_error("qt1 order must be between 2 and 8");
  std::vector<Eigen::Index> shape(static_cast<std::size_t>(order));
  for (auto& d : shape) {
    const std::uint64_t v = detail::read_u64(is, "qt1 dimension");
    if (v < 1 || v > (std::uint64_t{1} << 40)) throw io_error("qt1 dimension out of range");
    d = static_cast<Eigen::Index>(v);
  }
  QuaternionTensor t(shape);
  for (int l = 0; l < 4; ++l) {
    Eigen::ArrayXd& c = t.component(l);
    if constexpr (std::endian::native == std::endian::little) {
      detail::read_bytes(is, c.data(), static_cast<std::size_t>(c.size()) * 8, "qt1 payload");
    } else {
      for (Eigen::Index e = 0; e < c.size(); ++e) c[e] = detail::read_f64(is, "qt1 payload");
    }
  }
  return t;
}

inline void save_qt1(const std::string& path, const QuaternionTensor& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open for writing: " + path);
  save_qt1(os, t);
  os.flush();
  if (!os) throw io_error("failed to write " + path);
}

inline QuaternionTensor load_qt1(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open: " + path);
  return load_qt1(is);
}

}  // namespace qtc

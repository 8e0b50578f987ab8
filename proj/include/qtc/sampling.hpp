#pragma once

// Observation masks for completion problems: which entries of a tensor are
// known.  Masks are stored densely (one byte per entry, flat layout identical
// to QuaternionTensor) and serialized bit-packed.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtc/detail/binary_io.hpp"
#include "qtc/detail/rng.hpp"
#include "qtc/errors.hpp"
#include "qtc/quaternion_matrix.hpp"
#include "qtc/quaternion_tensor.hpp"

namespace qtc {

class SamplingMask {
 public:
  explicit SamplingMask(std::vector<Eigen::Index> shape) : shape_(std::move(shape)) {
    if (shape_.size() < 2 || shape_.size() > QuaternionTensor::kMaxOrder)
      throw std::invalid_argument("mask order must be between 2 and 8");
    Eigen::Index n = 1;
    for (const Eigen::Index d : shape_) {
      if (d <= 0) throw std::invalid_argument("mask dimensions must be positive");
      n *= d;
    }
    flags_.assign(static_cast<std::size_t>(n), 0);
  }

  static SamplingMask full(std::vector<Eigen::Index> shape) {
    SamplingMask m(std::move(shape));
    std::fill(m.flags_.begin(), m.flags_.end(), std::uint8_t{1});
    m.count_ = m.numel();
    return m;
  }

  const std::vector<Eigen::Index>& shape() const { return shape_; }
  int order() const { return static_cast<int>(shape_.size()); }
  Eigen::Index numel() const { return static_cast<Eigen::Index>(flags_.size()); }
  Eigen::Index count() const { return count_; }
  double sr() const { return static_cast<double>(count_) / static_cast<double>(numel()); }
  const std::vector<std::uint8_t>& flags() const { return flags_; }

  bool observed(Eigen::Index flat) const { return flags_[static_cast<std::size_t>(flat)] != 0; }

  void set_observed(Eigen::Index flat, bool value) {
    std::uint8_t& cell = flags_[static_cast<std::size_t>(flat)];
    count_ += static_cast<Eigen::Index>(value) - static_cast<Eigen::Index>(cell);
    cell = value ? 1 : 0;
  }

 private:
  std::vector<Eigen::Index> shape_;
  std::vector<std::uint8_t> flags_;
  Eigen::Index count_ = 0;
};

// Draws exactly round(sr * numel) distinct entries uniformly at random.  The
// selection is a partial Fisher-Yates shuffle on our own bounded-draw helper,
// so a given (shape, sr, seed) triple yields the same mask on every platform.
inline SamplingMask generate_mask(std::vector<Eigen::Index> shape, double sr, std::uint64_t seed) {
  if (!(sr > 0.0) || !(sr <= 1.0)) throw std::invalid_argument("sampling rate must lie in (0, 1]");
  SamplingMask mask(std::move(shape));
  const Eigen::Index n = mask.numel();
  const Eigen::Index m = static_cast<Eigen::Index>(std::llround(sr * static_cast<double>(n)));

  std::vector<Eigen::Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Eigen::Index{0});
  std::mt19937_64 gen(seed);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j =
        i + static_cast<Eigen::Index>(detail::bounded_uint(gen, static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    mask.set_observed(pool[static_cast<std::size_t>(i)], true);
  }
  return mask;
}

inline QuaternionTensor apply_mask(const QuaternionTensor& t, const SamplingMask& mask) {
  if (mask.shape() != t.shape()) throw std::invalid_argument("mask shape does not match tensor shape");
  QuaternionTensor out = t;
  for (int l = 0; l < 4; ++l) {
    Eigen::ArrayXd& plane = out.component(l);
    for (Eigen::Index e = 0; e < t.numel(); ++e)
      if (!mask.observed(e)) plane[e] = 0.0;
  }
  return out;
}

// Matrix overload: the mask shape must be {rows, cols}; flat order is
// column-major, matching the order-2 tensor layout.
inline QuaternionMatrix apply_mask(const QuaternionMatrix& m, const SamplingMask& mask) {
  if (mask.order() != 2 || mask.shape()[0] != m.rows() || mask.shape()[1] != m.cols())
    throw std::invalid_argument("mask shape does not match matrix shape");
  return qtc::apply_mask(QuaternionTensor::from_matrix(m), mask).to_matrix();
}

// --- mask file format -------------------------------------------------------
//
//   magic   "QMSK1"
//   u8      order
//   u64     dims[order]          little endian
//   bytes   ceil(numel / 8)      bitmap, flat order, LSB first within a byte
//
// Padding bits beyond numel in the final byte must be zero.

inline void save_qmsk(std::ostream& os, const SamplingMask& mask) {
  detail::write_bytes(os, "QMSK1", 5);
  detail::write_u8(os, static_cast<std::uint8_t>(mask.order()));
  for (const Eigen::Index d : mask.shape()) detail::write_u64(os, static_cast<std::uint64_t>(d));
  const Eigen::Index n = mask.numel();
  std::vector<std::uint8_t> packed(static_cast<std::size_t>((n + 7) / 8), 0);
  for (Eigen::Index e = 0; e < n; ++e)
    if (mask.observed(e)) packed[static_cast<std::size_t>(e / 8)] |= static_cast<std::uint8_t>(1u << (e % 8));
  os.write(reinterpret_cast<const char*>(packed.data()), static_cast<std::streamsize>(packed.size()));
  if (!os) throw io_error("failed writing mask bitmap");
}

inline SamplingMask load_qmsk(std::istream& is) {
  detail::expect_magic(is, "QMSK1", "mask header");
  const int order = detail::read_u8(is, "mask order");
  if (order < 2 || order > static_cast<int>(QuaternionTensor::kMaxOrder))
    throw io_error("mask order out of range");
  std::vector<Eigen::Index> shape(static_cast<std::size_t>(order));
  for (auto& d : shape) {
    d = static_cast<Eigen::Index>(detail::read_u64(is, "mask dimensions"));
    if (d <= 0) throw io_error("mask dimension must be positive");
  }
  SamplingMask mask(shape);
  const Eigen::Index n = mask.numel();
  std::vector<std::uint8_t> packed(static_cast<std::size_t>((n + 7) / 8));
  detail::read_bytes(is, packed.data(), packed.size(), "mask bitmap");
  for (Eigen::Index e = 0; e < n; ++e)
    if (packed[static_cast<std::size_t>(e / 8)] & (1u << (e % 8))) mask.set_observed(e, true);
  // Bits past the last cell carry no data; anything set there means the file
  // was not produced by this writer.
  for (Eigen::Index b = n; b < static_cast<Eigen::Index>(packed.size()) * 8; ++b)
    if (packed[static_cast<std::size_t>(b / 8)] & (1u << (b % 8)))
      throw io_error("mask bitmap has nonzero padding bits");
  return mask;
}

inline void save_qmsk(const std::string& path, const SamplingMask& mask) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open for writing: " + path);
  save_qmsk(os, mask);
}

inline SamplingMask load_qmsk(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open for reading: " + path);
  return load_qmsk(is);
}

}  // namespace qtc

#pragma once

// Quality indexes for recovered images and videos: peak signal-to-noise
// ratio, the structural similarity index, and its mean over video frames.

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qtc/media.hpp"

namespace qtc {

struct MetricConfig {
  double peakval = 255.0;  // nominal pixel range, e.g. 255 for 8-bit media
  int ssim_window = 11;    // side of the Gaussian window, odd
  double ssim_sigma = 1.5;

  double c1() const { return (0.01 * peakval) * (0.01 * peakval); }
  double c2() const { return (0.03 * peakval) * (0.03 * peakval); }

  void validate() const {
    if (!(peakval > 0.0)) throw std::invalid_argument("peakval must be positive");
    if (ssim_window < 3 || ssim_window % 2 == 0)
      throw std::invalid_argument("ssim window must be an odd integer of at least 3");
    if (!(ssim_sigma > 0.0)) throw std::invalid_argument("ssim sigma must be positive");
  }
};

namespace detail {

// Reflects an out-of-range index back into [0, n) without repeating the edge
// sample (-1 maps to 1, n maps to n-2).
inline Eigen::Index mirror_index(Eigen::Index i, Eigen::Index n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return i;
}

inline Eigen::VectorXd gaussian_taps(int window, double sigma) {
  Eigen::VectorXd taps(window);
  const double center = (window - 1) / 2.0;
  for (int i = 0; i < window; ++i) {
    const double d = i - center;
    taps[i] = std::exp(-d * d / (2.0 * sigma * sigma));
  }
  return taps / taps.sum();
}

// Separable Gaussian smoothing with mirrored borders.
inline Eigen::MatrixXd gaussian_blur(const Eigen::MatrixXd& m, const Eigen::VectorXd& taps) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  const Eigen::Index half = taps.size() / 2;
  Eigen::MatrixXd tmp(rows, cols), out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      double acc = 0.0;
      for (Eigen::Index t = 0; t < taps.size(); ++t)
        acc += taps[t] * m(mirror_index(i + t - half, rows), j);
      tmp(i, j) = acc;
    }
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      double acc = 0.0;
      for (Eigen::Index t = 0; t < taps.size(); ++t)
        acc += taps[t] * tmp(i, mirror_index(j + t - half, cols));
      out(i, j) = acc;
    }
  return out;
}

// Mean of the SSIM map of one channel pair.  Local means and (co)variances
// come from Gaussian-weighted moments over each pixel's neighborhood.
inline double ssim_plane(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                         const Eigen::VectorXd& taps, double c1, double c2) {
  const Eigen::ArrayXXd mx = gaussian_blur(x, taps).array();
  const Eigen::ArrayXXd my = gaussian_blur(y, taps).array();
  const Eigen::ArrayXXd sxx = gaussian_blur(x.cwiseProduct(x), taps).array() - mx * mx;
  const Eigen::ArrayXXd syy = gaussian_blur(y.cwiseProduct(y), taps).array() - my * my;
  const Eigen::ArrayXXd sxy = gaussian_blur(x.cwiseProduct(y), taps).array() - mx * my;
  const Eigen::ArrayXXd num = (2.0 * mx * my + c1) * (2.0 * sxy + c2);
  const Eigen::ArrayXXd den = (mx * mx + my * my + c1) * (sxx + syy + c2);
  return (num / den).mean();
}

inline void require_same_shape(const ColorImage& x, const ColorImage& t) {
  if (x.height() != t.height() || x.width() != t.width())
    throw std::invalid_argument("metric inputs must have identical shapes");
}

inline double squared_difference(const ColorImage& x, const ColorImage& t) {
  return (x.r - t.r).squaredNorm() + (x.g - t.g).squaredNorm() + (x.b - t.b).squaredNorm();
}

}  // namespace detail

// PSNR in decibels; the mean squared error runs over every real scalar (all
// three channels of every pixel).  Identical inputs give +infinity.
inline double psnr(const ColorImage& x, const ColorImage& t, const MetricConfig& cfg = {}) {
  cfg.validate();
  detail::require_same_shape(x, t);
  const double mse = detail::squared_difference(x, t) / (3.0 * x.height() * x.width());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(cfg.peakval * cfg.peakval / mse);
}

// Video PSNR pools the squared error over all frames before the log.
inline double psnr(const ColorVideo& x, const ColorVideo& t, const MetricConfig& cfg = {}) {
  cfg.validate();
  x.validate();
  t.validate();
  if (x.num_frames() != t.num_frames())
    throw std::invalid_argument("metric inputs must have identical frame counts");
  double sq = 0.0;
  for (std::size_t f = 0; f < x.frames.size(); ++f) {
    detail::require_same_shape(x.frames[f], t.frames[f]);
    sq += detail::squared_difference(x.frames[f], t.frames[f]);
  }
  const double mse = sq / (3.0 * x.height() * x.width() * x.num_frames());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(cfg.peakval * cfg.peakval / mse);
}

// Mean structural similarity: per-channel SSIM maps averaged over pixels,
// then over the three channels.
inline double ssim(const ColorImage& x, const ColorImage& t, const MetricConfig& cfg = {}) {
  cfg.validate();
  detail::require_same_shape(x, t);
  if (x.height() < cfg.ssim_window || x.width() < cfg.ssim_window)
    throw std::invalid_argument("image is smaller than the ssim window");
  const Eigen::VectorXd taps = detail::gaussian_taps(cfg.ssim_window, cfg.ssim_sigma);
  const double c1 = cfg.c1(), c2 = cfg.c2();
  return (detail::ssim_plane(x.r, t.r, taps, c1, c2) + detail::ssim_plane(x.g, t.g, taps, c1, c2) +
          detail::ssim_plane(x.b, t.b, taps, c1, c2)) /
         3.0;
}

// Average SSIM over video frames.
inline double assim(const ColorVideo& x, const ColorVideo& t, const MetricConfig& cfg = {}) {
  cfg.validate();
  x.validate();
  t.validate();
  if (x.num_frames() != t.num_frames())
    throw std::invalid_argument("metric inputs must have identical frame counts");
  double sum = 0.0;
  for (std::size_t f = 0; f < x.frames.size(); ++f) sum += ssim(x.frames[f], t.frames[f], cfg);
  return sum / static_cast<double>(x.num_frames());
}

}  // namespace qtc

#pragma once

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qtc/errors.hpp"
#include "qtc/quaternion_matrix.hpp"

// Quaternion singular value decomposition through the complex adjoint:
// the SVD of f(Q) carries every quaternion singular value twice, and the
// quaternion factors are recovered from one representative of each pair.

namespace qtc {

namespace detail {

// Singular values at or below kBreakdownRel * sigma_max are treated as
// numerically zero: their singular directions are not trustworthy, so the
// corresponding factor columns are completed by orthogonalization instead of
// by applying the matrix.
inline constexpr double kBreakdownRel = 1e-13;

// Residual norms for candidate classification in the pairing step. A
// candidate below kSpanned lies in the space built so far and is skipped for
// good; one above kAccept is safe to normalize and keep.
inline constexpr double kSpanned = 1e-3;
inline constexpr double kAccept = 0.3;

struct ComplexSvd {
  Eigen::MatrixXcd u;
  Eigen::MatrixXcd v;
  Eigen::VectorXd s;
};

inline ComplexSvd complex_svd(const Eigen::MatrixXcd& a, bool full) {
  const unsigned opts = full ? (Eigen::ComputeFullU | Eigen::ComputeFullV)
                             : (Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, opts);
  if (svd.info() != Eigen::Success) throw decomposition_error("complex SVD backend did not converge");
  return {svd.matrixU(), svd.matrixV(), svd.singularValues()};
}

inline Eigen::VectorXd complex_singular_values(const Eigen::MatrixXcd& a) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  if (svd.info() != Eigen::Success) throw decomposition_error("complex SVD backend did not converge");
  return svd.singularValues();
}

// Image of right-multiplication by j on a stacked complex vector:
// (a; b) -> (-conj(b); conj(a)). This map is antiunitary, squares to minus
// the identity, and commutes with every complex-adjoint matrix, so v and
// partner(v) always share a singular subspace and are mutually orthogonal.
inline Eigen::VectorXcd structure_partner(const Eigen::VectorXcd& v) {
  const Eigen::Index n = v.size() / 2;
  Eigen::VectorXcd out(v.size());
  out.head(n) = -v.tail(n).conjugate();
  out.tail(n) = v.head(n).conjugate();
  return out;
}

// Assembles orthonormal column pairs [v, partner(v)]. The backend's own
// column order inside a degenerate cluster is arbitrary and may split a
// structure pair across positions, so each new lead vector is re-derived:
// either supplied directly (left vectors coupled through the matrix) or
// taken from the first backend column with a usable residual after
// orthogonalization against everything accepted so far.
class PairBuilder {
 public:
  PairBuilder(Eigen::Index length, Eigen::Index pairs, const Eigen::MatrixXcd& candidates)
      : out_(length, 2 * pairs), cand_(candidates) {}

  // Accept an explicitly built lead vector; false when it collapses.
  bool push(Eigen::VectorXcd v) {
    if (orthogonalize(v) < kAccept) return false;
    v /= v.norm();
    place(std::move(v));
    return true;
  }

  void push_from_candidates() {
    double best_r = -1.0;
    Eigen::Index best = -1;
    for (Eigen::Index c = next_; c < cand_.cols(); ++c) {
      Eigen::VectorXcd v = cand_.col(c);
      const double r = orthogonalize(v);
      if (c == next_ && r < kSpanned) {
        ++next_;  // already inside the accepted span; never viable again
        continue;
      }
      if (r >= kAccept) {
        v /= v.norm();
        place(std::move(v));
        return;
      }
      if (r > best_r) {
        best_r = r;
        best = c;
      }
    }
    for (Eigen::Index c = 0; c < out_.rows(); ++c) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(out_.rows());
      v[c] = 1.0;
      const double r = orthogonalize(v);
      if (r >= kAccept) {
        v /= v.norm();
        place(std::move(v));
        return;
      }
      if (r > best_r) {
        best_r = r;
        best = cand_.cols() + c;
      }
    }
    if (best_r <= 0.0) throw decomposition_error("singular vector pairing found no independent direction");
    Eigen::VectorXcd v;
    if (best < cand_.cols()) {
      v = cand_.col(best);
    } else {
      v = Eigen::VectorXcd::Zero(out_.rows());
      v[best - cand_.cols()] = 1.0;
    }
    orthogonalize(v);
    v /= v.norm();
    place(std::move(v));
  }

  const Eigen::MatrixXcd& pairs() const { return out_; }

 private:
  // Two-pass modified Gram-Schmidt against the accepted columns; returns the
  // remaining norm.
  double orthogonalize(Eigen::VectorXcd& v) const {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index c = 0; c < 2 * filled_; ++c) v -= out_.col(c).dot(v) * out_.col(c);
    return v.norm();
  }

  void place(Eigen::VectorXcd v) {
    out_.col(2 * filled_ + 1) = structure_partner(v);
    out_.col(2 * filled_) = std::move(v);
    ++filled_;
  }

  Eigen::MatrixXcd out_;
  const Eigen::MatrixXcd& cand_;
  Eigen::Index next_ = 0;
  Eigen::Index filled_ = 0;
};

// Quaternion matrix whose complex adjoint has the given pair columns: lead
// column (a; b) maps to the quaternion column a - conj(b) * j read
// componentwise as (Re a, Im a, -Re b, Im b).
inline QuaternionMatrix quaternion_from_pairs(const Eigen::MatrixXcd& p) {
  const Eigen::Index m = p.rows() / 2, n = p.cols() / 2;
  QuaternionMatrix out(m, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto a = p.col(2 * k).head(m);
    const auto b = p.col(2 * k).tail(m);
    out.component(0).col(k) = a.real();
    out.component(1).col(k) = a.imag();
    out.component(2).col(k) = -b.real();
    out.component(3).col(k) = b.imag();
  }
  return out;
}

// Right-multiplies one factor column by a unit quaternion.
inline void rotate_column(QuaternionMatrix& m, Eigen::Index k, Quaternion rot) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) m.set(i, k, m(i, k) * rot);
}

// Unit quaternion that turns the column's largest-modulus entry into a
// nonnegative real number.
inline Quaternion canonical_rotation(const QuaternionMatrix& m, Eigen::Index k) {
  Eigen::Index pivot = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double mod = modulus_sq(m(i, k));
    if (mod > best) {
      best = mod;
      pivot = i;
    }
  }
  const Quaternion p = m(pivot, k);
  const double mod = modulus(p);
  if (mod == 0.0) return Quaternion{1, 0, 0, 0};
  return conj(p) * (1.0 / mod);
}

}  // namespace detail

// Factors of Q = U * diag(singular_values) * V^H with unitary quaternion U
// (N1 x N1) and V (N2 x N2) and a nonincreasing, nonnegative real spectrum
// of length min(N1, N2).
struct QsvdResult {
  QuaternionMatrix u;
  Eigen::VectorXd singular_values;
  QuaternionMatrix v;
  Eigen::Index rank_estimate = 0;
};

inline constexpr double kAutoRankTol = -1.0;

inline double auto_rank_tolerance(double sigma_max, Eigen::Index n1, Eigen::Index n2) {
  return 1e-10 * sigma_max * static_cast<double>(std::max(n1, n2));
}

// Quaternion singular values only (cheaper than the full factorization):
// one representative of each equal pair in the embedded spectrum.
inline Eigen::VectorXd qsvd_values(const QuaternionMatrix& q) {
  const Eigen::VectorXd s = detail::complex_singular_values(complex_adjoint(q));
  const Eigen::Index nq = std::min(q.rows(), q.cols());
  Eigen::VectorXd out(nq);
  for (Eigen::Index k = 0; k < nq; ++k) out[k] = s[2 * k];
  return out;
}

inline double nuclear_norm(const QuaternionMatrix& q) { return qsvd_values(q).sum(); }

// Full quaternion SVD. rank_estimate counts singular values strictly above
// rank_tol; pass kAutoRankTol (any negative value) for the default
// tolerance auto_rank_tolerance(sigma_max, N1, N2).
inline QsvdResult qsvd(const QuaternionMatrix& q, double rank_tol = kAutoRankTol) {
  const Eigen::Index n1 = q.rows(), n2 = q.cols();
  const Eigen::Index nq = std::min(n1, n2);
  const Eigen::MatrixXcd a = complex_adjoint(q);
  const detail::ComplexSvd svd = detail::complex_svd(a, /*full=*/true);

  Eigen::VectorXd sigma(nq);
  for (Eigen::Index k = 0; k < nq; ++k) sigma[k] = svd.s[2 * k];
  const double sigma_max = svd.s.size() > 0 ? svd.s[0] : 0.0;
  const double breakdown = sigma_max * detail::kBreakdownRel;

  // Right factor first: all N2 pairs drawn from the backend's right vectors.
  detail::PairBuilder vb(2 * n2, n2, svd.v);
  for (Eigen::Index k = 0; k < n2; ++k) vb.push_from_candidates();

  // Left factor: where the singular value is healthy the lead vector is
  // forced to u = A v / sigma so the two factors stay coupled; the rest of
  // the columns (null space, or values below breakdown) are completed from
  // the backend's left vectors.
  detail::PairBuilder ub(2 * n1, n1, svd.u);
  for (Eigen::Index k = 0; k < n1; ++k) {
    bool placed = false;
    if (k < nq && sigma[k] > breakdown) placed = ub.push(a * vb.pairs().col(2 * k) / sigma[k]);
    if (!placed) ub.push_from_candidates();
  }

  QsvdResult res;
  res.u = detail::quaternion_from_pairs(ub.pairs());
  res.v = detail::quaternion_from_pairs(vb.pairs());
  res.singular_values = std::move(sigma);

  // Deterministic column phases: rotate each coupled pair by the unit
  // quaternion fixed by the right factor's column, and the leftover columns
  // by their own. The product U diag V^H is unchanged.
  for (Eigen::Index k = 0; k < nq; ++k) {
    const Quaternion rot = detail::canonical_rotation(res.v, k);
    detail::rotate_column(res.v, k, rot);
    detail::rotate_column(res.u, k, rot);
  }
  for (Eigen::Index k = nq; k < n1; ++k) detail::rotate_column(res.u, k, detail::canonical_rotation(res.u, k));
  for (Eigen::Index k = nq; k < n2; ++k) detail::rotate_column(res.v, k, detail::canonical_rotation(res.v, k));

  const double tol = rank_tol < 0.0 ? auto_rank_tolerance(sigma_max, n1, n2) : rank_tol;
  res.rank_estimate = (res.singular_values.array() > tol).count();
  return res;
}

// Singular value thresholding: keeps each singular triplet with weight
// max(sigma - xi, 0). This is the proximal operator of xi * ||.||_* at Q,
// the workhorse of the completion solvers. The assembly never forms full
// square factors: thin pairs are contracted in the complex embedding and
// only the top block is converted back.
inline QuaternionMatrix svt(const QuaternionMatrix& q, double xi) {
  if (!(xi >= 0.0)) throw std::invalid_argument("svt threshold must be nonnegative");
  if (xi == 0.0) return q;  // prox at zero threshold is the identity

  const Eigen::Index n1 = q.rows(), n2 = q.cols();
  const Eigen::Index nq = std::min(n1, n2);
  const Eigen::MatrixXcd a = complex_adjoint(q);
  const detail::ComplexSvd svd = detail::complex_svd(a, /*full=*/false);

  const double sigma_max = svd.s.size() > 0 ? svd.s[0] : 0.0;
  const double floor = sigma_max * detail::kBreakdownRel;
  Eigen::Index m = 0;
  while (m < nq && svd.s[2 * m] - xi > 0.0 && svd.s[2 * m] > floor) ++m;
  if (m == 0) return QuaternionMatrix(n1, n2);

  detail::PairBuilder vb(2 * n2, m, svd.v);
  for (Eigen::Index k = 0; k < m; ++k) vb.push_from_candidates();
  detail::PairBuilder ub(2 * n1, m, svd.u);
  for (Eigen::Index k = 0; k < m; ++k)
    if (!ub.push(a * vb.pairs().col(2 * k) / svd.s[2 * k])) ub.push_from_candidates();

  Eigen::MatrixXcd vscaled = vb.pairs();
  for (Eigen::Index k = 0; k < m; ++k) {
    const double d = svd.s[2 * k] - xi;
    vscaled.col(2 * k) *= d;
    vscaled.col(2 * k + 1) *= d;
  }
  // Top rows of f(X) are [Z1 Z2]; that is all the reconstruction needs.
  const Eigen::MatrixXcd top = ub.pairs().topRows(n1) * vscaled.adjoint();
  return QuaternionMatrix(top.leftCols(n2).real(), top.leftCols(n2).imag(),
                          top.rightCols(n2).real(), top.rightCols(n2).imag());
}

// One singular value per line, largest first, full round-trip precision.
inline void write_spectrum_csv(std::ostream& os, const Eigen::VectorXd& values) {
  os << std::setprecision(17);
  for (Eigen::Index k = 0; k < values.size(); ++k) os << values[k] << '\n';
}

}  // namespace qtc

#pragma once

// Low-rank completion of quaternion matrices and tensors.
//
// The solver alternates three closed-form updates on an augmented Lagrangian:
// a masked merge that rebuilds the tensor estimate from the per-mode factor
// matrices, a singular value shrinkage on every mode unfolding, and a
// multiplier correction, followed by a conditional growth of the per-mode
// penalty weights.  Each update is exposed on its own so the pieces can be
// exercised (and checkpointed) independently of the driver loop.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <future>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtc/detail/binary_io.hpp"
#include "qtc/errors.hpp"
#include "qtc/qsvd.hpp"
#include "qtc/quaternion_matrix.hpp"
#include "qtc/quaternion_tensor.hpp"
#include "qtc/sampling.hpp"

namespace qtc {

enum class TriggerMode {
  kAbsolute,  // compare the iterate change against fixed thresholds
  kRelative,  // scale thresholds by the norm of the observed data
};

// Called once per completed iteration with the 1-based iteration number, the
// Frobenius change of the estimate, and the current penalty weights.
using ProgressFn = std::function<void(int, double, const std::vector<double>&)>;

struct SolverConfig {
  // One entry per relaxed mode: nuclear norm weights, initial penalties, and
  // penalty caps.  Left empty, the order-specific defaults below are applied.
  std::vector<double> alpha;
  std::vector<double> beta0;
  std::vector<double> beta_max;

  double eta0 = 1.05;         // penalty growth factor when progress slows
  double eta_trigger = 0.01;  // iterate change at or below this grows beta
  double epsilon = 1e-3;      // stopping threshold on the iterate change
  int max_iter = 500;         // total iteration cap, counted across resumes
  TriggerMode trigger_mode = TriggerMode::kRelative;
  int threads = 1;  // mode updates run in waves of this many worker threads
  ProgressFn progress;

  static SolverConfig matrix_defaults() {
    SolverConfig cfg;
    cfg.alpha = {2.0};
    cfg.beta0 = {0.08};
    cfg.beta_max = {1000.0};
    return cfg;
  }

  static SolverConfig tensor_defaults() {
    SolverConfig cfg;
    cfg.alpha = {2.0, 2.0, 1e-3};
    cfg.beta0 = {0.08, 0.08, 1.0};
    cfg.beta_max = {1000.0, 1000.0, 1000.0};
    return cfg;
  }

  void validate(std::size_t n_slots) const {
    if (alpha.size() != n_slots) throw std::invalid_argument("alpha needs one entry per relaxed mode");
    if (beta0.size() != n_slots) throw std::invalid_argument("beta0 needs one entry per relaxed mode");
    if (beta_max.size() != n_slots)
      throw std::invalid_argument("beta_max needs one entry per relaxed mode");
    for (std::size_t i = 0; i < n_slots; ++i) {
      if (!(alpha[i] >= 0.0)) throw std::invalid_argument("alpha entries must be nonnegative");
      if (!(beta0[i] > 0.0)) throw std::invalid_argument("beta0 entries must be positive");
      if (!(beta_max[i] >= beta0[i]))
        throw std::invalid_argument("beta_max entries must be at least beta0");
    }
    if (!(eta0 >= 1.0)) throw std::invalid_argument("eta0 must be at least 1");
    if (!(eta_trigger >= 0.0)) throw std::invalid_argument("eta_trigger must be nonnegative");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");
    if (threads < 1) throw std::invalid_argument("threads must be positive");
  }
};

// Everything the iteration carries from one step to the next.  `t` is the
// current estimate, `x[n]` / `f[n]` the factor matrix and multiplier for slot
// n (which relaxes tensor mode `modes[n]`), `beta` the penalty weights, and
// `tau` the number of completed iterations.  A freshly made state holds all
// zeros, so the first merge reproduces the observed data exactly.
struct SolverState {
  QuaternionTensor t;
  std::vector<int> modes;
  std::vector<QuaternionMatrix> x;
  std::vector<QuaternionMatrix> f;
  std::vector<double> beta;
  std::int64_t tau = 0;
};

struct SolverReport {
  int iterations = 0;  // iterations performed by this call (not the total tau)
  bool converged = false;
  double wall_time_s = 0.0;
  std::vector<double> delta_history;
  std::vector<std::vector<double>> beta_history;
};

inline SolverState make_solver_state(const std::vector<Eigen::Index>& shape, std::vector<int> modes,
                                     const SolverConfig& cfg) {
  cfg.validate(modes.size());
  SolverState s;
  s.t = QuaternionTensor(shape);
  const Eigen::Index numel = s.t.numel();
  for (const int mode : modes) {
    if (mode < 0 || mode >= s.t.order()) throw std::invalid_argument("relaxed mode out of range");
    if (std::count(modes.begin(), modes.end(), mode) != 1)
      throw std::invalid_argument("relaxed modes must be distinct");
    const Eigen::Index rows = shape[static_cast<std::size_t>(mode)];
    s.x.emplace_back(rows, numel / rows);
    s.f.emplace_back(rows, numel / rows);
  }
  s.modes = std::move(modes);
  s.beta = cfg.beta0;
  return s;
}

namespace detail {

// Contribution of slot n to the merge: fold(X_n) - (1/beta_n) fold(F_n).
inline QuaternionTensor merge_term(const SolverState& s, int n, const std::vector<Eigen::Index>& shape) {
  const std::size_t u = static_cast<std::size_t>(n);
  QuaternionTensor term = fold(s.x[u], s.modes[u], shape);
  const QuaternionTensor mult = fold(s.f[u], s.modes[u], shape);
  const double inv_beta = 1.0 / s.beta[u];
  for (int l = 0; l < 4; ++l) term.component(l) -= inv_beta * mult.component(l);
  return term;
}

// Sums the merge terms of slots [lo, hi) by halving, so the addition tree is
// fixed by the slot count alone and never depends on scheduling.
inline QuaternionTensor merge_sum(const SolverState& s, int lo, int hi,
                                  const std::vector<Eigen::Index>& shape) {
  if (hi - lo == 1) return merge_term(s, lo, shape);
  const int mid = lo + (hi - lo) / 2;
  QuaternionTensor left = merge_sum(s, lo, mid, shape);
  const QuaternionTensor right = merge_sum(s, mid, hi, shape);
  left += right;
  return left;
}

inline QuaternionMatrix shrink_step(const QuaternionMatrix& t_unf, const QuaternionMatrix& f,
                                    double alpha, double beta) {
  return svt(t_unf + (1.0 / beta) * f, alpha / beta);
}

inline QuaternionMatrix multiplier_step(const QuaternionMatrix& t_unf, const QuaternionMatrix& x,
                                        const QuaternionMatrix& f, double beta) {
  return f - beta * (x - t_unf);
}

struct ModeResult {
  QuaternionMatrix x;
  QuaternionMatrix f;
};

// Full per-slot work of one iteration.  The unfolding is computed once and
// feeds both steps with the exact expressions used by update_x / update_f.
inline ModeResult mode_step(const QuaternionTensor& t, int mode, const QuaternionMatrix& f,
                            double alpha, double beta) {
  const QuaternionMatrix un = unfold(t, mode);
  QuaternionMatrix x = shrink_step(un, f, alpha, beta);
  QuaternionMatrix f_new = multiplier_step(un, x, f, beta);
  return {std::move(x), std::move(f_new)};
}

}  // namespace detail

// Merge update: averages the slot contributions on the unobserved entries and
// copies the data through on the observed ones.  Reads x, f, beta, and modes
// from the state; the stored estimate `t` is not consulted.
inline QuaternionTensor update_t(const SolverState& s, const SamplingMask& mask,
                                 const QuaternionTensor& y) {
  if (mask.shape() != y.shape()) throw std::invalid_argument("mask shape does not match data shape");
  if (s.modes.empty()) throw std::invalid_argument("state has no relaxed modes");
  QuaternionTensor acc = detail::merge_sum(s, 0, static_cast<int>(s.modes.size()), y.shape());
  const double inv_n = 1.0 / static_cast<double>(s.modes.size());
  for (int l = 0; l < 4; ++l) {
    Eigen::ArrayXd& plane = acc.component(l);
    const Eigen::ArrayXd& data = y.component(l);
    for (Eigen::Index e = 0; e < plane.size(); ++e)
      plane[e] = mask.observed(e) ? data[e] : plane[e] * inv_n;
  }
  return acc;
}

// Shrinkage update for slot n: soft-thresholds the singular values of the
// mode unfolding, shifted by the scaled multiplier.
inline QuaternionMatrix update_x(const SolverState& s, const SolverConfig& cfg, int n) {
  const std::size_t u = static_cast<std::size_t>(n);
  return detail::shrink_step(unfold(s.t, s.modes[u]), s.f[u], cfg.alpha[u], s.beta[u]);
}

// Multiplier update for slot n, using the freshly shrunk x stored in the state.
inline QuaternionMatrix update_f(const SolverState& s, int n) {
  const std::size_t u = static_cast<std::size_t>(n);
  return detail::multiplier_step(unfold(s.t, s.modes[u]), s.x[u], s.f[u], s.beta[u]);
}

// Grows every penalty by eta0 (capped at beta_max) when the iterate change
// has fallen to the trigger threshold; otherwise leaves them untouched.  In
// relative mode thresholds are measured against `scale`.
inline std::vector<double> update_beta(const std::vector<double>& beta, const SolverConfig& cfg,
                                       double delta, double scale) {
  const double threshold =
      cfg.trigger_mode == TriggerMode::kRelative ? cfg.eta_trigger * scale : cfg.eta_trigger;
  if (delta > threshold) return beta;
  std::vector<double> out(beta.size());
  for (std::size_t i = 0; i < beta.size(); ++i) out[i] = std::min(cfg.beta_max[i], beta[i] * cfg.eta0);
  return out;
}

namespace detail {

inline void validate_solver_inputs(const SolverState& s, const QuaternionTensor& y,
                                   const SamplingMask& mask, const SolverConfig& cfg) {
  cfg.validate(s.modes.size());
  if (s.modes.empty()) throw std::invalid_argument("state has no relaxed modes");
  if (s.t.shape() != y.shape()) throw std::invalid_argument("state shape does not match data shape");
  if (mask.shape() != y.shape()) throw std::invalid_argument("mask shape does not match data shape");
  if (s.x.size() != s.modes.size() || s.f.size() != s.modes.size() || s.beta.size() != s.modes.size())
    throw std::invalid_argument("state slot arrays are inconsistent");
  for (std::size_t n = 0; n < s.modes.size(); ++n) {
    const int mode = s.modes[n];
    if (mode < 0 || mode >= y.order()) throw std::invalid_argument("relaxed mode out of range");
    if (std::count(s.modes.begin(), s.modes.end(), mode) != 1)
      throw std::invalid_argument("relaxed modes must be distinct");
    const Eigen::Index rows = y.dim(mode);
    const Eigen::Index cols = y.numel() / rows;
    if (s.x[n].rows() != rows || s.x[n].cols() != cols || s.f[n].rows() != rows || s.f[n].cols() != cols)
      throw std::invalid_argument("state factor shapes do not match the data");
    if (!(s.beta[n] > 0.0)) throw std::invalid_argument("state penalties must be positive");
  }
  if (s.tau < 0) throw std::invalid_argument("state iteration count is negative");
  for (Eigen::Index e = 0; e < y.numel(); ++e)
    if (!mask.observed(e))
      for (int l = 0; l < 4; ++l)
        if (y.component(l)[e] != 0.0)
          throw std::invalid_argument("data has nonzero entries outside the observation mask");
}

inline double iterate_distance(const QuaternionTensor& a, const QuaternionTensor& b) {
  double sq = 0.0;
  for (int l = 0; l < 4; ++l) sq += (a.component(l) - b.component(l)).matrix().squaredNorm();
  return std::sqrt(sq);
}

}  // namespace detail

// Drives the iteration from the given state until the iterate change falls to
// epsilon (relative mode: epsilon times the observed-data norm) or the total
// iteration count reaches cfg.max_iter.  The state is advanced in place so a
// caller can checkpoint and resume; the report covers this call only.
inline SolverReport run_completion(SolverState& state, const QuaternionTensor& y,
                                   const SamplingMask& mask, const SolverConfig& cfg) {
  detail::validate_solver_inputs(state, y, mask, cfg);

  double scale = 1.0;
  if (cfg.trigger_mode == TriggerMode::kRelative) {
    const double norm = y.frobenius();
    if (norm > 0.0) scale = norm;
  }
  const double stop = cfg.epsilon * scale;
  const int n_slots = static_cast<int>(state.modes.size());

  SolverReport report;
  const auto start = std::chrono::steady_clock::now();
  while (state.tau < cfg.max_iter) {
    QuaternionTensor t_next = update_t(state, mask, y);
    const double delta = detail::iterate_distance(t_next, state.t);
    state.t = std::move(t_next);

    // Slot updates are independent; run them in waves of cfg.threads.  Each
    // slot performs the same arithmetic wherever it is scheduled, so the
    // result does not depend on the thread count.
    std::vector<std::optional<detail::ModeResult>> results(static_cast<std::size_t>(n_slots));
    for (int wave = 0; wave < n_slots; wave += cfg.threads) {
      const int end = std::min(n_slots, wave + cfg.threads);
      if (end - wave == 1) {
        const std::size_t u = static_cast<std::size_t>(wave);
        results[u].emplace(
            detail::mode_step(state.t, state.modes[u], state.f[u], cfg.alpha[u], state.beta[u]));
      } else {
        std::vector<std::future<detail::ModeResult>> futures;
        for (int n = wave; n < end; ++n) {
          const std::size_t u = static_cast<std::size_t>(n);
          futures.push_back(std::async(std::launch::async, [&state, &cfg, u] {
            return detail::mode_step(state.t, state.modes[u], state.f[u], cfg.alpha[u], state.beta[u]);
          }));
        }
        for (int n = wave; n < end; ++n)
          results[static_cast<std::size_t>(n)].emplace(futures[static_cast<std::size_t>(n - wave)].get());
      }
    }
    for (int n = 0; n < n_slots; ++n) {
      const std::size_t u = static_cast<std::size_t>(n);
      state.x[u] = std::move(results[u]->x);
      state.f[u] = std::move(results[u]->f);
    }

    state.beta = update_beta(state.beta, cfg, delta, scale);
    ++state.tau;
    ++report.iterations;
    report.delta_history.push_back(delta);
    report.beta_history.push_back(state.beta);
    if (cfg.progress) cfg.progress(static_cast<int>(state.tau), delta, state.beta);
    if (delta <= stop) {
      report.converged = true;
      break;
    }
  }
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace detail {

// Fills in the order-appropriate defaults when the caller supplied no
// per-mode parameters at all.  Mixing (some vectors set, some empty) is left
// for validate() to reject with a precise message.
inline void resolve_defaults(SolverConfig& cfg, int order) {
  if (!cfg.alpha.empty() || !cfg.beta0.empty() || !cfg.beta_max.empty()) return;
  if (order == 3) {
    const SolverConfig d = SolverConfig::tensor_defaults();
    cfg.alpha = d.alpha;
    cfg.beta0 = d.beta0;
    cfg.beta_max = d.beta_max;
  } else {
    throw std::invalid_argument("no default parameters for this tensor order; supply alpha, beta0, "
                                "and beta_max explicitly");
  }
}

}  // namespace detail

// Tensor completion: relaxes every mode of y.  Empty parameter vectors select
// the order-3 defaults; other orders require explicit values.
inline std::pair<QuaternionTensor, SolverReport> lrc_qt(const QuaternionTensor& y,
                                                        const SamplingMask& mask,
                                                        SolverConfig cfg = SolverConfig()) {
  detail::resolve_defaults(cfg, y.order());
  std::vector<int> modes(static_cast<std::size_t>(y.order()));
  std::iota(modes.begin(), modes.end(), 0);
  SolverState state = make_solver_state(y.shape(), std::move(modes), cfg);
  SolverReport report = run_completion(state, y, mask, cfg);
  return {std::move(state.t), std::move(report)};
}

// Matrix completion: the order-2 case with a single relaxed mode.  The mask
// shape must be {rows, cols}.
inline std::pair<QuaternionMatrix, SolverReport> lrc_qm(const QuaternionMatrix& y,
                                                        const SamplingMask& mask,
                                                        SolverConfig cfg = SolverConfig()) {
  if (cfg.alpha.empty() && cfg.beta0.empty() && cfg.beta_max.empty()) {
    const SolverConfig d = SolverConfig::matrix_defaults();
    cfg.alpha = d.alpha;
    cfg.beta0 = d.beta0;
    cfg.beta_max = d.beta_max;
  }
  const QuaternionTensor yt = QuaternionTensor::from_matrix(y);
  SolverState state = make_solver_state(yt.shape(), {0}, cfg);
  SolverReport report = run_completion(state, yt, mask, cfg);
  return {state.t.to_matrix(), std::move(report)};
}

// --- checkpoint format -------------------------------------------------------
//
//   magic   "QCKP1"
//   u8      number of slots
//   u8      relaxed mode of each slot
//   u64     completed iterations (tau)
//   f64     penalty weight of each slot
//   blob    estimate tensor, then per slot its factor matrix and multiplier
//           (both as order-2 tensors), all in the qt1 layout

inline void save_state(std::ostream& os, const SolverState& s) {
  detail::write_bytes(os, "QCKP1", 5);
  detail::write_u8(os, static_cast<std::uint8_t>(s.modes.size()));
  for (const int mode : s.modes) detail::write_u8(os, static_cast<std::uint8_t>(mode));
  detail::write_u64(os, static_cast<std::uint64_t>(s.tau));
  for (const double b : s.beta) detail::write_f64(os, b);
  save_qt1(os, s.t);
  for (std::size_t n = 0; n < s.modes.size(); ++n) {
    save_qt1(os, QuaternionTensor::from_matrix(s.x[n]));
    save_qt1(os, QuaternionTensor::from_matrix(s.f[n]));
  }
}

inline SolverState load_state(std::istream& is) {
  detail::expect_magic(is, "QCKP1", "checkpoint header");
  const int n_slots = detail::read_u8(is, "checkpoint slot count");
  if (n_slots < 1 || n_slots > static_cast<int>(QuaternionTensor::kMaxOrder))
    throw io_error("checkpoint slot count out of range");
  SolverState s;
  for (int n = 0; n < n_slots; ++n) s.modes.push_back(detail::read_u8(is, "checkpoint modes"));
  s.tau = static_cast<std::int64_t>(detail::read_u64(is, "checkpoint iteration count"));
  for (int n = 0; n < n_slots; ++n) {
    s.beta.push_back(detail::read_f64(is, "checkpoint penalties"));
    if (!(s.beta.back() > 0.0)) throw io_error("checkpoint penalty must be positive");
  }
  s.t = load_qt1(is);
  for (const int mode : s.modes) {
    if (mode < 0 || mode >= s.t.order()) throw io_error("checkpoint mode out of range");
    const QuaternionTensor xt = load_qt1(is);
    const QuaternionTensor ft = load_qt1(is);
    if (xt.order() != 2 || ft.order() != 2) throw io_error("checkpoint factor blob is not a matrix");
    const Eigen::Index rows = s.t.dim(mode);
    const Eigen::Index cols = s.t.numel() / rows;
    if (xt.dim(0) != rows || xt.dim(1) != cols || ft.dim(0) != rows || ft.dim(1) != cols)
      throw io_error("checkpoint factor shape does not match the estimate");
    s.x.push_back(xt.to_matrix());
    s.f.push_back(ft.to_matrix());
  }
  if (s.tau < 0) throw io_error("checkpoint iteration count is negative");
  return s;
}

inline void save_state(const std::string& path, const SolverState& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open for writing: " + path);
  save_state(os, s);
}

inline SolverState load_state(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open for reading: " + path);
  return load_state(is);
}

}  // namespace qtc

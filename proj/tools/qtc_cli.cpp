// qtc: recover missing entries of color images and videos by low-rank
// pure-quaternion completion.
//
// Subcommands:
//   complete  mask (or load a mask for) an input, run the solver, write the
//             recovered media plus a JSON run report
//   synth     generate a low-rank ground truth, mask it, recover it, and
//             report the relative error
//   eval      quality metrics (PSNR, SSIM/ASSIM) between two media
//   spectrum  singular values of one unfolding, as CSV
//
// Exit codes: 0 success, 2 usage/validation, 3 file I/O, 4 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qtc/completion.hpp"
#include "qtc/errors.hpp"
#include "qtc/media.hpp"
#include "qtc/metrics.hpp"
#include "qtc/qsvd.hpp"
#include "qtc/quaternion_matrix.hpp"
#include "qtc/quaternion_tensor.hpp"
#include "qtc/sampling.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- inputs ----

enum class MediaKind { kImage, kVideo, kTensor };

const char* kind_name(MediaKind k) {
  switch (k) {
    case MediaKind::kImage: return "image";
    case MediaKind::kVideo: return "video";
    default: return "tensor";
  }
}

// Directories are videos; files are identified by magic bytes.
MediaKind sniff_kind(const std::string& path) {
  if (fs::is_directory(path)) return MediaKind::kVideo;
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw qtc::io_error("cannot open for reading: " + path);
  char sig[5] = {};
  probe.read(sig, 5);
  if (probe.gcount() == 5 && std::string_view(sig, 5) == "QTEN1") return MediaKind::kTensor;
  return MediaKind::kImage;
}

struct LoadedInput {
  MediaKind kind = MediaKind::kImage;
  qtc::QuaternionTensor tensor;  // canonical form fed to the solver
  qtc::ColorImage image;         // original media kept for quality metrics
  qtc::ColorVideo video;
};

LoadedInput load_input(const std::string& path) {
  LoadedInput in;
  in.kind = sniff_kind(path);
  switch (in.kind) {
    case MediaKind::kVideo:
      in.video = qtc::load_video(path);
      in.tensor = qtc::video_to_qtensor(in.video);
      break;
    case MediaKind::kTensor:
      in.tensor = qtc::load_qt1(path);
      break;
    case MediaKind::kImage:
      in.image = qtc::load_image(path);
      in.tensor = qtc::QuaternionTensor::from_matrix(qtc::image_to_qmatrix(in.image));
      break;
  }
  return in;
}

void write_output(const std::string& path, MediaKind kind, const qtc::QuaternionTensor& rec) {
  switch (kind) {
    case MediaKind::kImage: return qtc::save_image(path, qtc::qmatrix_to_image(rec.to_matrix()));
    case MediaKind::kVideo: return qtc::save_video(path, qtc::qtensor_to_video(rec));
    case MediaKind::kTensor: return qtc::save_qt1(path, rec);
  }
}

// Unclamped views of a tensor's imaginary planes, for evaluating raw tensor
// files where values may legitimately leave the display range.
qtc::ColorImage raw_image(const qtc::QuaternionMatrix& q) {
  return qtc::ColorImage(q.component(1), q.component(2), q.component(3));
}

qtc::ColorVideo raw_video(const qtc::QuaternionTensor& t) {
  const Eigen::Index m = t.dim(0), n = t.dim(1), frames = t.dim(2);
  qtc::ColorVideo v;
  for (Eigen::Index f = 0; f < frames; ++f) {
    qtc::ColorImage img(m, n);
    Eigen::MatrixXd* planes[3] = {&img.r, &img.g, &img.b};
    for (int c = 0; c < 3; ++c)
      Eigen::Map<Eigen::ArrayXd>(planes[c]->data(), m * n) =
          t.component(c + 1).segment(m * n * f, m * n);
    v.frames.push_back(std::move(img));
  }
  return v;
}

// ---------------------------------------------------------------- reports ----

ordered_json psnr_json(double v) {
  if (std::isinf(v)) return ordered_json("inf");
  return ordered_json(v);
}

ordered_json shape_json(const std::vector<Eigen::Index>& shape) {
  std::vector<std::int64_t> dims(shape.begin(), shape.end());
  return ordered_json(dims);
}

ordered_json config_json(const qtc::SolverConfig& cfg, const std::string& mode) {
  ordered_json j;
  j["mode"] = mode;
  j["alpha"] = cfg.alpha;
  j["beta0"] = cfg.beta0;
  j["beta_max"] = cfg.beta_max;
  j["eta0"] = cfg.eta0;
  j["eps"] = cfg.epsilon;
  j["eta_trigger"] = cfg.eta_trigger;
  j["trigger_mode"] = cfg.trigger_mode == qtc::TriggerMode::kAbsolute ? "absolute" : "relative";
  j["max_iter"] = cfg.max_iter;
  j["threads"] = cfg.threads;
  return j;
}

// Reports go to stdout and, when requested, to a file.
void emit_json(const ordered_json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  std::fputs(text.c_str(), stdout);
  if (!path.empty()) {
    std::ofstream os(path, std::ios::binary);
    os << text;
    if (!os) throw qtc::io_error("cannot write report: " + path);
  }
}

// Quality of a recovery against the original input, keyed by media kind.
// Tensor inputs are compared on their raw (unclamped) channel planes; image
// and video inputs are compared in the display range, matching what gets
// written to disk.  SSIM is omitted when the frame is smaller than its window.
ordered_json metrics_json(const LoadedInput& in, const qtc::QuaternionTensor& rec) {
  ordered_json m;
  const int order = in.tensor.order();
  if (in.kind == MediaKind::kImage) {
    const qtc::ColorImage recovered = qtc::qmatrix_to_image(rec.to_matrix());
    m["psnr"] = psnr_json(qtc::psnr(recovered, in.image));
    try {
      m["ssim"] = qtc::ssim(recovered, in.image);
    } catch (const std::invalid_argument&) {
      m["ssim"] = nullptr;
    }
  } else if (in.kind == MediaKind::kVideo) {
    const qtc::ColorVideo recovered = qtc::qtensor_to_video(rec);
    m["psnr"] = psnr_json(qtc::psnr(recovered, in.video));
    try {
      m["assim"] = qtc::assim(recovered, in.video);
    } catch (const std::invalid_argument&) {
      m["assim"] = nullptr;
    }
  } else if (order == 2) {
    const qtc::ColorImage reference = raw_image(in.tensor.to_matrix());
    const qtc::ColorImage recovered = raw_image(rec.to_matrix());
    m["psnr"] = psnr_json(qtc::psnr(recovered, reference));
    try {
      m["ssim"] = qtc::ssim(recovered, reference);
    } catch (const std::invalid_argument&) {
      m["ssim"] = nullptr;
    }
  } else if (order == 3) {
    const qtc::ColorVideo reference = raw_video(in.tensor);
    const qtc::ColorVideo recovered = raw_video(rec);
    m["psnr"] = psnr_json(qtc::psnr(recovered, reference));
    try {
      m["assim"] = qtc::assim(recovered, reference);
    } catch (const std::invalid_argument&) {
      m["assim"] = nullptr;
    }
  } else {
    return ordered_json(nullptr);  // no pixel semantics beyond order 3
  }
  return m;
}

// ---------------------------------------------------------------- solver -----

struct SolverFlags {
  std::vector<double> alpha, beta0, beta_max;
  double eta0, eps, eta_trigger;
  std::string trigger_mode = "relative";
  int max_iter, threads;
  bool progress = false;

  SolverFlags() {
    const qtc::SolverConfig d;
    eta0 = d.eta0;
    eps = d.epsilon;
    eta_trigger = d.eta_trigger;
    max_iter = d.max_iter;
    threads = d.threads;
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "per-mode nuclear-norm weights (comma separated)")
        ->delimiter(',');
    cmd->add_option("--beta0", beta0, "per-mode initial penalties")->delimiter(',');
    cmd->add_option("--beta-max", beta_max, "per-mode penalty caps")->delimiter(',');
    cmd->add_option("--eta0", eta0, "penalty growth factor");
    cmd->add_option("--eps", eps, "stopping threshold on the iterate change");
    cmd->add_option("--eta-trigger", eta_trigger, "iterate-change level that enables penalty growth");
    cmd->add_option("--trigger-mode", trigger_mode,
                    "interpret --eps/--eta-trigger relative to the observed data norm, or absolutely")
        ->check(CLI::IsMember({"relative", "absolute"}));
    cmd->add_option("--max-iter", max_iter, "iteration cap");
    cmd->add_option("--threads", threads, "parallel per-mode updates");
    cmd->add_flag("--progress", progress, "log per-iteration progress to stderr");
  }

  qtc::SolverConfig to_config() const {
    qtc::SolverConfig cfg;
    cfg.alpha = alpha;
    cfg.beta0 = beta0;
    cfg.beta_max = beta_max;
    cfg.eta0 = eta0;
    cfg.epsilon = eps;
    cfg.eta_trigger = eta_trigger;
    cfg.trigger_mode =
        trigger_mode == "absolute" ? qtc::TriggerMode::kAbsolute : qtc::TriggerMode::kRelative;
    cfg.max_iter = max_iter;
    cfg.threads = threads;
    if (progress)
      cfg.progress = [](int iteration, double delta, const std::vector<double>&) {
        std::fprintf(stderr, "iter %4d  delta %.6e\n", iteration, delta);
      };
    return cfg;
  }
};

// Fills in the published defaults when no weights were given, so the report
// echoes the exact configuration that ran.
void resolve_config(qtc::SolverConfig& cfg, const std::string& mode, int order) {
  if (mode == "matrix") {
    if (cfg.alpha.empty() && cfg.beta0.empty() && cfg.beta_max.empty()) {
      const qtc::SolverConfig d = qtc::SolverConfig::matrix_defaults();
      cfg.alpha = d.alpha;
      cfg.beta0 = d.beta0;
      cfg.beta_max = d.beta_max;
    }
  } else {
    qtc::detail::resolve_defaults(cfg, order);
  }
}

std::pair<qtc::QuaternionTensor, qtc::SolverReport> solve(const qtc::QuaternionTensor& y,
                                                          const qtc::SamplingMask& mask,
                                                          const qtc::SolverConfig& cfg,
                                                          const std::string& mode) {
  if (mode == "matrix") {
    auto [m, report] = qtc::lrc_qm(y.to_matrix(), mask, cfg);
    return {qtc::QuaternionTensor::from_matrix(m), std::move(report)};
  }
  auto [t, report] = qtc::lrc_qt(y, mask, cfg);
  return {std::move(t), std::move(report)};
}

double relative_error(const qtc::QuaternionTensor& a, const qtc::QuaternionTensor& b) {
  double diff = 0.0, ref = 0.0;
  for (int l = 0; l < 4; ++l) {
    diff += (a.component(l) - b.component(l)).matrix().squaredNorm();
    ref += b.component(l).matrix().squaredNorm();
  }
  return ref == 0.0 ? std::sqrt(diff) : std::sqrt(diff / ref);
}

// ---------------------------------------------------------------- commands ---

struct CompleteArgs {
  std::string input, mode, mask_file, out, save_mask, report;
  double sr = 0.0;
  std::uint64_t seed = 0;
  bool sr_given = false, seed_given = false;
  SolverFlags solver;
};

int cmd_complete(const CompleteArgs& a) {
  const LoadedInput in = load_input(a.input);
  const std::vector<Eigen::Index>& shape = in.tensor.shape();

  std::string mode = a.mode;
  if (mode.empty()) mode = in.tensor.order() == 2 ? "matrix" : "tensor";
  if (mode == "matrix" && in.tensor.order() != 2)
    throw std::invalid_argument("matrix mode requires a two-dimensional input");

  if (!a.mask_file.empty() && a.sr_given)
    throw std::invalid_argument("give either --mask or --sr, not both");
  if (a.mask_file.empty() && !a.sr_given)
    throw std::invalid_argument("either --mask or --sr is required");
  qtc::SamplingMask mask =
      a.mask_file.empty() ? qtc::generate_mask(shape, a.sr, a.seed) : qtc::load_qmsk(a.mask_file);
  if (mask.shape() != shape)
    throw std::invalid_argument("mask shape does not match the input media");

  const qtc::QuaternionTensor y = qtc::apply_mask(in.tensor, mask);
  qtc::SolverConfig cfg = a.solver.to_config();
  resolve_config(cfg, mode, in.tensor.order());

  auto [rec, rep] = solve(y, mask, cfg, mode);

  if (!a.out.empty()) write_output(a.out, in.kind, rec);
  if (!a.save_mask.empty()) qtc::save_qmsk(a.save_mask, mask);

  ordered_json rpt;
  rpt["input"] = a.input;
  rpt["shape"] = shape_json(shape);
  rpt["order"] = in.tensor.order();
  rpt["sr"] = mask.sr();
  rpt["seed"] = a.mask_file.empty() ? ordered_json(a.seed) : ordered_json(nullptr);
  rpt["mask_file"] = !a.mask_file.empty() ? ordered_json(a.mask_file)
                     : !a.save_mask.empty() ? ordered_json(a.save_mask)
                                            : ordered_json(nullptr);
  rpt["config"] = config_json(cfg, mode);
  rpt["iterations"] = rep.iterations;
  rpt["converged"] = rep.converged;
  rpt["wall_time_s"] = rep.wall_time_s;
  rpt["metrics"] = metrics_json(in, rec);
  rpt["delta_trace"] = rep.delta_history;
  emit_json(rpt, a.report);
  return 0;
}

struct SynthArgs {
  std::vector<std::int64_t> shape, ranks;
  std::string mode, out_truth, out_mask, out_recovered, report;
  double sr = 0.5;
  std::uint64_t seed = 0;
  SolverFlags solver;
};

// Random low-rank ground truth: a pure-quaternion core contracted with real
// factor matrices along every mode.
qtc::QuaternionTensor synth_tucker(const std::vector<Eigen::Index>& shape,
                                   const std::vector<Eigen::Index>& ranks, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> core_level(-10.0, 10.0);
  std::uniform_real_distribution<double> factor_level(-1.0, 1.0);

  qtc::QuaternionTensor t(ranks);
  for (int l = 1; l < 4; ++l)
    for (Eigen::Index i = 0; i < t.numel(); ++i) t.component(l)[i] = core_level(gen);

  std::vector<Eigen::Index> current = ranks;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    Eigen::MatrixXd factor(shape[k], ranks[k]);
    for (Eigen::Index i = 0; i < factor.rows(); ++i)
      for (Eigen::Index j = 0; j < factor.cols(); ++j) factor(i, j) = factor_level(gen);
    const qtc::QuaternionMatrix unf = qtc::unfold(t, static_cast<int>(k));
    qtc::QuaternionMatrix grown(factor.rows(), unf.cols());
    for (int l = 0; l < 4; ++l) grown.component(l) = factor * unf.component(l);
    current[k] = shape[k];
    t = qtc::fold(grown, static_cast<int>(k), current);
  }
  return t;
}

int cmd_synth(const SynthArgs& a) {
  if (a.ranks.size() != a.shape.size())
    throw std::invalid_argument("--ranks must have one entry per --shape dimension");
  std::vector<Eigen::Index> shape(a.shape.begin(), a.shape.end());
  std::vector<Eigen::Index> ranks(a.ranks.begin(), a.ranks.end());
  for (std::size_t k = 0; k < shape.size(); ++k)
    if (ranks[k] < 1 || ranks[k] > shape[k])
      throw std::invalid_argument("rank " + std::to_string(ranks[k]) +
                                  " is out of range for dimension " + std::to_string(shape[k]));

  std::string mode = a.mode;
  if (mode.empty()) mode = shape.size() == 2 ? "matrix" : "tensor";
  if (mode == "matrix" && shape.size() != 2)
    throw std::invalid_argument("matrix mode requires a two-dimensional shape");

  const qtc::QuaternionTensor truth = synth_tucker(shape, ranks, a.seed);
  const qtc::SamplingMask mask = qtc::generate_mask(shape, a.sr, a.seed + 1);
  const qtc::QuaternionTensor y = qtc::apply_mask(truth, mask);

  qtc::SolverConfig cfg = a.solver.to_config();
  resolve_config(cfg, mode, static_cast<int>(shape.size()));
  auto [rec, rep] = solve(y, mask, cfg, mode);

  if (!a.out_truth.empty()) qtc::save_qt1(a.out_truth, truth);
  if (!a.out_mask.empty()) qtc::save_qmsk(a.out_mask, mask);
  if (!a.out_recovered.empty()) qtc::save_qt1(a.out_recovered, rec);

  ordered_json rpt;
  rpt["shape"] = shape_json(shape);
  rpt["order"] = static_cast<int>(shape.size());
  rpt["ranks"] = a.ranks;
  rpt["sr"] = mask.sr();
  rpt["seed"] = a.seed;
  rpt["config"] = config_json(cfg, mode);
  rpt["iterations"] = rep.iterations;
  rpt["converged"] = rep.converged;
  rpt["wall_time_s"] = rep.wall_time_s;
  rpt["relative_error"] = relative_error(rec, truth);
  rpt["paths"] = {{"truth", a.out_truth.empty() ? ordered_json(nullptr) : ordered_json(a.out_truth)},
                  {"mask", a.out_mask.empty() ? ordered_json(nullptr) : ordered_json(a.out_mask)},
                  {"recovered",
                   a.out_recovered.empty() ? ordered_json(nullptr) : ordered_json(a.out_recovered)}};
  rpt["delta_trace"] = rep.delta_history;
  emit_json(rpt, a.report);
  return 0;
}

struct EvalArgs {
  std::string recovered, reference, report;
};

// Reduces any input to display-free image/video form: media files keep their
// stored pixel values, tensor files contribute raw channel planes.
std::variant<qtc::ColorImage, qtc::ColorVideo> eval_side(const std::string& path) {
  const MediaKind kind = sniff_kind(path);
  if (kind == MediaKind::kVideo) return qtc::load_video(path);
  if (kind == MediaKind::kImage) return qtc::load_image(path);
  const qtc::QuaternionTensor t = qtc::load_qt1(path);
  if (t.order() == 2) return raw_image(t.to_matrix());
  if (t.order() == 3) return raw_video(t);
  throw std::invalid_argument("evaluation needs an image- or video-shaped input (order 2 or 3): " +
                              path);
}

int cmd_eval(const EvalArgs& a) {
  const auto rec = eval_side(a.recovered);
  const auto ref = eval_side(a.reference);
  if (rec.index() != ref.index())
    throw std::invalid_argument("cannot compare an image with a video");

  ordered_json rpt;
  rpt["recovered"] = a.recovered;
  rpt["reference"] = a.reference;
  if (std::holds_alternative<qtc::ColorImage>(rec)) {
    const auto& x = std::get<qtc::ColorImage>(rec);
    const auto& t = std::get<qtc::ColorImage>(ref);
    rpt["psnr"] = psnr_json(qtc::psnr(x, t));
    rpt["ssim"] = qtc::ssim(x, t);
  } else {
    const auto& x = std::get<qtc::ColorVideo>(rec);
    const auto& t = std::get<qtc::ColorVideo>(ref);
    rpt["psnr"] = psnr_json(qtc::psnr(x, t));
    rpt["assim"] = qtc::assim(x, t);
  }
  emit_json(rpt, a.report);
  return 0;
}

struct SpectrumArgs {
  std::string input, out;
  int axis = 1;
};

int cmd_spectrum(const SpectrumArgs& a) {
  const LoadedInput in = load_input(a.input);
  if (a.axis < 1 || a.axis > in.tensor.order())
    throw std::invalid_argument("--axis must be between 1 and the input order (" +
                                std::to_string(in.tensor.order()) + ")");
  const qtc::QuaternionMatrix unf = qtc::unfold(in.tensor, a.axis - 1);
  const Eigen::VectorXd values = qtc::qsvd_values(unf);

  std::string csv;
  char line[64];
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g\n", values[i]);
    csv += line;
  }
  std::fputs(csv.c_str(), stdout);
  if (!a.out.empty()) {
    std::ofstream os(a.out, std::ios::binary);
    os << csv;
    if (!os) throw qtc::io_error("cannot write spectrum: " + a.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"low-rank pure-quaternion completion of color images and videos"};
  app.require_subcommand(1);

  CompleteArgs complete_args;
  CLI::App* complete = app.add_subcommand("complete", "mask an input, recover it, report quality");
  complete->add_option("--input", complete_args.input, "image file, frame directory, or qt1 tensor")
      ->required();
  complete->add_option("--mode", complete_args.mode, "matrix or tensor solver (default: by input order)")
      ->check(CLI::IsMember({"matrix", "tensor"}));
  CLI::Option* sr_opt = complete->add_option("--sr", complete_args.sr, "sampling ratio in (0, 1]");
  complete->add_option("--seed", complete_args.seed, "mask RNG seed (with --sr)");
  complete->add_option("--mask", complete_args.mask_file, "observation mask file (alternative to --sr)");
  complete->add_option("--out", complete_args.out, "path for the recovered media");
  complete->add_option("--save-mask", complete_args.save_mask, "write the mask that was used");
  complete->add_option("--report", complete_args.report, "write the JSON run report here");
  complete_args.solver.attach(complete);

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand("synth", "recover a synthetic low-rank ground truth");
  synth->add_option("--shape", synth_args.shape, "tensor dimensions, comma separated")
      ->delimiter(',')
      ->required();
  synth->add_option("--ranks", synth_args.ranks, "per-mode ranks of the ground truth")
      ->delimiter(',')
      ->required();
  synth->add_option("--sr", synth_args.sr, "sampling ratio in (0, 1]");
  synth->add_option("--seed", synth_args.seed, "data seed; the mask uses seed+1");
  synth->add_option("--mode", synth_args.mode, "matrix or tensor solver (default: by order)")
      ->check(CLI::IsMember({"matrix", "tensor"}));
  synth->add_option("--out-truth", synth_args.out_truth, "write the ground truth (qt1)");
  synth->add_option("--out-mask", synth_args.out_mask, "write the mask");
  synth->add_option("--out-recovered", synth_args.out_recovered, "write the recovery (qt1)");
  synth->add_option("--report", synth_args.report, "write the JSON run report here");
  synth_args.solver.attach(synth);

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "PSNR and SSIM/ASSIM between two media");
  eval->add_option("--recovered", eval_args.recovered, "media or qt1 under test")->required();
  eval->add_option("--reference", eval_args.reference, "ground-truth media or qt1")->required();
  eval->add_option("--report", eval_args.report, "write the metrics JSON here");

  SpectrumArgs spectrum_args;
  CLI::App* spectrum = app.add_subcommand("spectrum", "singular values of one unfolding, as CSV");
  spectrum->add_option("--input", spectrum_args.input, "image file, frame directory, or qt1 tensor")
      ->required();
  spectrum->add_option("--axis", spectrum_args.axis, "unfolding mode, 1-based (default 1)");
  spectrum->add_option("--out", spectrum_args.out, "write the CSV here");

  try {
    app.parse(argc, argv);
    complete_args.sr_given = sr_opt->count() > 0;
    if (app.got_subcommand(complete)) return cmd_complete(complete_args);
    if (app.got_subcommand(synth)) return cmd_synth(synth_args);
    if (app.got_subcommand(eval)) return cmd_eval(eval_args);
    return cmd_spectrum(spectrum_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const qtc::io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const qtc::decomposition_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

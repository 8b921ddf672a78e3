#include "turbowb/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "turbowb/util.hpp"

namespace turbowb {

double mean_abs_llr(const Eigen::ArrayXd& m) {
  if (m.size() == 0) throw std::invalid_argument("mean_abs_llr: empty vector");
  return m.abs().mean();
}

double min_abs_llr(const Eigen::ArrayXd& m) {
  if (m.size() == 0) throw std::invalid_argument("min_abs_llr: empty vector");
  return m.abs().minCoeff();
}

std::vector<std::pair<double, double>> phase_points(const DecoderTrace& trace) {
  if (trace.stats.size() < 2) throw std::invalid_argument("phase_points: trace too short");
  std::vector<std::pair<double, double>> out;
  out.reserve(trace.stats.size() - 1);
  for (std::size_t i = 0; i + 1 < trace.stats.size(); ++i)
    out.emplace_back(trace.stats[i].mean_abs, trace.stats[i + 1].mean_abs);
  return out;
}

std::string to_string(const MotionLabel& label) {
  switch (label.kind) {
    case MotionKind::fixed_point:
      return label.subkind == FixedPointSubkind::unequivocal ? "fixed_point_unequivocal"
                                                             : "fixed_point_indecisive";
    case MotionKind::periodic:
      return "periodic_" + std::to_string(label.period);
    case MotionKind::aperiodic:
      return label.sensitive ? "aperiodic_sensitive" : "aperiodic";
  }
  return "?";
}

namespace {

// Does xs[from..] stay within a band of width eps?
bool is_constant_tail(const std::vector<double>& xs, std::size_t from, double eps) {
  const auto [lo, hi] = std::minmax_element(xs.begin() + from, xs.end());
  return (*hi - *lo) < eps;
}

bool fits_period(const std::vector<double>& xs, std::size_t from, int p, double eps) {
  for (std::size_t i = from; i + p < xs.size(); ++i)
    if (std::abs(xs[i + p] - xs[i]) >= eps) return false;
  return true;
}

// Earliest start index from which pred(start) holds, scanning backward.
template <typename Pred>
std::size_t regime_start(std::size_t window_start, Pred pred) {
  std::size_t start = window_start;
  while (start > 0 && pred(start - 1)) --start;
  return start;
}

}  // namespace

MotionLabel classify_motion(const DecoderTrace& trace, const ClassifyParams& params) {
  const std::size_t n = trace.stats.size();
  if (n < 2 * static_cast<std::size_t>(params.window))
    throw std::invalid_argument("classify_motion: trace shorter than 2*window");

  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = trace.stats[i].mean_abs;
  const std::size_t w0 = n - params.window;

  double tail_mean = 0.0;
  for (std::size_t i = w0; i < n; ++i) tail_mean += xs[i];
  tail_mean /= params.window;
  const double eps_fp = params.eps_fp >= 0 ? params.eps_fp : 1e-3 * tail_mean;
  const double eps_p = params.eps_p >= 0 ? params.eps_p : 1e-3 * tail_mean;

  MotionLabel label;
  if (is_constant_tail(xs, w0, eps_fp)) {
    label.kind = MotionKind::fixed_point;
    long tail_errors = 0;
    for (std::size_t i = w0; i < n; ++i)
      if (trace.stats[i].errors > 0) tail_errors += trace.stats[i].errors;
    label.subkind = tail_errors == 0 ? FixedPointSubkind::unequivocal
                                     : FixedPointSubkind::indecisive;
    label.transient_length = static_cast<int>(
        regime_start(w0, [&](std::size_t s) { return is_constant_tail(xs, s, eps_fp); }));
    return label;
  }

  for (int p = 2; p <= params.max_period; ++p) {
    if (fits_period(xs, w0, p, eps_p)) {
      label.kind = MotionKind::periodic;
      label.period = p;
      label.transient_length = static_cast<int>(
          regime_start(w0, [&](std::size_t s) { return fits_period(xs, s, p, eps_p); }));
      return label;
    }
  }

  label.kind = MotionKind::aperiodic;
  label.transient_length = 0;
  return label;
}

bool sensitivity_probe(const DecoderTrace& base, const ChannelObservation& obs,
                       const TurboCodeConfig& config, const Interleaver& pi,
                       int horizon, double perturbation, double factor) {
  StoppingPolicy observe;
  observe.enabled = false;
  observe.max_half_iterations =
      std::min<int>(horizon, static_cast<int>(base.stats.size()));
  DecodeOptions opt;
  opt.initial_apriori = perturbation;
  const DecoderTrace perturbed = decode(obs, config, pi, observe, nullptr, opt);
  const double threshold = factor * perturbation;
  for (std::size_t i = 0; i < perturbed.stats.size(); ++i)
    if (std::abs(perturbed.stats[i].mean_abs - base.stats[i].mean_abs) >= threshold)
      return true;
  return false;
}

SweepResult sweep_gamma(const NoiseRealization& u, const std::vector<double>& grid_db,
                        const TurboCodeConfig& config, const Interleaver& pi,
                        const SweepParams& params) {
  if (grid_db.empty()) throw std::invalid_argument("sweep_gamma: empty grid");
  if (!std::is_sorted(grid_db.begin(), grid_db.end()))
    throw std::invalid_argument("sweep_gamma: grid must be sorted ascending");

  const BitBlock zeros(config.k, 0);
  const Codeword cw = turbo_encode(zeros, config, pi);

  StoppingPolicy observe;
  observe.enabled = false;
  observe.max_half_iterations = params.cap;

  SweepResult result;
  result.points.resize(grid_db.size());
  parallel_for(static_cast<int>(grid_db.size()), params.workers, [&](int i) {
    const double gamma_db = grid_db[i];
    const Eigen::ArrayXd z = scale_to_gamma(u, gamma_db, config.k);
    const ChannelObservation obs = transmit(cw, z, gamma_db);
    DecodeOptions opt;
    opt.fast_forward_exact = true;
    const DecoderTrace trace = decode(obs, config, pi, observe, &zeros, opt);

    GammaPoint point;
    point.gamma_db = gamma_db;
    point.label = classify_motion(trace, params.classify);
    if (point.label.kind == MotionKind::aperiodic && params.probe_sensitivity)
      point.label.sensitive = sensitivity_probe(trace, obs, config, pi);
    const int tail = std::min<int>(params.tail_samples, static_cast<int>(trace.stats.size()));
    for (std::size_t j = trace.stats.size() - tail; j < trace.stats.size(); ++j)
      point.tail_x.push_back(trace.stats[j].mean_abs);
    point.tail_errors = trace.stats.back().errors;
    result.points[i] = std::move(point);
  });

  const auto is_indecisive_fp = [](const GammaPoint& p) {
    return p.label.kind == MotionKind::fixed_point &&
           p.label.subkind == FixedPointSubkind::indecisive;
  };
  const auto is_unequivocal_fp = [](const GammaPoint& p) {
    return p.label.kind == MotionKind::fixed_point &&
           p.label.subkind == FixedPointSubkind::unequivocal;
  };
  std::size_t lo = 0;
  while (lo < result.points.size() && is_indecisive_fp(result.points[lo])) ++lo;
  if (lo > 0) result.gamma1_hat = result.points[lo - 1].gamma_db;
  std::size_t hi = result.points.size();
  while (hi > 0 && is_unequivocal_fp(result.points[hi - 1])) --hi;
  if (hi < result.points.size()) result.gamma2_hat = result.points[hi].gamma_db;
  return result;
}

}  // namespace turbowb

#ifndef TURBOWB_DYNAMICS_HPP
#define TURBOWB_DYNAMICS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "turbowb/channel.hpp"
#include "turbowb/loop.hpp"

namespace turbowb {

double mean_abs_llr(const Eigen::ArrayXd& m);
double min_abs_llr(const Eigen::ArrayXd& m);

// Consecutive (x_n, x_{n+1}) pairs of the mean-magnitude projection.
std::vector<std::pair<double, double>> phase_points(const DecoderTrace& trace);

enum class MotionKind { fixed_point, periodic, aperiodic };
enum class FixedPointSubkind { indecisive, unequivocal };

struct MotionLabel {
  MotionKind kind = MotionKind::aperiodic;
  FixedPointSubkind subkind = FixedPointSubkind::indecisive;  // fixed_point only
  int period = 0;            // periodic only, >= 2
  bool sensitive = false;    // aperiodic only; filled by the sensitivity probe
  int transient_length = 0;  // half-iterations before the tail regime
};

std::string to_string(const MotionLabel& label);

struct ClassifyParams {
  // Negative tolerances mean "auto": 1e-3 times the tail mean of x.
  double eps_fp = -1.0;
  double eps_p = -1.0;
  int window = 64;
  int max_period = 32;
};

// Labels the tail of a trace: a fixed point when the last `window` samples
// of x span less than eps_fp (subkind from the tail error counts), else the
// smallest period <= max_period fitting within eps_p, else aperiodic.
MotionLabel classify_motion(const DecoderTrace& trace, const ClassifyParams& params);

// Chaos heuristic: re-decodes with the initial extrinsic perturbed by
// `perturbation` and reports whether the x projections drift apart by a
// factor >= `factor` within `horizon` half-iterations.
bool sensitivity_probe(const DecoderTrace& base, const ChannelObservation& obs,
                       const TurboCodeConfig& config, const Interleaver& pi,
                       int horizon = 50, double perturbation = 1e-6,
                       double factor = 1e3);

struct GammaPoint {
  double gamma_db = 0.0;
  MotionLabel label;
  std::vector<double> tail_x;  // last samples of x, for bifurcation plots
  long tail_errors = 0;
};

struct SweepResult {
  std::vector<GammaPoint> points;
  std::optional<double> gamma1_hat;  // top of the low-end indecisive run
  std::optional<double> gamma2_hat;  // bottom of the high-end unequivocal run
};

struct SweepParams {
  int cap = 1000;  // dynamics half-iteration cap
  ClassifyParams classify;
  int tail_samples = 100;
  bool probe_sensitivity = true;
  int workers = 1;  // grid points are independent
};

// Decodes the all-zero codeword under u scaled to each grid SNR and labels
// the resulting motion. The grid must be sorted ascending.
SweepResult sweep_gamma(const NoiseRealization& u, const std::vector<double>& grid_db,
                        const TurboCodeConfig& config, const Interleaver& pi,
                        const SweepParams& params = {});

}  // namespace turbowb

#endif

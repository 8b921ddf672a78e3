#ifndef TURBOWB_WORKBENCH_HPP
#define TURBOWB_WORKBENCH_HPP

#include <map>
#include <string>
#include <vector>

#include "turbowb/dynamics.hpp"
#include "turbowb/loop.hpp"

namespace turbowb {

inline constexpr const char* kToolVersion = "turbowb 0.1.0";

struct ExperimentConfig {
  TurboCodeConfig code;
  StoppingPolicy policy;

  double gamma_db = 1.0;
  double grid_start = 0.5;
  double grid_stop = 1.5;
  double grid_step = 0.01;
  int blocks = 100;
  std::uint64_t master_seed = 42;
  int dynamics_cap = 1000;
  int burn_in = 10;
  int workers = 1;
  bool noiseless = false;
  bool emit_traces = true;
  bool emit_svg = false;
  ClassifyParams classify;
  int tail_samples = 100;
  std::string out_dir = "out";

  std::vector<double> grid() const;
  void validate() const;

  // Flat key=value round trip; unknown keys are rejected.
  static ExperimentConfig from_file(const std::string& path);
  void apply(const std::string& key, const std::string& value);
  std::map<std::string, std::string> as_map() const;
};

struct BlockOutcome {
  int block_id = 0;
  std::uint64_t substream = 0;
  StopReason stop_reason = StopReason::iteration_cap;
  int stop_half_iteration = -1;
  long errors_at_stop = 0;
  int genie_half_iteration = -1;
  long genie_errors = 0;
  long cap_errors = 0;
  long spread = 0;
};

struct SimulateSummary {
  int blocks = 0;
  double avg_ber = 0.0;
  double avg_half_iterations = 0.0;
  long worst_errors = 0;
  double zcrease_incidence = 0.0;  // fraction of blocks with spread > 0
  std::vector<BlockOutcome> rows;
};

struct StoppingEvalSummary {
  int blocks = 0;
  double ber_policy = 0.0;
  double ber_cap = 0.0;
  double ber_genie = 0.0;
  double avg_half_policy = 0.0;
  double avg_half_cap = 0.0;
  double avg_half_genie = 0.0;
  int fired_count = 0;               // condition-2 stops
  int fired_not_worse = 0;           // traceback errors <= detection-point errors
  int digest_mismatches = 0;         // must stay 0
  std::vector<BlockOutcome> rows;
};

// Monte-Carlo run: fresh data and noise per block, decoded under the
// configured policy. Writes stopping.csv, summary.csv and (optionally) one
// wave CSV per block under <out>/waves/.
SimulateSummary cmd_simulate(const ExperimentConfig& config);

// Gamma sweep of one noise realization; writes bifurcation.csv and
// labels.csv. realization_seed selects the realization.
SweepResult cmd_sweep(const ExperimentConfig& config, std::uint64_t realization_seed);
SweepResult cmd_sweep(const ExperimentConfig& config, const NoiseRealization& u);

// Single-block dynamics trace; writes wave.csv and phase.csv.
DecoderTrace cmd_trace(const ExperimentConfig& config, double gamma_db,
                       std::uint64_t realization_seed);

// Policy vs fixed cap vs genie on the same blocks; writes stopping.csv and
// comparison.csv.
StoppingEvalSummary cmd_stopping_eval(const ExperimentConfig& config);

// Max |bcjr - oracle| over `trials` random instances at block length k.
double cmd_oracle_check(int k, int trials, std::uint64_t seed,
                        const TurboCodeConfig& code = {});

}  // namespace turbowb

#endif

#ifndef TURBOWB_STOPPING_HPP
#define TURBOWB_STOPPING_HPP

#include <optional>
#include <utility>
#include <vector>

#include "turbowb/trace.hpp"

namespace turbowb {

// Two-condition early-stopping rule:
//   1. stop when min|m| rises above theta_min (converged);
//   2. stop when a candidate point (local maximum of E[|m|]) comes in lower
//      than its predecessor, and trace back to that predecessor.
// An optional mean-magnitude threshold is available as a secondary success
// indicator; it is off by default.
struct StoppingPolicy {
  double theta_min = 10.0;
  int max_half_iterations = 64;
  bool enabled = true;
  bool buffer_candidates = true;
  bool mean_threshold_enabled = false;
  double theta_mean = 50.0;

  void validate() const;  // throws std::invalid_argument
};

struct StopDecision {
  enum class Action { keep_going, stop_converged, stop_traceback };
  Action action = Action::keep_going;
  int traceback_to = -1;  // half-iteration index of the traceback target
};

// Interior local maxima of xs. A plateau counts once, at its first index,
// and only when the plateau is strictly above the values on both sides;
// a plateau still running at the end of the sequence is not yet confirmed.
std::vector<int> candidate_points(const std::vector<double>& xs);

// First index j >= 1 whose candidate value is strictly lower than its
// predecessor's.
std::optional<int> detect_zcrease(const std::vector<double>& candidate_values);

// Pure function of (policy, stats prefix); turbo_loop calls it after every
// half-iteration. Replaying a recorded trace reproduces the decisions.
StopDecision consult(const StoppingPolicy& policy,
                     const std::vector<HalfIterStats>& stats);

// Earliest half-iteration achieving the minimum error count.
std::pair<int, long> genie_best_iteration(const DecoderTrace& trace);

// max - min of the error counts for n >= burn_in.
long zcrease_spread(const DecoderTrace& trace, int burn_in);

}  // namespace turbowb

#endif

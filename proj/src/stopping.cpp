#include "turbowb/stopping.hpp"

#include <stdexcept>

namespace turbowb {

void StoppingPolicy::validate() const {
  if (!(theta_min > 0)) throw std::invalid_argument("StoppingPolicy: theta_min must be positive");
  if (max_half_iterations < 2)
    throw std::invalid_argument("StoppingPolicy: max_half_iterations must be >= 2");
}

std::vector<int> candidate_points(const std::vector<double>& xs) {
  std::vector<int> out;
  const int n = static_cast<int>(xs.size());
  int i = 1;
  while (i < n - 1) {
    if (xs[i] > xs[i - 1]) {
      int j = i;  // plateau [i..j] of equal values
      while (j + 1 < n && xs[j + 1] == xs[i]) ++j;
      if (j + 1 < n && xs[j + 1] < xs[i]) {
        out.push_back(i);
        i = j + 1;
        continue;
      }
      i = j + 1;
      continue;
    }
    ++i;
  }
  return out;
}

std::optional<int> detect_zcrease(const std::vector<double>& candidate_values) {
  for (std::size_t j = 1; j < candidate_values.size(); ++j)
    if (candidate_values[j] < candidate_values[j - 1]) return static_cast<int>(j);
  return std::nullopt;
}

StopDecision consult(const StoppingPolicy& policy,
                     const std::vector<HalfIterStats>& stats) {
  StopDecision d;
  if (stats.empty()) return d;
  const HalfIterStats& cur = stats.back();
  if (cur.min_abs >= policy.theta_min) {
    d.action = StopDecision::Action::stop_converged;
    return d;
  }
  if (policy.mean_threshold_enabled && cur.mean_abs >= policy.theta_mean) {
    d.action = StopDecision::Action::stop_converged;
    return d;
  }
  std::vector<double> xs;
  xs.reserve(stats.size());
  for (const auto& s : stats) xs.push_back(s.mean_abs);
  const std::vector<int> cand = candidate_points(xs);
  std::vector<double> values;
  values.reserve(cand.size());
  for (int c : cand) values.push_back(xs[c]);
  if (const auto j = detect_zcrease(values)) {
    d.action = StopDecision::Action::stop_traceback;
    d.traceback_to = cand[*j - 1];
  }
  return d;
}

std::pair<int, long> genie_best_iteration(const DecoderTrace& trace) {
  int best_n = -1;
  long best_errors = -1;
  for (const auto& s : trace.stats) {
    if (s.errors < 0) throw std::invalid_argument("genie_best_iteration: trace lacks error counts");
    if (best_n < 0 || s.errors < best_errors) {
      best_n = s.n;
      best_errors = s.errors;
    }
  }
  if (best_n < 0) throw std::invalid_argument("genie_best_iteration: empty trace");
  return {best_n, best_errors};
}

long zcrease_spread(const DecoderTrace& trace, int burn_in) {
  long lo = -1, hi = -1;
  for (const auto& s : trace.stats) {
    if (s.n < burn_in) continue;
    if (s.errors < 0) throw std::invalid_argument("zcrease_spread: trace lacks error counts");
    if (lo < 0 || s.errors < lo) lo = s.errors;
    if (s.errors > hi) hi = s.errors;
  }
  if (lo < 0) throw std::invalid_argument("zcrease_spread: no samples past burn_in");
  return hi - lo;
}

}  // namespace turbowb

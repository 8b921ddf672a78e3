#ifndef TURBOWB_TRACE_HPP
#define TURBOWB_TRACE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "turbowb/trellis.hpp"

namespace turbowb {

enum class StopReason { converged, zcrease_traceback, iteration_cap };

const char* to_string(StopReason r);

// Per-half-iteration statistics of the extrinsic message vector.
struct HalfIterStats {
  int n = 0;              // half-iteration index, 0-based
  double mean_abs = 0.0;  // E[|m_i|]
  double min_abs = 0.0;   // min |m_i|
  long errors = -1;       // Hamming distance to truth; -1 when truth unknown
  std::uint64_t decisions_digest = 0;
};

struct CandidatePoint {
  int n = 0;
  double mean_abs = 0.0;
};

struct DecoderTrace {
  std::vector<HalfIterStats> stats;
  BitBlock final_decisions;
  StopReason stop_reason = StopReason::iteration_cap;
  int stop_half_iteration = -1;  // last half-iteration executed
  int traceback_to = -1;         // candidate index tracked back to, if any
  std::vector<CandidatePoint> candidate_log;
  std::uint64_t clip_count = 0;
};

// FNV-1a over the decision bytes.
std::uint64_t decisions_digest(const BitBlock& decisions);

// Hamming distance.
long count_block_errors(const BitBlock& decisions, const BitBlock& truth);

}  // namespace turbowb

#endif

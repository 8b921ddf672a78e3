#ifndef TURBOWB_LOOP_HPP
#define TURBOWB_LOOP_HPP

#include "turbowb/channel.hpp"
#include "turbowb/stopping.hpp"
#include "turbowb/trace.hpp"
#include "turbowb/trellis.hpp"

namespace turbowb {

struct DecodeOptions {
  // Constant added to the all-zero initial extrinsic; used by the
  // sensitivity probe.
  double initial_apriori = 0.0;
  // When the extrinsic vector repeats bit-exactly with period one full
  // iteration, the remaining trace is an exact replay of the last two
  // half-iterations; fill it without decoding further. Only honored while
  // the stopping policy is disabled.
  bool fast_forward_exact = false;
};

// The alternating two-decoder schedule. Half-iterations are 0-based and
// start at decoder 1; even indices run decoder 1 (systematic + parity1),
// odd indices run decoder 2 on the interleaved stream. Hard decisions come
// from total LLR = sys + apriori + extrinsic, with ties deciding bit 0.
DecoderTrace decode(const ChannelObservation& obs, const TurboCodeConfig& config,
                    const Interleaver& pi, const StoppingPolicy& policy,
                    const BitBlock* truth = nullptr,
                    const DecodeOptions& options = {});

}  // namespace turbowb

#endif

#ifndef TURBOWB_TRELLIS_HPP
#define TURBOWB_TRELLIS_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace turbowb {

using BitBlock = std::vector<std::uint8_t>;

// Rate-1/3 parallel concatenation of two identical RSC encoders.
//
// Bit conventions, fixed here once: polynomials are octal-coded with the
// LSB as the degree-0 coefficient; state bit j holds the feedback output
// from j+1 steps ago; bit sequences are time-major. Neither constituent is
// terminated, so a k-bit block encodes to exactly 3k code bits.
struct TurboCodeConfig {
  int k = 1024;
  unsigned feedback_poly = 07;     // 1 + D + D^2
  unsigned feedforward_poly = 05;  // 1 + D^2
  std::uint64_t interleaver_seed = 1;
  double llr_saturation = 1e3;
  bool max_log = false;  // max-log-MAP contrast mode; exact log-MAP by default

  int memory() const;
  int num_states() const { return 1 << memory(); }
  void validate() const;  // throws std::invalid_argument on any bad field
};

struct Interleaver {
  std::vector<int> perm;  // bijection on {0..k-1}; output[j] = input[perm[j]]
  std::uint64_t seed = 0;

  template <typename Seq>
  Seq interleave(const Seq& in) const {
    Seq out = in;
    for (std::size_t j = 0; j < perm.size(); ++j) out[j] = in[perm[j]];
    return out;
  }

  template <typename Seq>
  Seq deinterleave(const Seq& in) const {
    Seq out = in;
    for (std::size_t j = 0; j < perm.size(); ++j) out[perm[j]] = in[j];
    return out;
  }
};

struct Codeword {
  BitBlock systematic;
  BitBlock parity1;
  BitBlock parity2;
};

// Branch tables for one RSC constituent, indexed [state][input].
struct TrellisTables {
  int memory = 0;
  int num_states = 0;
  std::vector<std::array<int, 2>> next_state;
  std::vector<std::array<int, 2>> parity;
};

Interleaver build_interleaver(std::uint64_t seed, int k);
TrellisTables build_trellis(const TurboCodeConfig& config);
BitBlock rsc_encode(const BitBlock& bits, const TurboCodeConfig& config);
Codeword turbo_encode(const BitBlock& bits, const TurboCodeConfig& config,
                      const Interleaver& pi);

}  // namespace turbowb

#endif

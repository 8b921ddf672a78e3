#include "turbowb/trellis.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

#include "turbowb/rng.hpp"

namespace turbowb {

namespace {

int poly_degree(unsigned poly) {
  return poly == 0 ? -1 : std::bit_width(poly) - 1;
}

int parity_of(unsigned x) { return std::popcount(x) & 1; }

}  // namespace

int TurboCodeConfig::memory() const {
  return std::max(poly_degree(feedback_poly), poly_degree(feedforward_poly));
}

void TurboCodeConfig::validate() const {
  if (k < 4) throw std::invalid_argument("TurboCodeConfig: k must be >= 4");
  if ((feedback_poly & 1u) == 0)
    throw std::invalid_argument("TurboCodeConfig: feedback polynomial needs its degree-0 coefficient");
  if (feedforward_poly == 0)
    throw std::invalid_argument("TurboCodeConfig: feedforward polynomial must be nonzero");
  if (memory() < 1 || memory() > 4)
    throw std::invalid_argument("TurboCodeConfig: trellis memory must be in [1, 4]");
  if (!(llr_saturation > 0))
    throw std::invalid_argument("TurboCodeConfig: llr_saturation must be positive");
}

Interleaver build_interleaver(std::uint64_t seed, int k) {
  if (k < 4) throw std::invalid_argument("build_interleaver: k must be >= 4");
  Interleaver pi;
  pi.seed = seed;
  pi.perm.resize(k);
  std::iota(pi.perm.begin(), pi.perm.end(), 0);
  Rng rng(seed);
  for (int i = k - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(pi.perm[i], pi.perm[j]);
  }
  return pi;
}

TrellisTables build_trellis(const TurboCodeConfig& config) {
  config.validate();
  TrellisTables t;
  t.memory = config.memory();
  t.num_states = config.num_states();
  t.next_state.resize(t.num_states);
  t.parity.resize(t.num_states);
  const unsigned mask = static_cast<unsigned>(t.num_states - 1);
  for (int s = 0; s < t.num_states; ++s) {
    for (int u = 0; u < 2; ++u) {
      const unsigned us = static_cast<unsigned>(s);
      const int v = u ^ parity_of((config.feedback_poly >> 1) & us);
      const int p = ((config.feedforward_poly & 1u) ? v : 0) ^
                    parity_of((config.feedforward_poly >> 1) & us);
      t.next_state[s][u] = static_cast<int>(((us << 1) & mask) | static_cast<unsigned>(v));
      t.parity[s][u] = p;
    }
  }
  return t;
}

BitBlock rsc_encode(const BitBlock& bits, const TurboCodeConfig& config) {
  config.validate();
  if (static_cast<int>(bits.size()) != config.k)
    throw std::invalid_argument("rsc_encode: block length does not match config.k");
  const TrellisTables t = build_trellis(config);
  BitBlock out(bits.size());
  int state = 0;  // all-zero start; final state left free (unterminated)
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const int u = bits[i] & 1;
    out[i] = static_cast<std::uint8_t>(t.parity[state][u]);
    state = t.next_state[state][u];
  }
  return out;
}

Codeword turbo_encode(const BitBlock& bits, const TurboCodeConfig& config,
                      const Interleaver& pi) {
  if (pi.perm.size() != bits.size())
    throw std::invalid_argument("turbo_encode: interleaver length mismatch");
  Codeword cw;
  cw.systematic = bits;
  cw.parity1 = rsc_encode(bits, config);
  cw.parity2 = rsc_encode(pi.interleave(bits), config);
  return cw;
}

}  // namespace turbowb

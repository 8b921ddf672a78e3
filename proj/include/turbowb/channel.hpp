#ifndef TURBOWB_CHANNEL_HPP
#define TURBOWB_CHANNEL_HPP

#include <Eigen/Core>
#include <cstdint>

#include "turbowb/trellis.hpp"

namespace turbowb {

inline constexpr double kCodeRate = 1.0 / 3.0;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// Noise variance implied by treating gamma as Eb/N0 in linear scale.
inline double sigma2_from_gamma(double gamma_db, double rate = kCodeRate) {
  return 1.0 / (2.0 * rate * db_to_linear(gamma_db));
}

// A noise shape identified up to positive scaling: a unit-norm direction.
// Consecutive-sample ratios are preserved under any rescaling, so one
// direction vector stands for the whole realization family.
struct NoiseRealization {
  Eigen::ArrayXd direction;  // length 3k, unit Euclidean norm
  std::uint64_t seed = 0;
};

// s = BPSK(codeword) + z, laid out [systematic | parity1 | parity2].
struct ChannelObservation {
  Eigen::ArrayXd s;
  double gamma_db = 0.0;
  double sigma2 = 0.0;
};

NoiseRealization sample_realization(std::uint64_t seed, int k);

// Rescales the direction so that ||z||^2 = 3k / (2 R gamma_linear).
Eigen::ArrayXd scale_to_gamma(const NoiseRealization& u, double gamma_db, int k,
                              double rate = kCodeRate);

// gamma = (3k / 2R) / ||z||^2, returned in dB.
double approximate_snr(const Eigen::ArrayXd& z, int k, double rate = kCodeRate);

// BPSK maps bit 0 -> +1, bit 1 -> -1.
ChannelObservation transmit(const Codeword& cw, const Eigen::ArrayXd& z,
                            double gamma_db);

// L_i = 2 s_i / sigma2; LLR > 0 means bit 0 is the more likely.
Eigen::ArrayXd channel_llrs(const ChannelObservation& obs);

void save_realization_csv(const NoiseRealization& u, int k, const std::string& path);
NoiseRealization load_realization_csv(const std::string& path);

}  // namespace turbowb

#endif

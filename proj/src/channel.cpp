#include "turbowb/channel.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "turbowb/rng.hpp"

namespace turbowb {

NoiseRealization sample_realization(std::uint64_t seed, int k) {
  if (k < 4) throw std::invalid_argument("sample_realization: k must be >= 4");
  NoiseRealization u;
  u.seed = seed;
  u.direction.resize(3 * k);
  Rng rng(seed);
  for (Eigen::Index i = 0; i < u.direction.size(); ++i) u.direction[i] = rng.gaussian();
  const double norm = std::sqrt(u.direction.square().sum());
  u.direction /= norm;
  return u;
}

Eigen::ArrayXd scale_to_gamma(const NoiseRealization& u, double gamma_db, int k,
                              double rate) {
  if (!std::isfinite(gamma_db))
    throw std::invalid_argument("scale_to_gamma: gamma_db must be finite");
  if (u.direction.size() != 3 * k)
    throw std::invalid_argument("scale_to_gamma: realization length is not 3k");
  const double target_sq = 3.0 * k / (2.0 * rate * db_to_linear(gamma_db));
  return u.direction * std::sqrt(target_sq);
}

double approximate_snr(const Eigen::ArrayXd& z, int k, double rate) {
  const double nsq = z.square().sum();
  if (!(nsq > 0)) throw std::domain_error("approximate_snr: zero-norm noise has undefined SNR");
  return linear_to_db((3.0 * k / (2.0 * rate)) / nsq);
}

ChannelObservation transmit(const Codeword& cw, const Eigen::ArrayXd& z,
                            double gamma_db) {
  const auto k = static_cast<Eigen::Index>(cw.systematic.size());
  if (z.size() != 3 * k ||
      cw.parity1.size() != cw.systematic.size() ||
      cw.parity2.size() != cw.systematic.size())
    throw std::invalid_argument("transmit: codeword/noise length mismatch");
  ChannelObservation obs;
  obs.gamma_db = gamma_db;
  obs.sigma2 = sigma2_from_gamma(gamma_db);
  obs.s.resize(3 * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    obs.s[i] = (1.0 - 2.0 * cw.systematic[i]) + z[i];
    obs.s[k + i] = (1.0 - 2.0 * cw.parity1[i]) + z[k + i];
    obs.s[2 * k + i] = (1.0 - 2.0 * cw.parity2[i]) + z[2 * k + i];
  }
  return obs;
}

Eigen::ArrayXd channel_llrs(const ChannelObservation& obs) {
  if (!(obs.sigma2 > 0)) throw std::domain_error("channel_llrs: sigma2 must be positive");
  return 2.0 * obs.s / obs.sigma2;
}

void save_realization_csv(const NoiseRealization& u, int k, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "# k=" << k << "\n# seed=" << u.seed << "\ndirection\n";
  char buf[40];
  for (Eigen::Index i = 0; i < u.direction.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", u.direction[i]);
    out << buf << "\n";
  }
}

NoiseRealization load_realization_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  NoiseRealization u;
  std::string line;
  int k = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.rfind("# k=", 0) == 0) k = std::stoi(line.substr(4));
    else if (line.rfind("# seed=", 0) == 0) u.seed = std::stoull(line.substr(7));
    else if (!line.empty() && line != "direction") values.push_back(std::stod(line));
  }
  if (k <= 0 || static_cast<int>(values.size()) != 3 * k)
    throw std::runtime_error("malformed realization file " + path);
  u.direction = Eigen::Map<const Eigen::ArrayXd>(values.data(), values.size());
  return u;
}

}  // namespace turbowb

#include <doctest.h>

#include <cmath>

#include "turbowb/channel.hpp"
#include "turbowb/rng.hpp"

using namespace turbowb;

TEST_CASE("realization is unit norm and deterministic per seed") {
  const auto a = sample_realization(9, 64);
  const auto b = sample_realization(9, 64);
  CHECK(a.direction.size() == 3 * 64);
  CHECK(std::abs(std::sqrt(a.direction.square().sum()) - 1.0) < 1e-12);
  CHECK((a.direction == b.direction).all());
}

TEST_CASE("realization components have near-zero empirical mean at k=1024") {
  const auto u = sample_realization(20240601, 1024);
  CHECK(std::abs(u.direction.mean()) < 4.0 / std::sqrt(3.0 * 1024));
}

TEST_CASE("scale_to_gamma hits the prescribed noise energy") {
  const auto u = sample_realization(3, 1024);
  SUBCASE("0 dB at k=1024 gives ||z||^2 = 4608") {
    const auto z = scale_to_gamma(u, 0.0, 1024);
    CHECK(z.square().sum() == doctest::Approx(4608.0).epsilon(1e-12));
  }
  SUBCASE("0.857332 dB gives ||z||^2 ~= 3782.8") {
    const auto z = scale_to_gamma(u, 0.857332, 1024);
    CHECK(z.square().sum() == doctest::Approx(4608.0 / std::pow(10.0, 0.0857332)).epsilon(1e-12));
  }
  SUBCASE("very high gamma drives the noise energy to zero") {
    const auto z = scale_to_gamma(u, 100.0, 1024);
    CHECK(z.square().sum() < 1e-6);
  }
}

TEST_CASE("approximate_snr inverts scale_to_gamma") {
  const auto u = sample_realization(4, 256);
  for (double gamma : {-3.0, 0.0, 0.7781, 2.5}) {
    CHECK(approximate_snr(scale_to_gamma(u, gamma, 256), 256) ==
          doctest::Approx(gamma).epsilon(1e-12));
  }
  CHECK(approximate_snr(Eigen::ArrayXd::Constant(3 * 1024, std::sqrt(4608.0 / 3072.0)), 1024) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(approximate_snr(Eigen::ArrayXd::Zero(3 * 256), 256), std::domain_error);
}

TEST_CASE("realizations differ only by a positive scalar across gammas") {
  const auto u = sample_realization(8, 64);
  const auto z1 = scale_to_gamma(u, 0.3, 64);
  const auto z2 = scale_to_gamma(u, 1.9, 64);
  const double c = z1[0] / z2[0];
  CHECK(c > 0);
  CHECK(((z1 - c * z2).abs() / z2.abs().maxCoeff()).maxCoeff() < 1e-12);
}

TEST_CASE("transmit applies the BPSK map and adds noise componentwise") {
  TurboCodeConfig cfg;
  cfg.k = 4;
  Codeword cw;
  cw.systematic = {0, 1, 0, 1};
  cw.parity1 = {0, 0, 1, 1};
  cw.parity2 = {1, 1, 1, 1};
  SUBCASE("zero noise maps bits to +-1") {
    const auto obs = transmit(cw, Eigen::ArrayXd::Zero(12), 0.0);
    CHECK(obs.s[0] == 1.0);
    CHECK(obs.s[1] == -1.0);
    CHECK(obs.s[4] == 1.0);
    CHECK(obs.s[8] == -1.0);
    CHECK(obs.sigma2 == doctest::Approx(1.5));
  }
  SUBCASE("all-zero codeword gives s = 1 + z") {
    Codeword zerocw;
    zerocw.systematic = zerocw.parity1 = zerocw.parity2 = BitBlock(4, 0);
    const auto u = sample_realization(77, 4);
    const auto z = scale_to_gamma(u, 0.0, 4);
    const auto obs = transmit(zerocw, z, 0.0);
    CHECK(((obs.s - (1.0 + z)).abs() < 1e-15).all());
  }
  SUBCASE("length mismatch is an error") {
    CHECK_THROWS_AS(transmit(cw, Eigen::ArrayXd::Zero(11), 0.0), std::invalid_argument);
  }
}

TEST_CASE("channel LLRs") {
  ChannelObservation obs;
  obs.s = Eigen::ArrayXd(3);
  obs.s << 1.0, 0.0, -0.5;
  obs.sigma2 = 1.0;
  auto llr = channel_llrs(obs);
  CHECK(llr[0] == 2.0);
  CHECK(llr[1] == 0.0);
  obs.sigma2 = 0.5;
  llr = channel_llrs(obs);
  CHECK(llr[2] == -2.0);
  obs.sigma2 = 0.0;
  CHECK_THROWS_AS(channel_llrs(obs), std::domain_error);
}

TEST_CASE("BPSK hard-threshold recovers the codeword through a noiseless channel") {
  TurboCodeConfig cfg;
  cfg.k = 16;
  const auto pi = build_interleaver(5, 16);
  Rng rng(6);
  BitBlock bits(16);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next() & 1u);
  const auto cw = turbo_encode(bits, cfg, pi);
  const auto obs = transmit(cw, Eigen::ArrayXd::Zero(48), 1.0);
  for (int i = 0; i < 16; ++i) {
    CHECK((obs.s[i] < 0 ? 1 : 0) == cw.systematic[i]);
    CHECK((obs.s[16 + i] < 0 ? 1 : 0) == cw.parity1[i]);
    CHECK((obs.s[32 + i] < 0 ? 1 : 0) == cw.parity2[i]);
  }
}

TEST_CASE("realization CSV round trip") {
  const auto u = sample_realization(1234, 16);
  const std::string path = "test_realization.csv";
  save_realization_csv(u, 16, path);
  const auto v = load_realization_csv(path);
  CHECK(v.seed == u.seed);
  REQUIRE(v.direction.size() == u.direction.size());
  CHECK((v.direction == u.direction).all());
  std::remove(path.c_str());
}

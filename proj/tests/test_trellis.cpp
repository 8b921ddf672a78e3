#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "turbowb/rng.hpp"
#include "turbowb/trellis.hpp"

using namespace turbowb;

namespace {

BitBlock random_block(Rng& rng, int k) {
  BitBlock b(k);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng.next() & 1u);
  return b;
}

BitBlock xor_blocks(const BitBlock& a, const BitBlock& b) {
  BitBlock out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

}  // namespace

TEST_CASE("interleaver is deterministic and a bijection") {
  const auto a = build_interleaver(123, 8);
  const auto b = build_interleaver(123, 8);
  CHECK(a.perm == b.perm);
  auto sorted = a.perm;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expect(8);
  std::iota(expect.begin(), expect.end(), 0);
  CHECK(sorted == expect);
}

TEST_CASE("distinct seeds give distinct permutations at k=1024") {
  // Recorded regression pair; collision probability is ~1/1024!.
  const auto a = build_interleaver(1, 1024);
  const auto b = build_interleaver(2, 1024);
  CHECK(a.perm != b.perm);
}

TEST_CASE("interleave then deinterleave is the identity") {
  Rng rng(7);
  const auto pi = build_interleaver(99, 64);
  std::vector<double> v(64);
  for (auto& x : v) x = rng.gaussian();
  CHECK(pi.deinterleave(pi.interleave(v)) == v);
  CHECK(pi.interleave(pi.deinterleave(v)) == v);
}

TEST_CASE("interleaver rejects k < 4") {
  CHECK_THROWS_AS(build_interleaver(1, 3), std::invalid_argument);
}

TEST_CASE("config validation") {
  TurboCodeConfig bad;
  bad.k = 3;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.feedback_poly = 06;  // no degree-0 coefficient
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.feedforward_poly = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.feedforward_poly = 0145;  // degree 6 > memory limit
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_NOTHROW(TurboCodeConfig{}.validate());
}

TEST_CASE("rsc_encode of all-zero input is all-zero") {
  TurboCodeConfig cfg;
  cfg.k = 16;
  CHECK(rsc_encode(BitBlock(16, 0), cfg) == BitBlock(16, 0));
}

TEST_CASE("rsc_encode impulse response for (7,5) has period-3 state cycle") {
  // Hand-walked trellis: state sequence 00,01,11,10,01,11,10,...
  TurboCodeConfig cfg;
  cfg.k = 10;
  BitBlock impulse(10, 0);
  impulse[0] = 1;
  const BitBlock parity = rsc_encode(impulse, cfg);
  const BitBlock expect = {1, 1, 1, 0, 1, 1, 0, 1, 1, 0};
  CHECK(parity == expect);
}

TEST_CASE("rsc_encode is linear over GF(2)") {
  TurboCodeConfig cfg;
  cfg.k = 128;
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = random_block(rng, cfg.k);
    const auto v = random_block(rng, cfg.k);
    CHECK(rsc_encode(xor_blocks(u, v), cfg) ==
          xor_blocks(rsc_encode(u, cfg), rsc_encode(v, cfg)));
  }
}

TEST_CASE("turbo_encode structure") {
  TurboCodeConfig cfg;
  cfg.k = 8;
  const auto pi = build_interleaver(42, 8);

  SUBCASE("all-zero block gives the all-zero codeword") {
    const auto cw = turbo_encode(BitBlock(8, 0), cfg, pi);
    CHECK(cw.systematic == BitBlock(8, 0));
    CHECK(cw.parity1 == BitBlock(8, 0));
    CHECK(cw.parity2 == BitBlock(8, 0));
  }

  SUBCASE("codeword length is exactly 3k and systematic echoes the input") {
    Rng rng(3);
    const auto bits = random_block(rng, 8);
    const auto cw = turbo_encode(bits, cfg, pi);
    CHECK(cw.systematic == bits);
    CHECK(cw.systematic.size() + cw.parity1.size() + cw.parity2.size() == 24);
    CHECK(cw.parity1 == rsc_encode(bits, cfg));
  }

  SUBCASE("parity2 is the RSC encoding of the interleaved input") {
    BitBlock impulse(8, 0);
    impulse[0] = 1;
    const auto cw = turbo_encode(impulse, cfg, pi);
    CHECK(cw.parity2 == rsc_encode(pi.interleave(impulse), cfg));
  }
}

TEST_CASE("turbo encoding is GF(2)-linear") {
  TurboCodeConfig cfg;
  cfg.k = 64;
  const auto pi = build_interleaver(11, 64);
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = random_block(rng, cfg.k);
    const auto v = random_block(rng, cfg.k);
    const auto cu = turbo_encode(u, cfg, pi);
    const auto cv = turbo_encode(v, cfg, pi);
    const auto cs = turbo_encode(xor_blocks(u, v), cfg, pi);
    CHECK(cs.parity1 == xor_blocks(cu.parity1, cv.parity1));
    CHECK(cs.parity2 == xor_blocks(cu.parity2, cv.parity2));
  }
}

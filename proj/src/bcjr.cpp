#include "turbowb/bcjr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace turbowb {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// max*(a, b) = max + log(1 + e^-|a-b|); symmetric in its arguments.
inline double maxstar(double a, double b, bool max_log) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  if (max_log) return m;
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

// log-sum-exp over a small scratch array. Operands are sorted first so the
// result depends only on the multiset of values, not their order.
inline double logsumexp_sorted(double* v, int n, bool max_log) {
  std::sort(v, v + n);
  const double m = v[n - 1];
  if (m == kNegInf) return kNegInf;
  if (max_log) return m;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += std::exp(v[i] - m);
  return m + std::log(acc);
}

}  // namespace

Eigen::ArrayXd bcjr_extrinsic(const Eigen::ArrayXd& sys_llr,
                              const Eigen::ArrayXd& par_llr,
                              const Eigen::ArrayXd& apriori,
                              const TrellisTables& trellis,
                              double llr_saturation,
                              bool max_log,
                              std::uint64_t* clip_count,
                              bool renormalize) {
  const Eigen::Index k = sys_llr.size();
  if (par_llr.size() != k || apriori.size() != k)
    throw std::invalid_argument("bcjr_extrinsic: input length mismatch");
  if (!sys_llr.allFinite() || !par_llr.allFinite() || !apriori.allFinite())
    throw std::invalid_argument("bcjr_extrinsic: non-finite input LLR");

  const int S = trellis.num_states;

  // Branch metric halves per time step: the input-bit term and the parity
  // term, each 0.5 * (1 - 2 bit) * LLR.
  std::vector<double> half_in(k), half_par(k);
  for (Eigen::Index t = 0; t < k; ++t) {
    half_in[t] = 0.5 * (sys_llr[t] + apriori[t]);
    half_par[t] = 0.5 * par_llr[t];
  }
  const auto branch_metric = [&](Eigen::Index t, int s, int u) {
    const double in_term = u ? -half_in[t] : half_in[t];
    const double par_term = trellis.parity[s][u] ? -half_par[t] : half_par[t];
    return in_term + par_term;
  };

  std::vector<double> alpha(static_cast<std::size_t>(k + 1) * S, kNegInf);
  alpha[0] = 0.0;
  for (Eigen::Index t = 0; t < k; ++t) {
    double* a = &alpha[static_cast<std::size_t>(t) * S];
    double* an = &alpha[static_cast<std::size_t>(t + 1) * S];
    for (int s = 0; s < S; ++s) {
      if (a[s] == kNegInf) continue;
      for (int u = 0; u < 2; ++u)
        an[trellis.next_state[s][u]] =
            maxstar(an[trellis.next_state[s][u]], a[s] + branch_metric(t, s, u), max_log);
    }
    if (renormalize) {
      const double m = *std::max_element(an, an + S);
      for (int s = 0; s < S; ++s) an[s] -= m;
    }
  }

  std::vector<double> beta(static_cast<std::size_t>(k + 1) * S, 0.0);
  for (Eigen::Index t = k - 1; t >= 0; --t) {
    double* b = &beta[static_cast<std::size_t>(t) * S];
    const double* bn = &beta[static_cast<std::size_t>(t + 1) * S];
    for (int s = 0; s < S; ++s) {
      b[s] = maxstar(bn[trellis.next_state[s][0]] + branch_metric(t, s, 0),
                     bn[trellis.next_state[s][1]] + branch_metric(t, s, 1), max_log);
    }
    if (renormalize) {
      const double m = *std::max_element(b, b + S);
      for (int s = 0; s < S; ++s) b[s] -= m;
    }
  }

  Eigen::ArrayXd extrinsic(k);
  std::vector<double> v0(S), v1(S);
  for (Eigen::Index t = 0; t < k; ++t) {
    const double* a = &alpha[static_cast<std::size_t>(t) * S];
    const double* bn = &beta[static_cast<std::size_t>(t + 1) * S];
    for (int s = 0; s < S; ++s) {
      v0[s] = a[s] + branch_metric(t, s, 0) + bn[trellis.next_state[s][0]];
      v1[s] = a[s] + branch_metric(t, s, 1) + bn[trellis.next_state[s][1]];
    }
    const double posterior = logsumexp_sorted(v0.data(), S, max_log) -
                             logsumexp_sorted(v1.data(), S, max_log);
    double e = posterior - sys_llr[t] - apriori[t];
    if (e > llr_saturation) {
      e = llr_saturation;
      if (clip_count) ++*clip_count;
    } else if (e < -llr_saturation) {
      e = -llr_saturation;
      if (clip_count) ++*clip_count;
    }
    extrinsic[t] = e;
  }
  return extrinsic;
}

Eigen::ArrayXd map_oracle_extrinsic(const Eigen::ArrayXd& sys_llr,
                                    const Eigen::ArrayXd& par_llr,
                                    const Eigen::ArrayXd& apriori,
                                    const TurboCodeConfig& config) {
  const int k = static_cast<int>(sys_llr.size());
  if (k > 14)
    throw std::domain_error("map_oracle_extrinsic: refusing k > 14 (2^k enumeration)");
  if (par_llr.size() != k || apriori.size() != k)
    throw std::invalid_argument("map_oracle_extrinsic: input length mismatch");
  TurboCodeConfig cfg = config;
  cfg.k = k;
  const TrellisTables trellis = build_trellis(cfg);

  constexpr double kNegInfL = -std::numeric_limits<double>::infinity();
  std::vector<double> acc0(k, kNegInfL), acc1(k, kNegInfL);
  std::vector<int> bits(k);
  for (std::uint64_t word = 0; word < (1ULL << k); ++word) {
    double logp = 0.0;
    int state = 0;
    for (int t = 0; t < k; ++t) {
      const int u = static_cast<int>((word >> t) & 1u);
      bits[t] = u;
      const int p = trellis.parity[state][u];
      state = trellis.next_state[state][u];
      logp += 0.5 * (1 - 2 * u) * (sys_llr[t] + apriori[t]) +
              0.5 * (1 - 2 * p) * par_llr[t];
    }
    for (int t = 0; t < k; ++t) {
      double& acc = bits[t] ? acc1[t] : acc0[t];
      acc = maxstar(acc, logp, false);
    }
  }

  Eigen::ArrayXd extrinsic(k);
  for (int t = 0; t < k; ++t)
    extrinsic[t] = (acc0[t] - acc1[t]) - sys_llr[t] - apriori[t];
  return extrinsic;
}

}  // namespace turbowb

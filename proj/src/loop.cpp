#include "turbowb/loop.hpp"

#include <optional>
#include <stdexcept>

#include "turbowb/bcjr.hpp"

namespace turbowb {

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::converged: return "converged";
    case StopReason::zcrease_traceback: return "zcrease_traceback";
    case StopReason::iteration_cap: return "iteration_cap";
  }
  return "?";
}

std::uint64_t decisions_digest(const BitBlock& decisions) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : decisions) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

long count_block_errors(const BitBlock& decisions, const BitBlock& truth) {
  if (decisions.size() != truth.size())
    throw std::invalid_argument("count_block_errors: length mismatch");
  long e = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) e += (decisions[i] ^ truth[i]) & 1;
  return e;
}

namespace {

struct BufferedCandidate {
  int n = 0;
  double x = 0.0;
  BitBlock decisions;
};

BitBlock hard_decisions(const Eigen::ArrayXd& total) {
  BitBlock out(total.size());
  for (Eigen::Index i = 0; i < total.size(); ++i)
    out[i] = total[i] < 0.0 ? 1 : 0;  // LLR >= 0 decides bit 0
  return out;
}

}  // namespace

DecoderTrace decode(const ChannelObservation& obs, const TurboCodeConfig& config,
                    const Interleaver& pi, const StoppingPolicy& policy,
                    const BitBlock* truth, const DecodeOptions& options) {
  config.validate();
  policy.validate();
  const int k = config.k;
  if (obs.s.size() != 3 * k) throw std::invalid_argument("decode: observation length is not 3k");
  if (static_cast<int>(pi.perm.size()) != k)
    throw std::invalid_argument("decode: interleaver length mismatch");
  if (truth && static_cast<int>(truth->size()) != k)
    throw std::invalid_argument("decode: truth length mismatch");

  const TrellisTables trellis = build_trellis(config);
  const Eigen::ArrayXd llr = channel_llrs(obs);
  const Eigen::ArrayXd sys = llr.segment(0, k);
  const Eigen::ArrayXd par1 = llr.segment(k, k);
  const Eigen::ArrayXd par2 = llr.segment(2 * k, k);
  const Eigen::ArrayXd sys_pi = pi.interleave(sys);

  DecoderTrace trace;
  const int cap = policy.max_half_iterations;
  trace.stats.reserve(cap);

  // Extrinsic handed to decoder 1 (natural order) / decoder 2 (interleaved).
  Eigen::ArrayXd apriori_nat = Eigen::ArrayXd::Constant(k, options.initial_apriori);
  Eigen::ArrayXd apriori_int;

  // Candidate bookkeeping for traceback. The pending entry is the latest
  // strict rise, confirmed as a candidate by the next strict fall.
  std::optional<BufferedCandidate> pending, last_confirmed, prev_confirmed;
  double prev_x = 0.0;

  // Extrinsic from two half-iterations ago, per decoder, for the exact
  // fixed-cycle fast-forward.
  Eigen::ArrayXd ext_hist[2];
  const bool allow_ff = options.fast_forward_exact && !policy.enabled;

  BitBlock decisions, prev_decisions;
  bool stopped = false;

  for (int n = 0; n < cap; ++n) {
    Eigen::ArrayXd m, total;
    prev_decisions = decisions;
    if (n % 2 == 0) {
      m = bcjr_extrinsic(sys, par1, apriori_nat, trellis, config.llr_saturation,
                         config.max_log, &trace.clip_count);
      total = sys + apriori_nat + m;
      decisions = hard_decisions(total);
      apriori_int = pi.interleave(m);
    } else {
      m = bcjr_extrinsic(sys_pi, par2, apriori_int, trellis, config.llr_saturation,
                         config.max_log, &trace.clip_count);
      total = sys_pi + apriori_int + m;
      decisions = pi.deinterleave(hard_decisions(total));
      apriori_nat = pi.deinterleave(m);
    }

    HalfIterStats st;
    st.n = n;
    // Statistics are over the per-bit decision LLRs (systematic + a priori +
    // extrinsic), the vector the hard decisions are read from. The raw
    // extrinsic is unsuitable here: without trellis termination its final
    // entries stay pinned near the lone parity observation no matter how
    // confident the decoder gets, so their minimum carries no convergence
    // signal.
    st.mean_abs = total.abs().mean();
    st.min_abs = total.abs().minCoeff();
    st.decisions_digest = decisions_digest(decisions);
    if (truth) st.errors = count_block_errors(decisions, *truth);
    trace.stats.push_back(st);

    if (n >= 1) {
      if (st.mean_abs > prev_x) {
        pending = BufferedCandidate{n, st.mean_abs, decisions};
      } else if (st.mean_abs < prev_x && pending) {
        prev_confirmed = std::move(last_confirmed);
        last_confirmed = std::move(pending);
        pending.reset();
      }
    }
    prev_x = st.mean_abs;

    if (policy.enabled) {
      const StopDecision d = consult(policy, trace.stats);
      if (d.action == StopDecision::Action::stop_converged) {
        trace.final_decisions = decisions;
        trace.stop_reason = StopReason::converged;
        trace.stop_half_iteration = n;
        stopped = true;
        break;
      }
      if (d.action == StopDecision::Action::stop_traceback) {
        if (!policy.buffer_candidates)
          throw std::invalid_argument("decode: traceback requested but candidate buffering is disabled");
        if (!prev_confirmed || prev_confirmed->n != d.traceback_to)
          throw std::logic_error("decode: traceback target has no buffered decisions");
        trace.final_decisions = prev_confirmed->decisions;
        trace.stop_reason = StopReason::zcrease_traceback;
        trace.stop_half_iteration = n;
        trace.traceback_to = d.traceback_to;
        stopped = true;
        break;
      }
    }

    if (allow_ff && n >= 2 && ext_hist[n % 2].size() == k &&
        (m == ext_hist[n % 2]).all()) {
      // The message repeats with period one full iteration, so stats from
      // here on replay the last two half-iterations verbatim.
      for (int r = n + 1; r < cap; ++r) {
        HalfIterStats rep = trace.stats[r - 2];
        rep.n = r;
        trace.stats.push_back(rep);
      }
      if ((cap - 1 - n) % 2 == 1) decisions.swap(prev_decisions);
      break;
    }
    ext_hist[n % 2] = std::move(m);
  }

  if (!stopped) {
    trace.final_decisions = decisions;
    trace.stop_reason = StopReason::iteration_cap;
    trace.stop_half_iteration = static_cast<int>(trace.stats.size()) - 1;
  }

  // Recomputed offline so the log covers fast-forwarded tails as well;
  // identical to the online confirmations on any executed prefix.
  std::vector<double> xs;
  xs.reserve(trace.stats.size());
  for (const auto& s : trace.stats) xs.push_back(s.mean_abs);
  trace.candidate_log.clear();
  for (int c : candidate_points(xs))
    trace.candidate_log.push_back({c, xs[c]});

  return trace;
}

}  // namespace turbowb

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "turbowb/channel.hpp"
#include "turbowb/workbench.hpp"

namespace {

using turbowb::ExperimentConfig;

// Pre-scan for --config so file values come first and flags override them.
ExperimentConfig load_base_config(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--config=", 0) == 0) return ExperimentConfig::from_file(arg.substr(9));
    if (arg == "--config" && i + 1 < argc) return ExperimentConfig::from_file(argv[i + 1]);
  }
  return {};
}

void add_common_options(CLI::App* cmd, ExperimentConfig& config) {
  cmd->add_option("--config", "flat key=value config file (flags override it)");
  cmd->add_option("-k,--k", config.code.k, "block length in bits");
  cmd->add_option("--feedback-poly",
                  [&config](const std::vector<std::string>& v) {
                    config.apply("feedback_poly", v.back());
                    return true;
                  },
                  "feedback polynomial, octal");
  cmd->add_option("--feedforward-poly",
                  [&config](const std::vector<std::string>& v) {
                    config.apply("feedforward_poly", v.back());
                    return true;
                  },
                  "feedforward polynomial, octal");
  cmd->add_option("--interleaver-seed", config.code.interleaver_seed, "interleaver seed");
  cmd->add_option("--llr-saturation", config.code.llr_saturation, "extrinsic clip magnitude");
  cmd->add_flag("--max-log", config.code.max_log, "use max-log-MAP instead of exact log-MAP");
  cmd->add_option("--theta-min", config.policy.theta_min, "min-LLR convergence threshold");
  cmd->add_option("--cap", config.policy.max_half_iterations, "half-iteration cap");
  cmd->add_option("--policy-enabled", config.policy.enabled, "enable the stopping policy");
  cmd->add_option("--buffer-candidates", config.policy.buffer_candidates,
                  "buffer candidate-point decisions for traceback");
  cmd->add_option("--gamma-db,--gamma", config.gamma_db, "SNR gamma in dB");
  cmd->add_option("--blocks", config.blocks, "number of blocks");
  cmd->add_option("--master-seed,--seed", config.master_seed, "master seed");
  cmd->add_option("--dynamics-cap", config.dynamics_cap, "half-iteration cap for dynamics runs");
  cmd->add_option("--burn-in", config.burn_in, "half-iterations ignored by the spread statistic");
  cmd->add_option("--workers", config.workers, "worker threads");
  cmd->add_flag("--noiseless", config.noiseless, "transmit with zero noise");
  cmd->add_option("--emit-traces", config.emit_traces, "write one wave CSV per block");
  cmd->add_flag("--svg", config.emit_svg, "also render SVG plots");
  cmd->add_option("-o,--out", config.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"turbowb: turbo-decoding dynamics and early-stopping workbench"};
  app.require_subcommand(1);

  ExperimentConfig config;
  try {
    config = load_base_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo block decoding at one gamma");
  add_common_options(simulate, config);

  auto* sweep = app.add_subcommand("sweep", "gamma sweep of one noise realization");
  add_common_options(sweep, config);
  std::uint64_t realization_seed = 1;
  sweep->add_option("--realization-seed", realization_seed, "noise realization seed");
  sweep->add_option("--grid-start", config.grid_start, "grid start, dB");
  sweep->add_option("--grid-stop", config.grid_stop, "grid stop, dB");
  sweep->add_option("--grid-step", config.grid_step, "grid step, dB");
  std::string export_realization, import_realization;
  sweep->add_option("--export-realization", export_realization, "write the realization to CSV");
  sweep->add_option("--import-realization", import_realization,
                    "read the realization from CSV instead of sampling it");

  auto* trace = app.add_subcommand("trace", "wave/phase trace of a single block");
  add_common_options(trace, config);
  std::uint64_t trace_seed = 1;
  trace->add_option("--realization-seed", trace_seed, "noise realization seed");

  auto* stopping_eval =
      app.add_subcommand("stopping-eval", "policy vs fixed cap vs genie comparison");
  add_common_options(stopping_eval, config);

  auto* oracle = app.add_subcommand("oracle-check", "BCJR vs exhaustive MAP oracle");
  int oracle_k = 10, oracle_trials = 100;
  std::uint64_t oracle_seed = 1;
  oracle->add_option("-k,--k", oracle_k, "block length (<= 14)");
  oracle->add_option("--trials", oracle_trials, "random instances");
  oracle->add_option("--seed", oracle_seed, "RNG seed");

  auto* defaults = app.add_subcommand("defaults", "print all config keys and defaults");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      const auto s = turbowb::cmd_simulate(config);
      std::printf("blocks=%d avg_ber=%g avg_half_iterations=%g worst_errors=%ld zcrease_incidence=%g\n",
                  s.blocks, s.avg_ber, s.avg_half_iterations, s.worst_errors, s.zcrease_incidence);
    } else if (sweep->parsed()) {
      turbowb::NoiseRealization u =
          import_realization.empty()
              ? turbowb::sample_realization(realization_seed, config.code.k)
              : turbowb::load_realization_csv(import_realization);
      if (!export_realization.empty())
        turbowb::save_realization_csv(u, config.code.k, export_realization);
      const auto r = turbowb::cmd_sweep(config, u);
      std::printf("points=%zu gamma1_hat=%s gamma2_hat=%s\n", r.points.size(),
                  r.gamma1_hat ? std::to_string(*r.gamma1_hat).c_str() : "undefined",
                  r.gamma2_hat ? std::to_string(*r.gamma2_hat).c_str() : "undefined");
    } else if (trace->parsed()) {
      const auto t = turbowb::cmd_trace(config, config.gamma_db, trace_seed);
      std::printf("half_iterations=%zu stop_reason=%s final_errors=%ld\n", t.stats.size(),
                  turbowb::to_string(t.stop_reason), t.stats.back().errors);
    } else if (stopping_eval->parsed()) {
      const auto s = turbowb::cmd_stopping_eval(config);
      std::printf("ber policy=%g cap=%g genie=%g | half policy=%g cap=%g genie=%g | "
                  "fired=%d not_worse=%d digest_mismatches=%d\n",
                  s.ber_policy, s.ber_cap, s.ber_genie, s.avg_half_policy, s.avg_half_cap,
                  s.avg_half_genie, s.fired_count, s.fired_not_worse, s.digest_mismatches);
    } else if (oracle->parsed()) {
      const double worst = turbowb::cmd_oracle_check(oracle_k, oracle_trials, oracle_seed);
      std::printf("k=%d trials=%d max_abs_deviation=%.3e\n", oracle_k, oracle_trials, worst);
      if (worst > 1e-9) {
        std::fprintf(stderr, "error: oracle deviation exceeds 1e-9\n");
        return 1;
      }
    } else if (defaults->parsed()) {
      for (const auto& [key, value] : ExperimentConfig{}.as_map())
        std::printf("%s=%s\n", key.c_str(), value.c_str());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

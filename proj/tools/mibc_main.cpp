// Command-line front end: link-performance sweeps writing CSV.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>
#include <thread>

#include "mibc/harness.hpp"

namespace {

using mibc::harness::BERCurve;
using mibc::harness::ScenarioConfig;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  long long trials = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  bool split = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path,
                  "Scenario JSON file (defaults used when omitted)");
  cmd->add_option("--out", args.out_path, "Output CSV path")->required();
  cmd->add_option("--trials", args.trials, "Trials per sweep point");
  cmd->add_option("--seed", args.seed, "RNG seed")->each([&](const std::string&) {
    args.seed_set = true;
  });
  cmd->add_option("--threads", args.threads,
                  "Worker threads (0 = hardware concurrency)");
  cmd->add_flag("--split", args.split,
                "Write one file per curve instead of a stacked CSV");
}

ScenarioConfig make_config(const CommonArgs& args) {
  ScenarioConfig cfg = args.config_path.empty()
                           ? ScenarioConfig{}
                           : mibc::harness::load_scenario(args.config_path);
  if (args.trials > 0) cfg.trials = args.trials;
  if (args.seed_set) cfg.rng_seed = args.seed;
  cfg.validate();
  return cfg;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

int finish(const std::vector<BERCurve>& curves, const CommonArgs& args) {
  mibc::harness::emit_csv(curves, args.out_path, args.split);
  std::size_t skipped = 0;
  for (const auto& c : curves) skipped += c.skipped.size();
  if (skipped > 0) {
    std::fprintf(stderr, "%zu sweep point(s) skipped; see warnings above\n",
                 skipped);
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magnetic-induction backscatter link simulator"};
  app.require_subcommand(1);

  CommonArgs ber_snr_args, ber_cond_args, ber_est_args, eff_args;

  CLI::App* ber_snr = app.add_subcommand(
      "ber-snr", "BER vs beamformed SNR target, one curve per sensor depth");
  add_common(ber_snr, ber_snr_args);

  CLI::App* ber_cond = app.add_subcommand(
      "ber-conductivity", "BER vs soil conductivity at fixed data power");
  add_common(ber_cond, ber_cond_args);

  CLI::App* ber_est = app.add_subcommand(
      "ber-estpower",
      "BER vs channel-estimation power, one curve per conductivity");
  add_common(ber_est, ber_est_args);

  CLI::App* eff = app.add_subcommand(
      "efficiency", "Normalized MI and EM propagation efficiency vs conductivity");
  add_common(eff, eff_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (ber_snr->parsed()) {
      const ScenarioConfig cfg = make_config(ber_snr_args);
      const auto curves =
          mibc::harness::run_ber_vs_snr(cfg, cfg.snr_grid_db, cfg.depth_grid,
                                        resolve_threads(ber_snr_args.threads));
      return finish(curves, ber_snr_args);
    }
    if (ber_cond->parsed()) {
      const ScenarioConfig cfg = make_config(ber_cond_args);
      const auto curve = mibc::harness::run_ber_vs_conductivity(
          cfg, cfg.sigma_grid, resolve_threads(ber_cond_args.threads));
      return finish({curve}, ber_cond_args);
    }
    if (ber_est->parsed()) {
      const ScenarioConfig cfg = make_config(ber_est_args);
      const auto curves = mibc::harness::run_ber_vs_estimation_power(
          cfg, cfg.estpower_grid, cfg.estpower_sigmas,
          resolve_threads(ber_est_args.threads));
      return finish(curves, ber_est_args);
    }
    const ScenarioConfig cfg = make_config(eff_args);
    const auto curves = mibc::harness::run_efficiency_vs_conductivity(
        cfg, cfg.efficiency_sigma_grid);
    return finish(curves, eff_args);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

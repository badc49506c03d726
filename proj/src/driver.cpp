#include "ehfl/driver.hpp"

#include <cstdio>
#include <stdexcept>

namespace ehfl::driver {

std::string_view bound_scenario_name(BoundScenario s) {
  switch (s) {
    case BoundScenario::conventional:
      return "conventional";
    case BoundScenario::eh_error_free:
      return "eh_error_free";
    case BoundScenario::eh_ota:
      return "eh_ota";
  }
  return "?";
}

const std::vector<BoundScenario>& all_bound_scenarios() {
  static const std::vector<BoundScenario> all = {
      BoundScenario::conventional, BoundScenario::eh_error_free, BoundScenario::eh_ota};
  return all;
}

std::shared_ptr<model::LossTask> build_task(const config::RunConfig& cfg) {
  const std::vector<std::size_t> sizes(cfg.devices, cfg.samples_per_device);
  switch (cfg.task) {
    case config::TaskKind::quadratic:
      return std::make_shared<model::QuadraticTask>(cfg.devices, cfg.model_dim, sizes, cfg.seed);
    case config::TaskKind::logistic:
      return std::make_shared<model::LogisticTask>(cfg.devices, cfg.model_dim, sizes, cfg.seed);
    case config::TaskKind::dense_net:
      return std::make_shared<model::DenseNetTask>(cfg.devices, sizes, cfg.seed);
  }
  throw std::invalid_argument("driver: unknown task kind");
}

trainer::Trainer build_trainer(const config::RunConfig& cfg, trainer::Scenario scenario) {
  trainer::Options opts;
  opts.scenario = scenario;
  opts.tau = cfg.tau;
  opts.eta = cfg.eta;
  opts.batch = cfg.batch;
  opts.optimizer = cfg.optimizer;
  opts.seed = cfg.seed;
  opts.antennas = cfg.antennas;
  opts.sigma_h2 = cfg.sigma_h2;
  opts.sigma_z2 = cfg.sigma_z2;
  opts.beta_bar = cfg.beta_bar;

  auto task = build_task(cfg);
  auto profiles = trainer::assign_profiles(cfg.energy_groups, cfg.devices, cfg.seed);
  auto topology =
      channel::build_topology(cfg.devices, cfg.d_min, cfg.d_max, cfg.path_loss_exp, cfg.seed);
  return trainer::Trainer(std::move(task), std::move(profiles), std::move(topology), opts);
}

std::vector<trainer::RoundRecord> run_scenario(const config::RunConfig& cfg,
                                               trainer::Scenario scenario) {
  kernels::select(cfg.kernels);
  trainer::Trainer t = build_trainer(cfg, scenario);
  return t.run(cfg.rounds);
}

bound::Params bound_params(const config::RunConfig& cfg, BoundScenario scenario) {
  bound::Params p;
  p.devices = cfg.devices;
  p.antennas = cfg.antennas;
  p.half_dim = cfg.model_dim / 2;
  p.tau = cfg.tau;
  p.alpha = scenario == BoundScenario::conventional ? 1.0 : cfg.alpha;
  p.beta.assign(cfg.devices, cfg.bound_beta);
  p.sigma_h2 = cfg.sigma_h2;
  p.sigma_z2 = cfg.sigma_z2;
  p.grad_bound_sq = cfg.g2;
  p.smooth = cfg.l_smooth;
  p.strong_convexity = cfg.mu;
  p.dataset_bias = cfg.gamma_bias;
  p.eta = cfg.eta;
  p.dist0_sq = cfg.dist0_sq;
  return p;
}

std::vector<bound::TracePoint> run_bound(const config::RunConfig& cfg, BoundScenario scenario) {
  const bound::ChannelModel channel = scenario == BoundScenario::eh_ota
                                          ? bound::ChannelModel::ota
                                          : bound::ChannelModel::error_free;
  return bound::bound_trace(bound_params(cfg, scenario), cfg.rounds, cfg.a_variant, channel,
                            cfg.participation, cfg.seed);
}

namespace {

std::filesystem::path prepare_out_dir(const config::RunConfig& cfg) {
  const std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void finalize_manifest(config::RunConfig& cfg) {
  kernels::select(cfg.kernels);
  // pin the auto-selected backend so a manifest re-run uses the same kernels
  cfg.resolved["kernels"] = kernels::active_name();
  // where the files land is a property of the invocation, not the experiment
  cfg.resolved.erase("out_dir");
}

}  // namespace

std::vector<std::filesystem::path> emit_simulate(config::RunConfig cfg) {
  finalize_manifest(cfg);
  const auto dir = prepare_out_dir(cfg);
  const auto records = run_scenario(cfg, cfg.scenario);
  std::vector<std::filesystem::path> written;
  const auto csv = dir / (std::string(trainer::scenario_name(cfg.scenario)) + ".csv");
  csvio::write_round_csv(csv, records);
  written.push_back(csv);
  const auto manifest = dir / "manifest.txt";
  csvio::write_manifest(manifest, cfg.resolved);
  written.push_back(manifest);
  return written;
}

std::vector<std::filesystem::path> emit_sweep(config::RunConfig cfg) {
  finalize_manifest(cfg);
  const auto dir = prepare_out_dir(cfg);
  std::vector<std::filesystem::path> written;
  for (trainer::Scenario s : trainer::all_scenarios()) {
    const auto records = run_scenario(cfg, s);
    const auto csv = dir / (std::string(trainer::scenario_name(s)) + ".csv");
    csvio::write_round_csv(csv, records);
    written.push_back(csv);
  }
  const auto manifest = dir / "manifest.txt";
  csvio::write_manifest(manifest, cfg.resolved);
  written.push_back(manifest);
  return written;
}

std::vector<std::filesystem::path> emit_bound(config::RunConfig cfg) {
  finalize_manifest(cfg);
  const auto dir = prepare_out_dir(cfg);
  std::vector<std::filesystem::path> written;
  for (BoundScenario s : all_bound_scenarios()) {
    const auto trace = run_bound(cfg, s);
    const auto csv = dir / ("bound_" + std::string(bound_scenario_name(s)) + ".csv");
    csvio::write_bound_csv(csv, trace, static_cast<std::size_t>(cfg.rounds));
    written.push_back(csv);
    // both pairwise-coefficient variants as diagnostics
    config::RunConfig other = cfg;
    other.a_variant = cfg.a_variant == bound::AVariant::theorem1 ? bound::AVariant::lemma4
                                                                 : bound::AVariant::theorem1;
    const auto alt = run_bound(other, s);
    std::printf("bound %-13s final loss bound %.6g (%s), %.6g (%s)\n",
                std::string(bound_scenario_name(s)).c_str(), trace.back().loss_bound,
                cfg.a_variant == bound::AVariant::theorem1 ? "theorem1" : "lemma4",
                alt.back().loss_bound,
                other.a_variant == bound::AVariant::theorem1 ? "theorem1" : "lemma4");
  }
  const auto manifest = dir / "manifest.txt";
  csvio::write_manifest(manifest, cfg.resolved);
  written.push_back(manifest);
  return written;
}

}  // namespace ehfl::driver

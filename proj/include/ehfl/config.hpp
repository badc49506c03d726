#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ehfl/bound.hpp"
#include "ehfl/energy.hpp"
#include "ehfl/trainer.hpp"

namespace ehfl::config {

enum class Command { simulate, bound, sweep };

enum class TaskKind { quadratic, logistic, dense_net };
TaskKind parse_task(std::string_view name);

// Fully resolved run configuration. One flat key=value namespace shared by
// all subcommands; defaults depend on the subcommand (the bound evaluator
// defaults to the analysis-figure parameter set, the simulator to the
// desk-scale experiment matrix).
struct RunConfig {
  Command command = Command::simulate;

  std::uint64_t seed = 1;
  trainer::Scenario scenario = trainer::Scenario::eh_ota;
  std::int64_t rounds = 1000;
  int tau = 1;
  trainer::EtaSchedule eta{};
  trainer::Optimizer optimizer = trainer::Optimizer::sgd;
  TaskKind task = TaskKind::quadratic;
  std::size_t model_dim = 32;
  std::size_t devices = 40;
  std::size_t antennas = 200;
  std::size_t samples_per_device = 256;
  std::size_t batch = 128;
  std::vector<energy::Profile> energy_groups;
  double d_min = 0.5;
  double d_max = 2.0;
  double path_loss_exp = 4.0;
  double sigma_h2 = 1.0;
  double sigma_z2 = 1.0;
  trainer::BetaBarMode beta_bar{};
  std::string kernels = "auto";
  std::string out_dir = ".";

  // bound evaluator
  double alpha = 0.3375;
  double mu = 1.0;
  double l_smooth = 10.0;
  double g2 = 1.0;
  double gamma_bias = 0.0;
  double dist0_sq = 1e3;
  double bound_beta = 1.0;
  bound::AVariant a_variant = bound::AVariant::theorem1;
  bound::Participation participation = bound::Participation::expected;

  // final key=value view, written to the manifest
  std::map<std::string, std::string> resolved;
};

// Parses the optional config file (flat key=value lines, '#' comments) and
// then the override list ("key=value" strings), applies subcommand defaults,
// validates every field and rejects unknown keys.
RunConfig parse_config(Command command, const std::optional<std::filesystem::path>& file,
                       const std::vector<std::string>& overrides);

}  // namespace ehfl::config

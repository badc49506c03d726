#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ehfl/channel.hpp"
#include "ehfl/energy.hpp"
#include "ehfl/model.hpp"
#include "ehfl/ota.hpp"

namespace ehfl::trainer {

using Vec = vec::Vec;

enum class Scenario {
  conventional_fl,            // full participation, error-free aggregation
  ota_full_energy,            // full participation, over-the-air aggregation
  eh_error_free,              // energy harvesting, error-free, cooldown weighting
  eh_error_free_unweighted,   // energy harvesting, error-free, c_m forced to 1
  eh_ota,                     // energy harvesting, over-the-air
};

Scenario parse_scenario(std::string_view name);
std::string_view scenario_name(Scenario s);
const std::vector<Scenario>& all_scenarios();

inline bool scenario_full_energy(Scenario s) {
  return s == Scenario::conventional_fl || s == Scenario::ota_full_energy;
}
inline bool scenario_uses_ota(Scenario s) {
  return s == Scenario::ota_full_energy || s == Scenario::eh_ota;
}
inline bool scenario_cooldown_weighted(Scenario s) {
  return s != Scenario::eh_error_free_unweighted;
}

// eta(t) = max(0, base - decay * t)
struct EtaSchedule {
  double base = 0.05;
  double decay = 0.0;
  double at(std::int64_t t) const {
    const double v = base - decay * static_cast<double>(t);
    return v > 0.0 ? v : 0.0;
  }
  bool constant() const { return decay == 0.0; }
  // "0.05", "const:0.05" or "linear:1e-2:1e-6"
  static EtaSchedule parse(std::string_view spec);
  std::string to_string() const;
};

enum class Optimizer { sgd, adam };
Optimizer parse_optimizer(std::string_view name);

struct BetaBarMode {
  enum class Kind { mean_participants, mean_all, fixed };
  Kind kind = Kind::mean_participants;
  double value = 1.0;  // for fixed
  static BetaBarMode parse(std::string_view spec);
  std::string to_string() const;
};

// One line of the training trace; appended exactly once per round, skipped
// rounds included.
struct RoundRecord {
  std::int64_t t = 0;
  std::size_t participants = 0;
  double weight_sum = 0.0;  // C(t)
  double loss = 0.0;
  double accuracy = 0.0;  // NaN for non-classification tasks
  double signal_power = 0.0;
  double interference_power = 0.0;
  double noise_power = 0.0;
  double transmit_energy = 0.0;  // OTA scenarios: sum_m ||x_m||^2 this round
  bool skipped = false;
  double wall_seconds = 0.0;
};

struct Options {
  Scenario scenario = Scenario::eh_error_free;
  int tau = 1;
  EtaSchedule eta{};
  std::size_t batch = 128;
  Optimizer optimizer = Optimizer::sgd;
  std::uint64_t seed = 1;
  std::size_t antennas = 0;  // K; required for OTA scenarios
  double sigma_h2 = 1.0;
  double sigma_z2 = 1.0;
  BetaBarMode beta_bar{};
};

// Drives global rounds: energy sampling, local tau-step updates on the
// participants, cooldown-weighted scaling, aggregation through the selected
// backend, the global update, and metric logging. Deterministic given the
// master seed.
class Trainer {
 public:
  Trainer(std::shared_ptr<const model::LossTask> task, std::vector<energy::Profile> profiles,
          channel::Topology topology, Options options);

  RoundRecord run_round();
  std::vector<RoundRecord> run(std::int64_t rounds);

  const Vec& weights() const { return theta_; }
  std::int64_t round() const { return t_; }
  const Options& options() const { return options_; }
  const model::LossTask& task() const { return *task_; }
  const channel::Topology& topology() const { return topology_; }
  const energy::Profile& profile(std::size_t m) const { return profiles_.at(m); }

 private:
  // tau local steps from theta_; returns the model difference
  void local_delta(std::size_t device, double eta, Vec& out);
  double resolve_beta_bar(std::span<const std::size_t> members) const;

  std::shared_ptr<const model::LossTask> task_;
  std::vector<energy::Profile> profiles_;
  channel::Topology topology_;
  Options options_;
  Vec theta_;
  std::vector<energy::State> states_;
  std::int64_t t_ = 0;

  // workspaces
  Vec theta_work_, grad_, adam_m_, adam_v_;
  channel::Realization channel_work_;
};

// Builds uniform-profile phases and group assignments: device m belongs to
// group m * groups / devices; uniform phases are drawn per device from the
// seeded phase stream.
std::vector<energy::Profile> assign_profiles(const std::vector<energy::Profile>& groups,
                                             std::size_t devices, std::uint64_t master_seed);

}  // namespace ehfl::trainer

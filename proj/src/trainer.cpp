#include "ehfl/trainer.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace ehfl::trainer {

namespace {

struct ScenarioName {
  Scenario scenario;
  std::string_view name;
};

constexpr ScenarioName kScenarioNames[] = {
    {Scenario::conventional_fl, "conventional_fl"},
    {Scenario::ota_full_energy, "ota_full_energy"},
    {Scenario::eh_error_free, "eh_error_free"},
    {Scenario::eh_error_free_unweighted, "eh_error_free_unweighted"},
    {Scenario::eh_ota, "eh_ota"},
};

}  // namespace

Scenario parse_scenario(std::string_view name) {
  for (const auto& s : kScenarioNames) {
    if (s.name == name) return s.scenario;
  }
  throw std::invalid_argument("scenario: unknown name '" + std::string(name) +
                              "' (expected conventional_fl, ota_full_energy, eh_error_free, "
                              "eh_error_free_unweighted or eh_ota)");
}

std::string_view scenario_name(Scenario s) {
  for (const auto& e : kScenarioNames) {
    if (e.scenario == s) return e.name;
  }
  return "?";
}

const std::vector<Scenario>& all_scenarios() {
  static const std::vector<Scenario> all = {
      Scenario::conventional_fl, Scenario::ota_full_energy, Scenario::eh_error_free,
      Scenario::eh_error_free_unweighted, Scenario::eh_ota};
  return all;
}

EtaSchedule EtaSchedule::parse(std::string_view spec) {
  EtaSchedule eta;
  try {
    if (spec.rfind("const:", 0) == 0) {
      eta.base = std::stod(std::string(spec.substr(6)));
    } else if (spec.rfind("linear:", 0) == 0) {
      const std::string rest(spec.substr(7));
      const auto colon = rest.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("eta: linear schedule needs linear:a:b");
      eta.base = std::stod(rest.substr(0, colon));
      eta.decay = std::stod(rest.substr(colon + 1));
    } else {
      eta.base = std::stod(std::string(spec));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("eta: bad schedule spec '" + std::string(spec) + "'");
  }
  if (eta.base < 0.0 || eta.decay < 0.0)
    throw std::invalid_argument("eta: schedule coefficients must be >= 0");
  return eta;
}

std::string EtaSchedule::to_string() const {
  char buf[64];
  if (decay == 0.0) {
    std::snprintf(buf, sizeof buf, "const:%.17g", base);
  } else {
    std::snprintf(buf, sizeof buf, "linear:%.17g:%.17g", base, decay);
  }
  return buf;
}

Optimizer parse_optimizer(std::string_view name) {
  if (name == "sgd") return Optimizer::sgd;
  if (name == "adam") return Optimizer::adam;
  throw std::invalid_argument("optimizer: unknown name '" + std::string(name) + "'");
}

BetaBarMode BetaBarMode::parse(std::string_view spec) {
  BetaBarMode mode;
  if (spec == "mean_participants") {
    mode.kind = Kind::mean_participants;
  } else if (spec == "mean_all") {
    mode.kind = Kind::mean_all;
  } else if (spec.rfind("fixed:", 0) == 0) {
    mode.kind = Kind::fixed;
    try {
      mode.value = std::stod(std::string(spec.substr(6)));
    } catch (const std::exception&) {
      throw std::invalid_argument("beta_bar: bad fixed value in '" + std::string(spec) + "'");
    }
    if (!(mode.value > 0.0)) throw std::invalid_argument("beta_bar: fixed value must be > 0");
  } else {
    throw std::invalid_argument("beta_bar: unknown mode '" + std::string(spec) + "'");
  }
  return mode;
}

std::string BetaBarMode::to_string() const {
  switch (kind) {
    case Kind::mean_participants:
      return "mean_participants";
    case Kind::mean_all:
      return "mean_all";
    case Kind::fixed: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "fixed:%.17g", value);
      return buf;
    }
  }
  return "?";
}

std::vector<energy::Profile> assign_profiles(const std::vector<energy::Profile>& groups,
                                             std::size_t devices, std::uint64_t master_seed) {
  if (groups.empty()) throw std::invalid_argument("energy: at least one profile group required");
  std::vector<energy::Profile> profiles(devices);
  for (std::size_t m = 0; m < devices; ++m) {
    const std::size_t g = m * groups.size() / devices;
    energy::Profile p = groups[g];
    if (p.kind == energy::Profile::Kind::uniform && p.period > 1) {
      rng::Generator gen(master_seed, rng::Stream::uniform_phase, m);
      p.phase = static_cast<std::int64_t>(gen.uniform_index(static_cast<std::uint64_t>(p.period)));
    }
    profiles[m] = p;
  }
  return profiles;
}

Trainer::Trainer(std::shared_ptr<const model::LossTask> task,
                 std::vector<energy::Profile> profiles, channel::Topology topology,
                 Options options)
    : task_(std::move(task)),
      profiles_(std::move(profiles)),
      topology_(std::move(topology)),
      options_(options) {
  const std::size_t devices = task_->device_count();
  if (profiles_.size() != devices)
    throw std::invalid_argument("trainer: one energy profile per device required");
  if (topology_.beta.size() != devices)
    throw std::invalid_argument("trainer: topology size must match device count");
  if (options_.tau < 1) throw std::invalid_argument("trainer: tau must be >= 1");
  if (options_.batch == 0) throw std::invalid_argument("trainer: batch size must be >= 1");
  if (scenario_uses_ota(options_.scenario) && options_.antennas == 0)
    throw std::invalid_argument("trainer: OTA scenarios need a positive antenna count");
  if (task_->dim() % 2 != 0) throw std::invalid_argument("trainer: model dimension must be even");

  theta_ = task_->initial_weights(options_.seed);
  states_.assign(devices, energy::State{});
  theta_work_.resize(task_->dim());
  grad_.resize(task_->dim());
}

void Trainer::local_delta(std::size_t device, double eta, Vec& out) {
  theta_work_ = theta_;
  rng::Generator batch_gen(options_.seed, rng::Stream::batch, device,
                           static_cast<std::uint64_t>(t_));
  const std::size_t dataset = task_->sample_count(device);
  const bool full_batch = options_.batch >= dataset;
  std::vector<std::uint32_t> batch;
  if (!full_batch) batch.resize(options_.batch);

  const bool adam = options_.optimizer == Optimizer::adam;
  if (adam) {
    adam_m_.assign(task_->dim(), 0.0);
    adam_v_.assign(task_->dim(), 0.0);
  }
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;

  for (int step = 0; step < options_.tau; ++step) {
    if (!full_batch) {
      for (auto& idx : batch)
        idx = static_cast<std::uint32_t>(batch_gen.uniform_index(dataset));
    }
    task_->stochastic_gradient(device, theta_work_, batch, grad_);
    if (!adam) {
      vec::axpy(theta_work_, -eta, grad_);
    } else {
      const double bc1 = 1.0 - std::pow(kBeta1, step + 1);
      const double bc2 = 1.0 - std::pow(kBeta2, step + 1);
      for (std::size_t i = 0; i < grad_.size(); ++i) {
        adam_m_[i] = kBeta1 * adam_m_[i] + (1.0 - kBeta1) * grad_[i];
        adam_v_[i] = kBeta2 * adam_v_[i] + (1.0 - kBeta2) * grad_[i] * grad_[i];
        const double mhat = adam_m_[i] / bc1;
        const double vhat = adam_v_[i] / bc2;
        theta_work_[i] -= eta * mhat / (std::sqrt(vhat) + kEps);
      }
    }
  }
  out = theta_work_;
  vec::axpy(out, -1.0, theta_);
}

double Trainer::resolve_beta_bar(std::span<const std::size_t> members) const {
  switch (options_.beta_bar.kind) {
    case BetaBarMode::Kind::mean_participants:
      return channel::mean_beta(topology_, members);
    case BetaBarMode::Kind::mean_all:
      return channel::mean_beta_all(topology_);
    case BetaBarMode::Kind::fixed:
      return options_.beta_bar.value;
  }
  return 1.0;
}

RoundRecord Trainer::run_round() {
  const auto start = std::chrono::steady_clock::now();
  const std::int64_t t = t_;
  RoundRecord rec;
  rec.t = t;

  // participation
  energy::Round round;
  std::vector<bool> arrived(profiles_.size(), false);
  if (scenario_full_energy(options_.scenario)) {
    round.members.resize(profiles_.size());
    round.cooldowns.assign(profiles_.size(), 0);
    for (std::size_t m = 0; m < profiles_.size(); ++m) {
      round.members[m] = m;
      round.cooldowns[m] = states_[m].cooldown_at(t);
      arrived[m] = true;
    }
  } else {
    round = energy::participants(profiles_, states_, t, options_.seed);
    for (std::size_t m : round.members) arrived[m] = true;
  }

  const double eta = options_.eta.at(t);

  if (round.members.empty()) {
    rec.skipped = true;
    rec.loss = task_->global_loss(theta_);
    rec.accuracy = task_->classification() ? task_->test_accuracy(theta_)
                                           : std::numeric_limits<double>::quiet_NaN();
  } else {
    // local updates and cooldown-weighted scaling
    double participant_samples = 0.0;
    for (std::size_t m : round.members)
      participant_samples += static_cast<double>(task_->sample_count(m));

    std::vector<ota::ScaledDifference> scaled(round.members.size());
    Vec delta;
    for (std::size_t i = 0; i < round.members.size(); ++i) {
      const std::size_t m = round.members[i];
      local_delta(m, eta, delta);
      const double p_m = static_cast<double>(task_->sample_count(m)) / participant_samples;
      const std::int64_t c_m = scenario_cooldown_weighted(options_.scenario)
                                   ? round.cooldowns[i]
                                   : 1;
      scaled[i] = ota::scale_difference(delta, p_m, c_m);
    }
    double weight_sum = 0.0;
    for (const auto& s : scaled) weight_sum += s.weight;
    rec.weight_sum = weight_sum;
    rec.participants = round.members.size();

    if (!scenario_uses_ota(options_.scenario)) {
      Vec update = *aggregate_error_free(scaled);
      vec::add(theta_, update);
    } else {
      const std::size_t symbols = task_->dim() / 2;
      std::vector<model::ComplexSymbolVector> x(scaled.size());
      for (std::size_t i = 0; i < scaled.size(); ++i) x[i] = model::pack(scaled[i].delta);
      channel::draw(channel_work_, topology_, round.members, options_.antennas, symbols,
                    options_.sigma_h2, options_.sigma_z2, options_.seed, t);
      const ota::CombinedSignal combined = ota::transmit_and_combine(x, channel_work_);
      const double beta_bar = resolve_beta_bar(round.members);
      Vec update = ota::recover(combined, weight_sum, options_.sigma_h2, beta_bar);
      vec::add(theta_, update);
      const ota::TermPowers powers = ota::mean_powers(combined);
      rec.signal_power = powers.signal;
      rec.interference_power = powers.interference;
      rec.noise_power = powers.noise;
      rec.transmit_energy = ota::transmit_energy(x);
    }
    for (double v : theta_) {
      if (!std::isfinite(v)) throw std::runtime_error("trainer: non-finite global weights");
    }
    rec.loss = task_->global_loss(theta_);
    rec.accuracy = task_->classification() ? task_->test_accuracy(theta_)
                                           : std::numeric_limits<double>::quiet_NaN();
  }

  for (std::size_t m = 0; m < states_.size(); ++m) {
    states_[m] = energy::update_cooldown(states_[m], t, arrived[m]);
  }
  ++t_;
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<RoundRecord> Trainer::run(std::int64_t rounds) {
  if (rounds < 0) throw std::invalid_argument("trainer: round count must be >= 0");
  std::vector<RoundRecord> records;
  records.reserve(static_cast<std::size_t>(rounds));
  for (std::int64_t i = 0; i < rounds; ++i) records.push_back(run_round());
  return records;
}

}  // namespace ehfl::trainer

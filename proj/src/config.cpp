#include "ehfl/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ehfl::config {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "seed",        "scenario",   "rounds",       "tau",
      "eta",         "optimizer",  "task",         "model_dim",
      "devices",     "antennas",   "samples_per_device", "batch",
      "energy",      "d_min",      "d_max",        "path_loss_exp",
      "sigma_h2",    "sigma_z2",   "beta_bar",     "kernels",
      "out_dir",     "alpha",      "mu",           "l_smooth",
      "g2",          "gamma_bias", "dist0_sq",     "bound_beta",
      "a_variant",   "participation",
  };
  return keys;
}

void require_known(const std::string& key, const std::string& where) {
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end())
    throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
}

std::map<std::string, std::string> defaults(Command cmd) {
  std::map<std::string, std::string> kv = {
      {"seed", "1"},
      {"scenario", "eh_ota"},
      {"tau", "1"},
      {"optimizer", "sgd"},
      {"task", "quadratic"},
      {"devices", "40"},
      {"samples_per_device", "256"},
      {"batch", "128"},
      {"energy", "bernoulli:1,bernoulli:0.2,bernoulli:0.1,bernoulli:0.05"},
      {"d_min", "0.5"},
      {"d_max", "2"},
      {"path_loss_exp", "4"},
      {"sigma_h2", "1"},
      {"beta_bar", "mean_participants"},
      {"kernels", "auto"},
      {"out_dir", "."},
      {"alpha", "0.3375"},
      {"mu", "1"},
      {"l_smooth", "10"},
      {"g2", "1"},
      {"gamma_bias", "0"},
      {"dist0_sq", "1000"},
      {"bound_beta", "1"},
      {"a_variant", "theorem1"},
      {"participation", "expected"},
  };
  if (cmd == Command::bound) {
    kv["rounds"] = "400";
    kv["eta"] = "linear:0.01:1e-6";
    kv["model_dim"] = "307498";
    kv["sigma_z2"] = "5";
  } else {
    kv["rounds"] = "1000";
    kv["eta"] = "const:0.05";
    kv["model_dim"] = "32";
    kv["sigma_z2"] = "1";
  }
  // antennas depends on devices; resolved after user input is applied
  return kv;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
    const std::uint64_t out = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return out;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: field '" + key + "' expects a non-negative integer, got '" +
                                v + "'");
  }
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return out;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: field '" + key + "' expects a number, got '" + v + "'");
  }
}

std::vector<energy::Profile> parse_energy(const std::string& v) {
  std::vector<energy::Profile> groups;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string spec = trim(item);
    if (spec.empty()) continue;
    groups.push_back(energy::Profile::parse(spec));
  }
  if (groups.empty()) throw std::invalid_argument("config: field 'energy' is empty");
  return groups;
}

}  // namespace

TaskKind parse_task(std::string_view name) {
  if (name == "quadratic") return TaskKind::quadratic;
  if (name == "logistic") return TaskKind::logistic;
  if (name == "dense_net") return TaskKind::dense_net;
  throw std::invalid_argument("config: field 'task' has unknown value '" + std::string(name) +
                              "'");
}

RunConfig parse_config(Command command, const std::optional<std::filesystem::path>& file,
                       const std::vector<std::string>& overrides) {
  std::map<std::string, std::string> kv = defaults(command);

  if (file) {
    std::ifstream in(*file);
    if (!in) throw std::runtime_error("config: cannot open '" + file->string() + "'");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const std::string stripped = trim(line);
      if (stripped.empty()) continue;
      const auto eq = stripped.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                    " of '" + file->string() + "' is not key = value");
      const std::string key = trim(stripped.substr(0, eq));
      const std::string value = trim(stripped.substr(eq + 1));
      require_known(key, "'" + file->string() + "'");
      kv[key] = value;
    }
  }
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: override '" + o + "' is not key=value");
    const std::string key = trim(o.substr(0, eq));
    const std::string value = trim(o.substr(eq + 1));
    require_known(key, "overrides");
    kv[key] = value;
  }

  RunConfig cfg;
  cfg.command = command;
  cfg.seed = parse_u64("seed", kv["seed"]);
  cfg.scenario = trainer::parse_scenario(kv["scenario"]);
  cfg.rounds = static_cast<std::int64_t>(parse_u64("rounds", kv["rounds"]));
  cfg.tau = static_cast<int>(parse_u64("tau", kv["tau"]));
  if (cfg.tau < 1) throw std::invalid_argument("config: field 'tau' must be >= 1");
  cfg.eta = trainer::EtaSchedule::parse(kv["eta"]);
  cfg.optimizer = trainer::parse_optimizer(kv["optimizer"]);
  cfg.task = parse_task(kv["task"]);
  cfg.model_dim = parse_u64("model_dim", kv["model_dim"]);
  if (cfg.model_dim == 0 || cfg.model_dim % 2 != 0)
    throw std::invalid_argument("config: field 'model_dim' must be a positive even number");
  cfg.devices = parse_u64("devices", kv["devices"]);
  if (cfg.devices == 0) throw std::invalid_argument("config: field 'devices' must be >= 1");
  if (kv.count("antennas") == 0) {
    cfg.antennas = command == Command::bound ? cfg.devices : 5 * cfg.devices;
    kv["antennas"] = std::to_string(cfg.antennas);
  } else {
    cfg.antennas = parse_u64("antennas", kv["antennas"]);
    if (cfg.antennas == 0) throw std::invalid_argument("config: field 'antennas' must be >= 1");
  }
  cfg.samples_per_device = parse_u64("samples_per_device", kv["samples_per_device"]);
  if (cfg.samples_per_device == 0)
    throw std::invalid_argument("config: field 'samples_per_device' must be >= 1");
  cfg.batch = parse_u64("batch", kv["batch"]);
  if (cfg.batch == 0) throw std::invalid_argument("config: field 'batch' must be >= 1");
  cfg.energy_groups = parse_energy(kv["energy"]);
  cfg.d_min = parse_real("d_min", kv["d_min"]);
  cfg.d_max = parse_real("d_max", kv["d_max"]);
  if (!(cfg.d_min > 0.0) || !(cfg.d_max >= cfg.d_min))
    throw std::invalid_argument("config: fields 'd_min'/'d_max' must satisfy 0 < d_min <= d_max");
  cfg.path_loss_exp = parse_real("path_loss_exp", kv["path_loss_exp"]);
  cfg.sigma_h2 = parse_real("sigma_h2", kv["sigma_h2"]);
  if (!(cfg.sigma_h2 > 0.0))
    throw std::invalid_argument("config: field 'sigma_h2' must be positive");
  cfg.sigma_z2 = parse_real("sigma_z2", kv["sigma_z2"]);
  if (cfg.sigma_z2 < 0.0) throw std::invalid_argument("config: field 'sigma_z2' must be >= 0");
  cfg.beta_bar = trainer::BetaBarMode::parse(kv["beta_bar"]);
  cfg.kernels = kv["kernels"];
  cfg.out_dir = kv["out_dir"];

  cfg.alpha = parse_real("alpha", kv["alpha"]);
  if (cfg.alpha < 0.0 || cfg.alpha > 1.0)
    throw std::invalid_argument("config: field 'alpha' must be in [0, 1]");
  cfg.mu = parse_real("mu", kv["mu"]);
  cfg.l_smooth = parse_real("l_smooth", kv["l_smooth"]);
  if (!(cfg.mu > 0.0) || !(cfg.l_smooth > 0.0))
    throw std::invalid_argument("config: fields 'mu' and 'l_smooth' must be positive");
  cfg.g2 = parse_real("g2", kv["g2"]);
  if (cfg.g2 < 0.0) throw std::invalid_argument("config: field 'g2' must be >= 0");
  cfg.gamma_bias = parse_real("gamma_bias", kv["gamma_bias"]);
  if (cfg.gamma_bias < 0.0)
    throw std::invalid_argument("config: field 'gamma_bias' must be >= 0");
  cfg.dist0_sq = parse_real("dist0_sq", kv["dist0_sq"]);
  if (cfg.dist0_sq < 0.0) throw std::invalid_argument("config: field 'dist0_sq' must be >= 0");
  cfg.bound_beta = parse_real("bound_beta", kv["bound_beta"]);
  if (!(cfg.bound_beta > 0.0))
    throw std::invalid_argument("config: field 'bound_beta' must be positive");
  cfg.a_variant = bound::parse_a_variant(kv["a_variant"]);
  cfg.participation = bound::parse_participation(kv["participation"]);

  cfg.resolved = std::move(kv);
  return cfg;
}

}  // namespace ehfl::config

#include "ehfl/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "ehfl/rng.hpp"

namespace ehfl::channel {

Topology build_topology(std::size_t devices, double d_lo, double d_hi, double path_loss_exp,
                        std::uint64_t master_seed) {
  if (!(d_lo > 0.0) || !(d_hi >= d_lo))
    throw std::invalid_argument("topology: need 0 < d_lo <= d_hi");
  Topology topo;
  topo.path_loss_exp = path_loss_exp;
  topo.distance.resize(devices);
  topo.beta.resize(devices);
  for (std::size_t m = 0; m < devices; ++m) {
    rng::Generator g(master_seed, rng::Stream::topology, m);
    topo.distance[m] = g.uniform(d_lo, d_hi);
    topo.beta[m] = std::pow(topo.distance[m], -path_loss_exp);
  }
  return topo;
}

double mean_beta(const Topology& topo, std::span<const std::size_t> subset) {
  if (subset.empty()) throw std::invalid_argument("mean_beta: empty device set");
  double acc = 0.0;
  for (std::size_t m : subset) acc += topo.beta.at(m);
  return acc / static_cast<double>(subset.size());
}

double mean_beta_all(const Topology& topo) {
  if (topo.beta.empty()) throw std::invalid_argument("mean_beta_all: empty topology");
  double acc = 0.0;
  for (double b : topo.beta) acc += b;
  return acc / static_cast<double>(topo.beta.size());
}

void draw(Realization& out, const Topology& topo, std::span<const std::size_t> participants,
          std::size_t antennas, std::size_t symbols, double sigma_h2, double sigma_z2,
          std::uint64_t master_seed, std::int64_t round) {
  if (participants.empty()) throw std::invalid_argument("channel: empty participant set");
  if (antennas == 0 || symbols == 0)
    throw std::invalid_argument("channel: antennas and symbols must be positive");
  if (sigma_h2 <= 0.0) throw std::invalid_argument("channel: sigma_h2 must be positive");
  if (sigma_z2 < 0.0) throw std::invalid_argument("channel: sigma_z2 must be >= 0");

  out.devices = participants.size();
  out.antennas = antennas;
  out.symbols = symbols;
  out.h_re.resize(out.devices * antennas * symbols);
  out.h_im.resize(out.devices * antennas * symbols);
  out.z_re.assign(antennas * symbols, 0.0);
  out.z_im.assign(antennas * symbols, 0.0);

  const auto r = static_cast<std::uint64_t>(round);
  for (std::size_t i = 0; i < participants.size(); ++i) {
    const std::size_t device = participants[i];
    const double sd = std::sqrt(sigma_h2 * topo.beta.at(device) / 2.0);
    rng::Generator g(master_seed, rng::Stream::channel_fading, device, r);
    double* hr = out.h_re.data() + i * antennas * symbols;
    double* hi = out.h_im.data() + i * antennas * symbols;
    for (std::size_t j = 0; j < antennas * symbols; ++j) {
      hr[j] = g.normal(0.0, sd);
      hi[j] = g.normal(0.0, sd);
    }
  }
  if (sigma_z2 > 0.0) {
    const double sd = std::sqrt(sigma_z2 / 2.0);
    rng::Generator g(master_seed, rng::Stream::channel_noise, 0, r);
    for (std::size_t j = 0; j < antennas * symbols; ++j) {
      out.z_re[j] = g.normal(0.0, sd);
      out.z_im[j] = g.normal(0.0, sd);
    }
  }
}

}  // namespace ehfl::channel

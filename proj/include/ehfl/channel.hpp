#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ehfl/vec.hpp"

namespace ehfl::channel {

// Device placement around the receiver: distances and large-scale path-loss
// gains beta_m = d_m^(-p).
struct Topology {
  std::vector<double> distance;
  std::vector<double> beta;
  double path_loss_exp = 4.0;
};

// Distances drawn i.i.d. Uniform[d_lo, d_hi]. Throws for an invalid range.
Topology build_topology(std::size_t devices, double d_lo, double d_hi, double path_loss_exp,
                        std::uint64_t master_seed);

double mean_beta(const Topology& topo, std::span<const std::size_t> subset);
double mean_beta_all(const Topology& topo);

// One round of small-scale fading and receiver noise: h[m][k][n] for the
// participating devices and z[k][n] per antenna/symbol, split re/im, indexed
// [(m*K + k)*N + n] and [k*N + n].
struct Realization {
  std::size_t devices = 0;   // participants this round
  std::size_t antennas = 0;  // K
  std::size_t symbols = 0;   // N
  std::vector<double> h_re, h_im;
  std::vector<double> z_re, z_im;

  const double* h_re_at(std::size_t m, std::size_t k) const {
    return h_re.data() + (m * antennas + k) * symbols;
  }
  const double* h_im_at(std::size_t m, std::size_t k) const {
    return h_im.data() + (m * antennas + k) * symbols;
  }
  const double* z_re_at(std::size_t k) const { return z_re.data() + k * symbols; }
  const double* z_im_at(std::size_t k) const { return z_im.data() + k * symbols; }
};

// Fresh i.i.d. draws for one round: h_{m,k}^n = sqrt(beta_m) g with
// g ~ CN(0, sigma_h2) and z ~ CN(0, sigma_z2). Each (device, round) pair uses
// its own substream, so draws are reproducible regardless of evaluation
// order. Reuses the buffers in `out`.
void draw(Realization& out, const Topology& topo, std::span<const std::size_t> participants,
          std::size_t antennas, std::size_t symbols, double sigma_h2, double sigma_z2,
          std::uint64_t master_seed, std::int64_t round);

}  // namespace ehfl::channel

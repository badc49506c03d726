#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ehfl/channel.hpp"
#include "ehfl/model.hpp"

namespace ehfl::ota {

using Vec = vec::Vec;

// A participant's model difference scaled by its aggregation weight
// C_m = p_m * c_m (data ratio times cooldown multiplier).
struct ScaledDifference {
  Vec delta;      // C_m * delta_theta_m
  double weight;  // C_m
};

// Throws unless cooldown >= 1 and data_ratio > 0.
ScaledDifference scale_difference(const Vec& delta, double data_ratio, std::int64_t cooldown);

// (1/C) sum_m of the scaled differences with C = sum_m C_m; the ideal
// aggregate the receiver tries to recover. Returns nullopt for an empty set
// (round skipped, global weights unchanged).
std::optional<Vec> aggregate_error_free(std::span<const ScaledDifference> scaled);

// Combined receive signal after conjugate-sum combining over the K antennas,
// plus its exact signal/interference/noise decomposition
// (y == signal + interference + noise).
struct CombinedSignal {
  model::ComplexSymbolVector y;
  model::ComplexSymbolVector signal;
  model::ComplexSymbolVector interference;
  model::ComplexSymbolVector noise;
};

// Per-antenna superposition of the packed scaled differences through the
// fading realization, then combining:
//   y_k[n]  = sum_m h_{m,k}[n] x_m[n] + z_k[n]
//   y[n]    = (1/K) sum_k conj(sum_m h_{m,k}[n]) y_k[n]
// The decomposition terms are accumulated along independent paths so the
// identity check is meaningful.
CombinedSignal transmit_and_combine(std::span<const model::ComplexSymbolVector> x,
                                    const channel::Realization& ch);

// De-rotation of the combined signal back to a real update:
//   delta[n]   = Re{y[n]} / (C sigma_h2 beta_bar)
//   delta[n+N] = Im{y[n]} / (C sigma_h2 beta_bar)
Vec recover(const CombinedSignal& combined, double weight_sum, double sigma_h2, double beta_bar);

struct TermPowers {
  double signal = 0.0;
  double interference = 0.0;
  double noise = 0.0;
};

// Mean |.|^2 per symbol of each decomposition term; round diagnostics.
TermPowers mean_powers(const CombinedSignal& combined);

// Total energy of the transmitted symbols, sum_m ||x_m||^2. The transmitters
// send the scaled differences raw (no per-round power normalisation), so this
// is the natural per-round diagnostic.
double transmit_energy(std::span<const model::ComplexSymbolVector> x);

}  // namespace ehfl::ota

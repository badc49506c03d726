#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ehfl/trainer.hpp"

namespace ehfl::bound {

// Inputs of the convergence-bound recursion. The recursion tracks an upper
// bound B(t) on E||theta_PS(t) - theta*||^2 via
//   B(t) = X(t-1) B(t-1) + Y(t-1),  B(0) = dist0_sq,
// and the loss bound (L/2) B(t).
struct Params {
  std::size_t devices = 40;   // M
  std::size_t antennas = 40;  // K
  std::size_t half_dim = 153749;  // N (model dimension 2N)
  int tau = 1;
  double alpha = 1.0;       // uniform Bernoulli participation rate
  double data_ratio = 0.0;  // p; 0 means 1/M
  std::vector<double> beta;  // per-device large-scale gains; empty means all ones
  double beta_bar = 0.0;     // 0 means mean of beta
  double sigma_h2 = 1.0;
  double sigma_z2 = 5.0;
  double grad_bound_sq = 1.0;  // G^2
  double smooth = 10.0;        // L
  double strong_convexity = 1.0;  // mu
  double dataset_bias = 0.0;      // Gamma >= 0
  trainer::EtaSchedule eta{1e-2, 1e-6};
  double dist0_sq = 1e3;

  double resolved_p() const;
  double resolved_beta(std::size_t m) const;
  double resolved_beta_bar() const;
  void validate() const;
};

// Two variants of the pairwise participation coefficient, differing in the
// fading-correction fraction. Both are evaluated; neither is asserted as the
// unique truth.
enum class AVariant { theorem1, lemma4 };
AVariant parse_a_variant(std::string_view name);

// error_free zeroes the channel-dependent pieces of Y (interference and
// noise summands, and the fading correction inside A), which specializes the
// recursion to the wired aggregation scenarios.
enum class ChannelModel { ota, error_free };

enum class Participation { expected, sampled };
Participation parse_participation(std::string_view name);

// X(a) = 1 - mu eta(a) (tau - eta(a)(tau - 1)); requires
// 0 <= eta(a) <= min(1, 1/(tau mu)).
double x_factor(const Params& p, std::int64_t a);

// Pairwise coefficient A(m1, m2); throws when alpha == 0.
double a_coeff(const Params& p, std::size_t m1, std::size_t m2, AVariant variant);

// Additive error term Y(a). With `members` empty the participant sums are
// taken in expectation (single sums scaled by alpha, double sums by alpha^2
// over all device pairs); otherwise the realized set is used.
double y_term(const Params& p, std::int64_t a, AVariant variant, ChannelModel channel,
              std::span<const std::size_t> members = {});

struct TracePoint {
  std::int64_t t = 0;
  double x = 0.0;          // X(t)
  double y = 0.0;          // Y(t)
  double dist_bound = 0.0; // B(t)
  double loss_bound = 0.0; // (L/2) B(t)
};

// Iterates the recursion for `iterations` steps and returns points for
// t = 0..iterations inclusive. Sampled participation draws S_a per iteration
// from the seeded participation stream.
std::vector<TracePoint> bound_trace(const Params& p, std::int64_t iterations, AVariant variant,
                                    ChannelModel channel, Participation participation,
                                    std::uint64_t master_seed = 1);

// Constant-eta limit of the closed-form loss bound:
//   (L / (2 mu eta)) (2 eta^2 G^2 + sigma_z^2 N / (p^2 K sigma_h^2)).
// Requires a constant schedule.
double asymptotic_floor(const Params& p);

}  // namespace ehfl::bound

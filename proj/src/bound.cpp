#include "ehfl/bound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ehfl/rng.hpp"

namespace ehfl::bound {

double Params::resolved_p() const {
  if (data_ratio > 0.0) return data_ratio;
  return 1.0 / static_cast<double>(devices);
}

double Params::resolved_beta(std::size_t m) const {
  if (beta.empty()) return 1.0;
  return beta.at(m);
}

double Params::resolved_beta_bar() const {
  if (beta_bar > 0.0) return beta_bar;
  if (beta.empty()) return 1.0;
  double acc = 0.0;
  for (double b : beta) acc += b;
  return acc / static_cast<double>(beta.size());
}

void Params::validate() const {
  if (devices == 0) throw std::invalid_argument("bound: devices must be positive");
  if (antennas == 0) throw std::invalid_argument("bound: antennas must be positive");
  if (half_dim == 0) throw std::invalid_argument("bound: half_dim must be positive");
  if (tau < 1) throw std::invalid_argument("bound: tau must be >= 1");
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("bound: alpha must be in [0, 1]");
  if (!beta.empty() && beta.size() != devices)
    throw std::invalid_argument("bound: beta list must have one entry per device");
  if (sigma_h2 <= 0.0) throw std::invalid_argument("bound: sigma_h2 must be positive");
  if (sigma_z2 < 0.0) throw std::invalid_argument("bound: sigma_z2 must be >= 0");
  if (grad_bound_sq < 0.0) throw std::invalid_argument("bound: G^2 must be >= 0");
  if (smooth <= 0.0 || strong_convexity <= 0.0)
    throw std::invalid_argument("bound: L and mu must be positive");
  if (dataset_bias < 0.0) throw std::invalid_argument("bound: dataset bias must be >= 0");
  if (dist0_sq < 0.0) throw std::invalid_argument("bound: dist0_sq must be >= 0");
}

AVariant parse_a_variant(std::string_view name) {
  if (name == "theorem1") return AVariant::theorem1;
  if (name == "lemma4") return AVariant::lemma4;
  throw std::invalid_argument("a_variant: unknown name '" + std::string(name) + "'");
}

Participation parse_participation(std::string_view name) {
  if (name == "expected") return Participation::expected;
  if (name == "sampled") return Participation::sampled;
  throw std::invalid_argument("participation: unknown name '" + std::string(name) + "'");
}

double x_factor(const Params& p, std::int64_t a) {
  const double eta = p.eta.at(a);
  const double mu = p.strong_convexity;
  const double tau = static_cast<double>(p.tau);
  const double limit = std::min(1.0, 1.0 / (tau * mu));
  if (eta < 0.0 || eta > limit)
    throw std::invalid_argument("bound: eta(a) outside [0, min(1, 1/(tau mu))]");
  return 1.0 - mu * eta * (tau - eta * (tau - 1.0));
}

namespace {

double fading_fraction(const Params& p, AVariant variant) {
  const double ma = static_cast<double>(p.devices) * p.alpha;
  const double k = static_cast<double>(p.antennas);
  if (ma <= 0.0) throw std::invalid_argument("bound: A coefficient undefined for alpha == 0");
  if (variant == AVariant::theorem1) return (ma + 1.0) * (k + 1.0) / (ma * k);
  return (2.0 + (ma - 1.0) * (k - 1.0)) / (ma * k);
}

}  // namespace

double a_coeff(const Params& p, std::size_t m1, std::size_t m2, AVariant variant) {
  const double bb = p.resolved_beta_bar();
  const double b1 = p.resolved_beta(m1) / bb;
  const double b2 = p.resolved_beta(m2) / bb;
  return 1.0 - b1 - b2 + fading_fraction(p, variant) * b1 * b2;
}

double y_term(const Params& p, std::int64_t a, AVariant variant, ChannelModel channel,
              std::span<const std::size_t> members) {
  const double eta = p.eta.at(a);
  const double tau = static_cast<double>(p.tau);
  const double g2 = p.grad_bound_sq;
  const double mu = p.strong_convexity;
  const double bb = p.resolved_beta_bar();
  const double k = static_cast<double>(p.antennas);
  const double n = static_cast<double>(p.half_dim);
  const double pr = p.resolved_p();
  const bool ota = channel == ChannelModel::ota;

  // participant sums: pair_a = sum over (m1, m2) of A, pair_b = sum over
  // m != m' of beta_m beta_m', single_b = sum over m of beta_m
  double pair_a = 0.0, pair_b = 0.0, single_b = 0.0;
  auto a_of = [&](std::size_t m1, std::size_t m2) {
    if (ota) return a_coeff(p, m1, m2, variant);
    const double v1 = 1.0 - p.resolved_beta(m1) / bb;
    const double v2 = 1.0 - p.resolved_beta(m2) / bb;
    return v1 * v2;  // fading correction removed
  };
  if (members.empty()) {
    for (std::size_t m1 = 0; m1 < p.devices; ++m1) {
      single_b += p.resolved_beta(m1);
      for (std::size_t m2 = 0; m2 < p.devices; ++m2) {
        pair_a += a_of(m1, m2);
        if (m1 != m2) pair_b += p.resolved_beta(m1) * p.resolved_beta(m2);
      }
    }
    pair_a *= p.alpha * p.alpha;
    pair_b *= p.alpha * p.alpha;
    single_b *= p.alpha;
  } else {
    for (std::size_t m1 : members) {
      single_b += p.resolved_beta(m1);
      for (std::size_t m2 : members) {
        pair_a += a_of(m1, m2);
        if (m1 != m2) pair_b += p.resolved_beta(m1) * p.resolved_beta(m2);
      }
    }
  }

  const double gradient_term = tau * tau * g2 * eta * eta * pair_a;
  const double interference_term =
      ota ? tau * tau * g2 * eta * eta / (k * bb * bb) * pair_b : 0.0;
  const double noise_term = ota ? p.sigma_z2 * n / (pr * pr * k * p.sigma_h2) * single_b / (bb * bb)
                                : 0.0;
  const double drift_term =
      (1.0 + mu * (1.0 - eta)) * eta * eta * g2 * tau * (tau - 1.0) * (2.0 * tau - 1.0) / 6.0;
  const double variance_term = eta * eta * (tau * tau + tau - 1.0) * g2;
  const double bias_term = 2.0 * eta * (tau - 1.0) * p.dataset_bias;

  return gradient_term + interference_term + noise_term + drift_term + variance_term + bias_term;
}

std::vector<TracePoint> bound_trace(const Params& p, std::int64_t iterations, AVariant variant,
                                    ChannelModel channel, Participation participation,
                                    std::uint64_t master_seed) {
  p.validate();
  if (iterations < 0) throw std::invalid_argument("bound: iterations must be >= 0");

  std::vector<std::size_t> members;
  auto draw_members = [&](std::int64_t a) -> std::span<const std::size_t> {
    if (participation == Participation::expected) return {};
    members.clear();
    rng::Generator g(master_seed, rng::Stream::bound_participation, 0,
                     static_cast<std::uint64_t>(a));
    for (std::size_t m = 0; m < p.devices; ++m) {
      if (g.uniform01() < p.alpha) members.push_back(m);
    }
    return members;
  };

  std::vector<TracePoint> trace;
  trace.reserve(static_cast<std::size_t>(iterations) + 1);
  double b = p.dist0_sq;
  for (std::int64_t t = 0; t <= iterations; ++t) {
    if (t > 0) {
      const auto set = draw_members(t - 1);
      b = x_factor(p, t - 1) * b + y_term(p, t - 1, variant, channel, set);
    }
    TracePoint pt;
    pt.t = t;
    pt.x = x_factor(p, t);
    pt.y = y_term(p, t, variant, channel, draw_members(t));
    pt.dist_bound = b;
    pt.loss_bound = 0.5 * p.smooth * b;
    trace.push_back(pt);
  }
  return trace;
}

double asymptotic_floor(const Params& p) {
  p.validate();
  if (!p.eta.constant())
    throw std::invalid_argument("bound: asymptotic floor requires a constant eta schedule");
  const double eta = p.eta.base;
  if (eta <= 0.0) throw std::invalid_argument("bound: asymptotic floor requires eta > 0");
  const double pr = p.resolved_p();
  const double noise = p.sigma_z2 * static_cast<double>(p.half_dim) /
                       (pr * pr * static_cast<double>(p.antennas) * p.sigma_h2);
  return p.smooth / (2.0 * p.strong_convexity * eta) *
         (2.0 * eta * eta * p.grad_bound_sq + noise);
}

}  // namespace ehfl::bound

#include "ehfl/energy.hpp"

#include <stdexcept>
#include <string>

namespace ehfl::energy {

Profile Profile::make_bernoulli(double alpha) {
  if (alpha < 0.0 || alpha > 1.0)
    throw std::invalid_argument("energy: bernoulli rate must be in [0, 1]");
  Profile p;
  p.kind = Kind::bernoulli;
  p.alpha = alpha;
  return p;
}

Profile Profile::make_uniform(std::int64_t period, std::int64_t phase) {
  if (period < 1) throw std::invalid_argument("energy: uniform period must be >= 1");
  if (phase < 0 || phase >= period)
    throw std::invalid_argument("energy: uniform phase must be in [0, period)");
  Profile p;
  p.kind = Kind::uniform;
  p.period = period;
  p.phase = phase;
  return p;
}

Profile Profile::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("energy: profile spec must be kind:value, got '" +
                                std::string(spec) + "'");
  const std::string_view kind = spec.substr(0, colon);
  const std::string value(spec.substr(colon + 1));
  try {
    if (kind == "bernoulli") return make_bernoulli(std::stod(value));
    if (kind == "uniform") return make_uniform(std::stoll(value));
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("energy: bad profile value '" + value + "'");
  }
  throw std::invalid_argument("energy: unknown profile kind '" + std::string(kind) + "'");
}

std::string Profile::to_string() const {
  if (kind == Kind::bernoulli) return "bernoulli:" + std::to_string(alpha);
  return "uniform:" + std::to_string(period);
}

bool sample_arrival(const Profile& p, std::int64_t t, rng::Generator& g) {
  if (t < 0) throw std::invalid_argument("energy: round index must be >= 0");
  if (p.kind == Profile::Kind::bernoulli) return g.uniform01() < p.alpha;
  const std::int64_t r = (t - p.phase) % p.period;
  return (r + p.period) % p.period == 0;
}

State update_cooldown(State s, std::int64_t t, bool arrived) {
  if (s.last_update && t <= *s.last_update)
    throw std::invalid_argument("energy: round index must strictly increase");
  s.last_update = t;
  if (arrived) s.last_arrival = t;
  return s;
}

Round participants(const std::vector<Profile>& profiles, const std::vector<State>& states,
                   std::int64_t t, std::uint64_t master_seed) {
  if (profiles.size() != states.size())
    throw std::invalid_argument("energy: profile/state count mismatch");
  Round round;
  for (std::size_t m = 0; m < profiles.size(); ++m) {
    rng::Generator g(master_seed, rng::Stream::energy, m, static_cast<std::uint64_t>(t));
    if (sample_arrival(profiles[m], t, g)) {
      round.members.push_back(m);
      round.cooldowns.push_back(states[m].cooldown_at(t));
    }
  }
  return round;
}

}  // namespace ehfl::energy

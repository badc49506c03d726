#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ehfl/rng.hpp"

namespace ehfl::energy {

// Per-device energy arrival process. Bernoulli devices harvest a unit of
// energy with probability alpha each round; uniform devices harvest exactly
// once per window of `period` rounds, at offset `phase`.
struct Profile {
  enum class Kind { bernoulli, uniform };
  Kind kind = Kind::bernoulli;
  double alpha = 1.0;
  std::int64_t period = 1;
  std::int64_t phase = 0;

  static Profile make_bernoulli(double alpha);
  static Profile make_uniform(std::int64_t period, std::int64_t phase = 0);
  // "bernoulli:0.1" or "uniform:20" (phase assigned separately per device)
  static Profile parse(std::string_view spec);
  std::string to_string() const;
};

// E_m(t): 1 when the device can participate in round t.
bool sample_arrival(const Profile& p, std::int64_t t, rng::Generator& g);

// Arrival bookkeeping for one device. Before any arrival the device behaves
// as if a virtual arrival happened one round before training started, which
// keeps the first cooldown finite.
struct State {
  std::int64_t start = 0;  // first training round index
  std::optional<std::int64_t> last_arrival;
  std::optional<std::int64_t> last_update;

  // c(t) = t - (latest arrival strictly before t)
  std::int64_t cooldown_at(std::int64_t t) const {
    return t - last_arrival.value_or(start - 1);
  }
};

// Records the round-t arrival flag and returns the updated state. Throws if t
// does not strictly increase across calls for the same device.
State update_cooldown(State s, std::int64_t t, bool arrived);

struct Round {
  std::vector<std::size_t> members;     // S_t
  std::vector<std::int64_t> cooldowns;  // c_m(t), finalized for this round
};

// Samples arrivals for every device and finalizes the participants' cooldown
// multipliers. Does not mutate the states; callers record arrivals with
// update_cooldown once the round is committed.
Round participants(const std::vector<Profile>& profiles, const std::vector<State>& states,
                   std::int64_t t, std::uint64_t master_seed);

}  // namespace ehfl::energy

#pragma once

#include <cstdint>
#include <random>

namespace ehfl::rng {

// splitmix64 finalizer; used to derive substream seeds.
std::uint64_t mix64(std::uint64_t x);

// Every random decision in a run draws from a named substream keyed by
// (purpose, unit a, unit b) under the master seed, so results do not depend
// on the order in which devices or rounds are processed.
enum class Stream : std::uint64_t {
  init_weights = 1,
  topology,
  task_setup,
  data_samples,
  test_samples,
  uniform_phase,
  energy,
  batch,
  channel_fading,
  channel_noise,
  bound_participation,
};

// Seed chain: h = mix64(master); h = mix64(h ^ (purpose)); h = mix64(h ^ (a+1));
// h = mix64(h ^ (b+1)). Distinct keys give independent-for-practical-purposes
// streams and the derivation is order-free.
std::uint64_t substream_seed(std::uint64_t master, Stream s, std::uint64_t a = 0,
                             std::uint64_t b = 0);

// mt19937_64 engine with pinned uniform/normal mappings. The std::*
// distributions are implementation-defined, so the mappings are fixed here to
// keep traces reproducible across standard libraries.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : eng_(seed) {}
  Generator(std::uint64_t master, Stream s, std::uint64_t a = 0, std::uint64_t b = 0)
      : eng_(substream_seed(master, s, a, b)) {}

  // [0, 1), 53-bit resolution
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // unbiased integer in [0, n); n > 0
  std::uint64_t uniform_index(std::uint64_t n);

  // standard normal via the Marsaglia polar method (one value cached)
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ehfl::rng

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "wpcn/model.hpp"

namespace wpcn {

/// Geometry and propagation settings of a random deployment around a HAP at
/// the origin.
struct TopologyParams {
  int n_users = 10;
  double radius_m = 10.0;
  double pl_d0_db = 30.0;
  double d0_m = 1.0;
  double alpha_exponent = 2.76;
  double sigma_shadow_db = 4.0;
  bool rayleigh_enabled = true;
  std::uint64_t seed = 1;
};

void validate(const TopologyParams& params);

struct Position {
  double x_m = 0.0;
  double y_m = 0.0;
};

/// One Monte-Carlo draw of the network.
struct Realization {
  std::vector<UserProfile> users;
  SystemParams sys;
  std::uint64_t seed = 0;
  std::vector<Position> positions;
};

/// Portable random stream: std::mt19937_64 output (fixed by the C++
/// standard) mapped to doubles with explicit transforms, so a seed yields
/// the same draws on every platform and in any reimplementation.
///
/// Stream splitting: user i of a realization with seed s draws from
/// Rng(substream_seed(s, i)). Every user consumes exactly six uniforms in
/// the order radius, angle, shadowing (two, Box-Muller), downlink fade,
/// uplink fade, whatever the flags say.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal by the cosine half of Box-Muller (two uniforms).
  double normal();

  /// Unit-mean exponential, -ln(1 - u) (one uniform).
  double exponential();

private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of user `index`'s private stream within a realization.
std::uint64_t substream_seed(std::uint64_t realization_seed, std::uint64_t index);

/// Log-distance path loss in dB with shadowing term `shadow_db`. Distances
/// under d0 are treated as d0.
double path_loss_db(const TopologyParams& params, double distance_m, double shadow_db = 0.0);

/// Linear power gain for a loss in dB.
double db_loss_to_gain(double loss_db);

/// Draws one realization. `user_template` supplies the demand, battery and
/// harvesting circuit shared by all users; ids are 0..n_users-1.
Realization generate(const TopologyParams& params, const SystemParams& sys_template,
                     const UserProfile& user_template);

struct GainStatistics {
  double mean_fade = 0.0;
  double shadow_std_db = 0.0;
  int trials = 0;
};

/// Samples the fading and shadowing generators `trials` times and checks
/// the fade mean is within 1% of 1 and the shadowing spread within 2% of
/// sigma. Throws StatisticalFailure otherwise, DomainError for trials < 1e4.
GainStatistics mean_gain_check(const TopologyParams& params, int trials);

}  // namespace wpcn

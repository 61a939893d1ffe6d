#include "wpcn/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wpcn/errors.hpp"

namespace wpcn {

double Rng::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::exponential() { return -std::log1p(-uniform()); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t realization_seed, std::uint64_t index) {
  return splitmix64(splitmix64(realization_seed) ^ (index + 1));
}

void validate(const TopologyParams& p) {
  if (p.n_users < 1) throw DomainError("n_users must be >= 1");
  if (!(p.radius_m > 0.0)) throw DomainError("radius_m must be > 0");
  if (!(p.d0_m > 0.0)) throw DomainError("d0_m must be > 0");
  if (!(p.alpha_exponent > 0.0)) throw DomainError("alpha_exponent must be > 0");
  if (!(p.sigma_shadow_db >= 0.0)) throw DomainError("sigma_shadow_db must be >= 0");
}

double path_loss_db(const TopologyParams& p, double distance_m, double shadow_db) {
  const double d = std::max(distance_m, p.d0_m);
  return p.pl_d0_db + 10.0 * p.alpha_exponent * std::log10(d / p.d0_m) + shadow_db;
}

double db_loss_to_gain(double loss_db) { return std::pow(10.0, -loss_db / 10.0); }

Realization generate(const TopologyParams& params, const SystemParams& sys_template,
                     const UserProfile& user_template) {
  validate(params);
  Realization out;
  out.sys = sys_template;
  out.seed = params.seed;
  out.users.reserve(static_cast<std::size_t>(params.n_users));
  out.positions.reserve(static_cast<std::size_t>(params.n_users));

  for (int i = 0; i < params.n_users; ++i) {
    Rng rng(substream_seed(params.seed, static_cast<std::uint64_t>(i)));
    const double r = params.radius_m * std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    const double shadow = params.sigma_shadow_db * rng.normal();
    const double fade_down = rng.exponential();
    const double fade_up = rng.exponential();

    const double large_scale = db_loss_to_gain(path_loss_db(params, r, shadow));
    UserProfile u = user_template;
    u.id = i;
    u.h_down = large_scale * (params.rayleigh_enabled ? fade_down : 1.0);
    u.g_up = large_scale * (params.rayleigh_enabled ? fade_up : 1.0);
    out.users.push_back(u);
    out.positions.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
  return out;
}

GainStatistics mean_gain_check(const TopologyParams& params, int trials) {
  if (trials < 10000) throw DomainError("mean_gain_check needs at least 1e4 trials");
  Rng rng(splitmix64(params.seed));
  double fade_sum = 0.0;
  double shadow_sum = 0.0;
  double shadow_sq = 0.0;
  for (int i = 0; i < trials; ++i) {
    fade_sum += rng.exponential();
    const double z = params.sigma_shadow_db * rng.normal();
    shadow_sum += z;
    shadow_sq += z * z;
  }
  GainStatistics stats;
  stats.trials = trials;
  stats.mean_fade = fade_sum / trials;
  const double mean_z = shadow_sum / trials;
  stats.shadow_std_db =
      std::sqrt(std::max(0.0, (shadow_sq - trials * mean_z * mean_z) / (trials - 1)));

  const bool fade_ok = std::abs(stats.mean_fade - 1.0) <= 0.01;
  const bool shadow_ok =
      std::abs(stats.shadow_std_db - params.sigma_shadow_db) <= 0.02 * params.sigma_shadow_db;
  if (!fade_ok || !shadow_ok) {
    std::ostringstream msg;
    msg << "mean_gain_check: fade mean " << stats.mean_fade << ", shadowing std "
        << stats.shadow_std_db << " dB (sigma " << params.sigma_shadow_db << ")";
    throw StatisticalFailure(msg.str());
  }
  return stats;
}

}  // namespace wpcn

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "wpcn/experiment.hpp"
#include "wpcn/model.hpp"
#include "wpcn/schedulers.hpp"

namespace wpcn::test {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline double log_uniform(std::mt19937_64& g, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(g));
}

/// A link with every physical quantity drawn log-uniformly over a wide range.
inline UserLink random_link(std::mt19937_64& g, int id = 0) {
  UserLink l;
  l.id = id;
  l.harvest_w = log_uniform(g, 1e-9, 1e-3);
  l.gain_per_w = log_uniform(g, 1e-2, 1e5);
  l.demand_bits = log_uniform(g, 10.0, 1e4);
  l.battery_j = log_uniform(g, 1e-12, 1e-6);
  l.bandwidth_hz = 1e6;
  l.p_max_w = log_uniform(g, 1e-4, 1.0);
  l.t_min_s = l.demand_bits / (l.bandwidth_hz * std::log2(1.0 + l.gain_per_w * l.p_max_w));
  return l;
}

/// Paper-default network of `n` users drawn with `seed`.
inline Realization default_instance(int n, std::uint64_t seed, double p_hap_w = 1.0) {
  ExperimentConfig cfg;
  cfg.topology.n_users = n;
  cfg.sys.p_hap_w = p_hap_w;
  return draw_realization(cfg, seed);
}

}  // namespace wpcn::test

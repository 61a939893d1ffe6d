#include "wpcn/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wpcn/errors.hpp"

namespace wpcn {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

void validate(const EhParams& eh) {
  require(eh.ps_saturation > 0.0, "ps_saturation must be > 0");
  require(eh.a_rate > 0.0, "a_rate must be > 0");
  require(eh.b_threshold >= 0.0, "b_threshold must be >= 0");
}

void validate(const UserProfile& user) {
  require(user.h_down > 0.0, "h_down must be > 0");
  require(user.g_up > 0.0, "g_up must be > 0");
  require(user.demand_bits > 0.0, "demand_bits must be > 0");
  require(user.battery_j >= 0.0, "battery_j must be >= 0");
  validate(user.eh);
}

void validate(const SystemParams& sys) {
  require(sys.bandwidth_hz > 0.0, "bandwidth_hz must be > 0");
  require(sys.p_hap_w > 0.0, "p_hap_w must be > 0");
  require(sys.p_max_w > 0.0, "p_max_w must be > 0");
  require(sys.noise_density_w_per_hz > 0.0, "noise_density_w_per_hz must be > 0");
  require(sys.beta_si >= 0.0 && sys.beta_si <= 1.0, "beta_si must lie in [0, 1]");
}

// With Psi = s(A(x - B)), Omega = s(-AB) and s the logistic function,
//   (Psi - Omega) / (1 - Omega) = (1 - e^{-Ax}) / (1 + e^{-A(x - B)}),
// which is exact at x = 0 and free of the cancellation in Psi - Omega.
double harvest_rate(const EhParams& eh, double input_w) {
  if (input_w <= 0.0) return 0.0;
  const double rise = -std::expm1(-eh.a_rate * input_w);
  const double tail = std::exp(-eh.a_rate * (input_w - eh.b_threshold));
  return eh.ps_saturation * rise / (1.0 + tail);
}

double harvest_rate(const UserProfile& user, const SystemParams& sys) {
  return harvest_rate(user.eh, user.h_down * sys.p_hap_w);
}

double sinr_gain(const UserProfile& user, const SystemParams& sys) {
  return user.g_up /
         (sys.noise_density_w_per_hz * sys.bandwidth_hz + sys.beta_si * sys.p_hap_w);
}

double rate_bps(const UserProfile& user, const SystemParams& sys, double p_tx_w) {
  return sys.bandwidth_hz * std::log1p(sinr_gain(user, sys) * p_tx_w) / std::numbers::ln2;
}

double min_transmission_time(const UserProfile& user, const SystemParams& sys) {
  return user.demand_bits / rate_bps(user, sys, sys.p_max_w);
}

UserLink make_link(const UserProfile& user, const SystemParams& sys) {
  UserLink link;
  link.id = user.id;
  link.harvest_w = harvest_rate(user, sys);
  link.gain_per_w = sinr_gain(user, sys);
  link.demand_bits = user.demand_bits;
  link.battery_j = user.battery_j;
  link.bandwidth_hz = sys.bandwidth_hz;
  link.p_max_w = sys.p_max_w;
  link.t_min_s = min_transmission_time(user, sys);
  return link;
}

}  // namespace wpcn

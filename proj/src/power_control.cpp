#include "wpcn/power_control.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "wpcn/errors.hpp"
#include "wpcn/lambert_w.hpp"

namespace wpcn {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr double kOracleHorizonS = 1e9;

// D / (W log2(1 + kP)), the same expression min_transmission_time uses.
double slot_length(const UserLink& l, double power_w) {
  return l.demand_bits /
         (l.bandwidth_hz * std::log1p(l.gain_per_w * power_w) / std::numbers::ln2);
}

[[noreturn]] void throw_no_energy(const UserLink& l) {
  throw InfeasibleUser(l.id, "user " + std::to_string(l.id) +
                                 " has neither stored nor harvested energy");
}

[[noreturn]] void throw_never_enough(const UserLink& l) {
  throw InfeasibleUser(l.id, "user " + std::to_string(l.id) +
                                 " can never store enough energy for its demand");
}

bool energy_residual_ok(double power_w, double tau, double energy_avail_j, double harvest_w) {
  const double avail = energy_avail_j + harvest_w * tau;
  return std::abs(power_w * tau - avail) <= kResidualTol * avail;
}

// z - log1p(z) for |z| < 0.1, summed as a series to avoid cancellation.
double log1p_gap(double z) {
  double term = z * z;
  double sum = 0.0;
  for (int n = 2; n < 40; ++n) {
    const double add = term / n;
    sum += (n % 2 == 0) ? add : -add;
    if (std::abs(add) <= 1e-18 * std::abs(sum)) break;
    term *= z;
  }
  return sum;
}

// In u = -W(Y) - a the Lambert equation reads u - b = log1p(u / a). When
// b << a the subtraction -W(Y) - a cancels most digits of W(Y); Newton steps
// on this form restore them without changing the root. The residual is
// written as u (a - 1) / a + gap(u / a) - b when u / a is small so that tiny
// roots keep their relative accuracy.
double refine_shift(double u, double a, double b) {
  const double lin = (a - 1.0) / a;
  auto g = [&](double x) {
    const double z = x / a;
    return std::abs(z) < 0.1 ? x * lin + log1p_gap(z) - b : x - b - std::log1p(z);
  };
  double gu = g(u);
  for (int i = 0; i < 60 && gu != 0.0; ++i) {
    const double slope = (a + u - 1.0) / (a + u);
    if (!(std::abs(slope) > 1e-12)) break;
    const double next = u - gu / slope;
    if (!(next > -a)) break;
    const double g_next = g(next);
    if (!(std::abs(g_next) < std::abs(gu))) break;
    u = next;
    gu = g_next;
  }
  return u;
}

}  // namespace

StartState start_state(const UserProfile& user, const SystemParams& sys, double start_s) {
  return {start_s, user.battery_j + harvest_rate(user, sys) * start_s};
}

PowerDecision optimal_power(const UserLink& l, double energy_avail_j, PowerCap cap) {
  const double c = l.harvest_w;
  const double k = l.gain_per_w;
  const double eps = energy_avail_j;
  if (eps <= 0.0 && c <= 0.0) throw_no_energy(l);

  // The cap binds exactly when the energy at hand covers a full-power slot.
  if (cap == PowerCap::enforced && eps + c * l.t_min_s >= l.p_max_w * l.t_min_s) {
    return {l.p_max_w, l.t_min_s};
  }

  // With nothing stored the slot runs on harvested power alone.
  if (eps <= 0.0) return {c, slot_length(l, c)};

  // Normalised Lambert argument Y = -a e^{-a-b}, held as L = log(-Y).
  const double nats = l.demand_bits * std::numbers::ln2 / l.bandwidth_hz;
  const double a = nats / (k * eps);
  const double b = c * nats / eps;
  if (c <= 0.0 && a >= 1.0) throw_never_enough(l);
  const double log_neg_y = std::log(a) - a - b;

  std::array<double, 2> roots{};
  int n_roots = 0;
  roots[n_roots++] = lambert_w_lower_log(log_neg_y);
  const double y = -std::exp(log_neg_y);
  if (y < 0.0) roots[n_roots++] = lambert_w(y, Branch::principal);

  for (int i = 0; i < n_roots; ++i) {
    // P* = -1/k - (W eps / (D ln 2)) W(Y) = u / (a k) with u = -W(Y) - a.
    const double power = refine_shift(-roots[i] - a, a, b) / (a * k);
    if (!(power > 0.0) || !std::isfinite(power)) continue;
    if (cap == PowerCap::enforced && power >= l.p_max_w) return {l.p_max_w, l.t_min_s};
    const double tau = slot_length(l, power);
    if (std::isfinite(tau) && tau > 0.0 && energy_residual_ok(power, tau, eps, c)) {
      return {power, tau};
    }
  }
  throw NumericalError("optimal_power: no Lambert branch satisfies the energy equality for user " +
                       std::to_string(l.id));
}

PowerDecision optimal_power(const UserProfile& user, const SystemParams& sys,
                            const StartState& state, PowerCap cap) {
  return optimal_power(make_link(user, sys), state.energy_avail_j, cap);
}

PowerDecision bisection_oracle(const UserLink& l, double energy_avail_j, PowerCap cap) {
  const double c = l.harvest_w;
  const double eps = energy_avail_j;
  if (eps <= 0.0 && c <= 0.0) throw_no_energy(l);

  const double nats = l.demand_bits * std::numbers::ln2 / l.bandwidth_hz;
  // Energy surplus of a slot of length tau: available minus required.
  auto surplus = [&](double tau) {
    return eps + c * tau - tau * std::expm1(nats / tau) / l.gain_per_w;
  };

  if (cap == PowerCap::enforced && surplus(l.t_min_s) >= 0.0) return {l.p_max_w, l.t_min_s};

  double lo = l.t_min_s;
  while (surplus(lo) >= 0.0) lo *= 0.5;
  double hi = l.t_min_s;
  while (surplus(hi) < 0.0) {
    hi *= 2.0;
    if (hi > kOracleHorizonS) throw_never_enough(l);
  }
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (surplus(mid) < 0.0 ? lo : hi) = mid;
  }
  const double tau = 0.5 * (lo + hi);
  const double power = eps / tau + c;
  if (cap == PowerCap::enforced && power >= l.p_max_w) return {l.p_max_w, l.t_min_s};
  return {power, tau};
}

PowerDecision bisection_oracle(const UserProfile& user, const SystemParams& sys,
                               const StartState& state, PowerCap cap) {
  return bisection_oracle(make_link(user, sys), state.energy_avail_j, cap);
}

Schedule evaluate_links(std::span<const UserLink> links, PowerCap cap) {
  Schedule out;
  out.algorithm_tag = cap == PowerCap::enforced ? "OTPA" : "PCA";
  out.order.reserve(links.size());
  out.allocations.reserve(links.size());
  double t = 0.0;
  for (std::size_t pos = 0; pos < links.size(); ++pos) {
    const UserLink& l = links[pos];
    PowerDecision d;
    try {
      d = optimal_power(l, l.battery_j + l.harvest_w * t, cap);
    } catch (const InfeasibleUser& e) {
      throw InfeasibleUser(e.user_id(),
                           std::string(e.what()) + " (slot " + std::to_string(pos) + ")",
                           static_cast<int>(pos));
    }
    out.order.push_back(l.id);
    out.allocations.push_back({l.id, t, d.duration_s, d.power_w, d.power_w * d.duration_s});
    t += d.duration_s;
  }
  out.total_length_s = t;
  return out;
}

namespace {

std::vector<UserLink> links_for(std::span<const UserProfile> users, const SystemParams& sys) {
  std::vector<UserLink> links;
  links.reserve(users.size());
  for (const auto& u : users) links.push_back(make_link(u, sys));
  return links;
}

}  // namespace

Schedule evaluate_order(std::span<const UserProfile> users, const SystemParams& sys) {
  return evaluate_links(links_for(users, sys), PowerCap::enforced);
}

Schedule evaluate_order_pca(std::span<const UserProfile> users, const SystemParams& sys) {
  return evaluate_links(links_for(users, sys), PowerCap::disabled);
}

}  // namespace wpcn

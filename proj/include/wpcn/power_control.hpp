#pragma once

#include <span>

#include "wpcn/model.hpp"
#include "wpcn/schedule.hpp"

namespace wpcn {

/// Energy position of a user at the start of its slot.
struct StartState {
  double start_time_s = 0.0;
  double energy_avail_j = 0.0;  ///< battery + harvest_rate * start_time_s
};

/// Energy available to `user` if its slot opens at `start_s`.
StartState start_state(const UserProfile& user, const SystemParams& sys, double start_s);

struct PowerDecision {
  double power_w = 0.0;
  double duration_s = 0.0;
};

enum class PowerCap { enforced, disabled };

/// Optimal transmit power and slot length for one user, given the energy it
/// holds when its slot opens.
///
/// The slot either runs at the power cap for t_min, or exhausts the available
/// energy exactly: P tau = energy_avail + C tau and W tau log2(1 + kP) = D.
/// The energy-exhausting power is obtained in closed form through the lower
/// Lambert W branch and is accepted only after both equalities are
/// re-checked to 1e-9 relative.
///
/// Throws InfeasibleUser when the user can never collect the energy needed,
/// NumericalError when no Lambert branch passes the residual check.
PowerDecision optimal_power(const UserLink& link, double energy_avail_j,
                            PowerCap cap = PowerCap::enforced);
PowerDecision optimal_power(const UserProfile& user, const SystemParams& sys,
                            const StartState& state, PowerCap cap = PowerCap::enforced);

/// Same decision found by bisection on the slot length; independent of the
/// Lambert route and used to verify it.
PowerDecision bisection_oracle(const UserLink& link, double energy_avail_j,
                               PowerCap cap = PowerCap::enforced);
PowerDecision bisection_oracle(const UserProfile& user, const SystemParams& sys,
                               const StartState& state, PowerCap cap = PowerCap::enforced);

/// Optimal allocation for a fixed transmission order (users in list order).
/// InfeasibleUser is rethrown with the failing slot position attached.
Schedule evaluate_order(std::span<const UserProfile> users, const SystemParams& sys);

/// As evaluate_order with the power cap lifted.
Schedule evaluate_order_pca(std::span<const UserProfile> users, const SystemParams& sys);

/// Core of both evaluations over precomputed links.
Schedule evaluate_links(std::span<const UserLink> links, PowerCap cap);

}  // namespace wpcn

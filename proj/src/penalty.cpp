#include "wpcn/penalty.hpp"

#include <string>

#include "wpcn/errors.hpp"
#include "wpcn/power_control.hpp"

namespace wpcn {

namespace {

double slot_at(const UserLink& l, double start_s) {
  return optimal_power(l, l.battery_j + l.harvest_w * start_s).duration_s;
}

}  // namespace

double end_time(const UserLink& link, double start_s) {
  return start_s + slot_at(link, start_s);
}

double end_time(const UserProfile& user, const SystemParams& sys, double start_s) {
  return end_time(make_link(user, sys), start_s);
}

double penalty(const UserLink& link, double start_s) {
  return slot_at(link, start_s) - link.t_min_s;
}

double penalty(const UserProfile& user, const SystemParams& sys, double start_s) {
  return penalty(make_link(user, sys), start_s);
}

PenaltyPoint penalty_point(const UserProfile& user, const SystemParams& sys, double start_s) {
  const UserLink link = make_link(user, sys);
  const double tau = slot_at(link, start_s);
  return {start_s, start_s + tau, tau - link.t_min_s, link.t_min_s};
}

double zero_penalty_start(const UserLink& l) {
  const double shortfall = (l.p_max_w - l.harvest_w) * l.t_min_s - l.battery_j;
  if (shortfall <= 0.0) return 0.0;
  if (l.harvest_w <= 0.0) {
    throw NeverAffordable("user " + std::to_string(l.id) +
                          " harvests nothing and its battery cannot fund a full-power slot");
  }
  return shortfall / l.harvest_w;
}

double zero_penalty_start(const UserProfile& user, const SystemParams& sys) {
  return zero_penalty_start(make_link(user, sys));
}

}  // namespace wpcn

#pragma once

#include "wpcn/model.hpp"

namespace wpcn {

/// Penalties at or below this many seconds count as zero in every scheduler.
inline constexpr double kZeroPenaltyTolS = 1e-12;

/// Penalty curve sampled at one start time.
struct PenaltyPoint {
  double start_time_s = 0.0;
  double end_time_s = 0.0;
  double penalty_s = 0.0;  ///< end - start - t_min
  double t_min_s = 0.0;
};

/// Completion time of a slot opened at `start_s`. Non-decreasing in `start_s`.
double end_time(const UserLink& link, double start_s);
double end_time(const UserProfile& user, const SystemParams& sys, double start_s);

/// Extra slot length beyond t_min when the slot opens at `start_s`.
/// Non-increasing in `start_s`, zero once the user can afford the power cap.
double penalty(const UserLink& link, double start_s);
double penalty(const UserProfile& user, const SystemParams& sys, double start_s);

PenaltyPoint penalty_point(const UserProfile& user, const SystemParams& sys, double start_s);

/// Earliest start at which the user transmits at the power cap:
/// max(0, (P_max t_min - C t_min - battery) / C).
/// Throws NeverAffordable when C = 0 and the battery alone falls short.
double zero_penalty_start(const UserLink& link);
double zero_penalty_start(const UserProfile& user, const SystemParams& sys);

}  // namespace wpcn

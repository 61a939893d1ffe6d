#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wpcn/model.hpp"
#include "wpcn/schedule.hpp"

namespace wpcn {

inline constexpr std::size_t kDefaultBfaCap = 9;

/// Minimum Penalty Algorithm: at the current frame time, schedule the
/// unscheduled user with the smallest penalty. Ties go to the lowest id.
Schedule mpa(std::span<const UserProfile> users, const SystemParams& sys);

/// Maximum Transmit Power Algorithm: schedule the user whose optimal power
/// at the current frame time is largest. Ties go to the lowest id.
Schedule mtpa(std::span<const UserProfile> users, const SystemParams& sys);

/// Exhaustive search over all orders; the lexicographically smallest optimal
/// order (by user id) wins. node_count is the number of orders evaluated.
/// Throws SizeCapExceeded above `cap` users.
Schedule bfa(std::span<const UserProfile> users, const SystemParams& sys,
             std::size_t cap = kDefaultBfaCap);

/// Fast Pruning Algorithm: exact depth-first search over order prefixes.
///
/// The deepest open nodes are expanded first, lowest penalty first. A
/// zero-penalty node discards its open siblings, and any prefix already as
/// long as the incumbent schedule is dropped. node_count is the number of
/// nodes taken from the open set (expanded or pruned prefixes plus the
/// complete orders examined).
Schedule fpa(std::span<const UserProfile> users, const SystemParams& sys);

/// Fixed-order baseline: OTPA with the power cap, PCA without it.
Schedule fixed_order(std::span<const UserProfile> users, const SystemParams& sys,
                     bool enforce_cap);

/// Schedulers over precomputed links; the functions above delegate here.
Schedule mpa(std::span<const UserLink> links);
Schedule mtpa(std::span<const UserLink> links);
Schedule bfa(std::span<const UserLink> links, std::size_t cap = kDefaultBfaCap);

/// Pruning counters of one FPA run.
struct SearchStats {
  std::uint64_t evaluated = 0;       ///< same as the schedule's node_count
  std::uint64_t sibling_prunes = 0;  ///< open siblings dropped by a zero-penalty node
  std::uint64_t bound_prunes = 0;    ///< nodes dropped for reaching the incumbent length
};
Schedule fpa(std::span<const UserLink> links, SearchStats* stats = nullptr);

std::vector<UserLink> make_links(std::span<const UserProfile> users, const SystemParams& sys);

}  // namespace wpcn

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wpcn {

/// One user's uplink slot.
struct Allocation {
  int user_id = 0;
  double start_time_s = 0.0;
  double duration_s = 0.0;
  double power_w = 0.0;
  double energy_used_j = 0.0;  ///< power_w * duration_s
};

/// A complete TDMA frame: contiguous slots starting at t = 0.
struct Schedule {
  std::vector<int> order;  ///< user ids in transmission order
  std::vector<Allocation> allocations;
  double total_length_s = 0.0;
  std::string algorithm_tag;
  /// Search nodes evaluated, set by the exhaustive and pruned searches only.
  std::optional<std::uint64_t> node_count;
};

}  // namespace wpcn

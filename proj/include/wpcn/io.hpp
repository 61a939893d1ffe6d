#pragma once

// Plain-text instance and schedule files.
//
// Instance file, one record per line, whitespace separated, '#' comments:
//   seed   <u64>
//   system <bandwidth_hz> <p_hap_w> <p_max_w> <noise_density_w_per_hz> <beta_si>
//   user   <id> <x_m> <y_m> <h_down> <g_up> <demand_bits> <battery_j>
//          <ps_saturation> <a_rate> <b_threshold>
//
// Schedule file:
//   algorithm <tag>
//   length_s  <total>
//   nodes     <count>            (optional)
//   slot      <user_id> <start_s> <duration_s> <power_w> <energy_j>
//
// Reals are written with 17 significant digits so files round-trip exactly.

#include <iosfwd>
#include <string>

#include "wpcn/netgen.hpp"
#include "wpcn/schedule.hpp"

namespace wpcn {

/// "%.17g" rendering used by every text output.
std::string format_real(double value);

void write_instance(std::ostream& out, const Realization& inst);
/// Throws ConfigError carrying the 1-based line number on malformed input.
Realization read_instance(std::istream& in);

void write_schedule(std::ostream& out, const Schedule& schedule);
Schedule read_schedule(std::istream& in);

Realization load_instance(const std::string& path);
Schedule load_schedule(const std::string& path);

}  // namespace wpcn

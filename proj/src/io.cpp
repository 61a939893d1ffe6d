#include "wpcn/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "wpcn/errors.hpp"

namespace wpcn {

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

// Splits the stream into (line number, tokens) records, skipping blanks and comments.
std::vector<std::pair<int, std::vector<std::string>>> tokenize(std::istream& in) {
  std::vector<std::pair<int, std::vector<std::string>>> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    for (std::string tok; ss >> tok;) tokens.push_back(tok);
    if (!tokens.empty()) records.emplace_back(line_no, std::move(tokens));
  }
  return records;
}

double parse_real(const std::string& tok, const char* field, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size()) {
    throw ConfigError("line " + std::to_string(line) + ": bad number '" + tok + "' for " + field,
                      field, line);
  }
  return v;
}

long long parse_int(const std::string& tok, const char* field, int line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size()) {
    throw ConfigError("line " + std::to_string(line) + ": bad integer '" + tok + "' for " + field,
                      field, line);
  }
  return v;
}

void expect_arity(const std::vector<std::string>& tokens, std::size_t n, int line) {
  if (tokens.size() != n) {
    throw ConfigError("line " + std::to_string(line) + ": '" + tokens[0] + "' expects " +
                          std::to_string(n - 1) + " values",
                      tokens[0], line);
  }
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'", path);
  return in;
}

}  // namespace

void write_instance(std::ostream& out, const Realization& inst) {
  const auto& s = inst.sys;
  out << "# wpcn instance\n";
  out << "seed " << inst.seed << '\n';
  out << "system " << format_real(s.bandwidth_hz) << ' ' << format_real(s.p_hap_w) << ' '
      << format_real(s.p_max_w) << ' ' << format_real(s.noise_density_w_per_hz) << ' '
      << format_real(s.beta_si) << '\n';
  out << "# user id x_m y_m h_down g_up demand_bits battery_j ps_saturation a_rate b_threshold\n";
  for (std::size_t i = 0; i < inst.users.size(); ++i) {
    const auto& u = inst.users[i];
    const Position p = i < inst.positions.size() ? inst.positions[i] : Position{};
    out << "user " << u.id << ' ' << format_real(p.x_m) << ' ' << format_real(p.y_m) << ' '
        << format_real(u.h_down) << ' ' << format_real(u.g_up) << ' '
        << format_real(u.demand_bits) << ' ' << format_real(u.battery_j) << ' '
        << format_real(u.eh.ps_saturation) << ' ' << format_real(u.eh.a_rate) << ' '
        << format_real(u.eh.b_threshold) << '\n';
  }
}

Realization read_instance(std::istream& in) {
  Realization inst;
  bool have_system = false;
  for (const auto& [line, t] : tokenize(in)) {
    if (t[0] == "seed") {
      expect_arity(t, 2, line);
      const long long seed = parse_int(t[1], "seed", line);
      if (seed < 0) throw ConfigError("line " + std::to_string(line) + ": negative seed", "seed", line);
      inst.seed = static_cast<std::uint64_t>(seed);
    } else if (t[0] == "system") {
      expect_arity(t, 6, line);
      inst.sys.bandwidth_hz = parse_real(t[1], "bandwidth_hz", line);
      inst.sys.p_hap_w = parse_real(t[2], "p_hap_w", line);
      inst.sys.p_max_w = parse_real(t[3], "p_max_w", line);
      inst.sys.noise_density_w_per_hz = parse_real(t[4], "noise_density_w_per_hz", line);
      inst.sys.beta_si = parse_real(t[5], "beta_si", line);
      have_system = true;
    } else if (t[0] == "user") {
      expect_arity(t, 11, line);
      UserProfile u;
      u.id = static_cast<int>(parse_int(t[1], "id", line));
      Position p{parse_real(t[2], "x_m", line), parse_real(t[3], "y_m", line)};
      u.h_down = parse_real(t[4], "h_down", line);
      u.g_up = parse_real(t[5], "g_up", line);
      u.demand_bits = parse_real(t[6], "demand_bits", line);
      u.battery_j = parse_real(t[7], "battery_j", line);
      u.eh.ps_saturation = parse_real(t[8], "ps_saturation", line);
      u.eh.a_rate = parse_real(t[9], "a_rate", line);
      u.eh.b_threshold = parse_real(t[10], "b_threshold", line);
      try {
        validate(u);
      } catch (const DomainError& e) {
        throw ConfigError("line " + std::to_string(line) + ": " + e.what(), "user", line);
      }
      inst.users.push_back(u);
      inst.positions.push_back(p);
    } else {
      throw ConfigError("line " + std::to_string(line) + ": unknown record '" + t[0] + "'", t[0],
                        line);
    }
  }
  if (!have_system) throw ConfigError("instance has no 'system' record", "system");
  if (inst.users.empty()) throw ConfigError("instance has no 'user' records", "user");
  try {
    validate(inst.sys);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("system: ") + e.what(), "system");
  }
  return inst;
}

void write_schedule(std::ostream& out, const Schedule& s) {
  out << "# wpcn schedule\n";
  out << "algorithm " << (s.algorithm_tag.empty() ? "-" : s.algorithm_tag) << '\n';
  out << "length_s " << format_real(s.total_length_s) << '\n';
  if (s.node_count) out << "nodes " << *s.node_count << '\n';
  out << "# slot user_id start_s duration_s power_w energy_j\n";
  for (const auto& a : s.allocations) {
    out << "slot " << a.user_id << ' ' << format_real(a.start_time_s) << ' '
        << format_real(a.duration_s) << ' ' << format_real(a.power_w) << ' '
        << format_real(a.energy_used_j) << '\n';
  }
}

Schedule read_schedule(std::istream& in) {
  Schedule s;
  bool have_length = false;
  for (const auto& [line, t] : tokenize(in)) {
    if (t[0] == "algorithm") {
      expect_arity(t, 2, line);
      s.algorithm_tag = t[1];
    } else if (t[0] == "length_s") {
      expect_arity(t, 2, line);
      s.total_length_s = parse_real(t[1], "length_s", line);
      have_length = true;
    } else if (t[0] == "nodes") {
      expect_arity(t, 2, line);
      s.node_count = static_cast<std::uint64_t>(parse_int(t[1], "nodes", line));
    } else if (t[0] == "slot") {
      expect_arity(t, 6, line);
      Allocation a;
      a.user_id = static_cast<int>(parse_int(t[1], "user_id", line));
      a.start_time_s = parse_real(t[2], "start_s", line);
      a.duration_s = parse_real(t[3], "duration_s", line);
      a.power_w = parse_real(t[4], "power_w", line);
      a.energy_used_j = parse_real(t[5], "energy_j", line);
      s.order.push_back(a.user_id);
      s.allocations.push_back(a);
    } else {
      throw ConfigError("line " + std::to_string(line) + ": unknown record '" + t[0] + "'", t[0],
                        line);
    }
  }
  if (s.allocations.empty()) throw ConfigError("schedule has no 'slot' records", "slot");
  if (!have_length) {
    for (const auto& a : s.allocations) s.total_length_s += a.duration_s;
  }
  return s;
}

Realization load_instance(const std::string& path) {
  auto in = open_or_throw(path);
  return read_instance(in);
}

Schedule load_schedule(const std::string& path) {
  auto in = open_or_throw(path);
  return read_schedule(in);
}

}  // namespace wpcn

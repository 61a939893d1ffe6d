#include "wpcn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cerrno>
#include <cstring>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "wpcn/errors.hpp"
#include "wpcn/io.hpp"
#include "wpcn/power_control.hpp"
#include "wpcn/schedulers.hpp"

namespace wpcn {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

constexpr Algorithm kAllAlgorithms[] = {Algorithm::MPA, Algorithm::MTPA, Algorithm::FPA,
                                        Algorithm::BFA, Algorithm::OTPA, Algorithm::PCA};

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::MPA: return "MPA";
    case Algorithm::MTPA: return "MTPA";
    case Algorithm::FPA: return "FPA";
    case Algorithm::BFA: return "BFA";
    case Algorithm::OTPA: return "OTPA";
    case Algorithm::PCA: return "PCA";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  for (Algorithm a : kAllAlgorithms) {
    if (lower(to_string(a)) == lower(name)) return a;
  }
  throw ConfigError("unknown algorithm '" + name + "'", "algorithms");
}

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::p_max: return "p_max";
    case SweepVariable::p_hap: return "p_hap";
    case SweepVariable::n_users: return "n_users";
    case SweepVariable::battery: return "battery";
    case SweepVariable::beta: return "beta";
  }
  return "?";
}

SweepVariable parse_sweep_variable(const std::string& name) {
  for (SweepVariable v : {SweepVariable::p_max, SweepVariable::p_hap, SweepVariable::n_users,
                          SweepVariable::battery, SweepVariable::beta}) {
    if (to_string(v) == lower(name)) return v;
  }
  throw ConfigError("unknown sweep_variable '" + name + "'", "sweep_variable");
}

ExperimentConfig apply_sweep_value(const ExperimentConfig& base, SweepVariable var, double value) {
  ExperimentConfig cfg = base;
  switch (var) {
    case SweepVariable::p_max: cfg.sys.p_max_w = value; break;
    case SweepVariable::p_hap: cfg.sys.p_hap_w = value; break;
    case SweepVariable::n_users: cfg.topology.n_users = static_cast<int>(std::lround(value)); break;
    case SweepVariable::battery: cfg.user_template.battery_j = value; break;
    case SweepVariable::beta: cfg.sys.beta_si = value; break;
  }
  return cfg;
}

void validate(const SweepSpec& spec) {
  auto fail = [](const std::string& field, const std::string& msg) {
    throw ConfigError(field + ": " + msg, field);
  };
  if (spec.values.empty()) fail("values", "must not be empty");
  if (!std::is_sorted(spec.values.begin(), spec.values.end())) fail("values", "must be sorted");
  if (spec.realizations < 1) fail("realizations", "must be >= 1");
  if (spec.algorithms.empty()) fail("algorithms", "must not be empty");

  int max_users = spec.fixed.topology.n_users;
  for (double v : spec.values) {
    const ExperimentConfig cfg = apply_sweep_value(spec.fixed, spec.sweep_variable, v);
    try {
      validate(cfg.sys);
      validate(cfg.topology);
      UserProfile probe = cfg.user_template;
      probe.h_down = probe.g_up = 1.0;
      validate(probe);
    } catch (const DomainError& e) {
      fail(to_string(spec.sweep_variable), std::string(e.what()) + " at value " + format_real(v));
    }
    if (spec.sweep_variable == SweepVariable::n_users && v != std::round(v)) {
      fail("values", "n_users values must be integers");
    }
    max_users = std::max(max_users, cfg.topology.n_users);
  }
  const auto wants = [&](Algorithm a) {
    return std::find(spec.algorithms.begin(), spec.algorithms.end(), a) != spec.algorithms.end();
  };
  if (wants(Algorithm::FPA) && static_cast<std::size_t>(max_users) > spec.fixed.fpa_cap) {
    fail("algorithms", "FPA requested for " + std::to_string(max_users) +
                           " users, above fpa_cap " + std::to_string(spec.fixed.fpa_cap));
  }
  if (wants(Algorithm::BFA) && static_cast<std::size_t>(max_users) > spec.fixed.bfa_cap) {
    fail("algorithms", "BFA requested for " + std::to_string(max_users) +
                           " users, above bfa_cap " + std::to_string(spec.fixed.bfa_cap));
  }
}

std::uint64_t realization_seed(const ExperimentConfig& cfg, int index) {
  return cfg.topology.seed + static_cast<std::uint64_t>(index);
}

Realization draw_realization(const ExperimentConfig& cfg, std::uint64_t seed) {
  TopologyParams topo = cfg.topology;
  topo.seed = seed;
  return generate(topo, cfg.sys, cfg.user_template);
}

Schedule run_algorithm(Algorithm a, std::span<const UserProfile> users, const SystemParams& sys,
                       std::size_t fpa_cap, std::size_t bfa_cap) {
  switch (a) {
    case Algorithm::MPA: return mpa(users, sys);
    case Algorithm::MTPA: return mtpa(users, sys);
    case Algorithm::FPA:
      if (users.size() > fpa_cap) {
        throw SizeCapExceeded("fpa: " + std::to_string(users.size()) +
                              " users exceed the cap of " + std::to_string(fpa_cap));
      }
      return fpa(users, sys);
    case Algorithm::BFA: return bfa(users, sys, bfa_cap);
    case Algorithm::OTPA: return fixed_order(users, sys, true);
    case Algorithm::PCA: return fixed_order(users, sys, false);
  }
  throw DomainError("unknown algorithm");
}

SweepOutput run_sweep(const SweepSpec& spec) {
  validate(spec);
  std::vector<Algorithm> algos;
  for (Algorithm a : kAllAlgorithms) {
    if (std::find(spec.algorithms.begin(), spec.algorithms.end(), a) != spec.algorithms.end()) {
      algos.push_back(a);
    }
  }
  const std::size_t n_values = spec.values.size();
  const std::size_t n_real = static_cast<std::size_t>(spec.realizations);
  const std::size_t n_alg = algos.size();

  struct Cell {
    std::optional<SweepResult> result;
  };
  std::vector<Cell> cells(n_values * n_real * n_alg);
  auto cell = [&](std::size_t v, std::size_t r, std::size_t a) -> Cell& {
    return cells[(v * n_alg + a) * n_real + r];
  };

  std::vector<ExperimentConfig> configs;
  for (double v : spec.values) configs.push_back(apply_sweep_value(spec.fixed, spec.sweep_variable, v));

  std::atomic<std::size_t> next{0};
  const std::size_t n_tasks = n_values * n_real;
  auto worker = [&] {
    for (std::size_t task; (task = next.fetch_add(1)) < n_tasks;) {
      const std::size_t v = task / n_real;
      const std::size_t r = task % n_real;
      const ExperimentConfig& cfg = configs[v];
      const std::uint64_t seed = realization_seed(cfg, static_cast<int>(r));
      const Realization inst = draw_realization(cfg, seed);
      for (std::size_t a = 0; a < n_alg; ++a) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
          const Schedule s = run_algorithm(algos[a], inst.users, inst.sys, cfg.fpa_cap, cfg.bfa_cap);
          const auto t1 = std::chrono::steady_clock::now();
          SweepResult row;
          row.sweep_value = spec.values[v];
          row.algorithm = algos[a];
          row.realization_seed = seed;
          row.schedule_len_s = s.total_length_s;
          row.runtime_ns =
              std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
          row.node_count = s.node_count;
          cell(v, r, a).result = row;
        } catch (const InfeasibleUser&) {
          // counted below
        }
      }
    }
  };
  unsigned n_threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, n_tasks));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SweepOutput out;
  out.sweep_variable = spec.sweep_variable;
  for (std::size_t v = 0; v < n_values; ++v) {
    for (std::size_t a = 0; a < n_alg; ++a) {
      PointSummary sum;
      sum.sweep_value = spec.values[v];
      sum.algorithm = algos[a];
      double len = 0.0, rt = 0.0, nodes = 0.0;
      bool have_nodes = false;
      for (std::size_t r = 0; r < n_real; ++r) {
        const auto& res = cell(v, r, a).result;
        if (!res) {
          ++sum.infeasible;
          continue;
        }
        out.rows.push_back(*res);
        ++sum.feasible;
        len += res->schedule_len_s;
        rt += static_cast<double>(res->runtime_ns);
        if (res->node_count) {
          have_nodes = true;
          nodes += static_cast<double>(*res->node_count);
        }
      }
      if (sum.feasible > 0) {
        sum.mean_length_s = len / sum.feasible;
        sum.mean_runtime_ns = rt / sum.feasible;
        if (have_nodes) sum.mean_node_count = nodes / sum.feasible;
      }
      out.summary.push_back(sum);
    }
  }
  return out;
}

void write_csv(std::ostream& out, SweepVariable var, std::span<const SweepResult> rows) {
  out << kCsvHeader << '\n';
  const std::string name = to_string(var);
  for (const auto& r : rows) {
    out << name << ',' << format_real(r.sweep_value) << ',' << to_string(r.algorithm) << ','
        << r.realization_seed << ',' << format_real(r.schedule_len_s) << ',' << r.runtime_ns
        << ',';
    if (r.node_count) out << *r.node_count;
    out << '\n';
  }
}

void emit_csv(const SweepOutput& output, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing: " + std::strerror(errno));
  write_csv(out, output.sweep_variable, output.rows);
  out.flush();
  if (!out) throw Error("write to '" + path + "' failed: " + std::strerror(errno));
}

namespace {

using nlohmann::json;

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

int line_of_key(const std::string& text, const std::string& key) {
  const auto pos = text.find('"' + key + '"');
  return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

}  // namespace

SweepSpec parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const int line = line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ConfigError("config line " + std::to_string(line) + ": " + e.what(), "", line);
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object", "", 1);

  SweepSpec spec;
  ExperimentConfig& f = spec.fixed;

  auto fail = [&](const std::string& key, const std::string& msg) -> void {
    const int line = line_of_key(text, key);
    throw ConfigError("config field '" + key + "'" +
                          (line ? " (line " + std::to_string(line) + ")" : std::string()) +
                          ": " + msg,
                      key, line);
  };
  auto num = [&](const std::string& key, const json& v) {
    if (!v.is_number()) fail(key, "expected a number");
    return v.get<double>();
  };
  auto count = [&](const std::string& key, const json& v) {
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(key, "expected a non-negative integer");
    return v.get<long long>();
  };

  for (const auto& [key, v] : doc.items()) {
    if (key == "sweep_variable") {
      if (!v.is_string()) fail(key, "expected a string");
      try {
        spec.sweep_variable = parse_sweep_variable(v.get<std::string>());
      } catch (const ConfigError& e) {
        fail(key, e.what());
      }
    } else if (key == "values") {
      if (!v.is_array()) fail(key, "expected an array of numbers");
      spec.values.clear();
      for (const auto& x : v) spec.values.push_back(num(key, x));
    } else if (key == "realizations") {
      spec.realizations = static_cast<int>(count(key, v));
    } else if (key == "algorithms") {
      if (!v.is_array()) fail(key, "expected an array of names");
      spec.algorithms.clear();
      for (const auto& x : v) {
        if (!x.is_string()) fail(key, "expected algorithm names");
        try {
          spec.algorithms.push_back(parse_algorithm(x.get<std::string>()));
        } catch (const ConfigError& e) {
          fail(key, e.what());
        }
      }
    } else if (key == "threads") {
      spec.threads = static_cast<unsigned>(count(key, v));
    } else if (key == "seed") {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        fail(key, "expected a non-negative integer");
      }
      f.topology.seed = v.get<std::uint64_t>();
    } else if (key == "n_users") {
      f.topology.n_users = static_cast<int>(count(key, v));
    } else if (key == "radius_m") {
      f.topology.radius_m = num(key, v);
    } else if (key == "pl_d0_db") {
      f.topology.pl_d0_db = num(key, v);
    } else if (key == "d0_m") {
      f.topology.d0_m = num(key, v);
    } else if (key == "alpha_exponent") {
      f.topology.alpha_exponent = num(key, v);
    } else if (key == "sigma_shadow_db") {
      f.topology.sigma_shadow_db = num(key, v);
    } else if (key == "rayleigh_enabled") {
      if (!v.is_boolean()) fail(key, "expected true or false");
      f.topology.rayleigh_enabled = v.get<bool>();
    } else if (key == "bandwidth_hz") {
      f.sys.bandwidth_hz = num(key, v);
    } else if (key == "p_hap_w") {
      f.sys.p_hap_w = num(key, v);
    } else if (key == "p_max_w") {
      f.sys.p_max_w = num(key, v);
    } else if (key == "noise_density_w_per_hz") {
      f.sys.noise_density_w_per_hz = num(key, v);
    } else if (key == "noise_density_dbm_per_hz") {
      f.sys.noise_density_w_per_hz = std::pow(10.0, num(key, v) / 10.0) * 1e-3;
    } else if (key == "beta_si") {
      f.sys.beta_si = num(key, v);
    } else if (key == "beta_si_db") {
      f.sys.beta_si = std::pow(10.0, num(key, v) / 10.0);
    } else if (key == "demand_bits") {
      f.user_template.demand_bits = num(key, v);
    } else if (key == "battery_j") {
      f.user_template.battery_j = num(key, v);
    } else if (key == "ps_saturation") {
      f.user_template.eh.ps_saturation = num(key, v);
    } else if (key == "a_rate") {
      f.user_template.eh.a_rate = num(key, v);
    } else if (key == "b_threshold") {
      f.user_template.eh.b_threshold = num(key, v);
    } else if (key == "fpa_cap") {
      f.fpa_cap = static_cast<std::size_t>(count(key, v));
    } else if (key == "bfa_cap") {
      f.bfa_cap = static_cast<std::size_t>(count(key, v));
    } else {
      fail(key, "unknown key");
    }
  }
  try {
    validate(spec);
  } catch (const ConfigError& e) {
    const int line = line_of_key(text, e.field());
    throw ConfigError(std::string("config: ") + e.what(), e.field(), line);
  }
  return spec;
}

SweepSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'", "--config");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ValidationReport validate_schedule(const Realization& inst, const Schedule& s, double tol) {
  ValidationReport report;
  auto flag = [&](const char* what, int id, double residual, std::string detail) {
    report.violations.push_back({what, id, residual, std::move(detail)});
  };

  std::map<int, const UserProfile*> by_id;
  for (const auto& u : inst.users) by_id[u.id] = &u;

  std::map<int, int> seen;
  for (const auto& a : s.allocations) ++seen[a.user_id];
  for (const auto& [id, n] : seen) {
    if (!by_id.count(id)) flag("permutation", id, 0.0, "slot for unknown user");
    else if (n > 1) flag("permutation", id, n - 1.0, "user scheduled " + std::to_string(n) + " times");
  }
  for (const auto& [id, u] : by_id) {
    if (!seen.count(id)) flag("permutation", id, 1.0, "user never scheduled");
  }
  if (!s.order.empty() && s.order.size() == s.allocations.size()) {
    for (std::size_t i = 0; i < s.order.size(); ++i) {
      if (s.order[i] != s.allocations[i].user_id) {
        flag("permutation", s.order[i], 0.0, "order disagrees with slot list");
        break;
      }
    }
  }

  const bool cap_applies = s.algorithm_tag != "PCA";
  const auto& sys = inst.sys;
  double expected_start = 0.0;
  double total = 0.0;
  for (const auto& a : s.allocations) {
    const double scale = std::max(std::abs(expected_start), a.duration_s);
    if (std::abs(a.start_time_s - expected_start) > tol * scale) {
      flag("contiguity", a.user_id, std::abs(a.start_time_s - expected_start) / scale,
           "slot starts at " + format_real(a.start_time_s) + ", expected " +
               format_real(expected_start));
    }
    expected_start = a.start_time_s + a.duration_s;
    total += a.duration_s;

    if (!(a.duration_s > 0.0) || !(a.power_w >= 0.0)) {
      flag("record", a.user_id, 0.0, "non-positive duration or negative power");
      continue;
    }
    const auto it = by_id.find(a.user_id);
    if (it == by_id.end()) continue;
    const UserProfile& u = *it->second;

    const double bits = a.duration_s * rate_bps(u, sys, a.power_w);
    if (bits < u.demand_bits * (1.0 - tol)) {
      flag("data", u.id, (u.demand_bits - bits) / u.demand_bits,
           "delivers " + format_real(bits) + " of " + format_real(u.demand_bits) + " bits");
    }
    const double used = a.power_w * a.duration_s;
    const double avail = u.battery_j + harvest_rate(u, sys) * (a.start_time_s + a.duration_s);
    if (used > avail * (1.0 + tol)) {
      flag("energy", u.id, (used - avail) / avail,
           "uses " + format_real(used) + " J with " + format_real(avail) + " J available");
    }
    if (cap_applies && a.power_w > sys.p_max_w * (1.0 + tol)) {
      flag("power_cap", u.id, (a.power_w - sys.p_max_w) / sys.p_max_w,
           "power " + format_real(a.power_w) + " W above cap " + format_real(sys.p_max_w) + " W");
    }
    if (std::abs(a.energy_used_j - used) > tol * std::max(used, 1e-300)) {
      flag("record", u.id, std::abs(a.energy_used_j - used) / used,
           "recorded energy differs from power x duration");
    }
  }
  if (std::abs(total - s.total_length_s) > tol * std::max(total, 1e-300)) {
    flag("contiguity", -1, std::abs(total - s.total_length_s) / total,
         "length " + format_real(s.total_length_s) + " differs from slot sum " + format_real(total));
  }
  return report;
}

std::string format_report(const ValidationReport& report) {
  std::ostringstream out;
  if (report.passed()) {
    out << "PASS\n";
    return out.str();
  }
  out << "FAIL (" << report.violations.size() << " violation"
      << (report.violations.size() == 1 ? "" : "s") << ")\n";
  for (const auto& v : report.violations) {
    out << "  " << v.constraint << " user=" << v.user_id << " residual=" << format_real(v.residual)
        << " : " << v.detail << '\n';
  }
  return out.str();
}

}  // namespace wpcn

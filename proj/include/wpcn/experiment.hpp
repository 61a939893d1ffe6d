#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wpcn/model.hpp"
#include "wpcn/netgen.hpp"
#include "wpcn/schedule.hpp"

namespace wpcn {

enum class Algorithm { MPA, MTPA, FPA, BFA, OTPA, PCA };

std::string to_string(Algorithm a);
/// Case-insensitive; throws ConfigError for unknown names.
Algorithm parse_algorithm(const std::string& name);

enum class SweepVariable { p_max, p_hap, n_users, battery, beta };

std::string to_string(SweepVariable v);
SweepVariable parse_sweep_variable(const std::string& name);

/// Everything needed to draw and schedule one network.
struct ExperimentConfig {
  SystemParams sys{};
  TopologyParams topology{};
  UserProfile user_template{};  ///< id, h_down and g_up are ignored
  std::size_t fpa_cap = 12;
  std::size_t bfa_cap = 9;
};

struct SweepSpec {
  SweepVariable sweep_variable = SweepVariable::p_hap;
  std::vector<double> values{1.0, 3.0, 10.0, 30.0, 100.0};
  ExperimentConfig fixed{};
  int realizations = 100;
  std::vector<Algorithm> algorithms{Algorithm::MPA, Algorithm::MTPA, Algorithm::FPA,
                                    Algorithm::OTPA, Algorithm::PCA};
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

/// Throws ConfigError naming the offending field.
void validate(const SweepSpec& spec);

/// Config snapshot with the sweep variable set to `value`.
ExperimentConfig apply_sweep_value(const ExperimentConfig& base, SweepVariable var, double value);

/// Seed of realization `index`: topology.seed + index.
std::uint64_t realization_seed(const ExperimentConfig& cfg, int index);

Realization draw_realization(const ExperimentConfig& cfg, std::uint64_t seed);

/// Dispatches to the named scheduler. Caps apply to FPA and BFA.
Schedule run_algorithm(Algorithm a, std::span<const UserProfile> users, const SystemParams& sys,
                       std::size_t fpa_cap = 12, std::size_t bfa_cap = 9);

struct SweepResult {
  double sweep_value = 0.0;
  Algorithm algorithm = Algorithm::MPA;
  std::uint64_t realization_seed = 0;
  double schedule_len_s = 0.0;
  std::int64_t runtime_ns = 0;
  std::optional<std::uint64_t> node_count;
};

struct PointSummary {
  double sweep_value = 0.0;
  Algorithm algorithm = Algorithm::MPA;
  double mean_length_s = 0.0;
  int feasible = 0;
  int infeasible = 0;
  double mean_runtime_ns = 0.0;
  std::optional<double> mean_node_count;
};

struct SweepOutput {
  SweepVariable sweep_variable = SweepVariable::p_hap;
  std::vector<SweepResult> rows;  ///< sorted by (value, algorithm, seed)
  std::vector<PointSummary> summary;
};

/// Runs every (value, realization, algorithm) combination. Realizations of
/// one value may run concurrently; the output order does not depend on it.
/// Infeasible realizations are left out of `rows` and counted in `summary`.
SweepOutput run_sweep(const SweepSpec& spec);

inline constexpr const char* kCsvHeader =
    "sweep_var,sweep_value,algorithm,seed,schedule_len_s,runtime_ns,node_count";

void write_csv(std::ostream& out, SweepVariable var, std::span<const SweepResult> rows);
/// Throws std::ios_base::failure / Error with the OS message on I/O failure.
void emit_csv(const SweepOutput& output, const std::string& path);

/// Parses the flat JSON config. Unknown keys, wrong types and malformed JSON
/// raise ConfigError with the field (and line for syntax errors).
SweepSpec parse_config(const std::string& json_text);
SweepSpec load_config(const std::string& path);

struct Violation {
  std::string constraint;  ///< permutation, contiguity, data, energy, power_cap, record
  int user_id = -1;
  double residual = 0.0;   ///< relative excess over the bound
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
};

/// Independent feasibility check of a schedule against its instance: each
/// user exactly once, contiguous slots from t = 0, delivered bits >= demand,
/// energy causality at every slot end, power <= P_max. Schedules tagged PCA
/// are exempt from the power cap, which that baseline does not model.
ValidationReport validate_schedule(const Realization& instance, const Schedule& schedule,
                                   double rel_tol = 1e-9);

std::string format_report(const ValidationReport& report);

}  // namespace wpcn

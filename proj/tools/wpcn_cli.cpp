// wpcn: command-line front end for the minimum-length scheduler.
//
//   wpcn sweep    --config cfg.json [--seed N] [--out results.csv] [--format csv]
//   wpcn schedule (--instance inst.txt | --config cfg.json [--seed N]) --algo FPA [--out s.txt]
//   wpcn validate --instance inst.txt --schedule s.txt
//   wpcn gen      [--config cfg.json] [--seed N] [--out inst.txt]
//
// Exit codes: 0 success, 1 validation failure, 2 config error, 3 infeasible instance.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wpcn/errors.hpp"
#include "wpcn/experiment.hpp"
#include "wpcn/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string algo = "FPA";
  std::string out;
  std::string format = "csv";
  std::string instance;
  std::string schedule;
};

wpcn::SweepSpec spec_from(const Options& o) {
  wpcn::SweepSpec spec = o.config.empty() ? wpcn::SweepSpec{} : wpcn::load_config(o.config);
  if (o.seed) spec.fixed.topology.seed = *o.seed;
  return spec;
}

wpcn::Realization instance_from(const Options& o) {
  if (!o.instance.empty()) return wpcn::load_instance(o.instance);
  const wpcn::SweepSpec spec = spec_from(o);
  return wpcn::draw_realization(spec.fixed, spec.fixed.topology.seed);
}

// Runs `body` with output going to --out or stdout.
template <class Body>
void with_output(const std::string& path, Body body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw wpcn::Error("cannot open '" + path + "' for writing");
  body(out);
  if (!out) throw wpcn::Error("write to '" + path + "' failed");
}

int cmd_sweep(const Options& o) {
  if (o.format != "csv") throw wpcn::ConfigError("unsupported --format '" + o.format + "'", "--format");
  const wpcn::SweepSpec spec = spec_from(o);
  const wpcn::SweepOutput result = wpcn::run_sweep(spec);
  if (o.out.empty()) {
    wpcn::write_csv(std::cout, result.sweep_variable, result.rows);
  } else {
    wpcn::emit_csv(result, o.out);
  }
  std::cerr << "# " << wpcn::to_string(result.sweep_variable)
            << " value, algorithm, mean length [s], feasible, infeasible, mean nodes\n";
  for (const auto& p : result.summary) {
    std::cerr << wpcn::format_real(p.sweep_value) << ' ' << wpcn::to_string(p.algorithm) << ' '
              << wpcn::format_real(p.mean_length_s) << ' ' << p.feasible << ' ' << p.infeasible;
    if (p.mean_node_count) std::cerr << ' ' << *p.mean_node_count;
    std::cerr << '\n';
  }
  return kExitOk;
}

int cmd_schedule(const Options& o) {
  const wpcn::Realization inst = instance_from(o);
  const wpcn::Algorithm algo = wpcn::parse_algorithm(o.algo);
  std::size_t fpa_cap = 12, bfa_cap = 9;
  if (!o.config.empty()) {
    const auto spec = wpcn::load_config(o.config);
    fpa_cap = spec.fixed.fpa_cap;
    bfa_cap = spec.fixed.bfa_cap;
  }
  const wpcn::Schedule s = wpcn::run_algorithm(algo, inst.users, inst.sys, fpa_cap, bfa_cap);
  with_output(o.out, [&](std::ostream& out) { wpcn::write_schedule(out, s); });
  return kExitOk;
}

int cmd_validate(const Options& o) {
  const wpcn::Realization inst = wpcn::load_instance(o.instance);
  const wpcn::Schedule s = wpcn::load_schedule(o.schedule);
  const wpcn::ValidationReport report = wpcn::validate_schedule(inst, s);
  std::cout << wpcn::format_report(report);
  return report.passed() ? kExitOk : kExitValidation;
}

int cmd_gen(const Options& o) {
  const wpcn::Realization inst = instance_from(o);
  with_output(o.out, [&](std::ostream& out) { wpcn::write_instance(out, inst); });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-length TDMA scheduling for full-duplex wireless powered networks"};
  app.require_subcommand(1);
  Options o;

  auto* sweep = app.add_subcommand("sweep", "Run a Monte-Carlo parameter sweep and emit CSV");
  sweep->add_option("--config", o.config, "JSON config file");
  sweep->add_option("--seed", o.seed, "Base seed (overrides the config)");
  sweep->add_option("--out", o.out, "CSV output path (default stdout)");
  sweep->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv"}));

  auto* schedule = app.add_subcommand("schedule", "Schedule one instance with one algorithm");
  schedule->add_option("--instance", o.instance, "Instance file (else drawn from --config/--seed)");
  schedule->add_option("--config", o.config, "JSON config file");
  schedule->add_option("--seed", o.seed, "Realization seed");
  schedule->add_option("--algo", o.algo, "MPA, MTPA, FPA, BFA, OTPA or PCA");
  schedule->add_option("--out", o.out, "Schedule output path (default stdout)");

  auto* validate = app.add_subcommand("validate", "Check a schedule against its instance");
  validate->add_option("--instance", o.instance, "Instance file")->required();
  validate->add_option("--schedule", o.schedule, "Schedule file")->required();

  auto* gen = app.add_subcommand("gen", "Draw one network realization and write it");
  gen->add_option("--config", o.config, "JSON config file");
  gen->add_option("--seed", o.seed, "Realization seed");
  gen->add_option("--out", o.out, "Instance output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sweep) return cmd_sweep(o);
    if (*schedule) return cmd_schedule(o);
    if (*validate) return cmd_validate(o);
    if (*gen) return cmd_gen(o);
  } catch (const wpcn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const wpcn::InfeasibleUser& e) {
    std::cerr << "infeasible instance: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const wpcn::SizeCapExceeded& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const wpcn::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

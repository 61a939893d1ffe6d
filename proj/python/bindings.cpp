// Python bindings for the scheduling core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wpcn/errors.hpp"
#include "wpcn/experiment.hpp"
#include "wpcn/io.hpp"
#include "wpcn/lambert_w.hpp"
#include "wpcn/penalty.hpp"
#include "wpcn/power_control.hpp"
#include "wpcn/schedulers.hpp"

namespace py = pybind11;
using namespace wpcn;

namespace {

std::string csv_text(const SweepOutput& out) {
  std::ostringstream s;
  write_csv(s, out.sweep_variable, out.rows);
  return s.str();
}

template <class T>
std::string to_text(void (*writer)(std::ostream&, const T&), const T& value) {
  std::ostringstream s;
  writer(s, value);
  return s.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Minimum-length TDMA scheduling for full-duplex wireless powered networks";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<InfeasibleUser>(m, "InfeasibleUser", error.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
  py::register_exception<NeverAffordable>(m, "NeverAffordable", error.ptr());
  py::register_exception<SizeCapExceeded>(m, "SizeCapExceeded", error.ptr());
  py::register_exception<StatisticalFailure>(m, "StatisticalFailure", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

  py::class_<EhParams>(m, "EhParams")
      .def(py::init<>())
      .def_readwrite("ps_saturation", &EhParams::ps_saturation)
      .def_readwrite("a_rate", &EhParams::a_rate)
      .def_readwrite("b_threshold", &EhParams::b_threshold);

  py::class_<UserProfile>(m, "UserProfile")
      .def(py::init<>())
      .def(py::init([](int id, double h_down, double g_up, double demand_bits, double battery_j) {
             UserProfile u;
             u.id = id;
             u.h_down = h_down;
             u.g_up = g_up;
             u.demand_bits = demand_bits;
             u.battery_j = battery_j;
             return u;
           }),
           py::arg("id"), py::arg("h_down"), py::arg("g_up"), py::arg("demand_bits") = 100.0,
           py::arg("battery_j") = 1e-9)
      .def_readwrite("id", &UserProfile::id)
      .def_readwrite("h_down", &UserProfile::h_down)
      .def_readwrite("g_up", &UserProfile::g_up)
      .def_readwrite("demand_bits", &UserProfile::demand_bits)
      .def_readwrite("battery_j", &UserProfile::battery_j)
      .def_readwrite("eh", &UserProfile::eh);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("bandwidth_hz", &SystemParams::bandwidth_hz)
      .def_readwrite("p_hap_w", &SystemParams::p_hap_w)
      .def_readwrite("p_max_w", &SystemParams::p_max_w)
      .def_readwrite("noise_density_w_per_hz", &SystemParams::noise_density_w_per_hz)
      .def_readwrite("beta_si", &SystemParams::beta_si);

  py::class_<UserLink>(m, "UserLink")
      .def_readonly("id", &UserLink::id)
      .def_readonly("harvest_w", &UserLink::harvest_w)
      .def_readonly("gain_per_w", &UserLink::gain_per_w)
      .def_readonly("demand_bits", &UserLink::demand_bits)
      .def_readonly("battery_j", &UserLink::battery_j)
      .def_readonly("bandwidth_hz", &UserLink::bandwidth_hz)
      .def_readonly("p_max_w", &UserLink::p_max_w)
      .def_readonly("t_min_s", &UserLink::t_min_s);

  py::class_<TopologyParams>(m, "TopologyParams")
      .def(py::init<>())
      .def_readwrite("n_users", &TopologyParams::n_users)
      .def_readwrite("radius_m", &TopologyParams::radius_m)
      .def_readwrite("pl_d0_db", &TopologyParams::pl_d0_db)
      .def_readwrite("d0_m", &TopologyParams::d0_m)
      .def_readwrite("alpha_exponent", &TopologyParams::alpha_exponent)
      .def_readwrite("sigma_shadow_db", &TopologyParams::sigma_shadow_db)
      .def_readwrite("rayleigh_enabled", &TopologyParams::rayleigh_enabled)
      .def_readwrite("seed", &TopologyParams::seed);

  py::class_<Position>(m, "Position")
      .def_readonly("x_m", &Position::x_m)
      .def_readonly("y_m", &Position::y_m);

  py::class_<Realization>(m, "Realization")
      .def(py::init<>())
      .def_readwrite("users", &Realization::users)
      .def_readwrite("sys", &Realization::sys)
      .def_readwrite("seed", &Realization::seed)
      .def_readwrite("positions", &Realization::positions);

  py::class_<Allocation>(m, "Allocation")
      .def_readonly("user_id", &Allocation::user_id)
      .def_readonly("start_time_s", &Allocation::start_time_s)
      .def_readonly("duration_s", &Allocation::duration_s)
      .def_readonly("power_w", &Allocation::power_w)
      .def_readonly("energy_used_j", &Allocation::energy_used_j);

  py::class_<Schedule>(m, "Schedule")
      .def_readonly("order", &Schedule::order)
      .def_readonly("allocations", &Schedule::allocations)
      .def_readonly("total_length_s", &Schedule::total_length_s)
      .def_readonly("algorithm_tag", &Schedule::algorithm_tag)
      .def_readonly("node_count", &Schedule::node_count)
      .def("__repr__", [](const Schedule& s) {
        return "<Schedule " + s.algorithm_tag + " length=" + format_real(s.total_length_s) + ">";
      });

  py::class_<PowerDecision>(m, "PowerDecision")
      .def_readonly("power_w", &PowerDecision::power_w)
      .def_readonly("duration_s", &PowerDecision::duration_s);

  py::enum_<PowerCap>(m, "PowerCap")
      .value("enforced", PowerCap::enforced)
      .value("disabled", PowerCap::disabled);

  py::enum_<Branch>(m, "Branch").value("principal", Branch::principal).value("lower", Branch::lower);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("sys", &ExperimentConfig::sys)
      .def_readwrite("topology", &ExperimentConfig::topology)
      .def_readwrite("user_template", &ExperimentConfig::user_template)
      .def_readwrite("fpa_cap", &ExperimentConfig::fpa_cap)
      .def_readwrite("bfa_cap", &ExperimentConfig::bfa_cap);

  py::class_<Violation>(m, "Violation")
      .def_readonly("constraint", &Violation::constraint)
      .def_readonly("user_id", &Violation::user_id)
      .def_readonly("residual", &Violation::residual)
      .def_readonly("detail", &Violation::detail);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("violations", &ValidationReport::violations)
      .def_property_readonly("passed", &ValidationReport::passed)
      .def("__str__", &format_report);

  // Model.
  m.def("harvest_rate", py::overload_cast<const UserProfile&, const SystemParams&>(&harvest_rate),
        py::arg("user"), py::arg("sys"));
  m.def("sinr_gain", &sinr_gain, py::arg("user"), py::arg("sys"));
  m.def("min_transmission_time", &min_transmission_time, py::arg("user"), py::arg("sys"));
  m.def("make_link", &make_link, py::arg("user"), py::arg("sys"));
  m.def("lambert_w", &lambert_w, py::arg("y"), py::arg("branch") = Branch::principal);

  // Power control and penalties.
  m.def("optimal_power", py::overload_cast<const UserLink&, double, PowerCap>(&optimal_power),
        py::arg("link"), py::arg("energy_avail_j"), py::arg("cap") = PowerCap::enforced);
  m.def("bisection_oracle",
        py::overload_cast<const UserLink&, double, PowerCap>(&bisection_oracle), py::arg("link"),
        py::arg("energy_avail_j"), py::arg("cap") = PowerCap::enforced);
  m.def("evaluate_order", &evaluate_order, py::arg("users"), py::arg("sys"));
  m.def("penalty", py::overload_cast<const UserLink&, double>(&penalty), py::arg("link"),
        py::arg("start_s"));
  m.def("zero_penalty_start", py::overload_cast<const UserLink&>(&zero_penalty_start),
        py::arg("link"));

  // Schedulers.
  auto users_sys = [](Schedule (*f)(std::span<const UserProfile>, const SystemParams&)) {
    return [f](const std::vector<UserProfile>& users, const SystemParams& sys) {
      return f(users, sys);
    };
  };
  m.def("mpa", users_sys(&mpa), py::arg("users"), py::arg("sys"));
  m.def("mtpa", users_sys(&mtpa), py::arg("users"), py::arg("sys"));
  m.def(
      "fpa",
      [](const std::vector<UserProfile>& users, const SystemParams& sys) { return fpa(users, sys); },
      py::arg("users"), py::arg("sys"));
  m.def(
      "bfa",
      [](const std::vector<UserProfile>& users, const SystemParams& sys, std::size_t cap) {
        return bfa(users, sys, cap);
      },
      py::arg("users"), py::arg("sys"), py::arg("cap") = kDefaultBfaCap);
  m.def(
      "run_algorithm",
      [](const std::string& name, const std::vector<UserProfile>& users, const SystemParams& sys) {
        return run_algorithm(parse_algorithm(name), users, sys);
      },
      py::arg("algorithm"), py::arg("users"), py::arg("sys"));

  // Network generation, validation and sweeps.
  m.def("draw_realization", &draw_realization, py::arg("config"), py::arg("seed"));
  m.def("validate_schedule", &validate_schedule, py::arg("instance"), py::arg("schedule"),
        py::arg("rel_tol") = 1e-9);
  m.def(
      "run_sweep_csv",
      [](const std::string& config_json) {
        const SweepSpec spec = parse_config(config_json);
        SweepOutput out;
        {
          py::gil_scoped_release release;
          out = run_sweep(spec);
        }
        return csv_text(out);
      },
      py::arg("config_json"), "Runs the sweep described by a JSON config and returns the CSV text.");
  m.def(
      "instance_text", [](const Realization& r) { return to_text(&write_instance, r); },
      py::arg("instance"));
  m.def(
      "schedule_text", [](const Schedule& s) { return to_text(&write_schedule, s); },
      py::arg("schedule"));
}

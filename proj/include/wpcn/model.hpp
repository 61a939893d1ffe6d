#pragma once

// Physical-layer model of a full-duplex wireless powered network: the
// logistic energy-harvesting curve, the effective uplink SINR gain and the
// Shannon rate. Units are SI throughout (W, s, J, Hz).

namespace wpcn {

/// Logistic energy-harvesting circuit parameters.
struct EhParams {
  double ps_saturation = 0.024;  ///< W, harvested power in saturation
  double a_rate = 150.0;         ///< steepness of the logistic curve
  double b_threshold = 0.014;    ///< W, turn-on threshold of the curve
};

struct UserProfile {
  int id = 0;
  double h_down = 0.0;  ///< HAP -> user power gain, linear
  double g_up = 0.0;    ///< user -> HAP power gain, linear
  double demand_bits = 100.0;
  double battery_j = 1e-9;  ///< initial battery energy
  EhParams eh{};
};

/// Thermal noise floor of -174 dBm/Hz expressed in W/Hz.
inline constexpr double kThermalNoiseWPerHz = 3.9810717055349565e-21;

struct SystemParams {
  double bandwidth_hz = 1e6;
  double p_hap_w = 1.0;
  double p_max_w = 1e-3;
  double noise_density_w_per_hz = kThermalNoiseWPerHz;
  double beta_si = 1e-7;  ///< self-interference coefficient, linear
};

/// Throws DomainError when a field violates its invariant.
void validate(const EhParams& eh);
void validate(const UserProfile& user);
void validate(const SystemParams& sys);

/// Harvested power C_i of a user under continuous HAP transmission.
/// Zero at zero input power and strictly below the saturation power otherwise
/// (up to rounding at very large inputs).
double harvest_rate(const UserProfile& user, const SystemParams& sys);

/// Received power at the logistic harvester for input power `input_w`.
double harvest_rate(const EhParams& eh, double input_w);

/// Effective SINR gain per transmitted watt, k_i = g_i / (N0 W + beta P_h).
double sinr_gain(const UserProfile& user, const SystemParams& sys);

/// Shannon rate W log2(1 + k_i p_tx) in bit/s.
double rate_bps(const UserProfile& user, const SystemParams& sys, double p_tx_w);

/// Slot length needed to deliver the demand at the power cap.
double min_transmission_time(const UserProfile& user, const SystemParams& sys);

/// Per-user quantities that every scheduler evaluation needs, computed once
/// for a given (user, system) pair.
struct UserLink {
  int id = 0;
  double harvest_w = 0.0;   ///< C_i
  double gain_per_w = 0.0;  ///< k_i
  double demand_bits = 0.0;
  double battery_j = 0.0;
  double bandwidth_hz = 0.0;
  double p_max_w = 0.0;
  double t_min_s = 0.0;
};

UserLink make_link(const UserProfile& user, const SystemParams& sys);

}  // namespace wpcn

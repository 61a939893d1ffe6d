#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "support.hpp"
#include "wpcn/errors.hpp"
#include "wpcn/model.hpp"

using namespace wpcn;
using wpcn::test::rel_diff;

namespace {

// Logistic harvest curve evaluated term by term in 50-digit arithmetic.
double harvest_extended(double ps, double a, double b, double x) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const big psi = 1 / (1 + exp(-big(a) * (big(x) - big(b))));
  const big omega = 1 / (1 + exp(big(a) * big(b)));
  return static_cast<double>(big(ps) * (psi - omega) / (1 - omega));
}

UserProfile user_with(double h, double g) {
  UserProfile u;
  u.h_down = h;
  u.g_up = g;
  return u;
}

}  // namespace

TEST_CASE("harvest rate is zero at zero input") {
  EhParams eh{0.024, 150.0, 0.014};
  CHECK(harvest_rate(eh, 0.0) == 0.0);
  CHECK(std::abs(harvest_rate(eh, 1e-300)) <= 1e-15);
}

TEST_CASE("harvest rate saturates at ps for very large input") {
  EhParams eh{0.024, 150.0, 0.014};
  CHECK(rel_diff(harvest_rate(eh, 1e6 * eh.b_threshold), eh.ps_saturation) <= 1e-9);
}

TEST_CASE("harvest rate matches the extended-precision evaluation") {
  // Frozen from a 50-digit evaluation of the logistic curve.
  constexpr double kFrozen = 0.006755534111317140253;
  EhParams eh{0.01, 150.0, 0.014};
  const double c = harvest_rate(eh, 0.02);
  CHECK(rel_diff(c, kFrozen) <= 1e-14);
  CHECK(rel_diff(c, harvest_extended(0.01, 150.0, 0.014, 0.02)) <= 1e-14);

  std::mt19937_64 g(11);
  for (int i = 0; i < 2000; ++i) {
    const double ps = test::log_uniform(g, 1e-4, 1.0);
    const double a = test::log_uniform(g, 1.0, 1e4);
    const double b = test::log_uniform(g, 1e-6, 0.1);
    const double x = test::log_uniform(g, 1e-9, 1.0);
    const double want = harvest_extended(ps, a, b, x);
    CHECK(std::abs(harvest_rate(EhParams{ps, a, b}, x) - want) <= 1e-13 * ps);
  }
}

TEST_CASE("harvest rate is non-decreasing and stays below saturation") {
  EhParams eh{0.024, 150.0, 0.014};
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = 5.0 * eh.b_threshold * i / 1000.0;
    const double c = harvest_rate(eh, x);
    CHECK(c >= prev);
    CHECK(c >= 0.0);
    CHECK(c < eh.ps_saturation);
    prev = c;
  }
}

TEST_CASE("harvest rate from a profile uses h_down times HAP power") {
  SystemParams sys;
  sys.p_hap_w = 30.0;
  const UserProfile u = user_with(1e-3, 1e-3);
  CHECK(harvest_rate(u, sys) == harvest_rate(u.eh, 1e-3 * 30.0));
}

TEST_CASE("sinr gain examples") {
  SystemParams sys;
  sys.beta_si = 0.0;
  const double n0w = sys.noise_density_w_per_hz * sys.bandwidth_hz;
  CHECK(rel_diff(sinr_gain(user_with(1e-3, n0w), sys), 1.0) <= 1e-15);

  SystemParams si;
  CHECK(rel_diff(sinr_gain(user_with(1e-3, 2e-6), si), 2.0 * sinr_gain(user_with(1e-3, 1e-6), si)) <=
        1e-15);

  SystemParams s3;
  s3.noise_density_w_per_hz = 1e-20;  // N0 W = 1e-14 W
  s3.beta_si = 1e-7;                  // beta P_h = 1e-7 W
  const double k = sinr_gain(user_with(1e-3, 1e-6), s3);
  CHECK(rel_diff(k, 1e-6 / (1e-14 + 1e-7)) <= 1e-15);
  CHECK(rel_diff(k, 10.0) <= 1e-6);
}

TEST_CASE("rate and minimum transmission time examples") {
  SystemParams sys;
  sys.beta_si = 0.0;
  const double n0w = sys.noise_density_w_per_hz * sys.bandwidth_hz;

  // k = 1 / p_max so that k p_max = 1, then 3.
  UserProfile u = user_with(1e-3, n0w / sys.p_max_w);
  CHECK(rate_bps(u, sys, 0.0) == 0.0);
  CHECK(rel_diff(rate_bps(u, sys, sys.p_max_w), 1e6) <= 1e-12);
  CHECK(rel_diff(min_transmission_time(u, sys), 1e-4) <= 1e-12);
  u.demand_bits = 50.0;
  CHECK(rel_diff(min_transmission_time(u, sys), 0.5e-4) <= 1e-12);

  UserProfile u3 = user_with(1e-3, 3.0 * n0w / sys.p_max_w);
  CHECK(rel_diff(rate_bps(u3, sys, sys.p_max_w), 2e6) <= 1e-12);
  CHECK(rel_diff(min_transmission_time(u3, sys), 5e-5) <= 1e-12);
}

TEST_CASE("rate is strictly increasing and concave in power") {
  SystemParams sys;
  const UserProfile u = user_with(1e-3, 1e-4);
  double prev_rate = -1.0;
  double prev_step = INFINITY;
  const double dp = 1e-4;
  for (int i = 0; i < 200; ++i) {
    const double r = rate_bps(u, sys, i * dp);
    CHECK(r > prev_rate);
    if (i > 0) {
      const double step = r - prev_rate;
      CHECK(step < prev_step);
      prev_step = step;
    }
    prev_rate = r;
  }
}

TEST_CASE("validation rejects out-of-domain parameters") {
  SystemParams sys;
  sys.beta_si = 1.5;
  CHECK_THROWS_AS(validate(sys), DomainError);
  sys = SystemParams{};
  sys.p_max_w = 0.0;
  CHECK_THROWS_AS(validate(sys), DomainError);

  UserProfile u = user_with(1e-3, 1e-3);
  CHECK_NOTHROW(validate(u));
  u.demand_bits = 0.0;
  CHECK_THROWS_AS(validate(u), DomainError);
  u = user_with(1e-3, 1e-3);
  u.eh.a_rate = -1.0;
  CHECK_THROWS_AS(validate(u), DomainError);
}

TEST_CASE("make_link caches the per-user quantities") {
  SystemParams sys;
  UserProfile u = user_with(2e-4, 3e-5);
  u.id = 7;
  const UserLink l = make_link(u, sys);
  CHECK(l.id == 7);
  CHECK(l.harvest_w == harvest_rate(u, sys));
  CHECK(l.gain_per_w == sinr_gain(u, sys));
  CHECK(l.t_min_s == min_transmission_time(u, sys));
  CHECK(l.p_max_w == sys.p_max_w);
}

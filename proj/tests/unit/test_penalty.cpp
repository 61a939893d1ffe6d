#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "wpcn/errors.hpp"
#include "wpcn/penalty.hpp"
#include "wpcn/power_control.hpp"

using namespace wpcn;
using wpcn::test::rel_diff;

namespace {

UserLink energy_limited_link() {
  UserLink l;
  l.id = 1;
  l.harvest_w = 1e-6;
  l.gain_per_w = 1e4;
  l.demand_bits = 100.0;
  l.battery_j = 1e-9;
  l.bandwidth_hz = 1e6;
  l.p_max_w = 1e-3;
  l.t_min_s = 100.0 / (1e6 * std::log2(1.0 + 10.0));
  return l;
}

// Smallest start at which the uncapped optimum (found by the bisection oracle)
// reaches the power cap.
double zero_start_by_bisection(const UserLink& l) {
  auto reaches_cap = [&](double s) {
    return bisection_oracle(l, l.battery_j + l.harvest_w * s, PowerCap::disabled).power_w >=
           l.p_max_w;
  };
  double lo = 0.0, hi = 1.0;
  while (!reaches_cap(hi)) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (reaches_cap(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

TEST_CASE("cap-binding user has zero penalty from the start") {
  UserLink l = energy_limited_link();
  l.battery_j = 1.0;
  CHECK(end_time(l, 0.0) == l.t_min_s);
  CHECK(penalty(l, 0.0) == 0.0);
  CHECK(zero_penalty_start(l) == 0.0);
}

TEST_CASE("past the zero-penalty start the slot is exactly t_min") {
  const UserLink l = energy_limited_link();
  const double s0 = zero_penalty_start(l);
  REQUIRE(s0 > 0.0);
  for (double f : {1.0, 1.001, 1.5, 10.0}) {
    const double s = s0 * f;
    CHECK(end_time(l, s) - s == doctest::Approx(l.t_min_s).epsilon(1e-12));
    CHECK(penalty(l, s) <= kZeroPenaltyTolS);
  }
  CHECK(penalty(l, s0 * (1.0 - 1e-6)) > 0.0);
}

TEST_CASE("zero-penalty start with an empty battery") {
  UserLink l = energy_limited_link();
  l.battery_j = 0.0;
  CHECK(rel_diff(zero_penalty_start(l), (l.p_max_w - l.harvest_w) * l.t_min_s / l.harvest_w) <=
        1e-15);
}

TEST_CASE("zero-penalty start agrees with bisection on the penalty") {
  std::mt19937_64 g(41);
  for (int i = 0; i < 300; ++i) {
    const UserLink l = test::random_link(g, i);
    const double closed = zero_penalty_start(l);
    if (closed == 0.0) {
      CHECK(penalty(l, 0.0) <= kZeroPenaltyTolS);
      continue;
    }
    CHECK(rel_diff(closed, zero_start_by_bisection(l)) <= 1e-9);
  }
}

TEST_CASE("never affordable without harvesting") {
  UserLink l = energy_limited_link();
  l.harvest_w = 0.0;
  l.battery_j = 1e-12;
  CHECK_THROWS_AS(zero_penalty_start(l), NeverAffordable);
}

TEST_CASE("end time matches the oracle at sample starts") {
  const Realization inst = test::default_instance(10, 5);
  for (const auto& u : inst.users) {
    const UserLink l = make_link(u, inst.sys);
    for (double s : {0.0, 1e-4, 1e-3}) {
      const double want = s + bisection_oracle(l, l.battery_j + l.harvest_w * s).duration_s;
      CHECK(rel_diff(end_time(u, inst.sys, s), want) <= 1e-9);
    }
  }
}

TEST_CASE("penalty strictly falls for an energy-limited user") {
  const UserLink l = energy_limited_link();
  const double r0 = penalty(l, 0.0);
  const double r1 = penalty(l, l.t_min_s);
  CHECK(r0 > r1);
  CHECK(r1 > 0.0);
  const double o0 = bisection_oracle(l, l.battery_j).duration_s - l.t_min_s;
  CHECK(rel_diff(r0, o0) <= 1e-9);
}

TEST_CASE("penalty is non-increasing on a geometric grid and bounded by its value at zero") {
  std::mt19937_64 g(43);
  for (int i = 0; i < 300; ++i) {
    const UserLink l = test::random_link(g, i);
    const double rho_max = penalty(l, 0.0);
    const double s_zero = zero_penalty_start(l);
    const double top = std::max(10.0 * s_zero, 1e-3);
    double prev = rho_max;
    for (int j = 0; j < 100; ++j) {
      const double s = top * std::pow(10.0, -8.0 * (99 - j) / 99.0);
      const double rho = penalty(l, s);
      CHECK(rho <= prev + 1e-12);
      CHECK(rho >= -1e-12);
      CHECK(rho <= rho_max + 1e-12);
      if (s > s_zero) CHECK(rho <= kZeroPenaltyTolS);
      prev = rho;
    }
  }
}

TEST_CASE("penalty point fields are consistent") {
  const Realization inst = test::default_instance(4, 8);
  for (const auto& u : inst.users) {
    const PenaltyPoint p = penalty_point(u, inst.sys, 0.25);
    CHECK(p.start_time_s == 0.25);
    CHECK(std::abs(p.penalty_s - (p.end_time_s - p.start_time_s - p.t_min_s)) <= 1e-12);
    CHECK(p.t_min_s == min_transmission_time(u, inst.sys));
    CHECK(p.penalty_s == penalty(u, inst.sys, 0.25));
  }
}

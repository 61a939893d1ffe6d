#include "wpcn/lambert_w.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wpcn/errors.hpp"

namespace wpcn {

namespace {

constexpr double kInvE = 0.36787944117144233;
// 1/e - kInvE, so that y + 1/e is formed without losing the low bits.
constexpr double kInvELow = -1.2428753672788363e-17;
constexpr double kDomainSlack = 1e-15;
constexpr double kSeriesZone = 1e-8;
constexpr int kMaxIter = 50;
constexpr double kStepTol = 1e-14;

// e*y + 1, the squared-distance coordinate around the branch point.
double branch_offset(double y) {
  return std::numbers::e * ((y + kInvE) + kInvELow);
}

// Expansion of W about y = -1/e in p = +-sqrt(2(ey + 1)); p > 0 gives the
// principal branch, p < 0 the lower one.
double branch_point_series(double p) {
  return -1.0 +
         p * (1.0 +
              p * (-1.0 / 3.0 +
                   p * (11.0 / 72.0 +
                        p * (-43.0 / 540.0 + p * (769.0 / 17280.0 + p * (-221.0 / 8505.0))))));
}

// Halley iteration on w e^w - y = 0.
double halley_direct(double y, double w) {
  for (int i = 0; i < kMaxIter; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - y;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (denom == 0.0 || !std::isfinite(denom)) break;
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= kStepTol * std::abs(w) || std::abs(step) < 1e-300) break;
  }
  return w;
}

// Halley iteration on w + ln w - log_y = 0 (principal branch, y > e).
double halley_log_principal(double log_y, double w) {
  for (int i = 0; i < kMaxIter; ++i) {
    const double g = w + std::log(w) - log_y;
    const double g1 = 1.0 + 1.0 / w;
    const double g2 = -1.0 / (w * w);
    const double step = 2.0 * g * g1 / (2.0 * g1 * g1 - g * g2);
    w -= step;
    if (std::abs(step) <= kStepTol * std::abs(w)) break;
  }
  return w;
}

// Halley iteration on t - ln t - m = 0 with t = -W_{-1} >= 1.
double halley_log_lower(double m, double t) {
  for (int i = 0; i < kMaxIter; ++i) {
    const double h = t - std::log(t) - m;
    const double h1 = 1.0 - 1.0 / t;
    const double h2 = 1.0 / (t * t);
    const double denom = 2.0 * h1 * h1 - h * h2;
    if (denom == 0.0) break;
    const double step = 2.0 * h * h1 / denom;
    t -= step;
    if (t < 1.0) t = 1.0;
    if (std::abs(step) <= kStepTol * t) break;
  }
  return t;
}

double principal(double y) {
  if (y == 0.0) return 0.0;
  const double q = branch_offset(y);
  if (q <= 0.0) return -1.0;
  if (q < kSeriesZone) return branch_point_series(std::sqrt(2.0 * q));
  if (y > std::numbers::e) {
    const double log_y = std::log(y);
    const double log_log_y = std::log(log_y);
    const double guess = log_y - log_log_y + log_log_y / log_y;
    return halley_log_principal(log_y, guess);
  }
  double guess;
  if (q < 0.5) {
    guess = branch_point_series(std::sqrt(2.0 * q));
  } else {
    const double l1 = std::log1p(y);
    guess = l1 * (1.0 - std::log1p(l1) / (2.0 + l1));
  }
  return std::max(-1.0, halley_direct(y, guess));
}

}  // namespace

double lambert_w_lower_log(double log_neg_y) {
  if (std::isnan(log_neg_y) || log_neg_y > -1.0 + kDomainSlack) {
    throw DomainError("lambert_w lower branch: argument below -1/e");
  }
  if (log_neg_y >= -1.0) return -1.0;
  // q = e*y + 1 = 1 - e^{L + 1}
  const double q = -std::expm1(log_neg_y + 1.0);
  if (q <= 0.0) return -1.0;
  if (q < kSeriesZone) return branch_point_series(-std::sqrt(2.0 * q));
  const double m = -log_neg_y;
  double guess;
  if (q < 0.5) {
    guess = -branch_point_series(-std::sqrt(2.0 * q));
  } else {
    const double log_m = std::log(m);
    guess = m + log_m + log_m / m;
  }
  return -halley_log_lower(m, guess);
}

double lambert_w(double y, Branch branch) {
  if (std::isnan(y) || y < -kInvE - kDomainSlack) {
    throw DomainError("lambert_w: argument below -1/e");
  }
  if (y < -kInvE) y = -kInvE;
  if (branch == Branch::principal) return principal(y);

  if (y >= 0.0) throw DomainError("lambert_w lower branch: argument must be negative");
  const double q = branch_offset(y);
  if (q <= 0.0) return -1.0;
  if (q < kSeriesZone) return branch_point_series(-std::sqrt(2.0 * q));
  if (q < 0.5) return std::min(-1.0, halley_direct(y, branch_point_series(-std::sqrt(2.0 * q))));
  return lambert_w_lower_log(std::log(-y));
}

}  // namespace wpcn

#pragma once

namespace wpcn {

enum class Branch {
  principal,  ///< W_0, defined for y >= -1/e, returns x >= -1
  lower,      ///< W_{-1}, defined for -1/e <= y < 0, returns x <= -1
};

/// Real Lambert W: returns x with x e^x = y on the requested branch.
///
/// Arguments down to 1e-15 below -1/e are clamped onto the branch point.
/// Throws DomainError for y < -1/e - 1e-15, and for y >= 0 on the lower branch.
double lambert_w(double y, Branch branch);

/// Lower branch evaluated from the logarithm of its argument:
/// returns W_{-1}(-exp(log_neg_y)). Usable where -exp(log_neg_y) underflows.
/// Requires log_neg_y <= -1 (up to 1e-15); throws DomainError otherwise.
double lambert_w_lower_log(double log_neg_y);

}  // namespace wpcn

#pragma once

namespace natanzon {

/// Principal branch W0 of the product logarithm, w e^w = y, w >= -1.
/// Defined for y >= -1/e; throws DomainError below the branch point.
double lambert_w0(double y);

/// Lower branch W-1, w <= -1, defined for -1/e <= y < 0.
double lambert_wm1(double y);

/// W0(y) + 1 given the branch-point offset delta = e*y + 1 >= 0. Keeps full
/// relative accuracy when y is within rounding distance of -1/e, where
/// forming y first would cancel.
double lambert_w0_plus_one(double delta);

}  // namespace natanzon

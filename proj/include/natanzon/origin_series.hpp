#pragma once

#include <vector>

namespace natanzon {

/// Power series truncated to a fixed number of terms, c[0] + c[1] s + ...
using Series = std::vector<double>;

Series series_mul(const Series& a, const Series& b);
/// 1/a; requires a[0] != 0.
Series series_inv(const Series& a);
/// sqrt(a); requires a[0] > 0.
Series series_sqrt(const Series& a);
/// a^n for any integer n (negative n requires a[0] != 0).
Series series_pow(const Series& a, int n);
/// g(f) for f[0] == 0.
Series series_compose(const Series& g, const Series& f);
/// f with g(f(s)) = s; requires g[0] == 0 and g[1] != 0.
Series series_reversion(const Series& g);

}  // namespace natanzon

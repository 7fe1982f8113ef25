#include "ramac/stats.hpp"

#include <algorithm>
#include <cmath>

#include "ramac/errors.hpp"

namespace ramac {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) throw ConfigError("wilson interval: zero trials");
    if (successes > trials)
        throw ConfigError("wilson interval: more successes than trials");

    constexpr double z = 1.959963984540054;   // 97.5% normal quantile
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;

    Interval ci;
    ci.lo = std::max(0.0, center - half);
    ci.hi = std::min(1.0, center + half);
    // At the boundaries center and half agree only up to rounding; the
    // limits are exactly 0 and 1 there, so pin them.
    if (successes == 0) ci.lo = 0.0;
    if (successes == trials) ci.hi = 1.0;
    return ci;
}

} // namespace ramac

#pragma once

#include <cstdint>

namespace ramac {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

// Wilson score interval for a binomial proportion at 95% confidence.
// Behaves sensibly at the boundaries (k = 0 gives lo = 0 and hi near
// z^2 / n, the continuous analogue of the rule of three), unlike the Wald
// interval which collapses there.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials);

} // namespace ramac

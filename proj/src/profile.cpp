#include "ramac/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ramac/errors.hpp"

namespace ramac {

void validate_profile(const InputProfile& pr) {
    if (!(pr.r_max > 0.0))
        throw ConfigError("profile: r_max must be positive");
    if (pr.breakpoints.empty())
        throw ConfigError("profile: needs at least one segment");
    if (pr.breakpoints.size() != pr.segment_pmfs.size())
        throw ConfigError("profile: breakpoint and segment counts differ");

    double prev = 0.0;
    for (std::size_t i = 0; i < pr.breakpoints.size(); ++i) {
        if (!(pr.breakpoints[i] > prev))
            throw ConfigError("profile: breakpoints must be strictly increasing and positive");
        prev = pr.breakpoints[i];
    }
    if (pr.breakpoints.back() != pr.r_max)
        throw ConfigError("profile: last breakpoint must equal r_max");

    validate_pmf(pr.zero_rate_pmf, "profile zero-rate law");
    for (std::size_t i = 0; i < pr.segment_pmfs.size(); ++i) {
        validate_pmf(pr.segment_pmfs[i], "profile segment " + std::to_string(i));
        if (pr.segment_pmfs[i].size() != pr.zero_rate_pmf.size())
            throw ConfigError("profile: segment " + std::to_string(i) +
                              " law has a different alphabet size");
    }
}

int segment_index(const InputProfile& pr, double r) {
    if (r < 0.0)
        throw ConfigError("profile: negative rate");
    if (r == 0.0) return -1;
    if (r > pr.r_max)
        throw ConfigError("profile: rate " + std::to_string(r) +
                          " exceeds r_max " + std::to_string(pr.r_max));
    // first breakpoint >= r closes the segment containing r
    auto it = std::lower_bound(pr.breakpoints.begin(), pr.breakpoints.end(), r);
    return static_cast<int>(it - pr.breakpoints.begin());
}

const Pmf& profile_at(const InputProfile& pr, double r) {
    const int s = segment_index(pr, r);
    if (s < 0) return pr.zero_rate_pmf;
    return pr.segment_pmfs[static_cast<std::size_t>(s)];
}

InputProfile prop1_profile(int n, int segments) {
    if (n < 1 || n > 16)
        throw ConfigError("sqrt-law profile: order must be in [1, 16]");
    if (segments < 1)
        throw ConfigError("sqrt-law profile: need at least one segment");

    const int nonzero = 1 << n;
    const double r_max = static_cast<double>(n);
    InputProfile pr;
    pr.r_max = r_max;
    pr.breakpoints.resize(static_cast<std::size_t>(segments));
    pr.segment_pmfs.resize(static_cast<std::size_t>(segments));
    pr.zero_rate_pmf.assign(static_cast<std::size_t>(nonzero) + 1, 0.0);
    pr.zero_rate_pmf[0] = 1.0;

    for (int i = 0; i < segments; ++i) {
        const double b = r_max * static_cast<double>(i + 1) / static_cast<double>(segments);
        const double p = std::sqrt(b / r_max);   // sqrt(b/n), evaluated at the segment end
        Pmf law(static_cast<std::size_t>(nonzero) + 1, p / static_cast<double>(nonzero));
        law[0] = 1.0 - p;
        pr.breakpoints[static_cast<std::size_t>(i)] = b;
        pr.segment_pmfs[static_cast<std::size_t>(i)] = std::move(law);
    }
    return pr;
}

InputProfile single_segment_profile(double r_max, Pmf law) {
    Pmf zero(law.size(), 0.0);
    zero[0] = 1.0;
    return single_segment_profile(r_max, std::move(law), std::move(zero));
}

InputProfile single_segment_profile(double r_max, Pmf law, Pmf zero_rate) {
    InputProfile pr;
    pr.r_max = r_max;
    pr.breakpoints = {r_max};
    pr.segment_pmfs = {std::move(law)};
    pr.zero_rate_pmf = std::move(zero_rate);
    validate_profile(pr);
    return pr;
}

} // namespace ramac

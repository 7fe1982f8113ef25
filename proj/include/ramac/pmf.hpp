#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ramac/errors.hpp"

namespace ramac {

// Probability mass function over a finite alphabet {0, .., size-1}.
using Pmf = std::vector<double>;

// Entries must be nonnegative and sum to 1 within 1e-9. Nothing is
// renormalized: a config that is off by more than the tolerance is a bug in
// the config, not something to quietly smooth out.
inline void validate_pmf(const Pmf& p, const std::string& what) {
    if (p.empty()) throw ConfigError(what + ": empty pmf");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] >= 0.0) || !std::isfinite(p[i]))
            throw ConfigError(what + ": entry " + std::to_string(i) +
                              " is negative or non-finite");
        sum += p[i];
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ConfigError(what + ": entries sum to " + std::to_string(sum) +
                          ", expected 1 within 1e-9");
}

// Shannon entropy in bits; 0 log 0 = 0.
inline double entropy_bits(const Pmf& p) {
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

} // namespace ramac

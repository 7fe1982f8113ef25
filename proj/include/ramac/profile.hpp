#pragma once

#include <vector>

#include "ramac/pmf.hpp"

namespace ramac {

// Rate-indexed input distribution for one sender: a piecewise-constant map
// from communication rate r to a symbol law.
//
// The domain (0, r_max] is split into segments by ascending breakpoints
// b_1 < b_2 < .. < b_m = r_max. Segment i covers the half-open interval
// (b_{i-1}, b_i] with b_0 = 0: each breakpoint belongs to the segment it
// closes. Rate 0 (the idle message) has its own dedicated law, normally a
// point mass on the idle symbol.
struct InputProfile {
    double r_max = 0.0;
    std::vector<double> breakpoints;   // ascending, last entry equals r_max
    std::vector<Pmf> segment_pmfs;     // one law per segment, equal lengths
    Pmf zero_rate_pmf;                 // law used at exactly r = 0

    int alphabet() const { return static_cast<int>(zero_rate_pmf.size()); }
    int segments() const { return static_cast<int>(segment_pmfs.size()); }
};

// Shape and normalization checks; throws ConfigError.
void validate_profile(const InputProfile& pr);

// Segment containing rate r: -1 for r == 0, otherwise the index i with
// r in (b_{i-1}, b_i]. Throws ConfigError for r < 0 or r > r_max.
int segment_index(const InputProfile& pr, double r);

// Symbol law at rate r (zero_rate_pmf at r == 0).
const Pmf& profile_at(const InputProfile& pr, double r);

// Piecewise discretization of the square-root activity law for the
// collision channel of order n: at rate r a sender transmits with
// probability sqrt(r/n), spread uniformly over the 2^n nonzero symbols,
// and idles otherwise. Each of the `segments` equal-width pieces of
// (0, n] carries the law evaluated at its right endpoint, so the law at a
// breakpoint is exact and interior rates round up to the segment end.
InputProfile prop1_profile(int n, int segments = 64);

// Profile with a single segment covering (0, r_max]. The zero-rate law
// defaults to a point mass on symbol 0.
InputProfile single_segment_profile(double r_max, Pmf law);
InputProfile single_segment_profile(double r_max, Pmf law, Pmf zero_rate);

} // namespace ramac

#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ramac/channel.hpp"
#include "ramac/information.hpp"
#include "ramac/prng.hpp"
#include "ramac/profile.hpp"

namespace ramac {

using RateVector = std::vector<double>;

// Memoizing mutual-information oracle for one channel plus one input
// profile per sender. Region predicates evaluate I(X_S; Y | X_C) at the
// laws the profiles select for a rate vector; since laws are constant on
// profile segments, results are cached by (segment tuple, S, C).
//
// At most 8 users: every predicate here enumerates subsets exhaustively.
class MIOracle {
public:
    MIOracle(ChannelModel channel, std::vector<InputProfile> profiles);

    int num_users() const { return channel_.num_users(); }
    const ChannelModel& channel() const { return channel_; }
    const InputProfile& profile(int k) const { return profiles_[static_cast<std::size_t>(k)]; }

    // Throws ConfigError if the vector has the wrong length, a negative
    // entry, or a rate beyond the corresponding profile's r_max.
    void check_rates(const RateVector& r) const;

    // I(X_S; Y | X_C) with each user's law taken from its profile at r.
    double mutual_information(const RateVector& r, std::uint32_t S, std::uint32_t C) const;

private:
    struct Key {
        std::uint64_t segs;
        std::uint64_t sc;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return static_cast<std::size_t>(mix64(k.segs ^ mix64(k.sc)));
        }
    };

    Key make_key(const RateVector& r, std::uint32_t S, std::uint32_t C) const;

    ChannelModel channel_;
    std::vector<InputProfile> profiles_;
    mutable std::unordered_map<Key, double, KeyHash> memo_;
};

// The achievable-region predicates below use strict inequalities with zero
// tolerance: the regions are open sets, and a rate vector sitting exactly
// on a constraint boundary is classified outside. Closure queries use <=
// with a 1e-9 slack instead and are only exposed where closures matter
// (the blocking-subset search).

// All-user region: for every nonempty sender subset S, either every rate
// in S is zero or sum_{i in S} r_i < I(X_S; Y | X_{S^c}).
bool contains_all(const RateVector& r, const MIOracle& oracle);

// Single-user region for sender k (0-based): r_k = 0, or for every S
// containing k there is a witness subset T with k in T, T subset of S,
// whose rate sum stays below I(X_T; Y | X_{S \ T}).
bool contains_user(const RateVector& r, int k, const MIOracle& oracle);

// Group region for a nonempty target set S0: for every S meeting S0 there
// is a T between S∩S0 and S that is either all-zero-rate or satisfies the
// strict rate-sum bound.
bool contains_subset(const RateVector& r, std::uint32_t S0, const MIOracle& oracle);

// Single-user region with every mutual-information bound tightened by
// sigma >= 0. Follows the shrunk-region definition literally, which has no
// special branch for r_k = 0; pass include_zero_rate_branch = true to add
// that branch back and make sigma = 0 coincide with contains_user.
bool shrunk_contains_user(const RateVector& r, int k, double sigma,
                          const MIOracle& oracle,
                          bool include_zero_rate_branch = false);

// Closure of the single-user region (<= with 1e-9 tolerance).
bool closure_contains_user(const RateVector& r, int k, const MIOracle& oracle);

// Certificate that r lies outside the closure of user k's region: a
// conditioning set S1 (not containing k) such that for every S2 drawn from
// the remaining users, r_k + sum_{i in S2} r_i exceeds I(X_{S2+k}; Y | X_S1).
// Returns the smallest such mask, or nullopt when r is inside the closure.
std::optional<std::uint32_t> find_blocking_subset(const RateVector& r, int k,
                                                  const MIOracle& oracle);

// One row of the constraint table the CLI prints: subset S, witness
// subset T evaluated, the rate sum over T, the conditional mutual
// information bound, slack = bound - sum, and whether the row passes.
struct ConstraintRow {
    std::uint32_t S = 0;
    std::uint32_t T = 0;
    double sum_rate = 0.0;
    double mutual_information = 0.0;
    double slack = 0.0;
    bool satisfied = false;
};

enum class RegionMode { All, User, Subset };

// Exhaustive constraint listing for one of the three region predicates.
// For RegionMode::User, `target` is the user index; for Subset it is the
// mask S0; ignored for All.
std::vector<ConstraintRow> region_constraints(const RateVector& r, RegionMode mode,
                                              std::uint32_t target,
                                              const MIOracle& oracle);

// Quantize a rate onto the uniform grid of M+1 levels spanning [0, r_max],
// rounding down.
double grid_quantize(double r, int M, double r_max);

// Scalar Gaussian multiple-access region with powers P and noise level N0:
// membership and the per-subset bound (1/2) log2(1 + sum_{i in S} P_i / N0).
double gaussian_subset_bound(const std::vector<double>& P, double N0, std::uint32_t S);
bool gaussian_region_contains(const std::vector<double>& P, double N0,
                              const RateVector& r);

// Square-root activity bound for the collision channel of order n:
// sum_i sqrt(r_i / n) < 1, strict.
bool collision_region_contains(const RateVector& r, int n);

} // namespace ramac

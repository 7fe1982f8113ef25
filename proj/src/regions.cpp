#include "ramac/regions.hpp"

#include <cmath>
#include <string>

#include "ramac/errors.hpp"

namespace ramac {

namespace {

constexpr double kClosureTol = 1e-9;

double rate_sum(const RateVector& r, std::uint32_t mask) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (mask & (1u << i)) s += r[i];
    return s;
}

bool all_zero(const RateVector& r, std::uint32_t mask) {
    for (std::size_t i = 0; i < r.size(); ++i)
        if ((mask & (1u << i)) && r[i] != 0.0) return false;
    return true;
}

} // namespace

MIOracle::MIOracle(ChannelModel channel, std::vector<InputProfile> profiles)
    : channel_(std::move(channel)), profiles_(std::move(profiles)) {
    validate_channel(channel_);
    if (channel_.num_users() > 8)
        throw GuardrailError("regions: subset enumeration supports at most 8 users");
    if (profiles_.size() != static_cast<std::size_t>(channel_.num_users()))
        throw ConfigError("regions: need one profile per sender");
    for (std::size_t k = 0; k < profiles_.size(); ++k) {
        validate_profile(profiles_[k]);
        if (profiles_[k].alphabet() != channel_.input_sizes[k])
            throw ConfigError("regions: profile " + std::to_string(k + 1) +
                              " alphabet does not match the channel");
    }
}

void MIOracle::check_rates(const RateVector& r) const {
    if (r.size() != static_cast<std::size_t>(num_users()))
        throw ConfigError("regions: rate vector length does not match the user count");
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(r[i] >= 0.0))
            throw ConfigError("regions: rate " + std::to_string(i + 1) + " is negative");
        if (r[i] > profiles_[i].r_max)
            throw ConfigError("regions: rate " + std::to_string(i + 1) +
                              " exceeds the profile's r_max");
    }
}

MIOracle::Key MIOracle::make_key(const RateVector& r, std::uint32_t S,
                                 std::uint32_t C) const {
    std::uint64_t segs = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const int s = segment_index(profiles_[i], r[i]);
        segs |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(s + 1)) << (8 * i);
    }
    return Key{segs, (static_cast<std::uint64_t>(S) << 32) | C};
}

double MIOracle::mutual_information(const RateVector& r, std::uint32_t S,
                                    std::uint32_t C) const {
    const Key key = make_key(r, S, C);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    std::vector<Pmf> laws(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        laws[i] = profile_at(profiles_[i], r[i]);
    const double v = conditional_mutual_information(channel_, laws, S, C);
    memo_.emplace(key, v);
    return v;
}

bool contains_all(const RateVector& r, const MIOracle& oracle) {
    oracle.check_rates(r);
    const int K = oracle.num_users();
    const std::uint32_t full = (1u << K) - 1u;
    for (std::uint32_t S = 1; S <= full; ++S) {
        if (all_zero(r, S)) continue;
        if (!(rate_sum(r, S) < oracle.mutual_information(r, S, full & ~S)))
            return false;
    }
    return true;
}

bool contains_user(const RateVector& r, int k, const MIOracle& oracle) {
    oracle.check_rates(r);
    const int K = oracle.num_users();
    if (k < 0 || k >= K) throw ConfigError("regions: user index out of range");
    if (r[static_cast<std::size_t>(k)] == 0.0) return true;

    // Witness sets T condition on the users outside S; users in S \ T are
    // marginalized into the channel as interference.
    const std::uint32_t full = (1u << K) - 1u;
    const std::uint32_t kbit = 1u << k;
    for (std::uint32_t S = 1; S <= full; ++S) {
        if (!(S & kbit)) continue;
        bool witnessed = false;
        for (std::uint32_t T = S; T; T = (T - 1) & S) {
            if (!(T & kbit)) continue;
            if (rate_sum(r, T) < oracle.mutual_information(r, T, full & ~S)) {
                witnessed = true;
                break;
            }
        }
        if (!witnessed) return false;
    }
    return true;
}

bool contains_subset(const RateVector& r, std::uint32_t S0, const MIOracle& oracle) {
    oracle.check_rates(r);
    const int K = oracle.num_users();
    const std::uint32_t full = (1u << K) - 1u;
    if (S0 == 0 || (S0 & ~full))
        throw ConfigError("regions: target subset must be a nonempty set of users");

    for (std::uint32_t S = 1; S <= full; ++S) {
        const std::uint32_t core = S & S0;
        if (!core) continue;
        bool witnessed = false;
        for (std::uint32_t T = S; T; T = (T - 1) & S) {
            if ((T & core) != core) continue;
            if (all_zero(r, T) ||
                rate_sum(r, T) < oracle.mutual_information(r, T, full & ~S)) {
                witnessed = true;
                break;
            }
        }
        if (!witnessed) return false;
    }
    return true;
}

bool shrunk_contains_user(const RateVector& r, int k, double sigma,
                          const MIOracle& oracle, bool include_zero_rate_branch) {
    oracle.check_rates(r);
    const int K = oracle.num_users();
    if (k < 0 || k >= K) throw ConfigError("regions: user index out of range");
    if (!(sigma >= 0.0)) throw ConfigError("regions: sigma must be nonnegative");
    if (include_zero_rate_branch && r[static_cast<std::size_t>(k)] == 0.0) return true;

    const std::uint32_t full = (1u << K) - 1u;
    const std::uint32_t kbit = 1u << k;
    for (std::uint32_t S = 1; S <= full; ++S) {
        if (!(S & kbit)) continue;
        bool witnessed = false;
        for (std::uint32_t T = S; T; T = (T - 1) & S) {
            if (!(T & kbit)) continue;
            if (rate_sum(r, T) < oracle.mutual_information(r, T, full & ~S) - sigma) {
                witnessed = true;
                break;
            }
        }
        if (!witnessed) return false;
    }
    return true;
}

bool closure_contains_user(const RateVector& r, int k, const MIOracle& oracle) {
    oracle.check_rates(r);
    const int K = oracle.num_users();
    if (k < 0 || k >= K) throw ConfigError("regions: user index out of range");
    if (r[static_cast<std::size_t>(k)] == 0.0) return true;

    const std::uint32_t full = (1u << K) - 1u;
    const std::uint32_t kbit = 1u << k;
    for (std::uint32_t S = 1; S <= full; ++S) {
        if (!(S & kbit)) continue;
        bool witnessed = false;
        for (std::uint32_t T = S; T; T = (T - 1) & S) {
            if (!(T & kbit)) continue;
            if (rate_sum(r, T) <= oracle.mutual_information(r, T, full & ~S) + kClosureTol) {
                witnessed = true;
                break;
            }
        }
        if (!witnessed) return false;
    }
    return true;
}

std::optional<std::uint32_t> find_blocking_subset(const RateVector& r, int k,
                                                  const MIOracle& oracle) {
    oracle.check_rates(r);
    const int K = oracle.num_users();
    if (k < 0 || k >= K) throw ConfigError("regions: user index out of range");
    if (r[static_cast<std::size_t>(k)] == 0.0) return std::nullopt;

    const std::uint32_t full = (1u << K) - 1u;
    const std::uint32_t kbit = 1u << k;
    const std::uint32_t others = full & ~kbit;

    // S1 blocks user k when conditioning on S1 leaves no escape: every
    // group {k} + S2 drawn from the remaining users already carries more
    // rate than the channel offers it. Enumerated in ascending mask order
    // so the returned witness is the smallest one. S1 = 0 covers the
    // single-user case, where the condition degenerates to r_k > I(X_k; Y).
    for (std::uint32_t S1 = 0;; S1 = ((S1 | ~others) + 1) & others) {
        const std::uint32_t rest = others & ~S1;
        bool blocks = true;
        std::uint32_t S2 = rest;
        while (true) {
            const std::uint32_t T = S2 | kbit;
            if (!(rate_sum(r, T) >
                  oracle.mutual_information(r, T, S1) + kClosureTol)) {
                blocks = false;
                break;
            }
            if (S2 == 0) break;
            S2 = (S2 - 1) & rest;
        }
        if (blocks) return S1;
        if (S1 == others) break;
    }
    return std::nullopt;
}

std::vector<ConstraintRow> region_constraints(const RateVector& r, RegionMode mode,
                                              std::uint32_t target,
                                              const MIOracle& oracle) {
    oracle.check_rates(r);
    const int K = oracle.num_users();
    const std::uint32_t full = (1u << K) - 1u;
    std::vector<ConstraintRow> rows;

    auto emit = [&](std::uint32_t S, std::uint32_t T, bool zero_ok) {
        ConstraintRow row;
        row.S = S;
        row.T = T;
        row.sum_rate = rate_sum(r, T);
        row.mutual_information = oracle.mutual_information(r, T, full & ~S);
        row.slack = row.mutual_information - row.sum_rate;
        row.satisfied = (zero_ok && all_zero(r, T)) || row.sum_rate < row.mutual_information;
        rows.push_back(row);
    };

    switch (mode) {
    case RegionMode::All:
        for (std::uint32_t S = 1; S <= full; ++S) emit(S, S, true);
        break;
    case RegionMode::User: {
        const std::uint32_t kbit = 1u << target;
        for (std::uint32_t S = 1; S <= full; ++S) {
            if (!(S & kbit)) continue;
            for (std::uint32_t T = S; T; T = (T - 1) & S)
                if (T & kbit) emit(S, T, false);
        }
        break;
    }
    case RegionMode::Subset:
        for (std::uint32_t S = 1; S <= full; ++S) {
            const std::uint32_t core = S & target;
            if (!core) continue;
            for (std::uint32_t T = S; T; T = (T - 1) & S)
                if ((T & core) == core) emit(S, T, true);
        }
        break;
    }
    return rows;
}

double grid_quantize(double r, int M, double r_max) {
    if (M < 1) throw ConfigError("grid: need at least one level step");
    if (!(r_max > 0.0)) throw ConfigError("grid: r_max must be positive");
    if (r < 0.0 || r > r_max) throw ConfigError("grid: rate out of [0, r_max]");
    const double step = r_max / static_cast<double>(M);
    return std::floor(r / step) * step;
}

double gaussian_subset_bound(const std::vector<double>& P, double N0, std::uint32_t S) {
    if (!(N0 > 0.0)) throw ConfigError("gaussian region: noise level must be positive");
    double tot = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (!(P[i] >= 0.0)) throw ConfigError("gaussian region: negative power");
        if (S & (1u << i)) tot += P[i];
    }
    return 0.5 * std::log2(1.0 + tot / N0);
}

bool gaussian_region_contains(const std::vector<double>& P, double N0,
                              const RateVector& r) {
    if (P.size() != r.size())
        throw ConfigError("gaussian region: power and rate vectors differ in length");
    if (P.size() > 8)
        throw GuardrailError("gaussian region: at most 8 users");
    const std::uint32_t full = (1u << P.size()) - 1u;
    for (std::uint32_t S = 1; S <= full; ++S) {
        if (all_zero(r, S)) continue;
        if (!(rate_sum(r, S) < gaussian_subset_bound(P, N0, S))) return false;
    }
    return true;
}

bool collision_region_contains(const RateVector& r, int n) {
    if (n < 1) throw ConfigError("sqrt bound: order must be positive");
    double s = 0.0;
    for (double v : r) {
        if (!(v >= 0.0)) throw ConfigError("sqrt bound: negative rate");
        s += std::sqrt(v / static_cast<double>(n));
    }
    return s < 1.0;
}

} // namespace ramac

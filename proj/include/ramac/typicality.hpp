#pragma once

#include <cstdint>
#include <vector>

#include "ramac/channel.hpp"
#include "ramac/pmf.hpp"

namespace ramac {

// Precomputed log-probability tables for joint-typicality checks against a
// fixed candidate law: independent per-user symbol laws pushed through the
// channel. Built once per distinct law tuple and reused across candidates;
// the decoder caches one per profile segment combination.
//
// Tables are in bits (log2). Impossible symbols carry -infinity, which
// propagates to a +infinity empirical statistic and a definitive "not
// typical".
struct TypicalityModel {
    std::vector<int> input_sizes;
    int output_size = 0;

    std::vector<std::vector<double>> log_user;   // [user][symbol]
    std::vector<double> entropy_user;            // H(X_i)
    std::vector<double> log_output;              // [y]
    double entropy_output = 0.0;                 // H(Y)
    // Joint (X_S, Y) tables indexed by subset mask; entry [0] is unused.
    // Layout: mixed-radix index over the users in S (ascending), then y.
    std::vector<std::vector<double>> log_joint;  // [mask][x_S * Y + y]
    std::vector<double> entropy_joint;           // [mask] H(X_S, Y)

    int num_users() const { return static_cast<int>(input_sizes.size()); }

    // Empirical statistics, each -(1/N) sum of a log2 table over the
    // sequence; +infinity on any impossible symbol.
    double user_stat(int i, const std::vector<int>& xi) const;
    double output_stat(const std::vector<int>& y) const;
    // Statistic for (X_S, Y) over per-user sequences; S nonempty.
    double joint_stat(std::uint32_t S, const std::vector<std::vector<int>>& xs,
                      const std::vector<int>& y) const;
};

TypicalityModel build_typicality_model(const ChannelModel& ch,
                                       const std::vector<Pmf>& laws);

// Joint typicality at slack eps (bits per symbol): every nonempty user
// subset S, the output alone, and every (S, output) pair must have an
// empirical statistic within eps of the corresponding model entropy,
// strictly. All sequences must share one length.
bool is_jointly_typical(const std::vector<std::vector<int>>& xs,
                        const std::vector<int>& y, const TypicalityModel& model,
                        double eps);

// Convenience form that builds the model on the fly.
bool is_jointly_typical(const std::vector<std::vector<int>>& xs,
                        const std::vector<int>& y, const ChannelModel& ch,
                        const std::vector<Pmf>& laws, double eps);

} // namespace ramac

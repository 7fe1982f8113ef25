#pragma once

#include <cstddef>
#include <vector>

#include "ramac/prng.hpp"

namespace ramac {

// Discrete memoryless multiple-access channel with K senders and one
// receiver. Symbols are 0-based indices into finite alphabets. The channel
// acts independently on each symbol of a block, so a single transition
// matrix fully describes it.
//
// transition is row-major: one row of output_size probabilities per joint
// input, rows ordered with sender 1's symbol as the most significant digit
// and sender K's as the least significant.
struct ChannelModel {
    std::vector<int> input_sizes;
    int output_size = 0;
    std::vector<double> transition;

    int num_users() const { return static_cast<int>(input_sizes.size()); }

    std::size_t num_rows() const {
        std::size_t n = 1;
        for (int s : input_sizes) n *= static_cast<std::size_t>(s);
        return n;
    }

    // Mixed-radix row index for a joint input symbol.
    std::size_t row_index(const std::vector<int>& x) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < input_sizes.size(); ++i)
            idx = idx * static_cast<std::size_t>(input_sizes[i]) +
                  static_cast<std::size_t>(x[i]);
        return idx;
    }

    const double* row(std::size_t row_idx) const {
        return transition.data() + row_idx * static_cast<std::size_t>(output_size);
    }

    double prob(const std::vector<int>& x, int y) const {
        return row(row_index(x))[y];
    }
};

// Validating constructor. Rejects empty alphabets, shape mismatches,
// negative entries, and rows whose probabilities do not sum to 1 within
// 1e-9. Rows are never renormalized.
ChannelModel make_channel(std::vector<int> input_sizes, int output_size,
                          std::vector<double> transition);

// Validate an already-assembled model (used by file loading).
void validate_channel(const ChannelModel& ch);

// Symbol collision channel of order n with K senders. Each sender's
// alphabet is {0, .., 2^n} where 0 means idle; the output alphabet adds a
// dedicated collision symbol c at index 2^n + 1. Deterministic:
//   all senders idle         -> y = 0
//   exactly one sender active -> y = that sender's symbol
//   two or more active        -> y = c
ChannelModel collision_channel(int n, int K);

// Single-user identity channel on an alphabet of q symbols.
ChannelModel noiseless_channel(int q);

// Draw one output symbol given a joint input, consuming one uniform draw.
int sample_output(const ChannelModel& ch, const std::vector<int>& x,
                  RandomStream& rng);

} // namespace ramac

#pragma once

#include <cstdint>
#include <vector>

#include "ramac/channel.hpp"
#include "ramac/pmf.hpp"

namespace ramac {

// User subsets are bitmasks: bit i set means user i (0-based) is in the set.

// Number of elements selected by a mask.
inline int popcount_mask(std::uint32_t m) { return __builtin_popcount(m); }

// Size of the product alphabet over the users selected by mask.
std::size_t mask_alphabet_size(const ChannelModel& ch, std::uint32_t mask);

// Mixed-radix index of the restriction of joint symbol x to mask, digits in
// ascending user order.
std::size_t mask_index(const ChannelModel& ch, const std::vector<int>& x,
                       std::uint32_t mask);

// I(X_S; Y | X_C) in bits for the given channel and independent per-user
// input laws, by exact enumeration of the joint distribution. S and C must
// be disjoint; users outside S and C are marginalized into the channel
// noise. S may be empty (the value is then 0).
//
// Uses the decomposition, valid because the inputs are independent:
//   I(X_S; Y | X_C) = H(X_S) + H(X_C, Y) - H(X_S, X_C, Y)
double conditional_mutual_information(const ChannelModel& ch,
                                      const std::vector<Pmf>& input_pmfs,
                                      std::uint32_t S, std::uint32_t C);

// Normalized self-information of a sequence under an i.i.d. symbol law:
//   -(1/N) sum_j log2 law[seq[j]]
// Returns +infinity when the sequence visits a zero-probability symbol.
// This is the statistic whose closeness to entropy defines typicality;
// tuple-valued sequences are handled by flattening tuples to indices.
double sequence_information_rate(const Pmf& law, const std::vector<int>& seq);

} // namespace ramac

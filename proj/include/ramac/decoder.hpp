#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ramac/channel.hpp"
#include "ramac/codebook.hpp"
#include "ramac/regions.hpp"

namespace ramac {

// Result of a decode attempt. Collision is the receiver's declaration that
// it cannot commit to message estimates, whatever the cause: an empty
// candidate set or several candidates that disagree on the requested
// coordinates. messages is filled only for Decoded, listing the users in
// the decision set in ascending order.
struct DecodeOutcome {
    enum class Kind { Decoded, Collision };
    Kind kind = Kind::Collision;
    std::vector<std::uint64_t> messages;

    bool decoded() const { return kind == Kind::Decoded; }
};

struct DecoderOptions {
    double eps = 0.1;                            // typicality slack, bits/symbol
    std::uint64_t candidate_budget = 10000000;   // joint tuples before filtering
    bool prefilter = true;                       // per-user marginal pruning
};

// Membership test over realized rate vectors; decode_* bind this to one of
// the region predicates.
using RegionPredicate = std::function<bool(const RateVector&)>;

// All message tuples whose realized rate vector passes `region` and whose
// regenerated codewords are jointly typical with y at each tuple's own
// rates. Tuples are returned in ascending lexicographic message order.
//
// The optional per-user prefilter drops candidates that fail their own
// marginal typicality conditions (the single-user subset and that user's
// pair-with-output condition); both are necessary for joint typicality, so
// the result set is identical with the filter on or off. The budget check
// runs before any filtering and counts the full region-free tuple grid.
//
// Desk-scale guardrails (GuardrailError): at most 4 users, block length at
// most 24, per-user message capacity at most 2^12, tuple grid within the
// budget.
std::vector<std::vector<std::uint64_t>> candidate_set(
    const std::vector<int>& y, const ChannelModel& ch,
    const std::vector<CodebookLibrary>& libs,
    const std::vector<std::uint64_t>& thetas, const RegionPredicate& region,
    const DecoderOptions& opt);

// Per-user decision: Decoded(W_k) when every candidate tuple agrees on
// user k's coordinate, Collision otherwise (including an empty set).
DecodeOutcome decode_user(const std::vector<int>& y, int k, const MIOracle& oracle,
                          const std::vector<CodebookLibrary>& libs,
                          const std::vector<std::uint64_t>& thetas,
                          const DecoderOptions& opt);

// Joint decision over all users: Decoded when all candidate tuples are
// identical, Collision otherwise.
DecodeOutcome decode_all(const std::vector<int>& y, const MIOracle& oracle,
                         const std::vector<CodebookLibrary>& libs,
                         const std::vector<std::uint64_t>& thetas,
                         const DecoderOptions& opt);

// Group decision: agreement is required on the coordinates in S0 only.
DecodeOutcome decode_subset(const std::vector<int>& y, std::uint32_t S0,
                            const MIOracle& oracle,
                            const std::vector<CodebookLibrary>& libs,
                            const std::vector<std::uint64_t>& thetas,
                            const DecoderOptions& opt);

} // namespace ramac

#pragma once

#include <cstdint>
#include <vector>

#include "ramac/profile.hpp"

namespace ramac {

// Communication rate of message index W at block length N: log2(W) / N.
// W = 1 is the idle message and has rate 0.
double standard_rate(std::uint64_t W, int N);

// Number of messages a codebook carries: 2^(ceil(N * r_max)). The ceiling
// can push the top message's rate slightly above r_max (by less than 1/N)
// when N * r_max is not an integer; rate lookups clamp to r_max in that
// case so every message has a defined symbol law.
std::uint64_t message_capacity(int N, double r_max);

// A seed-indexed family of codebooks for one sender. Nothing is stored:
// symbol j of the codeword for message W in codebook theta is a pure
// function of (master_seed, theta, user_id, W, j), evaluated through a
// counter PRF and the profile law at W's rate. Decoders can therefore
// regenerate any candidate codeword without holding tables.
struct CodebookLibrary {
    InputProfile profile;
    std::uint64_t master_seed = 0;
    int user_id = 0;          // 0-based; folded into the PRF input
    int block_length = 0;     // N

    std::uint64_t capacity() const;

    // Rate used for laws and region checks: standard_rate clamped to r_max.
    double message_rate(std::uint64_t W) const;
};

CodebookLibrary make_codebook_library(InputProfile profile, std::uint64_t master_seed,
                                      int user_id, int block_length);

// Symbol j (0-based) of message W's codeword in codebook theta.
int codeword_symbol(const CodebookLibrary& lib, std::uint64_t theta,
                    std::uint64_t W, int j);

// Full codeword, length N.
std::vector<int> generate_codeword(const CodebookLibrary& lib, std::uint64_t theta,
                                   std::uint64_t W);

} // namespace ramac

#include "ramac/codebook.hpp"

#include <cmath>
#include <string>

#include "ramac/errors.hpp"
#include "ramac/prng.hpp"

namespace ramac {

double standard_rate(std::uint64_t W, int N) {
    if (W < 1) throw ConfigError("standard rate: message index must be >= 1");
    if (N < 1) throw ConfigError("standard rate: block length must be >= 1");
    return std::log2(static_cast<double>(W)) / static_cast<double>(N);
}

std::uint64_t message_capacity(int N, double r_max) {
    if (N < 1) throw ConfigError("message capacity: block length must be >= 1");
    if (!(r_max > 0.0)) throw ConfigError("message capacity: r_max must be positive");
    const double bits = std::ceil(static_cast<double>(N) * r_max);
    if (bits > 62.0)
        throw ConfigError("message capacity: 2^" + std::to_string(bits) +
                          " messages exceed the representable range");
    return 1ULL << static_cast<unsigned>(bits);
}

std::uint64_t CodebookLibrary::capacity() const {
    return message_capacity(block_length, profile.r_max);
}

double CodebookLibrary::message_rate(std::uint64_t W) const {
    const double r = standard_rate(W, block_length);
    return r > profile.r_max ? profile.r_max : r;
}

CodebookLibrary make_codebook_library(InputProfile profile, std::uint64_t master_seed,
                                      int user_id, int block_length) {
    validate_profile(profile);
    if (block_length < 1)
        throw ConfigError("codebook library: block length must be >= 1");
    if (user_id < 0)
        throw ConfigError("codebook library: user id must be nonnegative");
    CodebookLibrary lib;
    lib.profile = std::move(profile);
    lib.master_seed = master_seed;
    lib.user_id = user_id;
    lib.block_length = block_length;
    lib.capacity();   // validates that the message count is representable
    return lib;
}

int codeword_symbol(const CodebookLibrary& lib, std::uint64_t theta,
                    std::uint64_t W, int j) {
    if (W < 1 || W > lib.capacity())
        throw ConfigError("codeword: message index out of range");
    if (j < 0 || j >= lib.block_length)
        throw ConfigError("codeword: symbol position out of range");

    const Pmf& law = profile_at(lib.profile, lib.message_rate(W));
    const double u = unit_double(prf(lib.master_seed, theta,
                                     static_cast<std::uint64_t>(lib.user_id), W,
                                     static_cast<std::uint64_t>(j)));
    // inverse CDF over the segment law
    double cum = 0.0;
    int last = 0;
    for (std::size_t s = 0; s < law.size(); ++s) {
        if (law[s] <= 0.0) continue;
        cum += law[s];
        last = static_cast<int>(s);
        if (u < cum) return last;
    }
    return last;
}

std::vector<int> generate_codeword(const CodebookLibrary& lib, std::uint64_t theta,
                                   std::uint64_t W) {
    std::vector<int> x(static_cast<std::size_t>(lib.block_length));
    for (int j = 0; j < lib.block_length; ++j)
        x[static_cast<std::size_t>(j)] = codeword_symbol(lib, theta, W, j);
    return x;
}

} // namespace ramac

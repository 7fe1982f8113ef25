#include "ramac/information.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ramac/errors.hpp"

namespace ramac {

std::size_t mask_alphabet_size(const ChannelModel& ch, std::uint32_t mask) {
    std::size_t n = 1;
    for (int i = 0; i < ch.num_users(); ++i)
        if (mask & (1u << i)) n *= static_cast<std::size_t>(ch.input_sizes[i]);
    return n;
}

std::size_t mask_index(const ChannelModel& ch, const std::vector<int>& x,
                       std::uint32_t mask) {
    std::size_t idx = 0;
    for (int i = 0; i < ch.num_users(); ++i)
        if (mask & (1u << i))
            idx = idx * static_cast<std::size_t>(ch.input_sizes[i]) +
                  static_cast<std::size_t>(x[static_cast<std::size_t>(i)]);
    return idx;
}

namespace {

// Entropy in bits of an unnormalized-free table (entries already sum to 1).
double table_entropy(const std::vector<double>& t) {
    double h = 0.0;
    for (double v : t)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

} // namespace

double conditional_mutual_information(const ChannelModel& ch,
                                      const std::vector<Pmf>& input_pmfs,
                                      std::uint32_t S, std::uint32_t C) {
    const int K = ch.num_users();
    const std::uint32_t all = (K >= 32) ? 0xffffffffu : ((1u << K) - 1u);
    if ((S & ~all) || (C & ~all))
        throw ConfigError("mutual information: subset mask selects a user beyond K");
    if (S & C)
        throw ConfigError("mutual information: S and C must be disjoint");
    if (input_pmfs.size() != static_cast<std::size_t>(K))
        throw ConfigError("mutual information: need one input law per user");
    for (int i = 0; i < K; ++i) {
        if (static_cast<int>(input_pmfs[static_cast<std::size_t>(i)].size()) !=
            ch.input_sizes[static_cast<std::size_t>(i)])
            throw ConfigError("mutual information: law for user " +
                              std::to_string(i + 1) +
                              " does not match the channel alphabet");
    }
    if (S == 0) return 0.0;

    const std::uint32_t SC = S | C;
    const int Y = ch.output_size;
    std::vector<double> p_cy(mask_alphabet_size(ch, C) * static_cast<std::size_t>(Y), 0.0);
    std::vector<double> p_scy(mask_alphabet_size(ch, SC) * static_cast<std::size_t>(Y), 0.0);

    std::vector<int> x(static_cast<std::size_t>(K), 0);
    const std::size_t rows = ch.num_rows();
    for (std::size_t r = 0; r < rows; ++r) {
        double wx = 1.0;
        for (int i = 0; i < K; ++i)
            wx *= input_pmfs[static_cast<std::size_t>(i)]
                            [static_cast<std::size_t>(x[static_cast<std::size_t>(i)])];
        if (wx > 0.0) {
            const double* row = ch.row(r);
            const std::size_t ci = mask_index(ch, x, C) * static_cast<std::size_t>(Y);
            const std::size_t si = mask_index(ch, x, SC) * static_cast<std::size_t>(Y);
            for (int y = 0; y < Y; ++y) {
                if (row[y] <= 0.0) continue;
                const double w = wx * row[y];
                p_cy[ci + static_cast<std::size_t>(y)] += w;
                p_scy[si + static_cast<std::size_t>(y)] += w;
            }
        }
        for (int i = K - 1; i >= 0; --i) {
            if (++x[static_cast<std::size_t>(i)] < ch.input_sizes[static_cast<std::size_t>(i)]) break;
            x[static_cast<std::size_t>(i)] = 0;
        }
    }

    double h_s = 0.0;
    for (int i = 0; i < K; ++i)
        if (S & (1u << i)) h_s += entropy_bits(input_pmfs[static_cast<std::size_t>(i)]);

    return h_s + table_entropy(p_cy) - table_entropy(p_scy);
}

double sequence_information_rate(const Pmf& law, const std::vector<int>& seq) {
    if (seq.empty())
        throw ConfigError("sequence information rate: empty sequence");
    double acc = 0.0;
    for (int s : seq) {
        if (s < 0 || static_cast<std::size_t>(s) >= law.size())
            throw ConfigError("sequence information rate: symbol out of range");
        const double p = law[static_cast<std::size_t>(s)];
        if (p <= 0.0) return std::numeric_limits<double>::infinity();
        acc -= std::log2(p);
    }
    return acc / static_cast<double>(seq.size());
}

} // namespace ramac

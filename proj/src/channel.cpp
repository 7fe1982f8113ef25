#include "ramac/channel.hpp"

#include <cmath>
#include <string>

#include "ramac/errors.hpp"

namespace ramac {

void validate_channel(const ChannelModel& ch) {
    if (ch.input_sizes.empty())
        throw ConfigError("channel: needs at least one sender");
    for (std::size_t i = 0; i < ch.input_sizes.size(); ++i)
        if (ch.input_sizes[i] < 1)
            throw ConfigError("channel: sender " + std::to_string(i + 1) +
                              " has empty alphabet");
    if (ch.output_size < 1)
        throw ConfigError("channel: output alphabet is empty");

    const std::size_t rows = ch.num_rows();
    const std::size_t want = rows * static_cast<std::size_t>(ch.output_size);
    if (ch.transition.size() != want)
        throw ConfigError("channel: transition table has " +
                          std::to_string(ch.transition.size()) +
                          " entries, expected " + std::to_string(want));

    for (std::size_t r = 0; r < rows; ++r) {
        const double* p = ch.row(r);
        double sum = 0.0;
        for (int y = 0; y < ch.output_size; ++y) {
            if (!(p[y] >= 0.0) || !std::isfinite(p[y]))
                throw ConfigError("channel: row " + std::to_string(r) +
                                  " has a negative or non-finite entry");
            sum += p[y];
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw ConfigError("channel: row " + std::to_string(r) +
                              " sums to " + std::to_string(sum) +
                              ", expected 1 within 1e-9");
    }
}

ChannelModel make_channel(std::vector<int> input_sizes, int output_size,
                          std::vector<double> transition) {
    ChannelModel ch;
    ch.input_sizes = std::move(input_sizes);
    ch.output_size = output_size;
    ch.transition = std::move(transition);
    validate_channel(ch);
    return ch;
}

ChannelModel collision_channel(int n, int K) {
    if (n < 1 || n > 16) throw ConfigError("collision channel: order must be in [1, 16]");
    if (K < 1) throw ConfigError("collision channel: need at least one sender");

    const int symbols = (1 << n) + 1;       // {0, .., 2^n}, 0 = idle
    const int out = symbols + 1;            // adds collision symbol at 2^n + 1
    const int c = symbols;                  // index of the collision symbol

    ChannelModel ch;
    ch.input_sizes.assign(static_cast<std::size_t>(K), symbols);
    ch.output_size = out;
    ch.transition.assign(ch.num_rows() * static_cast<std::size_t>(out), 0.0);

    std::vector<int> x(static_cast<std::size_t>(K), 0);
    for (std::size_t r = 0; r < ch.num_rows(); ++r) {
        int active = 0, heard = 0;
        for (int v : x)
            if (v != 0) { ++active; heard = v; }
        int y = (active == 0) ? 0 : (active == 1 ? heard : c);
        ch.transition[r * static_cast<std::size_t>(out) + static_cast<std::size_t>(y)] = 1.0;
        // advance mixed-radix counter, sender K least significant
        for (int i = K - 1; i >= 0; --i) {
            if (++x[static_cast<std::size_t>(i)] < symbols) break;
            x[static_cast<std::size_t>(i)] = 0;
        }
    }
    return ch;
}

ChannelModel noiseless_channel(int q) {
    if (q < 1) throw ConfigError("noiseless channel: alphabet must be nonempty");
    ChannelModel ch;
    ch.input_sizes = {q};
    ch.output_size = q;
    ch.transition.assign(static_cast<std::size_t>(q) * static_cast<std::size_t>(q), 0.0);
    for (int i = 0; i < q; ++i)
        ch.transition[static_cast<std::size_t>(i) * q + static_cast<std::size_t>(i)] = 1.0;
    return ch;
}

int sample_output(const ChannelModel& ch, const std::vector<int>& x,
                  RandomStream& rng) {
    const double* p = ch.row(ch.row_index(x));
    double u = rng.uniform();
    double cum = 0.0;
    int last = 0;
    for (int y = 0; y < ch.output_size; ++y) {
        if (p[y] <= 0.0) continue;
        cum += p[y];
        last = y;
        if (u < cum) return y;
    }
    // float residue at u ~ 1: return the last symbol with mass
    return last;
}

} // namespace ramac

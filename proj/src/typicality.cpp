#include "ramac/typicality.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ramac/errors.hpp"
#include "ramac/information.hpp"

namespace ramac {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log2_or_neginf(double p) { return p > 0.0 ? std::log2(p) : kNegInf; }

double table_entropy(const std::vector<double>& t) {
    double h = 0.0;
    for (double v : t)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

} // namespace

double TypicalityModel::user_stat(int i, const std::vector<int>& xi) const {
    const auto& tab = log_user[static_cast<std::size_t>(i)];
    double acc = 0.0;
    for (int s : xi) {
        const double lp = tab[static_cast<std::size_t>(s)];
        if (lp == kNegInf) return std::numeric_limits<double>::infinity();
        acc -= lp;
    }
    return acc / static_cast<double>(xi.size());
}

double TypicalityModel::output_stat(const std::vector<int>& y) const {
    double acc = 0.0;
    for (int s : y) {
        const double lp = log_output[static_cast<std::size_t>(s)];
        if (lp == kNegInf) return std::numeric_limits<double>::infinity();
        acc -= lp;
    }
    return acc / static_cast<double>(y.size());
}

double TypicalityModel::joint_stat(std::uint32_t S,
                                   const std::vector<std::vector<int>>& xs,
                                   const std::vector<int>& y) const {
    const auto& tab = log_joint[S];
    const std::size_t N = y.size();
    const int K = num_users();
    double acc = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        std::size_t idx = 0;
        for (int i = 0; i < K; ++i)
            if (S & (1u << i))
                idx = idx * static_cast<std::size_t>(input_sizes[static_cast<std::size_t>(i)]) +
                      static_cast<std::size_t>(xs[static_cast<std::size_t>(i)][j]);
        const double lp = tab[idx * static_cast<std::size_t>(output_size) +
                              static_cast<std::size_t>(y[j])];
        if (lp == kNegInf) return std::numeric_limits<double>::infinity();
        acc -= lp;
    }
    return acc / static_cast<double>(N);
}

TypicalityModel build_typicality_model(const ChannelModel& ch,
                                       const std::vector<Pmf>& laws) {
    const int K = ch.num_users();
    if (laws.size() != static_cast<std::size_t>(K))
        throw ConfigError("typicality: need one law per user");
    for (int i = 0; i < K; ++i)
        if (static_cast<int>(laws[static_cast<std::size_t>(i)].size()) !=
            ch.input_sizes[static_cast<std::size_t>(i)])
            throw ConfigError("typicality: law " + std::to_string(i + 1) +
                              " does not match the channel alphabet");

    TypicalityModel m;
    m.input_sizes = ch.input_sizes;
    m.output_size = ch.output_size;

    m.log_user.resize(static_cast<std::size_t>(K));
    m.entropy_user.resize(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i) {
        const Pmf& q = laws[static_cast<std::size_t>(i)];
        auto& tab = m.log_user[static_cast<std::size_t>(i)];
        tab.resize(q.size());
        for (std::size_t s = 0; s < q.size(); ++s) tab[s] = log2_or_neginf(q[s]);
        m.entropy_user[static_cast<std::size_t>(i)] = entropy_bits(q);
    }

    // Accumulate p(y) and every p(x_S, y) in one pass over the joint law.
    const std::uint32_t full = (1u << K) - 1u;
    const int Y = ch.output_size;
    std::vector<double> p_y(static_cast<std::size_t>(Y), 0.0);
    std::vector<std::vector<double>> p_joint(static_cast<std::size_t>(full) + 1);
    for (std::uint32_t S = 1; S <= full; ++S)
        p_joint[S].assign(mask_alphabet_size(ch, S) * static_cast<std::size_t>(Y), 0.0);

    std::vector<int> x(static_cast<std::size_t>(K), 0);
    for (std::size_t r = 0; r < ch.num_rows(); ++r) {
        double wx = 1.0;
        for (int i = 0; i < K; ++i)
            wx *= laws[static_cast<std::size_t>(i)]
                      [static_cast<std::size_t>(x[static_cast<std::size_t>(i)])];
        if (wx > 0.0) {
            const double* row = ch.row(r);
            for (int y = 0; y < Y; ++y) {
                if (row[y] <= 0.0) continue;
                const double w = wx * row[y];
                p_y[static_cast<std::size_t>(y)] += w;
                for (std::uint32_t S = 1; S <= full; ++S)
                    p_joint[S][mask_index(ch, x, S) * static_cast<std::size_t>(Y) +
                               static_cast<std::size_t>(y)] += w;
            }
        }
        for (int i = K - 1; i >= 0; --i) {
            if (++x[static_cast<std::size_t>(i)] < ch.input_sizes[static_cast<std::size_t>(i)]) break;
            x[static_cast<std::size_t>(i)] = 0;
        }
    }

    m.log_output.resize(p_y.size());
    for (std::size_t y = 0; y < p_y.size(); ++y) m.log_output[y] = log2_or_neginf(p_y[y]);
    m.entropy_output = table_entropy(p_y);

    m.log_joint.resize(p_joint.size());
    m.entropy_joint.assign(p_joint.size(), 0.0);
    for (std::uint32_t S = 1; S <= full; ++S) {
        m.entropy_joint[S] = table_entropy(p_joint[S]);
        auto& tab = m.log_joint[S];
        tab.resize(p_joint[S].size());
        for (std::size_t idx = 0; idx < tab.size(); ++idx)
            tab[idx] = log2_or_neginf(p_joint[S][idx]);
    }
    return m;
}

bool is_jointly_typical(const std::vector<std::vector<int>>& xs,
                        const std::vector<int>& y, const TypicalityModel& model,
                        double eps) {
    const int K = model.num_users();
    if (!(eps > 0.0)) throw ConfigError("typicality: eps must be positive");
    if (xs.size() != static_cast<std::size_t>(K))
        throw ConfigError("typicality: wrong number of input sequences");
    if (y.empty()) throw ConfigError("typicality: empty output sequence");
    for (const auto& xi : xs)
        if (xi.size() != y.size())
            throw ConfigError("typicality: sequence lengths differ");

    std::vector<double> t(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i)
        t[static_cast<std::size_t>(i)] = model.user_stat(i, xs[static_cast<std::size_t>(i)]);

    const std::uint32_t full = (1u << K) - 1u;
    for (std::uint32_t S = 1; S <= full; ++S) {
        double stat = 0.0, ent = 0.0;
        for (int i = 0; i < K; ++i)
            if (S & (1u << i)) {
                stat += t[static_cast<std::size_t>(i)];
                ent += model.entropy_user[static_cast<std::size_t>(i)];
            }
        if (!(std::abs(stat - ent) < eps)) return false;
    }

    if (!(std::abs(model.output_stat(y) - model.entropy_output) < eps)) return false;

    for (std::uint32_t S = 1; S <= full; ++S) {
        const double stat = model.joint_stat(S, xs, y);
        if (!(std::abs(stat - model.entropy_joint[S]) < eps)) return false;
    }
    return true;
}

bool is_jointly_typical(const std::vector<std::vector<int>>& xs,
                        const std::vector<int>& y, const ChannelModel& ch,
                        const std::vector<Pmf>& laws, double eps) {
    return is_jointly_typical(xs, y, build_typicality_model(ch, laws), eps);
}

} // namespace ramac

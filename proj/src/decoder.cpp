#include "ramac/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "ramac/errors.hpp"
#include "ramac/typicality.hpp"

namespace ramac {

namespace {

constexpr int kMaxUsers = 4;
constexpr int kMaxBlockLength = 24;
constexpr std::uint64_t kMaxPerUserMessages = 1ULL << 12;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Candidate {
    std::uint64_t W = 0;
    double rate = 0.0;
    std::vector<int> x;       // regenerated codeword
    double t_self = 0.0;      // -(1/N) log2 of own law over x
    double t_joint = 0.0;     // same for (x, y) under the combo law
    bool marginal_ok = false; // both singleton conditions within eps
};

// Run of consecutive messages sharing one profile segment (and thus one
// symbol law). Segment -1 is the idle message W = 1.
struct SegmentGroup {
    int seg = -1;
    std::uint64_t w_begin = 0;
    std::uint64_t w_end = 0;  // inclusive
};

struct ComboModel {
    TypicalityModel model;
    double t_output = 0.0;
    bool output_ok = false;
};

void check_guardrails(const std::vector<int>& y, const ChannelModel& ch,
                      const std::vector<CodebookLibrary>& libs,
                      const std::vector<std::uint64_t>& thetas,
                      const DecoderOptions& opt) {
    const int K = static_cast<int>(libs.size());
    if (K < 1) throw ConfigError("decoder: no codebook libraries");
    if (K > kMaxUsers)
        throw GuardrailError("decoder: at most " + std::to_string(kMaxUsers) + " users");
    if (ch.num_users() != K)
        throw ConfigError("decoder: channel and library user counts differ");
    if (thetas.size() != libs.size())
        throw ConfigError("decoder: need one codebook index per user");
    if (y.empty()) throw ConfigError("decoder: empty output sequence");
    if (static_cast<int>(y.size()) > kMaxBlockLength)
        throw GuardrailError("decoder: block length beyond " +
                             std::to_string(kMaxBlockLength));
    if (!(opt.eps > 0.0)) throw ConfigError("decoder: eps must be positive");

    std::uint64_t grid = 1;
    for (int i = 0; i < K; ++i) {
        const auto& lib = libs[static_cast<std::size_t>(i)];
        if (lib.block_length != static_cast<int>(y.size()))
            throw ConfigError("decoder: library block length does not match y");
        if (lib.profile.alphabet() != ch.input_sizes[static_cast<std::size_t>(i)])
            throw ConfigError("decoder: profile alphabet does not match the channel");
        const std::uint64_t cap = lib.capacity();
        if (cap > kMaxPerUserMessages)
            throw GuardrailError("decoder: user " + std::to_string(i + 1) + " has " +
                                 std::to_string(cap) + " messages, limit " +
                                 std::to_string(kMaxPerUserMessages));
        grid *= cap;   // bounded by 2^48, no overflow
    }
    if (grid > opt.candidate_budget)
        throw GuardrailError("decoder: " + std::to_string(grid) +
                             " candidate tuples exceed the budget of " +
                             std::to_string(opt.candidate_budget));
    for (int s : y)
        if (s < 0 || s >= ch.output_size)
            throw ConfigError("decoder: output symbol out of range");
}

std::vector<SegmentGroup> segment_groups(const CodebookLibrary& lib) {
    std::vector<SegmentGroup> groups;
    const std::uint64_t cap = lib.capacity();
    for (std::uint64_t W = 1; W <= cap; ++W) {
        const int seg = segment_index(lib.profile, lib.message_rate(W));
        if (groups.empty() || groups.back().seg != seg)
            groups.push_back({seg, W, W});
        else
            groups.back().w_end = W;
    }
    return groups;
}

const Pmf& group_law(const CodebookLibrary& lib, int seg) {
    return seg < 0 ? lib.profile.zero_rate_pmf
                   : lib.profile.segment_pmfs[static_cast<std::size_t>(seg)];
}

} // namespace

std::vector<std::vector<std::uint64_t>> candidate_set(
    const std::vector<int>& y, const ChannelModel& ch,
    const std::vector<CodebookLibrary>& libs,
    const std::vector<std::uint64_t>& thetas, const RegionPredicate& region,
    const DecoderOptions& opt) {
    check_guardrails(y, ch, libs, thetas, opt);

    const int K = static_cast<int>(libs.size());
    const std::uint32_t full = (1u << K) - 1u;
    const double N = static_cast<double>(y.size());

    std::vector<std::vector<SegmentGroup>> groups(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i)
        groups[static_cast<std::size_t>(i)] = segment_groups(libs[static_cast<std::size_t>(i)]);

    // One typicality model per segment combination, shared by all tuples in
    // the combo. The output-only condition depends on the combo alone, so a
    // failing combo is skipped without enumerating its tuples.
    std::map<std::vector<int>, ComboModel> models;
    auto combo_model = [&](const std::vector<int>& segs) -> ComboModel& {
        auto it = models.find(segs);
        if (it != models.end()) return it->second;
        std::vector<Pmf> laws(static_cast<std::size_t>(K));
        for (int i = 0; i < K; ++i)
            laws[static_cast<std::size_t>(i)] =
                group_law(libs[static_cast<std::size_t>(i)], segs[static_cast<std::size_t>(i)]);
        ComboModel cm;
        cm.model = build_typicality_model(ch, laws);
        cm.t_output = cm.model.output_stat(y);
        cm.output_ok = std::abs(cm.t_output - cm.model.entropy_output) < opt.eps;
        return models.emplace(std::move(segs), std::move(cm)).first->second;
    };

    std::vector<std::vector<std::uint64_t>> result;

    // Iterate over the cartesian product of per-user segment groups.
    std::vector<std::size_t> gi(static_cast<std::size_t>(K), 0);
    while (true) {
        std::vector<int> segs(static_cast<std::size_t>(K));
        for (int i = 0; i < K; ++i)
            segs[static_cast<std::size_t>(i)] =
                groups[static_cast<std::size_t>(i)][gi[static_cast<std::size_t>(i)]].seg;

        ComboModel& cm = combo_model(segs);
        if (cm.output_ok) {
            // Materialize candidates for this combo, with marginal stats.
            std::vector<std::vector<Candidate>> cands(static_cast<std::size_t>(K));
            bool any_empty = false;
            for (int i = 0; i < K && !any_empty; ++i) {
                const auto& g = groups[static_cast<std::size_t>(i)][gi[static_cast<std::size_t>(i)]];
                const auto& lib = libs[static_cast<std::size_t>(i)];
                auto& list = cands[static_cast<std::size_t>(i)];
                const auto& pair_tab = cm.model.log_joint[1u << i];
                for (std::uint64_t W = g.w_begin; W <= g.w_end; ++W) {
                    Candidate c;
                    c.W = W;
                    c.rate = lib.message_rate(W);
                    c.x = generate_codeword(lib, thetas[static_cast<std::size_t>(i)], W);
                    c.t_self = cm.model.user_stat(i, c.x);
                    double acc = 0.0;
                    for (std::size_t j = 0; j < y.size() && acc != kInf; ++j) {
                        const double lp =
                            pair_tab[static_cast<std::size_t>(c.x[j]) *
                                         static_cast<std::size_t>(ch.output_size) +
                                     static_cast<std::size_t>(y[j])];
                        acc = (lp == -kInf) ? kInf : acc - lp;
                    }
                    c.t_joint = (acc == kInf) ? kInf : acc / N;
                    c.marginal_ok =
                        std::abs(c.t_self - cm.model.entropy_user[static_cast<std::size_t>(i)]) < opt.eps &&
                        std::abs(c.t_joint - cm.model.entropy_joint[1u << i]) < opt.eps;
                    if (!opt.prefilter || c.marginal_ok) list.push_back(std::move(c));
                }
                if (list.empty()) any_empty = true;
            }

            if (!any_empty) {
                // Tuple scan: region membership at the tuple's own realized
                // rates first (cheapest), then the full typicality battery.
                std::vector<std::size_t> ci(static_cast<std::size_t>(K), 0);
                RateVector rates(static_cast<std::size_t>(K));
                std::vector<const Candidate*> pick(static_cast<std::size_t>(K));
                while (true) {
                    for (int i = 0; i < K; ++i) {
                        pick[static_cast<std::size_t>(i)] =
                            &cands[static_cast<std::size_t>(i)][ci[static_cast<std::size_t>(i)]];
                        rates[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i)]->rate;
                    }
                    if (region(rates)) {
                        bool ok = true;
                        for (int i = 0; i < K && ok; ++i)
                            ok = pick[static_cast<std::size_t>(i)]->marginal_ok;
                        // input-subset conditions (sums of per-user stats)
                        for (std::uint32_t S = 1; S <= full && ok; ++S) {
                            if (__builtin_popcount(S) < 2) continue;
                            double stat = 0.0, ent = 0.0;
                            for (int i = 0; i < K; ++i)
                                if (S & (1u << i)) {
                                    stat += pick[static_cast<std::size_t>(i)]->t_self;
                                    ent += cm.model.entropy_user[static_cast<std::size_t>(i)];
                                }
                            ok = std::abs(stat - ent) < opt.eps;
                        }
                        // joint-with-output conditions beyond the singletons
                        for (std::uint32_t S = 1; S <= full && ok; ++S) {
                            if (__builtin_popcount(S) < 2) continue;
                            const auto& tab = cm.model.log_joint[S];
                            double acc = 0.0;
                            for (std::size_t j = 0; j < y.size() && acc != kInf; ++j) {
                                std::size_t idx = 0;
                                for (int i = 0; i < K; ++i)
                                    if (S & (1u << i))
                                        idx = idx * static_cast<std::size_t>(
                                                        ch.input_sizes[static_cast<std::size_t>(i)]) +
                                              static_cast<std::size_t>(
                                                  pick[static_cast<std::size_t>(i)]->x[j]);
                                const double lp =
                                    tab[idx * static_cast<std::size_t>(ch.output_size) +
                                        static_cast<std::size_t>(y[j])];
                                acc = (lp == -kInf) ? kInf : acc - lp;
                            }
                            ok = std::abs((acc == kInf ? kInf : acc / N) -
                                          cm.model.entropy_joint[S]) < opt.eps;
                        }
                        if (ok) {
                            std::vector<std::uint64_t> tuple(static_cast<std::size_t>(K));
                            for (int i = 0; i < K; ++i)
                                tuple[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i)]->W;
                            result.push_back(std::move(tuple));
                        }
                    }
                    int i = K - 1;
                    for (; i >= 0; --i) {
                        if (++ci[static_cast<std::size_t>(i)] <
                            cands[static_cast<std::size_t>(i)].size()) break;
                        ci[static_cast<std::size_t>(i)] = 0;
                    }
                    if (i < 0) break;
                }
            }
        }

        int i = K - 1;
        for (; i >= 0; --i) {
            if (++gi[static_cast<std::size_t>(i)] < groups[static_cast<std::size_t>(i)].size()) break;
            gi[static_cast<std::size_t>(i)] = 0;
        }
        if (i < 0) break;
    }

    std::sort(result.begin(), result.end());
    return result;
}

namespace {

DecodeOutcome decide(const std::vector<std::vector<std::uint64_t>>& tuples,
                     std::uint32_t decision_mask, int K) {
    DecodeOutcome out;
    if (tuples.empty()) return out;
    for (const auto& t : tuples)
        for (int i = 0; i < K; ++i)
            if ((decision_mask & (1u << i)) &&
                t[static_cast<std::size_t>(i)] != tuples.front()[static_cast<std::size_t>(i)])
                return out;
    out.kind = DecodeOutcome::Kind::Decoded;
    for (int i = 0; i < K; ++i)
        if (decision_mask & (1u << i))
            out.messages.push_back(tuples.front()[static_cast<std::size_t>(i)]);
    return out;
}

RateVector tuple_rates(const std::vector<std::uint64_t>& t,
                       const std::vector<CodebookLibrary>& libs) {
    RateVector r(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        r[i] = libs[i].message_rate(t[i]);
    return r;
}

} // namespace

DecodeOutcome decode_user(const std::vector<int>& y, int k, const MIOracle& oracle,
                          const std::vector<CodebookLibrary>& libs,
                          const std::vector<std::uint64_t>& thetas,
                          const DecoderOptions& opt) {
    const int K = static_cast<int>(libs.size());
    if (k < 0 || k >= K) throw ConfigError("decoder: user index out of range");
    auto tuples = candidate_set(
        y, oracle.channel(), libs, thetas,
        [&](const RateVector& r) { return contains_user(r, k, oracle); }, opt);
    DecodeOutcome out = decide(tuples, 1u << k, K);
    // A decoded message always names a rate point inside the region used to
    // build the candidate set; anything else is an enumeration bug.
    if (out.decoded() && !contains_user(tuple_rates(tuples.front(), libs), k, oracle))
        throw std::logic_error("decoder: decoded message escaped its region");
    return out;
}

DecodeOutcome decode_all(const std::vector<int>& y, const MIOracle& oracle,
                         const std::vector<CodebookLibrary>& libs,
                         const std::vector<std::uint64_t>& thetas,
                         const DecoderOptions& opt) {
    const int K = static_cast<int>(libs.size());
    auto tuples = candidate_set(
        y, oracle.channel(), libs, thetas,
        [&](const RateVector& r) { return contains_all(r, oracle); }, opt);
    return decide(tuples, (1u << K) - 1u, K);
}

DecodeOutcome decode_subset(const std::vector<int>& y, std::uint32_t S0,
                            const MIOracle& oracle,
                            const std::vector<CodebookLibrary>& libs,
                            const std::vector<std::uint64_t>& thetas,
                            const DecoderOptions& opt) {
    const int K = static_cast<int>(libs.size());
    auto tuples = candidate_set(
        y, oracle.channel(), libs, thetas,
        [&](const RateVector& r) { return contains_subset(r, S0, oracle); }, opt);
    return decide(tuples, S0, K);
}

} // namespace ramac

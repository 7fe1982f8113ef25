#include "ramac/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

#include "ramac/codebook.hpp"
#include "ramac/errors.hpp"
#include "ramac/prng.hpp"

namespace ramac {

int ModeSpec::report_user(int K) const {
    switch (kind) {
    case Kind::User:
        return user;
    case Kind::Subset:
        for (int i = 0; i < K; ++i)
            if (mask & (1u << i)) return i;
        return 0;
    case Kind::All:
    default:
        return 0;
    }
}

void validate_experiment_config(const ExperimentConfig& cfg) {
    validate_channel(cfg.channel);
    const int K = cfg.channel.num_users();
    if (cfg.profiles.size() != static_cast<std::size_t>(K))
        throw ConfigError("config: profiles: need one per sender (" +
                          std::to_string(K) + ")");
    for (int i = 0; i < K; ++i) {
        validate_profile(cfg.profiles[static_cast<std::size_t>(i)]);
        if (cfg.profiles[static_cast<std::size_t>(i)].alphabet() !=
            cfg.channel.input_sizes[static_cast<std::size_t>(i)])
            throw ConfigError("config: profiles[" + std::to_string(i) +
                              "]: alphabet does not match the channel");
    }
    if (cfg.n_values.empty()) throw ConfigError("config: n_values: empty");
    for (int n : cfg.n_values)
        if (n < 1) throw ConfigError("config: n_values: block lengths must be positive");
    if (cfg.rate_points.empty()) throw ConfigError("config: rate_points: empty");
    for (const auto& pt : cfg.rate_points) {
        if (pt.size() != static_cast<std::size_t>(K))
            throw ConfigError("config: rate_points: need " + std::to_string(K) +
                              " rates per point");
        for (int i = 0; i < K; ++i) {
            const double r = pt[static_cast<std::size_t>(i)];
            if (!(r >= 0.0))
                throw ConfigError("config: rate_points: negative rate");
            if (r > cfg.profiles[static_cast<std::size_t>(i)].r_max)
                throw ConfigError("config: rate_points: rate " + std::to_string(r) +
                                  " exceeds r_max of profile " + std::to_string(i + 1));
        }
    }
    if (cfg.trials < 1) throw ConfigError("config: trials: must be at least 1");
    if (!(cfg.epsilon > 0.0)) throw ConfigError("config: epsilon: must be positive");
    if (cfg.candidate_budget < 1) throw ConfigError("config: candidate_budget: must be positive");
    if (cfg.threads < 0) throw ConfigError("config: threads: must be nonnegative");

    switch (cfg.mode.kind) {
    case ModeSpec::Kind::User:
        if (cfg.mode.user < 0 || cfg.mode.user >= K)
            throw ConfigError("config: mode: user index out of range");
        break;
    case ModeSpec::Kind::Subset: {
        const std::uint32_t full = (1u << K) - 1u;
        if (cfg.mode.mask == 0 || (cfg.mode.mask & ~full))
            throw ConfigError("config: mode: subset must be a nonempty set of users");
        break;
    }
    case ModeSpec::Kind::All:
        break;
    }
}

namespace {

constexpr std::uint64_t kThetaTag = 1;
constexpr std::uint64_t kNoiseTag = 2;
constexpr std::uint64_t kTrialTag = 0x545249414cULL;

// Everything a worker needs to run trials at one (N, rate point). Each
// worker owns its context: the mutual-information memo inside MIOracle is
// not synchronized.
struct TrialContext {
    const ExperimentConfig* cfg = nullptr;
    int n = 0;
    int n_index = 0;
    int point_index = 0;
    MIOracle oracle;
    std::vector<CodebookLibrary> libs;
    std::vector<std::uint64_t> transmitted;
    RateVector realized;
    DecoderOptions opt;

    TrialContext(const ExperimentConfig& c, int ni, int pi)
        : cfg(&c), n(c.n_values[static_cast<std::size_t>(ni)]), n_index(ni),
          point_index(pi), oracle(c.channel, c.profiles) {
        const int K = c.channel.num_users();
        const RateVector& target = c.rate_points[static_cast<std::size_t>(pi)];
        libs.reserve(static_cast<std::size_t>(K));
        transmitted.resize(static_cast<std::size_t>(K));
        realized.resize(static_cast<std::size_t>(K));
        for (int i = 0; i < K; ++i) {
            libs.push_back(make_codebook_library(c.profiles[static_cast<std::size_t>(i)],
                                                 c.master_seed, i, n));
            // floor(2^(N r)), at least the idle message
            double w = std::floor(std::exp2(static_cast<double>(n) *
                                            target[static_cast<std::size_t>(i)]));
            if (w < 1.0) w = 1.0;
            transmitted[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(w);
            realized[static_cast<std::size_t>(i)] =
                libs.back().message_rate(transmitted[static_cast<std::size_t>(i)]);
        }
        opt.eps = c.epsilon;
        opt.candidate_budget = c.candidate_budget;
        opt.prefilter = c.prefilter;
    }
};

TrialRecord run_trial_in(TrialContext& ctx, int trial_index,
                         VerboseTrial* capture = nullptr) {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentConfig& cfg = *ctx.cfg;
    const int K = cfg.channel.num_users();
    const int N = ctx.n;

    const std::uint64_t trial_seed =
        prf(cfg.master_seed, static_cast<std::uint64_t>(ctx.point_index),
            static_cast<std::uint64_t>(ctx.n_index),
            static_cast<std::uint64_t>(trial_index), kTrialTag);

    TrialRecord rec;
    rec.n = N;
    rec.rates = ctx.realized;
    rec.transmitted = ctx.transmitted;
    rec.thetas.resize(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i)
        rec.thetas[static_cast<std::size_t>(i)] =
            prf(trial_seed, kThetaTag, static_cast<std::uint64_t>(i));

    std::vector<std::vector<int>> x(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i)
        x[static_cast<std::size_t>(i)] =
            generate_codeword(ctx.libs[static_cast<std::size_t>(i)],
                              rec.thetas[static_cast<std::size_t>(i)],
                              ctx.transmitted[static_cast<std::size_t>(i)]);

    RandomStream noise(prf(trial_seed, kNoiseTag));
    std::vector<int> y(static_cast<std::size_t>(N));
    std::vector<int> col(static_cast<std::size_t>(K));
    for (int j = 0; j < N; ++j) {
        for (int i = 0; i < K; ++i)
            col[static_cast<std::size_t>(i)] =
                x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(j)] = sample_output(cfg.channel, col, noise);
    }

    if (capture) {
        capture->received = y;
        RegionPredicate region;
        switch (cfg.mode.kind) {
        case ModeSpec::Kind::All:
            region = [&](const RateVector& r) { return contains_all(r, ctx.oracle); };
            break;
        case ModeSpec::Kind::User:
            region = [&](const RateVector& r) {
                return contains_user(r, cfg.mode.user, ctx.oracle);
            };
            break;
        case ModeSpec::Kind::Subset:
            region = [&](const RateVector& r) {
                return contains_subset(r, cfg.mode.mask, ctx.oracle);
            };
            break;
        }
        capture->candidates =
            candidate_set(y, cfg.channel, ctx.libs, rec.thetas, region, ctx.opt);
    }

    switch (cfg.mode.kind) {
    case ModeSpec::Kind::All:
        rec.outcome = decode_all(y, ctx.oracle, ctx.libs, rec.thetas, ctx.opt);
        if (rec.outcome.decoded()) rec.correct = rec.outcome.messages == ctx.transmitted;
        break;
    case ModeSpec::Kind::User:
        rec.outcome = decode_user(y, cfg.mode.user, ctx.oracle, ctx.libs, rec.thetas, ctx.opt);
        if (rec.outcome.decoded())
            rec.correct = rec.outcome.messages ==
                          std::vector<std::uint64_t>{
                              ctx.transmitted[static_cast<std::size_t>(cfg.mode.user)]};
        break;
    case ModeSpec::Kind::Subset: {
        rec.outcome = decode_subset(y, cfg.mode.mask, ctx.oracle, ctx.libs, rec.thetas, ctx.opt);
        if (rec.outcome.decoded()) {
            std::vector<std::uint64_t> want;
            for (int i = 0; i < K; ++i)
                if (cfg.mode.mask & (1u << i))
                    want.push_back(ctx.transmitted[static_cast<std::size_t>(i)]);
            rec.correct = rec.outcome.messages == want;
        }
        break;
    }
    }

    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

} // namespace

TrialRecord run_trial(const ExperimentConfig& cfg, int n_index, int point_index,
                      int trial_index) {
    validate_experiment_config(cfg);
    if (n_index < 0 || static_cast<std::size_t>(n_index) >= cfg.n_values.size())
        throw ConfigError("run_trial: n_index out of range");
    if (point_index < 0 || static_cast<std::size_t>(point_index) >= cfg.rate_points.size())
        throw ConfigError("run_trial: point_index out of range");
    if (trial_index < 0) throw ConfigError("run_trial: trial_index must be nonnegative");
    TrialContext ctx(cfg, n_index, point_index);
    return run_trial_in(ctx, trial_index);
}

VerboseTrial run_trial_verbose(const ExperimentConfig& cfg, int n_index,
                               int point_index, int trial_index) {
    validate_experiment_config(cfg);
    if (n_index < 0 || static_cast<std::size_t>(n_index) >= cfg.n_values.size())
        throw ConfigError("run_trial: n_index out of range");
    if (point_index < 0 || static_cast<std::size_t>(point_index) >= cfg.rate_points.size())
        throw ConfigError("run_trial: point_index out of range");
    if (trial_index < 0) throw ConfigError("run_trial: trial_index must be nonnegative");
    TrialContext ctx(cfg, n_index, point_index);
    VerboseTrial vt;
    vt.record = run_trial_in(ctx, trial_index, &vt);
    return vt;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RAMAC_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw ConfigError("RAMAC_THREADS must be a positive integer");
        return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

PointEstimate estimate_point(const ExperimentConfig& cfg, int n_index,
                             int point_index) {
    validate_experiment_config(cfg);
    if (n_index < 0 || static_cast<std::size_t>(n_index) >= cfg.n_values.size())
        throw ConfigError("estimate_point: n_index out of range");
    if (point_index < 0 ||
        static_cast<std::size_t>(point_index) >= cfg.rate_points.size())
        throw ConfigError("estimate_point: point_index out of range");

    const auto t0 = std::chrono::steady_clock::now();
    const int K = cfg.channel.num_users();
    const int trials = cfg.trials;

    PointEstimate est;
    est.n = cfg.n_values[static_cast<std::size_t>(n_index)];
    est.target = cfg.rate_points[static_cast<std::size_t>(point_index)];
    est.trials = trials;

    {
        TrialContext probe(cfg, n_index, point_index);
        est.realized = probe.realized;
        est.in_region_all = contains_all(probe.realized, probe.oracle);
        est.in_region_user =
            contains_user(probe.realized, cfg.mode.report_user(K), probe.oracle);
    }

    // bit 0: error, bit 1: collision; folded in trial order after the join
    // so the outcome does not depend on scheduling.
    std::vector<unsigned char> flags(static_cast<std::size_t>(trials), 0);

    int workers = resolve_threads(cfg.threads);
    if (workers > trials) workers = trials;

    auto body = [&](TrialContext& ctx, std::atomic<int>& next) {
        while (true) {
            const int t = next.fetch_add(1);
            if (t >= trials) break;
            const TrialRecord rec = run_trial_in(ctx, t);
            unsigned char f = 0;
            if (!(rec.outcome.decoded() && rec.correct)) f |= 1;
            if (!rec.outcome.decoded()) f |= 2;
            flags[static_cast<std::size_t>(t)] = f;
        }
    };

    if (workers <= 1) {
        TrialContext ctx(cfg, n_index, point_index);
        std::atomic<int> next{0};
        body(ctx, next);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&]() {
                TrialContext ctx(cfg, n_index, point_index);
                body(ctx, next);
            });
        for (auto& th : pool) th.join();
    }

    for (int t = 0; t < trials; ++t) {
        if (flags[static_cast<std::size_t>(t)] & 1) ++est.errors;
        if (flags[static_cast<std::size_t>(t)] & 2) ++est.collisions;
    }
    est.p_e = static_cast<double>(est.errors) / static_cast<double>(trials);
    est.p_c = static_cast<double>(est.collisions) / static_cast<double>(trials);
    est.p_e_ci = wilson_interval(est.errors, static_cast<std::uint64_t>(trials));
    est.p_c_ci = wilson_interval(est.collisions, static_cast<std::uint64_t>(trials));
    est.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return est;
}

std::vector<PointEstimate> sweep(const ExperimentConfig& cfg) {
    validate_experiment_config(cfg);
    std::vector<PointEstimate> rows;
    for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni)
        for (std::size_t pi = 0; pi < cfg.rate_points.size(); ++pi)
            rows.push_back(estimate_point(cfg, static_cast<int>(ni), static_cast<int>(pi)));
    return rows;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

std::string sweep_csv(const std::vector<PointEstimate>& rows, int K) {
    std::string out = "N";
    for (int i = 1; i <= K; ++i) out += ",r_" + std::to_string(i);
    out += ",in_region_all,in_region_user_k,p_e,p_e_lo,p_e_hi,p_c,p_c_lo,p_c_hi,trials,seconds\n";
    for (const auto& row : rows) {
        out += std::to_string(row.n);
        for (int i = 0; i < K; ++i)
            out += "," + fmt(row.realized[static_cast<std::size_t>(i)]);
        out += row.in_region_all ? ",1" : ",0";
        out += row.in_region_user ? ",1" : ",0";
        out += "," + fmt(row.p_e) + "," + fmt(row.p_e_ci.lo) + "," + fmt(row.p_e_ci.hi);
        out += "," + fmt(row.p_c) + "," + fmt(row.p_c_ci.lo) + "," + fmt(row.p_c_ci.hi);
        out += "," + std::to_string(row.trials);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", row.seconds);
        out += ",";
        out += buf;
        out += "\n";
    }
    return out;
}

std::string trial_record_json(const TrialRecord& rec) {
    std::string s = "{\"n\":" + std::to_string(rec.n) + ",\"rates\":[";
    for (std::size_t i = 0; i < rec.rates.size(); ++i)
        s += (i ? "," : "") + fmt(rec.rates[i]);
    s += "],\"thetas\":[";
    for (std::size_t i = 0; i < rec.thetas.size(); ++i)
        s += (i ? "," : "") + std::to_string(rec.thetas[i]);
    s += "],\"transmitted\":[";
    for (std::size_t i = 0; i < rec.transmitted.size(); ++i)
        s += (i ? "," : "") + std::to_string(rec.transmitted[i]);
    s += std::string("],\"outcome\":\"") +
         (rec.outcome.decoded() ? "decoded" : "collision") + "\"";
    if (rec.outcome.decoded()) {
        s += ",\"decoded\":[";
        for (std::size_t i = 0; i < rec.outcome.messages.size(); ++i)
            s += (i ? "," : "") + std::to_string(rec.outcome.messages[i]);
        s += "],\"correct\":";
        s += rec.correct ? "true" : "false";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", rec.seconds);
    s += std::string(",\"seconds\":") + buf + "}";
    return s;
}

} // namespace ramac

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "ramac/channel.hpp"
#include "ramac/errors.hpp"
#include "ramac/harness.hpp"
#include "ramac/io.hpp"
#include "ramac/profile.hpp"
#include "ramac/stats.hpp"

using namespace ramac;

namespace {

ExperimentConfig pair_config() {
    ExperimentConfig cfg;
    cfg.channel = collision_channel(1, 2);
    cfg.profiles = {single_segment_profile(0.4, {0.5, 0.5, 0.0}),
                    single_segment_profile(0.4, {0.5, 0.5, 0.0})};
    cfg.n_values = {8, 10};
    cfg.rate_points = {{0.2, 0.2}, {0.35, 0.1}};
    cfg.epsilon = 0.4;
    cfg.trials = 40;
    cfg.master_seed = 11;
    cfg.threads = 1;
    return cfg;
}

// A pair of mostly-idle senders. With the active mass this lopsided an
// all-idle received block is never typical under any candidate law that
// keeps a sender active, so idle trials decode deterministically.
ExperimentConfig idle_pair_config() {
    ExperimentConfig cfg;
    cfg.channel = collision_channel(1, 2);
    cfg.profiles = {single_segment_profile(0.4, {0.1, 0.9, 0.0}),
                    single_segment_profile(0.4, {0.1, 0.9, 0.0})};
    cfg.n_values = {12};
    cfg.rate_points = {{0.0, 0.0}};
    cfg.epsilon = 0.4;
    cfg.trials = 5;
    cfg.master_seed = 5;
    cfg.threads = 1;
    return cfg;
}

// Strip the wall-clock column, the one field that legitimately varies
// between identical runs.
std::string without_seconds(const std::string& csv) {
    std::string out;
    std::size_t start = 0;
    while (start < csv.size()) {
        std::size_t end = csv.find('\n', start);
        if (end == std::string::npos) end = csv.size();
        const std::string line = csv.substr(start, end - start);
        out += line.substr(0, line.rfind(','));
        out += '\n';
        start = end + 1;
    }
    return out;
}

} // namespace

TEST_CASE("wilson interval, frozen values") {
    const Interval a = wilson_interval(0, 500);
    CHECK(a.lo == 0.0);
    CHECK(a.hi == doctest::Approx(0.007624340461552241).epsilon(1e-12));

    const Interval b = wilson_interval(500, 500);
    CHECK(b.lo == doctest::Approx(0.9923756595384479).epsilon(1e-12));
    CHECK(b.hi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.hi <= 1.0);

    const Interval c = wilson_interval(8, 10);
    CHECK(c.lo == doctest::Approx(0.49016247153664183).epsilon(1e-12));
    CHECK(c.hi == doctest::Approx(0.9433178485456247).epsilon(1e-12));

    const Interval d = wilson_interval(450, 500);
    CHECK(d.lo == doctest::Approx(0.8705780903680599).epsilon(1e-12));
    CHECK(d.hi == doctest::Approx(0.9233224372626984).epsilon(1e-12));

    const Interval e = wilson_interval(1, 1000);
    CHECK(e.lo == doctest::Approx(0.00017654637062607809).epsilon(1e-12));
    CHECK(e.hi == doctest::Approx(0.0056425585979579355).epsilon(1e-12));
}

TEST_CASE("wilson interval, identities and validation") {
    // at zero successes the upper limit collapses to z^2 / (n + z^2)
    const double z = 1.959963984540054;
    for (std::uint64_t n : {10ULL, 100ULL, 1000ULL}) {
        const Interval ci = wilson_interval(0, n);
        CHECK(ci.lo == 0.0);
        CHECK(ci.hi == doctest::Approx(z * z / (static_cast<double>(n) + z * z))
                           .epsilon(1e-12));
    }
    // symmetry around one half
    const Interval lo = wilson_interval(20, 100);
    const Interval hi = wilson_interval(80, 100);
    CHECK(lo.lo == doctest::Approx(1.0 - hi.hi).epsilon(1e-12));
    CHECK(lo.hi == doctest::Approx(1.0 - hi.lo).epsilon(1e-12));

    CHECK_THROWS_AS(wilson_interval(1, 0), ConfigError);
    CHECK_THROWS_AS(wilson_interval(11, 10), ConfigError);
}

TEST_CASE("mode strings round-trip") {
    CHECK(parse_mode("all").kind == ModeSpec::Kind::All);

    const ModeSpec u = parse_mode("user:2");
    CHECK(u.kind == ModeSpec::Kind::User);
    CHECK(u.user == 1);

    const ModeSpec s = parse_mode("subset:1,3");
    CHECK(s.kind == ModeSpec::Kind::Subset);
    CHECK(s.mask == 0b101);

    CHECK_THROWS_AS(parse_mode("user:0"), ConfigError);
    CHECK_THROWS_AS(parse_mode("user:x"), ConfigError);
    CHECK_THROWS_AS(parse_mode("subset:"), ConfigError);
    CHECK_THROWS_AS(parse_mode("frobnicate"), ConfigError);
}

TEST_CASE("subset masks render 1-based") {
    CHECK(mask_to_string(0) == "-");
    CHECK(mask_to_string(0b1) == "1");
    CHECK(mask_to_string(0b101) == "1+3");
    CHECK(mask_to_string(0b110) == "2+3");
}

TEST_CASE("the reported user tracks the decision mode") {
    ModeSpec m;
    CHECK(m.report_user(3) == 0);
    m.kind = ModeSpec::Kind::User;
    m.user = 2;
    CHECK(m.report_user(3) == 2);
    m.kind = ModeSpec::Kind::Subset;
    m.mask = 0b110;
    CHECK(m.report_user(3) == 1);
}

TEST_CASE("config validation names the offending field") {
    ExperimentConfig cfg = pair_config();
    CHECK_NOTHROW(validate_experiment_config(cfg));

    ExperimentConfig bad = cfg;
    bad.profiles.pop_back();
    CHECK_THROWS_WITH_AS(validate_experiment_config(bad),
                         doctest::Contains("profiles"), ConfigError);

    bad = cfg;
    bad.profiles[0] = single_segment_profile(0.4, {0.5, 0.5});
    CHECK_THROWS_WITH_AS(validate_experiment_config(bad),
                         doctest::Contains("alphabet"), ConfigError);

    bad = cfg;
    bad.n_values.clear();
    CHECK_THROWS_WITH_AS(validate_experiment_config(bad),
                         doctest::Contains("n_values"), ConfigError);

    bad = cfg;
    bad.rate_points = {{0.2}};
    CHECK_THROWS_WITH_AS(validate_experiment_config(bad),
                         doctest::Contains("rate_points"), ConfigError);

    bad = cfg;
    bad.rate_points = {{0.2, 0.5}};   // beyond r_max = 0.4
    CHECK_THROWS_WITH_AS(validate_experiment_config(bad),
                         doctest::Contains("r_max"), ConfigError);

    bad = cfg;
    bad.trials = 0;
    CHECK_THROWS_WITH_AS(validate_experiment_config(bad),
                         doctest::Contains("trials"), ConfigError);

    bad = cfg;
    bad.epsilon = 0.0;
    CHECK_THROWS_WITH_AS(validate_experiment_config(bad),
                         doctest::Contains("epsilon"), ConfigError);

    bad = cfg;
    bad.mode = parse_mode("user:3");
    CHECK_THROWS_WITH_AS(validate_experiment_config(bad),
                         doctest::Contains("mode"), ConfigError);

    bad = cfg;
    bad.mode.kind = ModeSpec::Kind::Subset;
    bad.mode.mask = 0b100;
    CHECK_THROWS_WITH_AS(validate_experiment_config(bad),
                         doctest::Contains("mode"), ConfigError);
}

TEST_CASE("target rates map to floor-of-exponential message indices") {
    ExperimentConfig cfg;
    cfg.channel = collision_channel(2, 2);
    InputProfile p2;
    p2.r_max = 0.75;
    p2.breakpoints = {0.73, 0.75};
    p2.segment_pmfs = {{0.5, 0.0, 0.0, 0.5, 0.0}, {0.8, 0.0, 0.0, 0.2, 0.0}};
    p2.zero_rate_pmf = {1.0, 0.0, 0.0, 0.0, 0.0};
    cfg.profiles = {single_segment_profile(0.25, {0.0, 0.5, 0.5, 0.0, 0.0}), p2};
    cfg.n_values = {16};
    cfg.rate_points = {{0.24, 0.74}};
    cfg.epsilon = 0.375;
    cfg.trials = 1;
    cfg.threads = 1;

    const TrialRecord rec = run_trial(cfg, 0, 0, 0);
    CHECK(rec.n == 16);
    CHECK(rec.transmitted == std::vector<std::uint64_t>{14, 3666});
    CHECK(rec.rates[0] == doctest::Approx(std::log2(14.0) / 16.0).epsilon(1e-12));
    CHECK(rec.rates[1] == doctest::Approx(std::log2(3666.0) / 16.0).epsilon(1e-12));

    // a tiny positive target still sends a real message index
    cfg.rate_points = {{0.01, 0.0}};
    const TrialRecord tiny = run_trial(cfg, 0, 0, 0);
    CHECK(tiny.transmitted == std::vector<std::uint64_t>{1, 1});
    CHECK(tiny.rates == RateVector{0.0, 0.0});
}

TEST_CASE("idle senders decode as the idle message") {
    ExperimentConfig cfg;
    cfg.channel = noiseless_channel(2);
    cfg.profiles = {single_segment_profile(0.25, {0.1, 0.9})};
    cfg.n_values = {12};
    cfg.rate_points = {{0.0}};
    cfg.trials = 5;
    cfg.master_seed = 5;
    cfg.threads = 1;

    for (int t = 0; t < cfg.trials; ++t) {
        const TrialRecord rec = run_trial(cfg, 0, 0, t);
        REQUIRE(rec.outcome.decoded());
        CHECK(rec.outcome.messages == std::vector<std::uint64_t>{1});
        CHECK(rec.correct);
    }

    const ExperimentConfig both = idle_pair_config();
    for (int t = 0; t < both.trials; ++t) {
        const TrialRecord rec = run_trial(both, 0, 0, t);
        REQUIRE(rec.outcome.decoded());
        CHECK(rec.outcome.messages == std::vector<std::uint64_t>{1, 1});
        CHECK(rec.correct);
    }
}

TEST_CASE("trials replay identically") {
    const ExperimentConfig cfg = pair_config();
    for (int t : {0, 3, 17}) {
        const TrialRecord a = run_trial(cfg, 1, 0, t);
        const TrialRecord b = run_trial(cfg, 1, 0, t);
        CHECK(a.thetas == b.thetas);
        CHECK(a.transmitted == b.transmitted);
        CHECK(a.outcome.kind == b.outcome.kind);
        CHECK(a.outcome.messages == b.outcome.messages);
        CHECK(a.correct == b.correct);
    }

    const VerboseTrial va = run_trial_verbose(cfg, 1, 0, 3);
    const VerboseTrial vb = run_trial_verbose(cfg, 1, 0, 3);
    CHECK(va.received == vb.received);
    CHECK(va.candidates == vb.candidates);
    CHECK(va.record.thetas == vb.record.thetas);
    CHECK(va.received.size() == 10);

    CHECK_THROWS_AS(run_trial(cfg, 2, 0, 0), ConfigError);
    CHECK_THROWS_AS(run_trial(cfg, 0, 2, 0), ConfigError);
    CHECK_THROWS_AS(run_trial(cfg, 0, 0, -1), ConfigError);
}

TEST_CASE("point estimates fold trials deterministically") {
    const ExperimentConfig cfg = pair_config();
    const PointEstimate a = estimate_point(cfg, 0, 0);
    const PointEstimate b = estimate_point(cfg, 0, 0);
    CHECK(a.errors == b.errors);
    CHECK(a.collisions == b.collisions);
    CHECK(a.trials == cfg.trials);
    CHECK(a.p_e == doctest::Approx(static_cast<double>(a.errors) / cfg.trials));
    CHECK(a.p_e_ci.hi == wilson_interval(a.errors, 40).hi);
    CHECK(a.p_c_ci.lo == wilson_interval(a.collisions, 40).lo);
    CHECK(a.collisions <= a.errors);   // a collision is never a correct decode

    ExperimentConfig wide = cfg;
    wide.threads = 4;
    const PointEstimate c = estimate_point(wide, 0, 0);
    CHECK(c.errors == a.errors);
    CHECK(c.collisions == a.collisions);

    // manual fold over the same trials
    std::uint64_t errors = 0;
    for (int t = 0; t < cfg.trials; ++t) {
        const TrialRecord rec = run_trial(cfg, 0, 0, t);
        if (!(rec.outcome.decoded() && rec.correct)) ++errors;
    }
    CHECK(errors == a.errors);
}

TEST_CASE("sweeps replay byte for byte, wall clock aside") {
    const ExperimentConfig cfg = pair_config();
    const auto rows_a = sweep(cfg);
    const auto rows_b = sweep(cfg);
    REQUIRE(rows_a.size() == 4);   // two block lengths, two rate points
    CHECK(rows_a[0].n == 8);
    CHECK(rows_a[2].n == 10);

    const std::string csv_a = sweep_csv(rows_a, 2);
    const std::string csv_b = sweep_csv(rows_b, 2);
    CHECK(without_seconds(csv_a) == without_seconds(csv_b));

    const std::string header = csv_a.substr(0, csv_a.find('\n'));
    CHECK(header ==
          "N,r_1,r_2,in_region_all,in_region_user_k,p_e,p_e_lo,p_e_hi,"
          "p_c,p_c_lo,p_c_hi,trials,seconds");

    // K + 11 columns per data row
    std::size_t line_start = csv_a.find('\n') + 1;
    const std::string row = csv_a.substr(line_start, csv_a.find('\n', line_start) - line_start);
    std::size_t commas = 0;
    for (char ch : row)
        if (ch == ',') ++commas;
    CHECK(commas == 12);
    CHECK(row.substr(0, 2) == "8,");
}

TEST_CASE("trial records serialize to JSON lines") {
    const ExperimentConfig cfg = idle_pair_config();
    const TrialRecord rec = run_trial(cfg, 0, 0, 0);
    REQUIRE(rec.outcome.decoded());
    const std::string line = trial_record_json(rec);
    CHECK(line.find("\"n\":12") != std::string::npos);
    CHECK(line.find("\"outcome\":\"decoded\"") != std::string::npos);
    CHECK(line.find("\"decoded\":[1,1]") != std::string::npos);
    CHECK(line.find("\"correct\":true") != std::string::npos);
    CHECK(line.find("\"seconds\":") != std::string::npos);

    TrialRecord col = rec;
    col.outcome.kind = DecodeOutcome::Kind::Collision;
    col.outcome.messages.clear();
    const std::string cline = trial_record_json(col);
    CHECK(cline.find("\"outcome\":\"collision\"") != std::string::npos);
    CHECK(cline.find("\"decoded\"") == std::string::npos);
    CHECK(cline.find("\"correct\"") == std::string::npos);
}

TEST_CASE("zero-rate points report zero error inside the region") {
    ExperimentConfig cfg = idle_pair_config();
    cfg.trials = 10;
    const PointEstimate est = estimate_point(cfg, 0, 0);
    CHECK(est.in_region_all);
    CHECK(est.in_region_user);
    CHECK(est.errors == 0);
    CHECK(est.collisions == 0);
    CHECK(est.p_e == 0.0);
    CHECK(est.realized == RateVector{0.0, 0.0});
    CHECK(est.target == RateVector{0.0, 0.0});
}

TEST_CASE("worker count resolution") {
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(1) == 1);

    ::setenv("RAMAC_THREADS", "5", 1);
    CHECK(resolve_threads(0) == 5);
    CHECK(resolve_threads(2) == 2);   // explicit request wins

    ::setenv("RAMAC_THREADS", "abc", 1);
    CHECK_THROWS_AS(resolve_threads(0), ConfigError);
    ::setenv("RAMAC_THREADS", "0", 1);
    CHECK_THROWS_AS(resolve_threads(0), ConfigError);
    ::setenv("RAMAC_THREADS", "", 1);
    CHECK_THROWS_AS(resolve_threads(0), ConfigError);

    ::unsetenv("RAMAC_THREADS");
    CHECK(resolve_threads(0) >= 1);
}

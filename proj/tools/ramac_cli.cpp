// Command-line front end: region queries, Monte Carlo sweeps, single
// verbose trials, and config linting.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 desk-scale
// guardrail violation.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ramac/errors.hpp"
#include "ramac/harness.hpp"
#include "ramac/io.hpp"
#include "ramac/regions.hpp"

namespace {

using namespace ramac;

std::vector<double> parse_rates(const std::string& csv) {
    std::vector<double> out;
    std::string item;
    std::stringstream ss(csv);
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("rates: '" + item + "' is not a number");
        }
    }
    if (out.empty()) throw ConfigError("rates: empty list");
    return out;
}

void print_constraint_table(const std::vector<ConstraintRow>& rows) {
    std::printf("S,T,sum_rate,mutual_information,slack,satisfied\n");
    for (const auto& row : rows)
        std::printf("%s,%s,%.9g,%.9g,%.9g,%d\n", mask_to_string(row.S).c_str(),
                    mask_to_string(row.T).c_str(), row.sum_rate,
                    row.mutual_information, row.slack, row.satisfied ? 1 : 0);
}

int cmd_region(const std::string& channel_spec,
               const std::vector<std::string>& profile_specs,
               const std::string& rates_csv, const std::string& mode_text,
               const std::vector<double>& gaussian_powers, double gaussian_noise,
               int sqrt_order) {
    const RateVector rates = parse_rates(rates_csv);

    if (!gaussian_powers.empty()) {
        const bool inside = gaussian_region_contains(gaussian_powers, gaussian_noise, rates);
        std::printf("inside: %s\n", inside ? "true" : "false");
        std::printf("S,bound,sum_rate,slack\n");
        const std::uint32_t full = (1u << gaussian_powers.size()) - 1u;
        for (std::uint32_t S = 1; S <= full; ++S) {
            double sum = 0.0;
            for (std::size_t i = 0; i < rates.size(); ++i)
                if (S & (1u << i)) sum += rates[i];
            const double bound = gaussian_subset_bound(gaussian_powers, gaussian_noise, S);
            std::printf("%s,%.9g,%.9g,%.9g\n", mask_to_string(S).c_str(), bound, sum,
                        bound - sum);
        }
        return 0;
    }

    if (channel_spec.empty() || profile_specs.empty())
        throw ConfigError("region: need --channel and --profile (or --gaussian-powers)");

    ChannelModel ch = load_channel(channel_spec);
    const int K = ch.num_users();
    std::vector<InputProfile> profiles;
    if (profile_specs.size() == 1) {
        profiles.assign(static_cast<std::size_t>(K), load_profile(profile_specs.front()));
    } else {
        for (const auto& s : profile_specs) profiles.push_back(load_profile(s));
    }
    MIOracle oracle(std::move(ch), std::move(profiles));

    const ModeSpec mode = parse_mode(mode_text);
    bool inside = false;
    RegionMode rmode = RegionMode::All;
    std::uint32_t target = 0;
    switch (mode.kind) {
    case ModeSpec::Kind::All:
        inside = contains_all(rates, oracle);
        break;
    case ModeSpec::Kind::User:
        inside = contains_user(rates, mode.user, oracle);
        rmode = RegionMode::User;
        target = static_cast<std::uint32_t>(mode.user);
        break;
    case ModeSpec::Kind::Subset:
        inside = contains_subset(rates, mode.mask, oracle);
        rmode = RegionMode::Subset;
        target = mode.mask;
        break;
    }
    std::printf("inside: %s\n", inside ? "true" : "false");
    if (sqrt_order > 0) {
        double s = 0.0;
        for (double r : rates) s += std::sqrt(r / sqrt_order);
        std::printf("sqrt_sum: %.9g (inside sqrt bound: %s)\n", s,
                    collision_region_contains(rates, sqrt_order) ? "true" : "false");
    }
    print_constraint_table(region_constraints(rates, rmode, target, oracle));
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_override,
              int threads) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    if (threads > 0) cfg.threads = threads;
    if (!out_override.empty()) cfg.out_path = out_override;

    const auto rows = sweep(cfg);
    const std::string csv = sweep_csv(rows, cfg.channel.num_users());
    if (cfg.out_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        write_text_file(cfg.out_path, csv);
        std::fprintf(stderr, "wrote %zu rows to %s\n", rows.size(), cfg.out_path.c_str());
    }
    return 0;
}

int cmd_trial(const std::string& config_path, int n_index, int point_index,
              int trial_index, int threads) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    if (threads > 0) cfg.threads = threads;
    const VerboseTrial vt = run_trial_verbose(cfg, n_index, point_index, trial_index);
    std::printf("%s\n", trial_record_json(vt.record).c_str());
    std::fprintf(stderr, "received:");
    for (int s : vt.received) std::fprintf(stderr, " %d", s);
    std::fprintf(stderr, "\ncandidates (%zu):\n", vt.candidates.size());
    for (const auto& t : vt.candidates) {
        std::string line;
        for (std::size_t i = 0; i < t.size(); ++i)
            line += (i ? "," : "(") + std::to_string(t[i]);
        std::fprintf(stderr, "  %s)\n", line.c_str());
    }
    return 0;
}

int cmd_validate(const std::vector<std::string>& channel_specs,
                 const std::vector<std::string>& profile_specs,
                 const std::vector<std::string>& config_paths) {
    if (channel_specs.empty() && profile_specs.empty() && config_paths.empty())
        throw ConfigError("validate: nothing to check (use --channel/--profile/--config)");
    for (const auto& s : channel_specs) {
        load_channel(s);
        std::printf("ok: channel %s\n", s.c_str());
    }
    for (const auto& s : profile_specs) {
        load_profile(s);
        std::printf("ok: profile %s\n", s.c_str());
    }
    for (const auto& s : config_paths) {
        load_experiment_config(s);
        std::printf("ok: config %s\n", s.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random-access channel coding laboratory"};
    app.require_subcommand(1);

    // region
    auto* region = app.add_subcommand("region", "Evaluate region membership and slack");
    std::string r_channel, r_rates, r_mode = "all";
    std::vector<std::string> r_profiles;
    std::vector<double> r_gauss_powers;
    double r_gauss_noise = 1.0;
    int r_sqrt = 0;
    region->add_option("--channel", r_channel, "Channel preset or JSON file");
    region->add_option("--profile", r_profiles, "Input profile preset or JSON file (repeatable)");
    region->add_option("--rates", r_rates, "Comma-separated rate vector")->required();
    region->add_option("--mode", r_mode, "all | user:<k> | subset:<k1,k2,..>");
    region->add_option("--gaussian-powers", r_gauss_powers,
                       "Use the Gaussian closed form with these powers");
    region->add_option("--gaussian-noise", r_gauss_noise, "Gaussian noise level (default 1)");
    region->add_option("--sqrt", r_sqrt, "Also report the order-n sqrt activity bound");

    // sweep
    auto* sw = app.add_subcommand("sweep", "Run a Monte Carlo sweep from a config file");
    std::string s_config, s_out;
    int s_threads = 0;
    sw->add_option("--config", s_config, "Experiment config JSON")->required();
    sw->add_option("--out", s_out, "CSV output path (overrides config)");
    sw->add_option("--threads", s_threads, "Worker count (beats RAMAC_THREADS)");

    // trial
    auto* tr = app.add_subcommand("trial", "Run one verbose trial");
    std::string t_config;
    int t_n = 0, t_point = 0, t_trial = 0, t_threads = 0;
    tr->add_option("--config", t_config, "Experiment config JSON")->required();
    tr->add_option("--n-index", t_n, "Index into n_values (default 0)");
    tr->add_option("--point-index", t_point, "Index into rate_points (default 0)");
    tr->add_option("--trial-index", t_trial, "Trial number (default 0)");
    tr->add_option("--threads", t_threads, "Worker count (beats RAMAC_THREADS)");

    // validate
    auto* va = app.add_subcommand("validate", "Lint channels, profiles, and configs");
    std::vector<std::string> v_channels, v_profiles, v_configs;
    va->add_option("--channel", v_channels, "Channel preset or JSON file (repeatable)");
    va->add_option("--profile", v_profiles, "Profile preset or JSON file (repeatable)");
    va->add_option("--config", v_configs, "Experiment config JSON (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (region->parsed())
            return cmd_region(r_channel, r_profiles, r_rates, r_mode, r_gauss_powers,
                              r_gauss_noise, r_sqrt);
        if (sw->parsed()) return cmd_sweep(s_config, s_out, s_threads);
        if (tr->parsed()) return cmd_trial(t_config, t_n, t_point, t_trial, t_threads);
        if (va->parsed()) return cmd_validate(v_channels, v_profiles, v_configs);
    } catch (const GuardrailError& e) {
        std::fprintf(stderr, "guardrail: %s\n", e.what());
        return 3;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
    return 0;
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ramac/channel.hpp"
#include "ramac/decoder.hpp"
#include "ramac/profile.hpp"
#include "ramac/regions.hpp"
#include "ramac/stats.hpp"

namespace ramac {

// Which decision the receiver is asked for.
struct ModeSpec {
    enum class Kind { All, User, Subset };
    Kind kind = Kind::All;
    int user = 0;           // 0-based, Kind::User
    std::uint32_t mask = 0; // Kind::Subset

    // The user whose region membership the per-user CSV column reports:
    // the decoded user in User mode, the lowest member in Subset mode,
    // user 1 otherwise.
    int report_user(int K) const;
};

ModeSpec parse_mode(const std::string& text);

struct ExperimentConfig {
    ChannelModel channel;
    std::vector<InputProfile> profiles;   // one per sender
    std::vector<int> n_values;
    std::vector<RateVector> rate_points;  // target rates, snapped down per N
    double epsilon = 0.1;
    int trials = 100;
    std::uint64_t master_seed = 1;
    ModeSpec mode;
    bool prefilter = true;
    std::uint64_t candidate_budget = 10000000;
    int threads = 0;                      // 0 = RAMAC_THREADS env or hardware
    std::string out_path;                 // sweep CSV destination; empty = stdout
};

// Schema and range checks; ConfigError with a field name on violation.
void validate_experiment_config(const ExperimentConfig& cfg);

// Parse a JSON config file (schema documented in the README).
ExperimentConfig load_experiment_config(const std::string& path);

struct TrialRecord {
    int n = 0;
    RateVector rates;                        // realized rates log2(W)/N
    std::vector<std::uint64_t> thetas;
    std::vector<std::uint64_t> transmitted;
    DecodeOutcome outcome;
    bool correct = false;                    // meaningful only when decoded
    double seconds = 0.0;
};

// One Monte Carlo sample: draw codebook indices, map target rates to
// messages W = floor(2^(N r)) (never below 1), transmit through the
// channel, decode per cfg.mode. Fully determined by (cfg, indices):
// the trial seed is derived from (master_seed, point, N, trial) so results
// are independent of scheduling order.
TrialRecord run_trial(const ExperimentConfig& cfg, int n_index, int point_index,
                      int trial_index);

// Same trial with its observables kept for inspection: the received block
// and the full candidate set the decoder saw.
struct VerboseTrial {
    TrialRecord record;
    std::vector<int> received;
    std::vector<std::vector<std::uint64_t>> candidates;
};
VerboseTrial run_trial_verbose(const ExperimentConfig& cfg, int n_index,
                               int point_index, int trial_index);

struct PointEstimate {
    int n = 0;
    RateVector target;
    RateVector realized;
    bool in_region_all = false;
    bool in_region_user = false;   // for mode.report_user
    std::uint64_t errors = 0;      // trials not ending in a correct decode
    std::uint64_t collisions = 0;
    int trials = 0;
    double p_e = 0.0, p_c = 0.0;
    Interval p_e_ci, p_c_ci;
    double seconds = 0.0;
};

// Estimate error and collision probability at one grid point, running
// cfg.trials independent trials across the worker pool.
PointEstimate estimate_point(const ExperimentConfig& cfg, int n_index,
                             int point_index);

// Full cartesian sweep over cfg.n_values x cfg.rate_points.
std::vector<PointEstimate> sweep(const ExperimentConfig& cfg);

// CSV rendering with the fixed header
//   N,r_1..r_K,in_region_all,in_region_user_k,p_e,p_e_lo,p_e_hi,
//   p_c,p_c_lo,p_c_hi,trials,seconds
// Everything except the seconds column is reproducible byte for byte for a
// given config and seed.
std::string sweep_csv(const std::vector<PointEstimate>& rows, int K);

// One TrialRecord as a JSON line.
std::string trial_record_json(const TrialRecord& rec);

// Worker-count resolution: explicit > RAMAC_THREADS > hardware.
int resolve_threads(int requested);

} // namespace ramac

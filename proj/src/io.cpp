#include "ramac/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ramac/errors.hpp"
#include "ramac/harness.hpp"

namespace ramac {

namespace {

using nlohmann::json;

// Parse "name:k1=v1,k2=v2" into (name, {k: v}). Returns false when the
// spec has no preset name prefix.
bool split_preset(const std::string& spec, std::string& name,
                  std::vector<std::pair<std::string, std::string>>& kv) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return false;
    name = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ConfigError("preset '" + spec + "': expected key=value, got '" + item + "'");
        kv.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return true;
}

long parse_int(const std::string& spec, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long n = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw ConfigError("preset '" + spec + "': " + key + " must be an integer");
    }
}

json parse_json_file(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

} // namespace

bool is_channel_preset(const std::string& spec) {
    return spec.rfind("collision:", 0) == 0 || spec.rfind("noiseless:", 0) == 0;
}

bool is_profile_preset(const std::string& spec) {
    return spec.rfind("prop1:", 0) == 0;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << content;
    if (!out) throw ConfigError("short write: " + path);
}

namespace {

ChannelModel channel_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("input_sizes") || !j.contains("output_size") ||
        !j.contains("transition"))
        throw ConfigError(where + ": channel needs input_sizes, output_size, transition");
    try {
        std::vector<int> sizes = j.at("input_sizes").get<std::vector<int>>();
        const int out = j.at("output_size").get<int>();
        std::vector<double> flat;
        for (const auto& row : j.at("transition")) {
            const auto r = row.get<std::vector<double>>();
            flat.insert(flat.end(), r.begin(), r.end());
        }
        return make_channel(std::move(sizes), out, std::move(flat));
    } catch (const json::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

InputProfile profile_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("r_max") || !j.contains("breakpoints") ||
        !j.contains("segment_pmfs"))
        throw ConfigError(where + ": profile needs r_max, breakpoints, segment_pmfs");
    try {
        InputProfile pr;
        pr.r_max = j.at("r_max").get<double>();
        pr.breakpoints = j.at("breakpoints").get<std::vector<double>>();
        for (const auto& row : j.at("segment_pmfs"))
            pr.segment_pmfs.push_back(row.get<Pmf>());
        if (j.contains("zero_rate_pmf")) {
            pr.zero_rate_pmf = j.at("zero_rate_pmf").get<Pmf>();
        } else if (!pr.segment_pmfs.empty()) {
            pr.zero_rate_pmf.assign(pr.segment_pmfs.front().size(), 0.0);
            pr.zero_rate_pmf[0] = 1.0;
        }
        validate_profile(pr);
        return pr;
    } catch (const json::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

} // namespace

ChannelModel load_channel(const std::string& spec) {
    std::string name;
    std::vector<std::pair<std::string, std::string>> kv;
    if (is_channel_preset(spec) && split_preset(spec, name, kv)) {
        long n = -1, K = -1, q = -1;
        for (const auto& [k, v] : kv) {
            if (k == "n") n = parse_int(spec, k, v);
            else if (k == "K") K = parse_int(spec, k, v);
            else if (k == "q") q = parse_int(spec, k, v);
            else throw ConfigError("preset '" + spec + "': unknown key '" + k + "'");
        }
        if (name == "collision") {
            if (n < 0 || K < 0)
                throw ConfigError("preset '" + spec + "': needs n and K");
            return collision_channel(static_cast<int>(n), static_cast<int>(K));
        }
        if (q < 0) throw ConfigError("preset '" + spec + "': needs q");
        return noiseless_channel(static_cast<int>(q));
    }
    ChannelModel ch = channel_from_json(parse_json_file(spec), spec);
    return ch;
}

InputProfile load_profile(const std::string& spec) {
    std::string name;
    std::vector<std::pair<std::string, std::string>> kv;
    if (is_profile_preset(spec) && split_preset(spec, name, kv)) {
        long n = -1, segments = 64;
        for (const auto& [k, v] : kv) {
            if (k == "n") n = parse_int(spec, k, v);
            else if (k == "segments") segments = parse_int(spec, k, v);
            else throw ConfigError("preset '" + spec + "': unknown key '" + k + "'");
        }
        if (n < 0) throw ConfigError("preset '" + spec + "': needs n");
        return prop1_profile(static_cast<int>(n), static_cast<int>(segments));
    }
    return profile_from_json(parse_json_file(spec), spec);
}

std::string mask_to_string(std::uint32_t mask) {
    std::string out;
    for (int i = 0; i < 32; ++i) {
        if (!(mask & (1u << i))) continue;
        if (!out.empty()) out += '+';
        out += std::to_string(i + 1);
    }
    return out.empty() ? "-" : out;
}

ModeSpec parse_mode(const std::string& text) {
    ModeSpec mode;
    if (text == "all") {
        mode.kind = ModeSpec::Kind::All;
        return mode;
    }
    if (text.rfind("user:", 0) == 0) {
        mode.kind = ModeSpec::Kind::User;
        const long u = parse_int(text, "user", text.substr(5));
        if (u < 1) throw ConfigError("mode '" + text + "': users are numbered from 1");
        mode.user = static_cast<int>(u - 1);
        return mode;
    }
    if (text.rfind("subset:", 0) == 0) {
        mode.kind = ModeSpec::Kind::Subset;
        std::stringstream ss(text.substr(7));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const long u = parse_int(text, "subset", item);
            if (u < 1 || u > 32)
                throw ConfigError("mode '" + text + "': users are numbered from 1");
            mode.mask |= 1u << (u - 1);
        }
        if (mode.mask == 0) throw ConfigError("mode '" + text + "': empty subset");
        return mode;
    }
    throw ConfigError("mode '" + text + "': expected all, user:<k>, or subset:<k1,k2,..>");
}

ExperimentConfig load_experiment_config(const std::string& path) {
    const json j = parse_json_file(path);
    if (!j.is_object()) throw ConfigError(path + ": config must be a JSON object");

    auto channel_spec = [&](const json& v) -> ChannelModel {
        if (v.is_string()) return load_channel(v.get<std::string>());
        return channel_from_json(v, path + ": channel");
    };
    auto profile_spec = [&](const json& v) -> InputProfile {
        if (v.is_string()) return load_profile(v.get<std::string>());
        return profile_from_json(v, path + ": profile");
    };

    ExperimentConfig cfg;
    try {
        if (!j.contains("channel")) throw ConfigError(path + ": missing channel");
        cfg.channel = channel_spec(j.at("channel"));
        const int K = cfg.channel.num_users();

        if (!j.contains("profiles")) throw ConfigError(path + ": missing profiles");
        const json& profs = j.at("profiles");
        if (profs.is_array()) {
            if (profs.empty())
                throw ConfigError(path + ": profiles must be nonempty");
            if (profs.size() == 1) {
                // a single entry is shared by every sender
                const InputProfile pr = profile_spec(profs.at(0));
                cfg.profiles.assign(static_cast<std::size_t>(K), pr);
            } else {
                for (const auto& v : profs) cfg.profiles.push_back(profile_spec(v));
            }
        } else {
            // bare spec: shared by every sender
            const InputProfile pr = profile_spec(profs);
            cfg.profiles.assign(static_cast<std::size_t>(K), pr);
        }

        if (!j.contains("n_values")) throw ConfigError(path + ": missing n_values");
        cfg.n_values = j.at("n_values").get<std::vector<int>>();
        if (!j.contains("rate_points")) throw ConfigError(path + ": missing rate_points");
        for (const auto& v : j.at("rate_points"))
            cfg.rate_points.push_back(v.get<RateVector>());

        if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
        if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
        if (j.contains("seed")) cfg.master_seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("mode")) cfg.mode = parse_mode(j.at("mode").get<std::string>());
        if (j.contains("prefilter")) cfg.prefilter = j.at("prefilter").get<bool>();
        if (j.contains("candidate_budget"))
            cfg.candidate_budget = j.at("candidate_budget").get<std::uint64_t>();
        if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
        if (j.contains("out")) cfg.out_path = j.at("out").get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }

    validate_experiment_config(cfg);
    return cfg;
}

} // namespace ramac

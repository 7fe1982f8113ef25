#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ramac/channel.hpp"
#include "ramac/profile.hpp"

namespace ramac {

// Channel and profile specs accepted on the command line and inside config
// files. A spec is either a preset string or a path to a JSON file.
//
// Presets:
//   collision:n=<order>,K=<users>
//   noiseless:q=<alphabet size>          (single user)
//   prop1:n=<order>[,segments=<count>]   (profile; default 64 segments)
//
// Channel file schema:
//   { "input_sizes": [..], "output_size": int, "transition": [[..], ..] }
// with one transition row per joint input, sender 1 most significant.
//
// Profile file schema:
//   { "r_max": num, "breakpoints": [..], "segment_pmfs": [[..], ..],
//     "zero_rate_pmf": [..] }   (zero_rate_pmf optional: point mass on 0)

bool is_channel_preset(const std::string& spec);
bool is_profile_preset(const std::string& spec);

ChannelModel load_channel(const std::string& spec);
InputProfile load_profile(const std::string& spec);

// Render a user mask like 0b101 as "1+3" (1-based user labels).
std::string mask_to_string(std::uint32_t mask);

// Read a whole file; ConfigError on failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace ramac

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "ramac/codebook.hpp"
#include "ramac/errors.hpp"
#include "ramac/profile.hpp"

using namespace ramac;

namespace {

InputProfile two_segment_profile() {
    InputProfile pr;
    pr.r_max = 0.75;
    pr.breakpoints = {0.5, 0.75};
    pr.segment_pmfs = {{0.0, 0.5, 0.5, 0.0, 0.0}, {0.0, 0.99, 0.01, 0.0, 0.0}};
    pr.zero_rate_pmf = {1.0, 0.0, 0.0, 0.0, 0.0};
    validate_profile(pr);
    return pr;
}

} // namespace

TEST_CASE("standard rate") {
    CHECK(standard_rate(1, 8) == 0.0);
    CHECK(standard_rate(16, 8) == 0.5);
    CHECK(standard_rate(256, 8) == 1.0);
    CHECK(standard_rate(3, 4) == doctest::Approx(0.39624062518).epsilon(1e-10));
    CHECK_THROWS_AS(standard_rate(0, 8), ConfigError);
    CHECK_THROWS_AS(standard_rate(2, 0), ConfigError);
}

TEST_CASE("message capacity") {
    CHECK(message_capacity(8, 0.75) == 64);
    CHECK(message_capacity(5, 0.35) == 4);     // ceil(1.75) = 2 bits
    CHECK(message_capacity(4, 1.0) == 16);
    CHECK(message_capacity(1, 0.001) == 2);    // ceil rounds tiny rates up to 1 bit
    CHECK_THROWS_AS(message_capacity(0, 0.5), ConfigError);
    CHECK_THROWS_AS(message_capacity(8, 0.0), ConfigError);
    CHECK_THROWS_AS(message_capacity(100, 0.9), ConfigError);  // 2^90 unrepresentable
}

TEST_CASE("capacity overshoot is clamped by message_rate") {
    const CodebookLibrary lib =
        make_codebook_library(single_segment_profile(0.35, {0.5, 0.5}), 7, 0, 5);
    CHECK(lib.capacity() == 4);
    CHECK(standard_rate(4, 5) == doctest::Approx(0.4));
    CHECK(lib.message_rate(4) == 0.35);        // clamped into the profile domain
    CHECK(lib.message_rate(2) == doctest::Approx(0.2));
    CHECK(lib.message_rate(1) == 0.0);
}

TEST_CASE("profile validation") {
    InputProfile pr = two_segment_profile();
    CHECK_NOTHROW(validate_profile(pr));

    InputProfile bad = pr;
    bad.breakpoints = {0.5, 0.5};
    CHECK_THROWS_AS(validate_profile(bad), ConfigError);

    bad = pr;
    bad.breakpoints = {0.5, 0.7};              // last breakpoint below r_max
    CHECK_THROWS_AS(validate_profile(bad), ConfigError);

    bad = pr;
    bad.segment_pmfs[1] = {0.5, 0.5};          // alphabet mismatch
    CHECK_THROWS_AS(validate_profile(bad), ConfigError);

    bad = pr;
    bad.segment_pmfs[0] = {0.0, 0.6, 0.5, 0.0, 0.0};
    CHECK_THROWS_AS(validate_profile(bad), ConfigError);

    bad = pr;
    bad.breakpoints.clear();
    bad.segment_pmfs.clear();
    CHECK_THROWS_AS(validate_profile(bad), ConfigError);
}

TEST_CASE("segment lookup is right-closed") {
    const InputProfile pr = two_segment_profile();
    CHECK(segment_index(pr, 0.0) == -1);
    CHECK(segment_index(pr, 0.2) == 0);
    CHECK(segment_index(pr, 0.5) == 0);        // breakpoint closes its segment
    CHECK(segment_index(pr, 0.500001) == 1);
    CHECK(segment_index(pr, 0.75) == 1);
    CHECK_THROWS_AS(segment_index(pr, -0.1), ConfigError);
    CHECK_THROWS_AS(segment_index(pr, 0.76), ConfigError);

    CHECK(profile_at(pr, 0.0) == pr.zero_rate_pmf);
    CHECK(profile_at(pr, 0.3) == pr.segment_pmfs[0]);
    CHECK(profile_at(pr, 0.6) == pr.segment_pmfs[1]);
}

TEST_CASE("square-root activity profile hits exact laws at breakpoints") {
    const InputProfile pr = prop1_profile(1, 64);
    CHECK(pr.r_max == 1.0);
    CHECK(pr.segments() == 64);
    CHECK(pr.alphabet() == 3);
    const Pmf& law = profile_at(pr, 0.25);
    REQUIRE(law.size() == 3);
    CHECK(law[0] == 0.5);                      // idle with probability 1 - sqrt(1/4)
    CHECK(law[1] == 0.25);
    CHECK(law[2] == 0.25);
    CHECK(profile_at(pr, 0.0)[0] == 1.0);

    CHECK_THROWS_AS(prop1_profile(0), ConfigError);
    CHECK_THROWS_AS(prop1_profile(17), ConfigError);
    CHECK_THROWS_AS(prop1_profile(2, 0), ConfigError);
}

TEST_CASE("single segment helper fills in an idle zero-rate law") {
    const InputProfile pr = single_segment_profile(0.5, {0.25, 0.5, 0.25});
    CHECK(pr.segments() == 1);
    CHECK(pr.breakpoints == std::vector<double>{0.5});
    CHECK(pr.zero_rate_pmf == Pmf{1.0, 0.0, 0.0});

    const InputProfile pr2 =
        single_segment_profile(0.5, {0.25, 0.5, 0.25}, {0.0, 1.0, 0.0});
    CHECK(pr2.zero_rate_pmf == Pmf{0.0, 1.0, 0.0});

    CHECK_THROWS_AS(single_segment_profile(0.0, {0.5, 0.5}), ConfigError);
}

TEST_CASE("idle message transmits nothing in every codebook") {
    const CodebookLibrary lib =
        make_codebook_library(two_segment_profile(), 12345, 1, 16);
    for (std::uint64_t theta : {0ULL, 1ULL, 17ULL, 999999ULL}) {
        const std::vector<int> x = generate_codeword(lib, theta, 1);
        REQUIRE(x.size() == 16);
        for (int s : x) CHECK(s == 0);
    }
}

TEST_CASE("codewords are a pure function of their coordinates") {
    const CodebookLibrary lib =
        make_codebook_library(single_segment_profile(1.0, {0.5, 0.5}), 42, 0, 32);
    const std::vector<int> a = generate_codeword(lib, 7, 100);
    const std::vector<int> b = generate_codeword(lib, 7, 100);
    CHECK(a == b);
    CHECK(a != generate_codeword(lib, 8, 100));
    CHECK(a != generate_codeword(lib, 7, 101));

    const CodebookLibrary other =
        make_codebook_library(single_segment_profile(1.0, {0.5, 0.5}), 42, 1, 32);
    CHECK(a != generate_codeword(other, 7, 100));

    for (int j = 0; j < 32; ++j)
        CHECK(codeword_symbol(lib, 7, 100, j) == a[static_cast<std::size_t>(j)]);

    CHECK_THROWS_AS(codeword_symbol(lib, 0, 0, 0), ConfigError);
    CHECK_THROWS_AS(codeword_symbol(lib, 0, lib.capacity() + 1, 0), ConfigError);
    CHECK_THROWS_AS(codeword_symbol(lib, 0, 1, 32), ConfigError);
}

TEST_CASE("codeword symbols follow the profile law") {
    const CodebookLibrary lib =
        make_codebook_library(single_segment_profile(0.5, {0.2, 0.3, 0.5}), 99, 0, 20);
    const std::uint64_t W = lib.capacity();    // rate 0.5, inside the one segment
    std::vector<int> counts(3, 0);
    const int thetas = 5000;
    for (int t = 0; t < thetas; ++t) {
        const std::vector<int> x = generate_codeword(lib, static_cast<std::uint64_t>(t), W);
        for (int s : x) ++counts[static_cast<std::size_t>(s)];
    }
    const double total = 20.0 * thetas;
    CHECK(std::abs(counts[0] / total - 0.2) < 0.01);
    CHECK(std::abs(counts[1] / total - 0.3) < 0.01);
    CHECK(std::abs(counts[2] / total - 0.5) < 0.01);
}

TEST_CASE("library construction validates its pieces") {
    CHECK_THROWS_AS(make_codebook_library(two_segment_profile(), 1, -1, 8), ConfigError);
    CHECK_THROWS_AS(make_codebook_library(two_segment_profile(), 1, 0, 0), ConfigError);
    InputProfile broken = two_segment_profile();
    broken.segment_pmfs[0][1] = 0.9;
    CHECK_THROWS_AS(make_codebook_library(broken, 1, 0, 8), ConfigError);
    // 2^ceil(100 * 0.75) messages cannot be represented
    CHECK_THROWS_AS(make_codebook_library(two_segment_profile(), 1, 0, 100), ConfigError);
}

#include "catch_amalgamated.hpp"

#include "tpc/errors.hpp"
#include "tpc/modulation.hpp"

#include <numeric>
#include <random>

using namespace tpc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("VPWM duty mapping") {
    const ModulationConfig cfg{Scheme::VPWM, 1e-6, 0.75, 0.2};
    const Bits bits{0, 1};
    const SwitchingPattern pat = encode_vpwm(bits, cfg);
    REQUIRE(pat.size() == 2);
    CHECK_THAT(pat.width(0) / cfg.T, WithinRel(0.55, 1e-12));
    CHECK_THAT(pat.width(1) / cfg.T, WithinRel(0.95, 1e-12));
    CHECK_THAT(pat.center(0), WithinRel(0.5e-6, 1e-12));
}

TEST_CASE("VPWM edges for the small-depth setting") {
    const ModulationConfig cfg{Scheme::VPWM, 1e-6, 0.75, 0.025};
    const Bits bits{1};
    const SwitchingPattern pat = encode_vpwm(bits, cfg);
    CHECK_THAT(pat.start(0), WithinRel(0.1125e-6, 1e-12));
    CHECK_THAT(pat.end(0), WithinRel(0.8875e-6, 1e-12));
}

TEST_CASE("depth zero gives the unmodulated pattern") {
    const Bits bits{1, 0, 0, 1, 1};
    ModulationConfig vpwm{Scheme::VPWM, 1e-6, 0.6, 0.0};
    ModulationConfig vppm{Scheme::VPPM, 1e-6, 0.6, 0.0};
    const SwitchingPattern ref = unmodulated_pattern(vpwm, bits.size());
    CHECK(encode_vpwm(bits, vpwm) == ref);
    CHECK(encode_vppm(bits, vppm) == ref);
    for (std::size_t k = 0; k < ref.size(); ++k) {
        CHECK_THAT(ref.center(k), WithinRel(0.5e-6, 1e-12));
        CHECK_THAT(ref.width(k), WithinRel(0.6e-6, 1e-12));
    }
}

TEST_CASE("VPPM mapping") {
    const ModulationConfig cfg{Scheme::VPPM, 1e-6, 0.5, 0.1e-6};
    const Bits bits{1, 0};
    const SwitchingPattern pat = encode_vppm(bits, cfg);
    CHECK_THAT(pat.start(0), WithinRel(0.35e-6, 1e-12));
    CHECK_THAT(pat.end(0), WithinRel(0.85e-6, 1e-12));
    CHECK_THAT(pat.start(1), WithinRel(0.15e-6, 1e-12));
    CHECK_THAT(pat.width(1), WithinRel(0.5e-6, 1e-12));
}

TEST_CASE("depth violations") {
    const Bits bits{1};
    try {
        (void)encode_vppm(bits, {Scheme::VPPM, 1e-6, 0.75, 0.2e-6});
        FAIL("expected DepthOutOfRange");
    } catch (const ModelError& e) {
        CHECK(e.kind() == ErrorKind::DepthOutOfRange);
    }
    CHECK_THROWS_AS(encode_vpwm(bits, {Scheme::VPWM, 1e-6, 0.75, 0.25}), ModelError);
    CHECK_THROWS_AS(encode_vpwm(bits, {Scheme::VPWM, 1e-6, 0.2, 0.2}), ModelError);
}

TEST_CASE("unmodulated patterns") {
    const ModulationConfig half{Scheme::Unmodulated, 1e-6, 0.5, 0.0};
    const SwitchingPattern one = unmodulated_pattern(half, 1);
    CHECK_THAT(one.start(0), WithinRel(0.25e-6, 1e-12));
    CHECK_THAT(one.end(0), WithinRel(0.75e-6, 1e-12));
    const SwitchingPattern q = unmodulated_pattern({Scheme::Unmodulated, 1e-6, 0.75, 0.0}, 3);
    CHECK_THAT(q.start(2), WithinRel(0.125e-6, 1e-12));
    CHECK_THAT(q.end(2), WithinRel(0.875e-6, 1e-12));
    CHECK(unmodulated_pattern(half, 0).empty());
}

TEST_CASE("pattern invariants hold for random inputs") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double delta = 0.05 + 0.9 * u(rng);
        const double room = std::min(delta, 1.0 - delta);
        Bits bits(1 + trial % 17);
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1U);
        const ModulationConfig pwm{Scheme::VPWM, 1e-6, delta, 0.99 * room * u(rng)};
        const ModulationConfig ppm{Scheme::VPPM, 1e-6, delta, 0.99 * 0.5 * (1.0 - delta) * 1e-6 * u(rng)};
        for (const SwitchingPattern& pat : {encode(bits, pwm), encode(bits, ppm)}) {
            for (std::size_t k = 0; k < pat.size(); ++k) {
                CHECK(pat.start(k) >= 0.0);
                CHECK(pat.start(k) < pat.end(k));
                CHECK(pat.end(k) <= pat.period());
            }
        }
    }
}

TEST_CASE("balanced VPWM keeps the average duty") {
    const Bits bits = alternating_bits(64);
    const SwitchingPattern pat = encode_vpwm(bits, {Scheme::VPWM, 1e-6, 0.75, 0.2});
    CHECK_THAT(pat.mean_duty(), WithinAbs(0.75, 1e-14));
}

TEST_CASE("alternating bits start with one") {
    const Bits b = alternating_bits(5);
    CHECK(b == Bits{1, 0, 1, 0, 1});
}

TEST_CASE("switching samples") {
    const ModulationConfig cfg{Scheme::Unmodulated, 1e-6, 0.5, 0.0};
    const SwitchingPattern pat = unmodulated_pattern(cfg, 3);
    const auto s = sample_switching(pat, 0.25e-6, 14);
    const std::vector<std::uint8_t> expected{0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0};
    CHECK(s == expected);
}

TEST_CASE("sample on the falling edge is low") {
    // t_e = 0.75 us falls on the grid of dt = 0.25 us (index 3); the grid of
    // dt = T/8 hits t_s = 0.25 us at index 2 (high) and t_e at index 6 (low).
    const SwitchingPattern pat = unmodulated_pattern({Scheme::Unmodulated, 1e-6, 0.5, 0.0}, 1);
    const auto s = sample_switching(pat, 1e-6 / 8.0, 8);
    CHECK(s[2] == 1);
    CHECK(s[5] == 1);
    CHECK(s[6] == 0);
}

TEST_CASE("sampled duty converges to delta") {
    const ModulationConfig cfg{Scheme::Unmodulated, 1e-6, 0.37, 0.0};
    const SwitchingPattern pat = unmodulated_pattern(cfg, 20);
    double prev_err = 1.0;
    for (std::size_t J : {10u, 100u, 1000u}) {
        const auto s = sample_switching(pat, cfg.T / static_cast<double>(J), 20 * J);
        const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
        const double err = std::abs(mean - 0.37);
        CHECK(err <= 1.0 / static_cast<double>(J));
        CHECK(err <= prev_err);
        prev_err = err;
    }
}

TEST_CASE("sloped switching reduces to ideal sampling") {
    const SwitchingPattern pat = encode_vpwm(alternating_bits(4), {Scheme::VPWM, 1e-6, 0.75, 0.2});
    const auto ideal = sample_switching(pat, 1e-8, 400);
    const auto sloped = sample_switching_sloped(pat, 1e-8, 400, 0.0);
    REQUIRE(sloped.size() == ideal.size());
    for (std::size_t i = 0; i < ideal.size(); ++i) CHECK(sloped[i] == static_cast<double>(ideal[i]));
    const auto ramp = sample_switching_sloped(pat, 1e-9, 4000, 50e-9);
    const double area = std::accumulate(ramp.begin(), ramp.end(), 0.0) * 1e-9;
    CHECK_THAT(area, WithinRel(4 * 0.75e-6, 1e-3));
}

#include "catch_amalgamated.hpp"

#include "tpc/analytic.hpp"
#include "tpc/discrete.hpp"
#include "tpc/equalization.hpp"
#include "tpc/errors.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

using namespace tpc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const CircuitParams kFig3{10e-6, 1e-6, 10.0, 1.0};
const ModulationConfig kCfg{Scheme::VPWM, 1e-6, 0.75, 0.2};
constexpr double kPi = std::numbers::pi;
}  // namespace

TEST_CASE("noiseless observation") {
    Waveform w{1e-8, 0.0, {0.1, -0.2, 0.3}};
    CHECK(observe(w, {1.0, 0.0, 1}).samples == w.samples);
    const Waveform twice = observe(w, {2.0, 0.0, 1});
    for (std::size_t n = 0; n < w.size(); ++n) CHECK(twice.samples[n] == 2.0 * w.samples[n]);
    CHECK_THROWS_AS(observe(w, {1.0, -1.0, 1}), ModelError);
}

TEST_CASE("noise statistics and determinism") {
    Waveform w{1e-8, 0.0, std::vector<double>(100000)};
    for (std::size_t n = 0; n < w.size(); ++n) w.samples[n] = std::sin(1e-3 * n);
    const ObservationModel om{1.5, 0.02, 42};
    const Waveform r = observe(w, om);
    double acc = 0.0;
    for (std::size_t n = 0; n < w.size(); ++n) {
        const double e = r.samples[n] - 1.5 * w.samples[n];
        acc += e * e;
    }
    CHECK_THAT(acc / w.size(), WithinRel(0.02 * 0.02, 0.05));
    CHECK(observe(w, om).samples == r.samples);
    CHECK(observe(w, {1.5, 0.02, 43}).samples != r.samples);
}

TEST_CASE("transient reconstruction and its residual") {
    const Dynamics d = derive_dynamics(kFig3);
    const InitialConditions truth{0.6, -4e4};
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double t = 1e-4 * (u(rng) + 1.0);
        CHECK(reconstruct_transient(d, {truth.v2_0, truth.dv2_0}, t) == transient_component(d, truth, t));
        const double ev = 0.05 * u(rng), edv = 1e4 * u(rng);
        const double resid = transient_component(d, truth, t) -
                             reconstruct_transient(d, {truth.v2_0 + ev, truth.dv2_0 + edv}, t);
        const double direct = transient_component(d, {-ev, -edv}, t);
        CHECK_THAT(resid, WithinAbs(direct, 1e-12));
        const double doubled = transient_component(d, truth, t) -
                               reconstruct_transient(d, {truth.v2_0 + 2 * ev, truth.dv2_0 + 2 * edv}, t);
        CHECK_THAT(doubled, WithinAbs(2 * resid, 1e-12));
    }
}

TEST_CASE("exact transient removal leaves the data component") {
    const Dynamics d = derive_dynamics(kFig3);
    const SwitchingPattern pat = encode(alternating_bits(8), kCfg);
    const InitialConditions ic{0.4, 2e4};
    const std::size_t J = 50;
    const Waveform v2 = sample_output(d, ic, pat, 1.0, 1e-6 / J, 8 * J);
    const Waveform clean = subtract_transient(observe(v2, {1.0, 0.0, 0}), d, {ic.v2_0, ic.dv2_0}, 1.0);
    for (std::size_t n = 0; n < clean.size(); ++n) {
        CHECK_THAT(clean.samples[n], WithinAbs(data_component(d, pat, 1.0, v2.time(n)), 1e-14));
    }
    Waveform late = v2;
    late.t0 = 1e-6;
    CHECK_THROWS_AS(subtract_transient(late, d, {}, 1.0), ModelError);
}

TEST_CASE("initial-value error propagation bound") {
    const Dynamics d = derive_dynamics(kFig3);
    const SwitchingPattern pat = encode(alternating_bits(8), kCfg);
    const InitialConditions ic{0.75, 0.0};
    const std::size_t J = 100;
    const Waveform v2 = sample_output(d, ic, pat, 1.0, 1e-6 / J, 8 * J);
    const Waveform out = subtract_transient(v2, d, {0.75 + 0.01, 0.0}, 1.0);
    const double bound = 0.01 * (1.0 + d.a / d.b);
    for (std::size_t n = 0; n < out.size(); ++n) {
        const double err = std::abs(out.samples[n] - data_component(d, pat, 1.0, v2.time(n)));
        CHECK(err <= bound * std::exp(-d.a * v2.time(n)) + 1e-15);
    }
}

TEST_CASE("zero-forcing response") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double f = std::pow(10.0, 1.0 + 7.0 * u(rng));
        CHECK(std::abs(zf_response(kFig3, f) * frequency_response(kFig3, f) - 1.0) < 1e-12);
    }
    CHECK(zf_response(kFig3, 0.0) == Complex{1.0, 0.0});
    const double f = 2.3e5;
    const double h2 = std::norm(frequency_response(kFig3, f));
    CHECK_THAT(std::abs(zf_response(kFig3, f, h2)), WithinRel(0.5 * std::abs(zf_response(kFig3, f)), 1e-12));
    CHECK_THROWS_AS(zf_response(kFig3, f, -1.0), ModelError);
}

TEST_CASE("frequency-domain equalizer keeps constants") {
    Waveform c{1e-8, 0.0, std::vector<double>(300, 0.42)};
    const Waveform y = equalize_frequency_domain(c, kFig3);
    REQUIRE(y.size() == 300);
    for (double v : y.samples) CHECK_THAT(v, WithinAbs(0.42, 1e-13));
}

TEST_CASE("equalizer recovers a band-limited input") {
    const std::size_t N = 4096;
    const double dt = 1e-7;
    const double df = 1.0 / (N * dt);
    Waveform v1{dt, 0.0, std::vector<double>(N, 0.75)};
    Waveform r = v1;
    for (auto [m, amp] : {std::pair{3, 0.2}, std::pair{20, 0.1}, std::pair{51, 0.05}}) {
        const Complex h = frequency_response(kFig3, m * df);
        for (std::size_t n = 0; n < N; ++n) {
            const double ph = 2 * kPi * m * df * n * dt;
            v1.samples[n] += amp * std::cos(ph);
            r.samples[n] += amp * std::abs(h) * std::cos(ph + std::arg(h));
        }
    }
    const Waveform y = equalize_frequency_domain(r, kFig3);
    double err = 0.0, scale = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
        err = std::max(err, std::abs(y.samples[n] - v1.samples[n]));
        scale = std::max(scale, std::abs(v1.samples[n]));
    }
    CHECK(err / scale < 0.02);
}

TEST_CASE("zero forcing amplifies wideband input") {
    const SwitchingPattern pat = encode(alternating_bits(16), kCfg);
    const std::size_t J = 64;
    const auto s1 = sample_switching(pat, 1e-6 / J, 16 * J);
    Waveform x{1e-6 / J, 0.0, std::vector<double>(s1.begin(), s1.end())};
    const Waveform y = equalize_frequency_domain(x, kFig3);
    double mx = 0.0, my = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        mx = std::max(mx, std::abs(x.samples[n]));
        my = std::max(my, std::abs(y.samples[n]));
    }
    CHECK(my > mx);
}

TEST_CASE("joint state sequence") {
    const SwitchingPattern pat = encode(alternating_bits(6), kCfg);
    const auto tr = simulate(kFig3, pat, {0.75, 0.0}, 8, Variant::Exact, ConductionMode::CCM);

    const auto single = build_state_sequence(tr.iL, tr.v2, 8, 1, 1);
    REQUIRE(single.size() == tr.v2.size());
    for (std::size_t n = 0; n < single.size(); ++n) {
        CHECK(single[n].iL_window == std::vector<double>{tr.iL.samples[n]});
        CHECK(single[n].v2_window == std::vector<double>{tr.v2.samples[n]});
    }
    try {
        (void)build_state_sequence(tr.iL, tr.v2, 8, 3, 2);
        FAIL("expected IndivisibleDecimation");
    } catch (const ModelError& e) {
        CHECK(e.kind() == ErrorKind::IndivisibleDecimation);
    }

    // Decimating by 2 equals windowing the already decimated signals.
    const auto dec = build_state_sequence(tr.iL, tr.v2, 8, 2, 3);
    Waveform iL4{tr.iL.dt * 2, 0.0, {}}, v24{tr.v2.dt * 2, 0.0, {}};
    for (std::size_t n = 0; n < tr.iL.size(); n += 2) {
        iL4.samples.push_back(tr.iL.samples[n]);
        v24.samples.push_back(tr.v2.samples[n]);
    }
    const auto direct = build_state_sequence(iL4, v24, 4, 1, 3);
    REQUIRE(dec.size() == direct.size());
    for (std::size_t m = 0; m < dec.size(); ++m) {
        CHECK(dec[m].iL_window == direct[m].iL_window);
        CHECK(dec[m].v2_window == direct[m].v2_window);
        CHECK(dec[m].m == m);
    }
    CHECK(dec[0].v2_window == std::vector<double>(3, tr.v2.samples[0]));

    const auto again = simulate(kFig3, pat, {0.75, 0.0}, 8, Variant::Exact, ConductionMode::CCM);
    const auto same = build_state_sequence(again.iL, again.v2, 8, 2, 3);
    for (std::size_t m = 0; m < dec.size(); ++m) CHECK(same[m].v2_window == dec[m].v2_window);
}

TEST_CASE("exhaustive detection recovers every 6-bit word") {
    const std::size_t K = 6, J = 16;
    const InitialConditions ic{0.75, 0.0};
    for (unsigned code = 0; code < 64; ++code) {
        Bits bits(K);
        for (std::size_t k = 0; k < K; ++k) bits[k] = (code >> (K - 1 - k)) & 1U;
        const auto tr = simulate(kFig3, encode(bits, kCfg), ic, J, Variant::Exact, ConductionMode::CCM);
        CHECK(brute_force_detect(observe(tr.v2, {1.0, 0.0, 0}), kFig3, kCfg, ic, J, K) == bits);
    }
}

TEST_CASE("detection tie rule and limits") {
    ModulationConfig flat = kCfg;
    flat.depth = 0.0;
    const std::size_t K = 4, J = 8;
    const InitialConditions ic{0.75, 0.0};
    const auto tr = simulate(kFig3, encode(Bits{1, 0, 1, 1}, flat), ic, J, Variant::Exact, ConductionMode::CCM);
    CHECK(brute_force_detect(tr.v2, kFig3, flat, ic, J, K) == Bits(K, 0));
    try {
        (void)brute_force_detect(tr.v2, kFig3, kCfg, ic, J, 13);
        FAIL("expected TooManyBits");
    } catch (const ModelError& e) {
        CHECK(e.kind() == ErrorKind::TooManyBits);
    }
}

TEST_CASE("detection after exact transient removal matches detection on the data part") {
    const Dynamics d = derive_dynamics(kFig3);
    const std::size_t K = 5, J = 20;
    const Bits bits{1, 1, 0, 1, 0};
    const SwitchingPattern pat = encode(bits, kCfg);
    const InitialConditions ic{0.3, 1e4};
    const Waveform v2 = sample_output(d, ic, pat, 1.0, 1e-6 / J, K * J);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Waveform r = observe(v2, {1.0, 0.01, seed});
        const Waveform cleaned = subtract_transient(r, d, {ic.v2_0, ic.dv2_0}, 1.0);
        Waveform data_only = observe(sample_output(d, {0.0, 0.0}, pat, 1.0, 1e-6 / J, K * J), {1.0, 0.01, seed});
        const InitialConditions zero{};
        CHECK(brute_force_detect(cleaned, kFig3, kCfg, zero, J, K) ==
              brute_force_detect(data_only, kFig3, kCfg, zero, J, K));
    }
}

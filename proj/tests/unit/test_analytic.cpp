#include "catch_amalgamated.hpp"

#include "ode_oracle.hpp"
#include "tpc/analytic.hpp"
#include "tpc/errors.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace tpc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const CircuitParams kFig3{10e-6, 1e-6, 10.0, 1.0};
const CircuitParams kFig4{100e-6, 0.1e-6, 20.0, 1.0};
}  // namespace

TEST_CASE("transient component") {
    const Dynamics d = derive_dynamics(kFig3);
    for (double t : {0.0, 1e-6, 3e-5}) CHECK(transient_component(d, {0.0, 0.0}, t) == 0.0);
    CHECK(transient_component(d, {0.3, 1e4}, 0.0) == 0.3);
    CHECK(transient_component(d, {0.3, 1e4}, -1e-6) == 0.0);
    const InitialConditions ic{0.8, -2e5};
    const double bound = std::exp(-5.0) * (std::abs(ic.v2_0) + std::abs((d.a * ic.v2_0 + ic.dv2_0) / d.b));
    CHECK(std::abs(transient_component(d, ic, 5.0 / d.a)) <= bound);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const double t = 40.0 / d.a * u(rng);
        const double env = std::exp(-d.a * t) * (std::abs(ic.v2_0) + std::abs((d.a * ic.v2_0 + ic.dv2_0) / d.b));
        CHECK(std::abs(transient_component(d, ic, t)) <= env * (1 + 1e-12));
    }
}

TEST_CASE("unit step component") {
    const Dynamics d = derive_dynamics(kFig3);
    CHECK(unit_step_component(d, 0.0) == 0.0);
    CHECK(unit_step_component(d, -1.0) == 0.0);
    CHECK_THAT(unit_step_component(d, 20.0 / d.a), WithinAbs(1.0, 1e-6));
    for (double t : {1e-7, 2e-6, 1.3e-5, 4e-5}) {
        const double h = 1e-11;
        const double fd = (unit_step_component(d, t + h) - unit_step_component(d, t - h)) / (2 * h);
        CHECK_THAT(fd, WithinRel(impulse_response(d, kFig3, t), 1e-5));
    }
}

TEST_CASE("pulse shape") {
    const Dynamics d = derive_dynamics(kFig3);
    const double Tp = 0.75e-6;
    CHECK(pulse_shape_gtx(d, Tp, -Tp / 2 - 1e-9) == 0.0);
    CHECK_THAT(pulse_shape_gtx(d, Tp, 40.0 / d.a), WithinAbs(0.0, 1e-15));
    CHECK_THROWS_AS(pulse_shape_gtx(d, 0.0, 0.0), ModelError);
    const double e = 1e-18;
    CHECK(std::abs(pulse_shape_gtx(d, Tp, -Tp / 2 + e) - pulse_shape_gtx(d, Tp, -Tp / 2 - e)) < 1e-10);
    CHECK(std::abs(pulse_shape_gtx(d, Tp, Tp / 2 + e) - pulse_shape_gtx(d, Tp, Tp / 2 - e)) < 1e-10);
}

TEST_CASE("pulse shape rings at the pole frequency") {
    // Successive zero crossings of the tail, half a ringing period apart. The
    // search stops before the envelope sinks into round-off.
    for (const CircuitParams& p : {kFig3, kFig4}) {
        const Dynamics d = derive_dynamics(p);
        const double Tp = 0.75e-6;
        std::vector<double> zeros;
        const double dt = (2 * M_PI / d.b) / 2000.0;
        const double stop = Tp + std::min(6 * 2 * M_PI / d.b, 20.0 / d.a);
        double prev = pulse_shape_gtx(d, Tp, Tp);
        for (double t = Tp + dt; t < stop; t += dt) {
            const double cur = pulse_shape_gtx(d, Tp, t);
            if ((prev < 0) != (cur < 0)) zeros.push_back(t - dt * cur / (cur - prev));
            prev = cur;
        }
        REQUIRE(zeros.size() >= 4);
        const double period = 2.0 * (zeros.back() - zeros.front()) / static_cast<double>(zeros.size() - 1);
        CHECK_THAT(period, WithinRel(2 * M_PI / d.b, 1e-2));
    }
}

TEST_CASE("data component") {
    const Dynamics d = derive_dynamics(kFig3);
    const ModulationConfig cfg{Scheme::VPWM, 1e-6, 0.75, 0.2};
    const SwitchingPattern pat = encode(alternating_bits(8), cfg);
    CHECK(data_component(d, pat, 1.0, 0.5 * pat.start(0)) == 0.0);
    const SwitchingPattern single = encode(Bits{1}, cfg);
    CHECK(std::abs(data_component(d, single, 1.0, 40.0 / d.a)) < 1e-12);

    // Long unmodulated drive averages to delta V1 over a period.
    const SwitchingPattern flat = unmodulated_pattern({Scheme::Unmodulated, 1e-6, 0.75, 0.0}, 400);
    double acc = 0.0;
    const std::size_t J = 1000;
    for (std::size_t n = 0; n < J; ++n) acc += data_component(d, flat, 2.0, 399e-6 + n * 1e-9);
    CHECK_THAT(acc / J, WithinRel(1.5, 1e-4));
}

TEST_CASE("steady initial condition starts at the operating point") {
    const Dynamics d = derive_dynamics(kFig3);
    const SwitchingPattern pat = encode(alternating_bits(4), {Scheme::VPWM, 1e-6, 0.75, 0.2});
    CHECK(output_voltage(d, {0.75, 0.0}, pat, 1.0, 0.0) == 0.75);
    const Waveform w = sample_output(d, {0.75, 0.0}, pat, 1.0, 1e-8, 10);
    CHECK(w.samples[0] == 0.75);
    CHECK(sample_output(d, {0.75, 0.0}, pat, 1.0, 1e-8, 0).empty());
}

TEST_CASE("sampling is point evaluation") {
    const Dynamics d = derive_dynamics(kFig3);
    const SwitchingPattern pat = encode(alternating_bits(6), {Scheme::VPWM, 1e-6, 0.75, 0.2});
    const Waveform coarse = sample_output(d, {0.1, 0.0}, pat, 1.0, 1e-8, 600);
    const Waveform fine = sample_output(d, {0.1, 0.0}, pat, 1.0, 0.5e-8, 1200);
    for (std::size_t n = 0; n < coarse.size(); ++n) CHECK(fine.samples[2 * n] == coarse.samples[n]);
}

TEST_CASE("superposition of bit blocks") {
    const Dynamics d = derive_dynamics(kFig3);
    const ModulationConfig cfg{Scheme::VPWM, 1e-6, 0.6, 0.3};
    const Bits b1{1, 0, 0, 1}, b2{0, 1, 1};
    Bits joined = b1;
    joined.insert(joined.end(), b2.begin(), b2.end());
    const SwitchingPattern p1 = encode(b1, cfg), p2 = encode(b2, cfg), pj = encode(joined, cfg);
    const double shift = b1.size() * cfg.T;
    double scale = 0.0, err = 0.0;
    for (int n = 0; n < 3000; ++n) {
        const double t = n * 5e-9;
        const double lhs = data_component(d, pj, 1.0, t);
        const double rhs = data_component(d, p1, 1.0, t) + data_component(d, p2, 1.0, t - shift);
        scale = std::max(scale, std::abs(lhs));
        err = std::max(err, std::abs(lhs - rhs));
    }
    CHECK(err <= 1e-12 * scale);
}

TEST_CASE("closed form matches RK4 on a short run") {
    const Dynamics d = derive_dynamics(kFig3);
    const SwitchingPattern pat = encode(alternating_bits(8), {Scheme::VPWM, 1e-6, 0.75, 0.2});
    const InitialConditions ic{0.2, 3e4};
    const Waveform ref = oracle::rk4_buck(kFig3, pat, initial_inductor_current(kFig3, ic), ic.v2_0, 50);
    const Waveform w = sample_output(d, ic, pat, 1.0, 1e-6 / 50, 400);
    CHECK(oracle::max_relative_error(w, ref) < 1e-6);
}

TEST_CASE("convolution path") {
    const Dynamics d = derive_dynamics(kFig3);
    const SwitchingPattern pat = encode(alternating_bits(16), {Scheme::VPWM, 1e-6, 0.75, 0.2});
    const double dt = 1e-6 / 400;
    const std::size_t N = 16 * 400;
    const auto s1 = sample_switching(pat, dt, N);
    Waveform v1{dt, 0.0, std::vector<double>(s1.begin(), s1.end())};
    const Waveform y = convolve_end_to_end(v1, d, kFig3);
    double err = 0.0, scale = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
        const double ref = data_component(d, pat, 1.0, n * dt);
        err = std::max(err, std::abs(y.samples[n] - ref));
        scale = std::max(scale, std::abs(ref));
    }
    CHECK(err / scale < 1e-3);

    Waveform zero{dt, 0.0, std::vector<double>(100, 0.0)};
    for (double v : convolve_end_to_end(zero, d, kFig3).samples) CHECK(v == 0.0);

    Waveform coarse{2 * M_PI / (20 * d.b) * 1.5, 0.0, std::vector<double>(10, 1.0)};
    try {
        (void)convolve_end_to_end(coarse, d, kFig3);
        FAIL("expected ResolutionTooCoarse");
    } catch (const ModelError& e) {
        CHECK(e.kind() == ErrorKind::ResolutionTooCoarse);
    }
}

TEST_CASE("finite edges converge to the rectangular response") {
    const Dynamics d = derive_dynamics(kFig3);
    const SwitchingPattern pat = encode(alternating_bits(8), {Scheme::VPWM, 1e-6, 0.75, 0.2});
    const double dt = 1e-6 / 1000;
    const std::size_t N = 8 * 1000;
    const auto ideal = sample_switching(pat, dt, N);
    const Waveform rect = convolve_end_to_end({dt, 0.0, std::vector<double>(ideal.begin(), ideal.end())}, d, kFig3);
    double prev = std::numeric_limits<double>::infinity();
    for (double rise : {1e-6 / 20, 1e-6 / 80, 1e-6 / 320}) {
        const auto sl = sample_switching_sloped(pat, dt, N, rise);
        const Waveform y = convolve_end_to_end({dt, 0.0, sl}, d, kFig3);
        double diff = 0.0;
        for (std::size_t n = 0; n < N; ++n) diff = std::max(diff, std::abs(y.samples[n] - rect.samples[n]));
        CHECK(diff < prev);
        prev = diff;
    }
    CHECK(prev < 1e-3);
}

#include "tpc/equalization.hpp"

#include "tpc/analytic.hpp"
#include "tpc/discrete.hpp"
#include "tpc/errors.hpp"
#include "fft.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

namespace tpc {

void ObservationModel::validate() const {
    if (!std::isfinite(c)) {
        throw ModelError(ErrorKind::InvalidArgument, "observation factor c must be finite");
    }
    if (!std::isfinite(sigma) || sigma < 0.0) {
        throw ModelError(ErrorKind::InvalidArgument, "noise sigma must be >= 0");
    }
}

Waveform observe(const Waveform& w, const ObservationModel& om) {
    om.validate();
    Waveform r = w;
    if (om.sigma == 0.0) {
        for (double& v : r.samples) v *= om.c;
        return r;
    }
    std::mt19937_64 rng(om.seed);
    std::normal_distribution<double> noise(0.0, om.sigma);
    for (double& v : r.samples) {
        v = om.c * v + noise(rng);
    }
    return r;
}

double reconstruct_transient(const Dynamics& d, const EstimatedIC& e, double t) {
    return transient_component(d, InitialConditions{e.v2_0_hat, e.dv2_0_hat}, t);
}

Waveform subtract_transient(const Waveform& r, const Dynamics& d, const EstimatedIC& e, double c_assumed) {
    if (r.t0 != 0.0) {
        throw ModelError(ErrorKind::InvalidArgument, "transient subtraction needs a waveform starting at t = 0");
    }
    Waveform out = r;
    for (std::size_t n = 0; n < out.size(); ++n) {
        out.samples[n] -= c_assumed * reconstruct_transient(d, e, r.time(n));
    }
    return out;
}

Complex zf_response(const CircuitParams& p, double f_hz, double eps) {
    if (!(eps >= 0.0)) {
        throw ModelError(ErrorKind::InvalidArgument, "regularization eps must be >= 0");
    }
    const Complex h = frequency_response(p, f_hz);
    if (eps == 0.0) {
        return 1.0 / h;
    }
    return std::conj(h) / (std::norm(h) + eps);
}

Waveform equalize_frequency_domain(const Waveform& r, const CircuitParams& p, double eps) {
    r.validate();
    if (r.empty()) {
        return r;
    }
    std::size_t n_pad = 1;
    while (n_pad < r.size()) n_pad <<= 1;

    std::vector<double> x(n_pad, r.samples.back());
    std::copy(r.samples.begin(), r.samples.end(), x.begin());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n_pad);
    for (double& v : x) v -= mean;

    std::vector<Complex> spec = detail::rfft(x);
    const double df = 1.0 / (static_cast<double>(n_pad) * r.dt);
    for (std::size_t k = 0; k < spec.size(); ++k) {
        spec[k] *= zf_response(p, static_cast<double>(k) * df, eps);
    }
    const std::vector<double> y = detail::irfft(spec, n_pad);

    Waveform out{r.dt, r.t0, std::vector<double>(r.size())};
    for (std::size_t n = 0; n < r.size(); ++n) {
        out.samples[n] = y[n] + mean;
    }
    return out;
}

std::vector<JointState> build_state_sequence(const Waveform& iL, const Waveform& v2, std::size_t J,
                                             std::size_t N_sub, std::size_t L_m) {
    if (N_sub == 0 || J == 0 || J % N_sub != 0) {
        throw ModelError(ErrorKind::IndivisibleDecimation,
                         "N_sub = " + std::to_string(N_sub) + " does not divide J = " + std::to_string(J));
    }
    if (L_m == 0) {
        throw ModelError(ErrorKind::InvalidArgument, "window length L_m must be >= 1");
    }
    if (iL.size() != v2.size()) {
        throw ModelError(ErrorKind::GridMismatch, "iL and v2 differ in length");
    }
    const std::size_t count = (iL.size() + N_sub - 1) / N_sub;
    std::vector<JointState> states;
    states.reserve(count);
    for (std::size_t m = 0; m < count; ++m) {
        JointState s;
        s.m = m;
        s.N_sub = N_sub;
        s.iL_window.resize(L_m);
        s.v2_window.resize(L_m);
        for (std::size_t l = 0; l < L_m; ++l) {
            // l = L_m - 1 is the current sub-sample.
            const std::size_t back = L_m - 1 - l;
            const std::size_t idx = m >= back ? (m - back) * N_sub : 0;
            s.iL_window[l] = iL.samples[idx];
            s.v2_window[l] = v2.samples[idx];
        }
        states.push_back(std::move(s));
    }
    return states;
}

Bits brute_force_detect(const Waveform& r, const CircuitParams& p, const ModulationConfig& cfg,
                        const InitialConditions& ic, std::size_t J, std::size_t K) {
    if (K > 12) {
        throw ModelError(ErrorKind::TooManyBits, "exhaustive search limited to 12 bits, got " + std::to_string(K));
    }
    if (K == 0) {
        return {};
    }
    const std::size_t N = K * J;
    if (r.size() < N) {
        throw ModelError(ErrorKind::GridMismatch, "observation shorter than K J samples");
    }
    const DiscreteParams dp = derive_params(p, J, cfg.T, Variant::Exact);
    const SimState initial{initial_inductor_current(p, ic), ic.v2_0, 0};

    Bits best;
    double best_cost = std::numeric_limits<double>::infinity();
    Bits bits(K);
    const std::size_t total = std::size_t{1} << K;
    for (std::size_t code = 0; code < total; ++code) {
        for (std::size_t k = 0; k < K; ++k) {
            bits[k] = static_cast<std::uint8_t>((code >> (K - 1 - k)) & 1U);
        }
        const SwitchingPattern pat = encode(bits, cfg);
        const auto s1 = sample_switching(pat, dp.dt, N);
        const DiscreteTrajectory traj = simulate_samples(dp, s1, initial, ConductionMode::CCM);
        double cost = 0.0;
        for (std::size_t n = 0; n < N && cost < best_cost; ++n) {
            const double e = r.samples[n] - traj.v2.samples[n];
            cost += e * e;
        }
        if (cost < best_cost) {
            best_cost = cost;
            best = bits;
        }
    }
    return best;
}

}  // namespace tpc

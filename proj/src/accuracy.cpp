#include "tpc/accuracy.hpp"

#include "tpc/analytic.hpp"
#include "tpc/errors.hpp"

#include <cmath>
#include <numeric>

namespace tpc {

namespace {

double mean_of(std::span<const double> x) {
    return x.empty() ? 0.0 : std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

bool same_grid(const Waveform& a, const Waveform& b) {
    const double tol = 1e-9 * a.dt;
    return a.size() == b.size() && std::abs(a.dt - b.dt) <= tol && std::abs(a.t0 - b.t0) <= tol;
}

}  // namespace

std::size_t settle_symbols_for(const Dynamics& d, double T) {
    return static_cast<std::size_t>(std::ceil(std::log(1e6) / (d.a * T)));
}

Waveform reference_samples(const Dynamics& d, const InitialConditions& ic, const SwitchingPattern& pat,
                           double V1, std::size_t J, std::size_t settle_symbols) {
    if (J == 0) {
        throw ModelError(ErrorKind::InvalidArgument, "J must be >= 1");
    }
    if (pat.size() <= settle_symbols) {
        throw ModelError(ErrorKind::PatternTooShort,
                         "pattern has " + std::to_string(pat.size()) + " symbols, settling needs " +
                             std::to_string(settle_symbols));
    }
    const double dt = pat.period() / static_cast<double>(J);
    const std::size_t first = settle_symbols * J;
    const std::size_t total = pat.size() * J;
    Waveform ref{dt, static_cast<double>(first) * dt, std::vector<double>(total - first)};
    for (std::size_t n = first; n < total; ++n) {
        ref.samples[n - first] = output_voltage(d, ic, pat, V1, static_cast<double>(n) * dt);
    }
    return ref;
}

Waveform reference_samples(const Dynamics& d, const InitialConditions& ic, const SwitchingPattern& pat,
                           double V1, std::size_t J) {
    return reference_samples(d, ic, pat, V1, J, settle_symbols_for(d, pat.period()));
}

double bias(const Waveform& v2, double delta, double V1) {
    if (v2.empty()) {
        throw ModelError(ErrorKind::InvalidArgument, "bias of an empty waveform");
    }
    return mean_of(v2.samples) - delta * V1;
}

double mse(const Waveform& v2, const Waveform& ref, double b) {
    if (!same_grid(v2, ref) || v2.empty()) {
        throw ModelError(ErrorKind::GridMismatch, "waveforms are not on the same non-empty grid");
    }
    double acc = 0.0;
    for (std::size_t n = 0; n < v2.size(); ++n) {
        const double e = v2.samples[n] - b - ref.samples[n];
        acc += e * e;
    }
    return acc / static_cast<double>(v2.size());
}

std::vector<AccuracyReport> sweep(const CircuitParams& p, const ModulationConfig& cfg,
                                  std::span<const std::uint8_t> bits, std::span<const std::size_t> J_list,
                                  std::span<const Variant> variants, const SweepOptions& options) {
    const Dynamics d = derive_dynamics(p);
    const SwitchingPattern pat = encode(bits, cfg);
    const InitialConditions ic{cfg.delta * p.V1, 0.0};
    const std::size_t settle = options.settle_symbols;

    std::vector<AccuracyReport> reports;
    reports.reserve(J_list.size() * variants.size());
    for (const std::size_t J : J_list) {
        // The last sample is dropped for every variant so that the aligned
        // predictive trajectory covers the same window.
        Waveform ref = reference_samples(d, ic, pat, p.V1, J, settle);
        ref.samples.pop_back();
        if (ref.empty()) {
            throw ModelError(ErrorKind::PatternTooShort, "evaluation window is empty");
        }
        const double ref_offset = mean_of(ref.samples) - cfg.delta * p.V1;
        const std::size_t first = settle * J;

        for (const Variant variant : variants) {
            const DiscreteTrajectory traj = simulate(p, pat, ic, J, variant, options.mode);
            const std::size_t shift =
                (variant == Variant::Predictive && options.align_predictive) ? 1 : 0;
            Waveform window{ref.dt, ref.t0, {}};
            window.samples.assign(traj.v2.samples.begin() + static_cast<std::ptrdiff_t>(first + shift),
                                  traj.v2.samples.begin() +
                                      static_cast<std::ptrdiff_t>(first + shift + ref.size()));
            AccuracyReport r;
            r.J = J;
            r.variant = variant;
            r.bias = bias(window, cfg.delta, p.V1);
            r.reference_offset = ref_offset;
            r.mse = mse(window, ref, r.bias - ref_offset);
            r.n_samples = ref.size();
            r.settle_symbols = settle;
            reports.push_back(r);
        }
    }
    return reports;
}

double loglog_slope(std::span<const std::size_t> J, std::span<const double> values, std::size_t min_J) {
    if (J.size() != values.size()) {
        throw ModelError(ErrorKind::InvalidArgument, "J and values differ in length");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < J.size(); ++i) {
        if (J[i] < min_J || !(values[i] > 0.0)) {
            continue;
        }
        const double x = std::log(static_cast<double>(J[i]));
        const double y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) {
        throw ModelError(ErrorKind::InvalidArgument, "slope fit needs at least two points");
    }
    const auto nf = static_cast<double>(count);
    return (nf * sxy - sx * sy) / (nf * sxx - sx * sx);
}

}  // namespace tpc

#include "tpc/analytic.hpp"

#include "tpc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tpc {

void Waveform::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ModelError(ErrorKind::InvalidArgument, "waveform dt must be > 0");
    }
    for (double v : samples) {
        if (!std::isfinite(v)) {
            throw ModelError(ErrorKind::InvalidArgument, "waveform contains a non-finite sample");
        }
    }
}

double transient_component(const Dynamics& d, const InitialConditions& ic, double t) {
    if (t < 0.0) {
        return 0.0;
    }
    const double sine_amp = (d.a * ic.v2_0 + ic.dv2_0) / d.b;
    return std::exp(-d.a * t) * (sine_amp * std::sin(d.b * t) + ic.v2_0 * std::cos(d.b * t));
}

double unit_step_component(const Dynamics& d, double t) {
    if (t < 0.0) {
        return 0.0;
    }
    return 1.0 - std::exp(-d.a * t) * (std::cos(d.b * t) + (d.a / d.b) * std::sin(d.b * t));
}

double pulse_shape_gtx(const Dynamics& d, double Tp, double t) {
    if (!(Tp > 0.0)) {
        throw ModelError(ErrorKind::InvalidArgument, "pulse width must be > 0");
    }
    return unit_step_component(d, t + 0.5 * Tp) - unit_step_component(d, t - 0.5 * Tp);
}

double data_component(const Dynamics& d, const SwitchingPattern& pat, double V1, double t) {
    const double T = pat.period();
    double sum = 0.0;
    for (std::size_t k = 0; k < pat.size(); ++k) {
        const double offset = static_cast<double>(k) * T;
        if (t < offset + pat.start(k)) {
            break;  // pulses are time-ordered, later ones have not started yet
        }
        sum += pulse_shape_gtx(d, pat.width(k), t - offset - pat.center(k));
    }
    return V1 * sum;
}

double output_voltage(const Dynamics& d, const InitialConditions& ic, const SwitchingPattern& pat,
                      double V1, double t) {
    return transient_component(d, ic, t) + data_component(d, pat, V1, t);
}

Waveform sample_output(const Dynamics& d, const InitialConditions& ic, const SwitchingPattern& pat,
                       double V1, double dt, std::size_t count) {
    if (!(dt > 0.0)) {
        throw ModelError(ErrorKind::InvalidArgument, "dt must be > 0");
    }
    Waveform w{dt, 0.0, std::vector<double>(count)};
    for (std::size_t n = 0; n < count; ++n) {
        w.samples[n] = output_voltage(d, ic, pat, V1, static_cast<double>(n) * dt);
    }
    return w;
}

Waveform convolve_end_to_end(const Waveform& v1, const Dynamics& d, const CircuitParams& p) {
    v1.validate();
    const double max_dt = 2.0 * std::numbers::pi / (20.0 * d.b);
    if (v1.dt > max_dt) {
        throw ModelError(ErrorKind::ResolutionTooCoarse,
                         "dt exceeds 1/20 of the ringing period");
    }
    const auto horizon = static_cast<std::size_t>(std::ceil(kImpulseHorizon / d.a / v1.dt));
    const std::size_t taps = std::min(horizon + 1, v1.size());
    std::vector<double> h(taps);
    for (std::size_t j = 0; j < taps; ++j) {
        h[j] = impulse_response(d, p, static_cast<double>(j) * v1.dt) * v1.dt;
    }
    Waveform out{v1.dt, v1.t0, std::vector<double>(v1.size(), 0.0)};
    for (std::size_t m = 0; m < v1.size(); ++m) {
        const double x = v1.samples[m];
        if (x == 0.0) {
            continue;
        }
        const std::size_t end = std::min(v1.size(), m + taps);
        for (std::size_t n = m; n < end; ++n) {
            out.samples[n] += x * h[n - m];
        }
    }
    return out;
}

}  // namespace tpc

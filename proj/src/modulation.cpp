#include "tpc/modulation.hpp"

#include "tpc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tpc {

namespace {

constexpr double kEdgeSnap = 1e-9;  // relative to T

void check_pulse(double ts, double te, double T) {
    if (!(ts >= 0.0) || !(te <= T) || !(ts < te)) {
        throw ModelError(ErrorKind::DepthOutOfRange,
                         "pulse [" + std::to_string(ts) + ", " + std::to_string(te) +
                             ") leaves the symbol period");
    }
}

}  // namespace

void ModulationConfig::validate() const {
    if (!std::isfinite(T) || T <= 0.0) {
        throw ModelError(ErrorKind::InvalidArgument, "T must be > 0");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ModelError(ErrorKind::InvalidArgument, "delta must lie in (0, 1)");
    }
    if (!std::isfinite(depth) || depth < 0.0) {
        throw ModelError(ErrorKind::InvalidArgument, "depth must be >= 0");
    }
    switch (scheme) {
        case Scheme::VPWM:
            if (!(delta - depth > 0.0 && delta + depth < 1.0)) {
                throw ModelError(ErrorKind::DepthOutOfRange, "VPWM duty cycle leaves (0, 1)");
            }
            break;
        case Scheme::VPPM: {
            const double half = 0.5 * delta * T;
            check_pulse(0.5 * T - depth - half, 0.5 * T - depth + half, T);
            check_pulse(0.5 * T + depth - half, 0.5 * T + depth + half, T);
            break;
        }
        case Scheme::Unmodulated:
            break;
    }
}

SwitchingPattern::SwitchingPattern(double period, std::vector<double> t_start, std::vector<double> t_end)
    : period_(period), t_start_(std::move(t_start)), t_end_(std::move(t_end)) {
    if (!(period_ > 0.0)) {
        throw ModelError(ErrorKind::InvalidArgument, "pattern period must be > 0");
    }
    if (t_start_.size() != t_end_.size()) {
        throw ModelError(ErrorKind::InvalidArgument, "pulse start/end counts differ");
    }
    for (std::size_t k = 0; k < t_start_.size(); ++k) {
        check_pulse(t_start_[k], t_end_[k], period_);
    }
}

double SwitchingPattern::mean_duty() const noexcept {
    if (t_start_.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < t_start_.size(); ++k) {
        sum += t_end_[k] - t_start_[k];
    }
    return sum / (static_cast<double>(t_start_.size()) * period_);
}

Bits alternating_bits(std::size_t count) {
    Bits bits(count);
    for (std::size_t k = 0; k < count; ++k) {
        bits[k] = (k % 2 == 0) ? 1 : 0;
    }
    return bits;
}

SwitchingPattern encode_vpwm(std::span<const std::uint8_t> bits, const ModulationConfig& cfg) {
    cfg.validate();
    std::vector<double> ts(bits.size());
    std::vector<double> te(bits.size());
    for (std::size_t k = 0; k < bits.size(); ++k) {
        const double sign = bits[k] ? 1.0 : -1.0;
        const double duty = cfg.delta + sign * cfg.depth;
        if (!(duty > 0.0 && duty < 1.0)) {
            throw ModelError(ErrorKind::DepthOutOfRange, "duty cycle leaves (0, 1)");
        }
        ts[k] = 0.5 * cfg.T - 0.5 * duty * cfg.T;
        te[k] = 0.5 * cfg.T + 0.5 * duty * cfg.T;
    }
    return SwitchingPattern(cfg.T, std::move(ts), std::move(te));
}

SwitchingPattern encode_vppm(std::span<const std::uint8_t> bits, const ModulationConfig& cfg) {
    cfg.validate();
    const double half = 0.5 * cfg.delta * cfg.T;
    std::vector<double> ts(bits.size());
    std::vector<double> te(bits.size());
    for (std::size_t k = 0; k < bits.size(); ++k) {
        const double sign = bits[k] ? 1.0 : -1.0;
        const double center = 0.5 * cfg.T + sign * cfg.depth;
        ts[k] = center - half;
        te[k] = center + half;
    }
    return SwitchingPattern(cfg.T, std::move(ts), std::move(te));
}

SwitchingPattern unmodulated_pattern(const ModulationConfig& cfg, std::size_t count) {
    ModulationConfig plain = cfg;
    plain.scheme = Scheme::Unmodulated;
    plain.validate();
    const double half = 0.5 * cfg.delta * cfg.T;
    return SwitchingPattern(cfg.T, std::vector<double>(count, 0.5 * cfg.T - half),
                            std::vector<double>(count, 0.5 * cfg.T + half));
}

SwitchingPattern encode(std::span<const std::uint8_t> bits, const ModulationConfig& cfg) {
    switch (cfg.scheme) {
        case Scheme::VPWM: return encode_vpwm(bits, cfg);
        case Scheme::VPPM: return encode_vppm(bits, cfg);
        case Scheme::Unmodulated: return unmodulated_pattern(cfg, bits.size());
    }
    throw ModelError(ErrorKind::InvalidArgument, "unknown modulation scheme");
}

std::vector<std::uint8_t> sample_switching(const SwitchingPattern& pat, double dt, std::size_t count) {
    if (!(dt > 0.0)) {
        throw ModelError(ErrorKind::InvalidArgument, "dt must be > 0");
    }
    std::vector<std::uint8_t> s1(count, 0);
    const double T = pat.period();
    const double snap = kEdgeSnap * T;
    const auto K = static_cast<double>(pat.size());
    for (std::size_t n = 0; n < count; ++n) {
        const double t = static_cast<double>(n) * dt;
        double kf = std::floor(t / T);
        double tau = t - kf * T;
        // A sample a hair below a period boundary belongs to the next symbol.
        if (T - tau <= snap) {
            kf += 1.0;
            tau = 0.0;
        }
        if (kf < 0.0 || kf >= K) {
            continue;
        }
        const auto k = static_cast<std::size_t>(kf);
        s1[n] = (tau >= pat.start(k) - snap && tau < pat.end(k) - snap) ? 1 : 0;
    }
    return s1;
}

std::vector<double> sample_switching_sloped(const SwitchingPattern& pat, double dt, std::size_t count,
                                            double rise_time) {
    if (!(rise_time >= 0.0)) {
        throw ModelError(ErrorKind::InvalidArgument, "rise_time must be >= 0");
    }
    if (rise_time == 0.0) {
        const auto ideal = sample_switching(pat, dt, count);
        return {ideal.begin(), ideal.end()};
    }
    if (!(dt > 0.0)) {
        throw ModelError(ErrorKind::InvalidArgument, "dt must be > 0");
    }
    // Clipped linear ramp 0 -> 1 centred on an edge.
    const auto ramp = [rise_time](double x) { return std::clamp(x / rise_time + 0.5, 0.0, 1.0); };
    const double T = pat.period();
    std::vector<double> s1(count, 0.0);
    for (std::size_t n = 0; n < count; ++n) {
        const double t = static_cast<double>(n) * dt;
        // Only symbols whose ramps can reach t contribute.
        const auto k_hi = std::min<double>(static_cast<double>(pat.size()) - 1.0,
                                           std::floor((t + rise_time) / T));
        const auto k_lo = std::max(0.0, std::floor((t - rise_time) / T) - 1.0);
        double value = 0.0;
        for (double kf = k_lo; kf <= k_hi; kf += 1.0) {
            const auto k = static_cast<std::size_t>(kf);
            const double base = kf * T;
            value += ramp(t - base - pat.start(k)) - ramp(t - base - pat.end(k));
        }
        s1[n] = std::clamp(value, 0.0, 1.0);
    }
    return s1;
}

}  // namespace tpc

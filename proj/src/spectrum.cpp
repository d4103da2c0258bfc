#include "tpc/spectrum.hpp"

#include "fft.hpp"
#include "tpc/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace tpc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

Complex v1_spectrum(const SwitchingPattern& pat, double V1, double f_hz) {
    if (f_hz == 0.0) {
        throw ModelError(ErrorKind::ZeroFrequency, "v1_spectrum is singular at f = 0");
    }
    const double w = kTwoPi * f_hz;
    Complex sum{0.0, 0.0};
    for (std::size_t k = 0; k < pat.size(); ++k) {
        const double base = static_cast<double>(k) * pat.period();
        sum += std::polar(1.0, -w * (base + pat.start(k))) - std::polar(1.0, -w * (base + pat.end(k)));
    }
    return V1 / Complex(0.0, w) * sum;
}

SpectrumGrid ripple_spectrum(const CircuitParams& p, const Dynamics& d, const SwitchingPattern& pat,
                             std::span<const double> grid) {
    SpectrumGrid out;
    out.frequencies.assign(grid.begin(), grid.end());
    out.values.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw ModelError(ErrorKind::InvalidArgument, "frequency grid must be strictly increasing");
        }
        const Complex jw{0.0, kTwoPi * grid[i]};
        out.values.push_back(v1_spectrum(pat, p.V1, grid[i]) / (p.L * p.C * (jw - d.s01) * (jw - d.s02)));
    }
    out.dc_mass = pat.mean_duty() * p.V1;
    return out;
}

SpectrumGrid spectrum_via_fft(const Waveform& w, double dc_remove) {
    if (w.size() < 2) {
        throw ModelError(ErrorKind::InvalidArgument, "FFT needs at least two samples");
    }
    w.validate();
    std::vector<double> centered(w.samples);
    for (double& v : centered) {
        v -= dc_remove;
    }
    const auto bins = detail::rfft(centered);

    SpectrumGrid s;
    const std::size_t n = w.size();
    const double df = 1.0 / (static_cast<double>(n) * w.dt);
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double f = static_cast<double>(k) * df;
        s.frequencies.push_back(f);
        s.values.push_back(bins[k] * w.dt * std::polar(1.0, -kTwoPi * f * w.t0));
    }
    return s;
}

std::vector<double> log_grid(double f_min, double f_max, std::size_t count) {
    if (!(f_min > 0.0) || !(f_max > f_min) || count < 2) {
        throw ModelError(ErrorKind::InvalidArgument, "log grid needs 0 < f_min < f_max and >= 2 points");
    }
    std::vector<double> grid(count);
    const double lo = std::log10(f_min);
    const double step = (std::log10(f_max) - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = std::pow(10.0, lo + step * static_cast<double>(i));
    }
    grid.back() = f_max;
    return grid;
}

double envelope_slope_db_per_decade(const SpectrumGrid& s, double f_lo, double f_hi) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 1; i + 1 < s.values.size(); ++i) {
        const double f = s.frequencies[i];
        if (f < f_lo || f > f_hi) {
            continue;
        }
        const double m = std::abs(s.values[i]);
        if (m >= std::abs(s.values[i - 1]) && m >= std::abs(s.values[i + 1]) && m > 0.0) {
            const double x = std::log10(f);
            const double y = 20.0 * std::log10(m);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++count;
        }
    }
    if (count < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const auto nf = static_cast<double>(count);
    return (nf * sxy - sx * sy) / (nf * sxx - sx * sx);
}

}  // namespace tpc

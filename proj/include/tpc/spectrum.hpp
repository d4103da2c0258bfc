#pragma once

// Fourier spectrum of the output ripple, closed form and via FFT.
// Convention: X(f) = integral x(t) exp(-i 2 pi f t) dt, approximated on a grid
// by sum_n x[n] exp(-i 2 pi f n dt) dt.

#include "tpc/circuit.hpp"
#include "tpc/modulation.hpp"
#include "tpc/waveform.hpp"

#include <span>
#include <vector>

namespace tpc {

struct SpectrumGrid {
    std::vector<double> frequencies;  ///< Hz, strictly positive and increasing
    std::vector<Complex> values;      ///< V s
    /// Weight of the Dirac line at f = 0 that the grid cannot hold (delta V1 for the ripple).
    double dc_mass = 0.0;
};

/// Transform of the right-sided switching voltage V1 s1(t). Throws ModelError(ZeroFrequency) at f = 0.
[[nodiscard]] Complex v1_spectrum(const SwitchingPattern& pat, double V1, double f_hz);

/// value(f) = V1(f) / (LC (i 2 pi f - s01)(i 2 pi f - s02)); dc_mass = mean duty * V1.
[[nodiscard]] SpectrumGrid ripple_spectrum(const CircuitParams& p, const Dynamics& d,
                                           const SwitchingPattern& pat, std::span<const double> grid);

/// DFT of (samples - dc_remove) scaled by dt, positive bins k = 1 .. N/2 at k / (N dt).
/// Phases are referenced to t = w.t0.
[[nodiscard]] SpectrumGrid spectrum_via_fft(const Waveform& w, double dc_remove);

/// count points log-spaced on [f_min, f_max].
[[nodiscard]] std::vector<double> log_grid(double f_min, double f_max, std::size_t count);

/// Least-squares slope (dB per decade) of 20 log10|value| through the local maxima
/// of |value| inside [f_lo, f_hi]. Returns NaN if fewer than two maxima exist.
[[nodiscard]] double envelope_slope_db_per_decade(const SpectrumGrid& s, double f_lo, double f_hi);

}  // namespace tpc

#pragma once

// =============================================================================
// Buck converter filter: physical parameters and derived dynamics
// =============================================================================
// The LC lowpass with Ohmic load is described by
//     L di/dt = v1 - v2,    C dv2/dt = iL - v2/R_L,
// whose characteristic polynomial LC s^2 + (L/R_L) s + 1 has the complex pole
// pair -a +/- i b whenever R_L > 0.5 sqrt(L/C). All quantities are SI.
// =============================================================================

#include <complex>

namespace tpc {

using Complex = std::complex<double>;

struct CircuitParams {
    double L = 0.0;    ///< inductance [H]
    double C = 0.0;    ///< capacitance [F]
    double R_L = 0.0;  ///< load resistance [Ohm]
    double V1 = 1.0;   ///< input voltage [V]

    /// Throws ModelError(InvalidArgument) unless L, C, R_L, V1 are finite and > 0.
    void validate() const;

    /// True iff R_L > 0.5 sqrt(L/C), i.e. the pole pair is complex.
    [[nodiscard]] bool underdamped_valid() const noexcept;

    [[nodiscard]] double time_constant_rc() const noexcept { return C * R_L; }
};

struct Dynamics {
    double a = 0.0;  ///< damping rate [1/s]
    double b = 0.0;  ///< ringing angular frequency [rad/s]
    Complex s01;     ///< -a + i b
    Complex s02;     ///< -a - i b
};

struct InitialConditions {
    double v2_0 = 0.0;   ///< v2(0) [V]
    double dv2_0 = 0.0;  ///< dv2/dt at 0 [V/s]
};

/// Pole pair of the filter. Throws ModelError(Overdamped) when R_L <= 0.5 sqrt(L/C).
[[nodiscard]] Dynamics derive_dynamics(const CircuitParams& p);

/// H(f) = 1 / (1 + i 2 pi f L/R_L - (2 pi f)^2 L C).
[[nodiscard]] Complex frequency_response(const CircuitParams& p, double f_hz);

/// h(t) = exp(-a t) sin(b t) / (L C b) for t >= 0, zero before.
[[nodiscard]] double impulse_response(const Dynamics& d, const CircuitParams& p, double t);

/// 3 dB corner of the undamped LC lowpass, sqrt((1 + sqrt 2) / LC) / 2 pi.
[[nodiscard]] double cutoff_frequency(const CircuitParams& p);

/// iL(0) = v2(0)/R_L + C dv2(0)/dt.
[[nodiscard]] double initial_inductor_current(const CircuitParams& p, const InitialConditions& ic);

}  // namespace tpc

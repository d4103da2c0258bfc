#pragma once

// =============================================================================
// Closed-form output voltage of the buck filter
// =============================================================================
// v2(t) = v2_t(t) + V1 sum_k g_tx(t - k T - t_c[k]) where
//   v2_t     : initial-condition transient,
//   u(t)     : normalized step response 1 - exp(-a t)(cos bt + a/b sin bt),
//   g_tx(t)  : u(t + Tp/2) - u(t - Tp/2), one rectangular pulse of width Tp.
// =============================================================================

#include "tpc/circuit.hpp"
#include "tpc/modulation.hpp"
#include "tpc/waveform.hpp"

#include <cstddef>

namespace tpc {

[[nodiscard]] double transient_component(const Dynamics& d, const InitialConditions& ic, double t);

[[nodiscard]] double unit_step_component(const Dynamics& d, double t);

/// Pulse response for a centered rectangular pulse of width Tp (> 0).
[[nodiscard]] double pulse_shape_gtx(const Dynamics& d, double Tp, double t);

/// Data-dependent part V1 sum_k g_tx(t - k T - t_c[k]) with per-symbol widths.
[[nodiscard]] double data_component(const Dynamics& d, const SwitchingPattern& pat, double V1, double t);

[[nodiscard]] double output_voltage(const Dynamics& d, const InitialConditions& ic,
                                    const SwitchingPattern& pat, double V1, double t);

/// samples[n] = output_voltage(n dt), t0 = 0.
[[nodiscard]] Waveform sample_output(const Dynamics& d, const InitialConditions& ic,
                                     const SwitchingPattern& pat, double V1, double dt, std::size_t count);

/// Truncation horizon of the impulse response used by convolve_end_to_end, in units of 1/a.
inline constexpr double kImpulseHorizon = 30.0;

/// Rectangle-rule convolution y[n] = dt sum_m v1[m] h((n - m) dt) with h cut at 30/a.
/// Output shares v1's grid. Throws ModelError(ResolutionTooCoarse) if dt > 2 pi / (20 b).
[[nodiscard]] Waveform convolve_end_to_end(const Waveform& v1, const Dynamics& d, const CircuitParams& p);

}  // namespace tpc

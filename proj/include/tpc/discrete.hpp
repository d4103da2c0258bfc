#pragma once

// =============================================================================
// Discrete-time Euler models of the buck filter
// =============================================================================
// All variants iterate
//     iL[n] = alpha iL[n-1] + beta V1 s1[.] + gamma v2[n-1]
//     v2[n] = kappa v2[n-1] + mu iL[.]
// with Delta t = T / J:
//   Exact      : backward Euler resolved for the new sample (s1[n], iL[n]).
//   Simplified : v2[n] ~ v2[n-1] on the right-hand side (alpha = 1, ...).
//   Predictive : simplified coefficients, but only index n-1 values
//                (s1[n-1], iL[n-1]).
// DCM clips the inductor current at zero (asynchronous converter).
// =============================================================================

#include "tpc/circuit.hpp"
#include "tpc/modulation.hpp"
#include "tpc/waveform.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace tpc {

enum class Variant { Exact, Simplified, Predictive };
enum class ConductionMode { CCM, DCM };

[[nodiscard]] std::string_view to_string(Variant v) noexcept;
[[nodiscard]] std::string_view to_string(ConductionMode m) noexcept;

struct DiscreteParams {
    double alpha = 0.0;
    double beta = 0.0;   ///< [s/H] = [A/(V)]
    double gamma = 0.0;  ///< [A/V]
    double kappa = 0.0;
    double mu = 0.0;     ///< [V/A]
    double dt = 0.0;
    double V1 = 1.0;     ///< drive level folded into the beta term
    Variant variant = Variant::Exact;
};

struct SimState {
    double iL = 0.0;
    double v2 = 0.0;
    std::size_t n = 0;
};

/// Coefficients for Delta t = T / J. Throws ModelError(UnstableStep) if the
/// simplified kappa would be <= 0 (Delta t >= C R_L), ModelError(InvalidArgument) for J = 0.
[[nodiscard]] DiscreteParams derive_params(const CircuitParams& p, std::size_t J, double T, Variant variant);

/// One iteration. s1_n / s1_prev are the switching samples at n and n-1.
[[nodiscard]] SimState step(const SimState& s, std::uint8_t s1_n, std::uint8_t s1_prev,
                            const DiscreteParams& dp, ConductionMode mode);

struct DiscreteTrajectory {
    Waveform v2;
    Waveform iL;
};

/// N = K J samples on dt = T / J; sample 0 holds the initial state.
[[nodiscard]] DiscreteTrajectory simulate(const CircuitParams& p, const SwitchingPattern& pat,
                                          const InitialConditions& ic, std::size_t J, Variant variant,
                                          ConductionMode mode);

/// Same recurrence driven by an explicit switching sequence (length sets N).
[[nodiscard]] DiscreteTrajectory simulate_samples(const DiscreteParams& dp, std::span<const std::uint8_t> s1,
                                                  const SimState& initial, ConductionMode mode);

}  // namespace tpc

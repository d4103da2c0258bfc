#pragma once

// Fidelity of the discrete models against the closed-form reference.

#include "tpc/circuit.hpp"
#include "tpc/discrete.hpp"
#include "tpc/modulation.hpp"
#include "tpc/waveform.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tpc {

struct AccuracyReport {
    std::size_t J = 0;
    Variant variant = Variant::Exact;
    /// mean(v2) - delta V1 over the evaluation window.
    double bias = 0.0;
    /// mean(v2_ref) - delta V1 over the same window; nonzero when the
    /// reference itself has not settled (slowly damped circuits).
    double reference_offset = 0.0;
    /// Mean squared error after removing the model's own offset,
    /// i.e. with b = bias - reference_offset.
    double mse = 0.0;
    std::size_t n_samples = 0;
    std::size_t settle_symbols = 0;
};

/// ceil(ln(1e6) / (a T)): symbols until the transient envelope is below 1e-6.
[[nodiscard]] std::size_t settle_symbols_for(const Dynamics& d, double T);

/// Closed-form v2 on Delta t = T/J for n >= settle_symbols J (t0 = settle_symbols T).
/// Throws ModelError(PatternTooShort) if the pattern has <= settle_symbols symbols.
[[nodiscard]] Waveform reference_samples(const Dynamics& d, const InitialConditions& ic,
                                         const SwitchingPattern& pat, double V1, std::size_t J,
                                         std::size_t settle_symbols);

/// Overload using settle_symbols_for(d, T).
[[nodiscard]] Waveform reference_samples(const Dynamics& d, const InitialConditions& ic,
                                         const SwitchingPattern& pat, double V1, std::size_t J);

[[nodiscard]] double bias(const Waveform& v2, double delta, double V1);

/// (1/N) sum (v2[n] - b - ref[n])^2. Throws ModelError(GridMismatch) unless the grids coincide.
[[nodiscard]] double mse(const Waveform& v2, const Waveform& ref, double b);

struct SweepOptions {
    std::size_t settle_symbols = 8;
    /// Advance the predictive trajectory by one sample before comparing.
    bool align_predictive = true;
    ConductionMode mode = ConductionMode::CCM;
};

/// One report per (J, variant) pair, in input order. Initial state (delta V1, 0).
[[nodiscard]] std::vector<AccuracyReport> sweep(const CircuitParams& p, const ModulationConfig& cfg,
                                                std::span<const std::uint8_t> bits,
                                                std::span<const std::size_t> J_list,
                                                std::span<const Variant> variants,
                                                const SweepOptions& options = {});

/// Least-squares slope of log(value) against log(J) over entries with J >= min_J.
[[nodiscard]] double loglog_slope(std::span<const std::size_t> J, std::span<const double> values,
                                  std::size_t min_J);

}  // namespace tpc

#pragma once

// Receiver-side building blocks: noisy observation, transient removal,
// zero-forcing equalization and exhaustive sequence detection.

#include "tpc/circuit.hpp"
#include "tpc/modulation.hpp"
#include "tpc/waveform.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tpc {

struct ObservationModel {
    double c = 1.0;      ///< proportionality factor
    double sigma = 0.0;  ///< noise standard deviation [V]
    std::uint64_t seed = 0;

    void validate() const;
};

/// r[n] = c w[n] + N(0, sigma^2), deterministic for a given seed.
[[nodiscard]] Waveform observe(const Waveform& w, const ObservationModel& om);

struct EstimatedIC {
    double v2_0_hat = 0.0;
    double dv2_0_hat = 0.0;
};

[[nodiscard]] double reconstruct_transient(const Dynamics& d, const EstimatedIC& e, double t);

/// r[n] - c_assumed * reconstruct_transient(t_n). Requires r.t0 == 0.
[[nodiscard]] Waveform subtract_transient(const Waveform& r, const Dynamics& d, const EstimatedIC& e,
                                          double c_assumed = 1.0);

/// eps == 0: 1/H(f). eps > 0: conj(H) / (|H|^2 + eps).
[[nodiscard]] Complex zf_response(const CircuitParams& p, double f_hz, double eps = 0.0);

/// Applies zf_response bin by bin to r - mean(r) and adds the mean back.
/// Non power-of-two lengths are padded with the last sample; output has r's length.
[[nodiscard]] Waveform equalize_frequency_domain(const Waveform& r, const CircuitParams& p, double eps = 0.0);

struct JointState {
    std::vector<double> iL_window;  ///< oldest first, length L_m
    std::vector<double> v2_window;
    std::size_t m = 0;
    std::size_t N_sub = 1;
};

/// State m holds the last L_m values of iL, v2 taken every N_sub samples
/// (index m N_sub); windows reaching before the start repeat the first sample.
/// Throws ModelError(IndivisibleDecimation) unless N_sub divides J.
[[nodiscard]] std::vector<JointState> build_state_sequence(const Waveform& iL, const Waveform& v2,
                                                           std::size_t J, std::size_t N_sub,
                                                           std::size_t L_m = 2);

/// Exhaustive maximum-likelihood search over all 2^K bit sequences using the
/// exact discrete model (CCM) with known initial conditions and c = 1.
/// Ties go to the lexicographically smallest sequence (bit 0 first).
/// Throws ModelError(TooManyBits) for K > 12.
[[nodiscard]] Bits brute_force_detect(const Waveform& r, const CircuitParams& p, const ModulationConfig& cfg,
                                      const InitialConditions& ic, std::size_t J, std::size_t K);

}  // namespace tpc

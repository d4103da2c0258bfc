#pragma once

// Binary data -> per-symbol pulse timing, and point sampling of the ideal
// two-level switching signal s1(t).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tpc {

enum class Scheme { VPWM, VPPM, Unmodulated };

struct ModulationConfig {
    Scheme scheme = Scheme::VPWM;
    double T = 1e-6;     ///< symbol (switching) period [s]
    double delta = 0.5;  ///< average duty cycle, 0 < delta < 1
    /// Duty-cycle offset for VPWM (dimensionless); centre shift for VPPM [s].
    double depth = 0.0;

    /// Throws ModelError(InvalidArgument) for T <= 0, delta outside (0,1) or depth < 0,
    /// and ModelError(DepthOutOfRange) when the extreme symbols would leave the period.
    void validate() const;
};

/// One rectangular pulse per symbol: high on [k T + t_start[k], k T + t_end[k]).
class SwitchingPattern {
public:
    SwitchingPattern() = default;
    SwitchingPattern(double period, std::vector<double> t_start, std::vector<double> t_end);

    [[nodiscard]] double period() const noexcept { return period_; }
    [[nodiscard]] std::size_t size() const noexcept { return t_start_.size(); }
    [[nodiscard]] bool empty() const noexcept { return t_start_.empty(); }

    [[nodiscard]] double start(std::size_t k) const { return t_start_[k]; }
    [[nodiscard]] double end(std::size_t k) const { return t_end_[k]; }
    [[nodiscard]] double center(std::size_t k) const { return 0.5 * (t_start_[k] + t_end_[k]); }
    [[nodiscard]] double width(std::size_t k) const { return t_end_[k] - t_start_[k]; }

    [[nodiscard]] std::span<const double> starts() const noexcept { return t_start_; }
    [[nodiscard]] std::span<const double> ends() const noexcept { return t_end_; }

    /// Mean duty cycle over all symbols (0 for an empty pattern).
    [[nodiscard]] double mean_duty() const noexcept;

    friend bool operator==(const SwitchingPattern&, const SwitchingPattern&) = default;

private:
    double period_ = 0.0;
    std::vector<double> t_start_;
    std::vector<double> t_end_;
};

using Bits = std::vector<std::uint8_t>;

/// Alternating 1,0,1,0,... sequence of length count.
[[nodiscard]] Bits alternating_bits(std::size_t count);

/// Centered pulses with duty delta + (2 b - 1) depth.
[[nodiscard]] SwitchingPattern encode_vpwm(std::span<const std::uint8_t> bits, const ModulationConfig& cfg);

/// Constant width delta T, centre T/2 + (2 b - 1) depth.
[[nodiscard]] SwitchingPattern encode_vppm(std::span<const std::uint8_t> bits, const ModulationConfig& cfg);

/// count identical centered pulses of width delta T.
[[nodiscard]] SwitchingPattern unmodulated_pattern(const ModulationConfig& cfg, std::size_t count);

/// Dispatches on cfg.scheme (Unmodulated ignores the bit values, keeps the count).
[[nodiscard]] SwitchingPattern encode(std::span<const std::uint8_t> bits, const ModulationConfig& cfg);

/// s1[n] = s1(n dt) in {0,1}, half-open pulses, 0 beyond K T.
/// Sample instants within 1e-9 T of an edge are snapped onto that edge.
[[nodiscard]] std::vector<std::uint8_t> sample_switching(const SwitchingPattern& pat, double dt,
                                                          std::size_t count);

/// Switching signal with linear edges of the given rise/fall time (each edge
/// ramp is centered on the ideal edge instant, preserving pulse area).
/// rise_time = 0 reproduces sample_switching.
[[nodiscard]] std::vector<double> sample_switching_sloped(const SwitchingPattern& pat, double dt,
                                                          std::size_t count, double rise_time);

}  // namespace tpc

#pragma once

#include <cstddef>
#include <vector>

namespace tpc {

/// Uniformly sampled real signal: samples[n] is the value at t0 + n dt.
struct Waveform {
    double dt = 1.0;
    double t0 = 0.0;
    std::vector<double> samples;

    [[nodiscard]] std::size_t size() const noexcept { return samples.size(); }
    [[nodiscard]] bool empty() const noexcept { return samples.empty(); }
    [[nodiscard]] double time(std::size_t n) const noexcept { return t0 + static_cast<double>(n) * dt; }

    /// Throws ModelError(InvalidArgument) if dt <= 0 or any sample is non-finite.
    void validate() const;
};

}  // namespace tpc

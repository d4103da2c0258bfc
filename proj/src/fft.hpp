#pragma once

// Thin RAII wrapper over FFTW's real transforms (internal to the library).

#include "tpc/circuit.hpp"

#include <span>
#include <vector>

namespace tpc::detail {

/// Unnormalized real-to-complex DFT, bins 0 .. n/2.
[[nodiscard]] std::vector<Complex> rfft(std::span<const double> x);

/// Inverse of rfft including the 1/n factor; half.size() must be n/2 + 1.
[[nodiscard]] std::vector<double> irfft(std::span<const Complex> half, std::size_t n);

}  // namespace tpc::detail

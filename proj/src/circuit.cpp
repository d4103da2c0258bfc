#include "tpc/circuit.hpp"

#include "tpc/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace tpc {

namespace {

void require_positive(double value, const char* name) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw ModelError(ErrorKind::InvalidArgument,
                         std::string(name) + " must be finite and > 0, got " + std::to_string(value));
    }
}

}  // namespace

void CircuitParams::validate() const {
    require_positive(L, "L");
    require_positive(C, "C");
    require_positive(R_L, "R_L");
    require_positive(V1, "V1");
}

bool CircuitParams::underdamped_valid() const noexcept {
    return R_L > 0.5 * std::sqrt(L / C);
}

Dynamics derive_dynamics(const CircuitParams& p) {
    p.validate();
    if (!p.underdamped_valid()) {
        throw ModelError(ErrorKind::Overdamped,
                         "R_L <= 0.5 sqrt(L/C); the pole pair is not complex");
    }
    Dynamics d;
    d.a = 1.0 / (2.0 * p.C * p.R_L);
    const double omega0_sq = 1.0 / (p.L * p.C);
    // a^2 < omega0^2 is guaranteed by the underdamped check, but rounding at the
    // boundary can still leave a non-positive radicand.
    const double radicand = omega0_sq - d.a * d.a;
    if (!(radicand > 0.0)) {
        throw ModelError(ErrorKind::Overdamped, "ringing frequency is not positive");
    }
    d.b = std::sqrt(radicand);
    d.s01 = Complex(-d.a, d.b);
    d.s02 = Complex(-d.a, -d.b);
    return d;
}

Complex frequency_response(const CircuitParams& p, double f_hz) {
    const double w = 2.0 * std::numbers::pi * f_hz;
    return 1.0 / Complex(1.0 - w * w * p.L * p.C, w * p.L / p.R_L);
}

double impulse_response(const Dynamics& d, const CircuitParams& p, double t) {
    if (t < 0.0) {
        return 0.0;
    }
    return std::exp(-d.a * t) * std::sin(d.b * t) / (p.L * p.C * d.b);
}

double cutoff_frequency(const CircuitParams& p) {
    return std::sqrt((1.0 + std::numbers::sqrt2) / (p.L * p.C)) / (2.0 * std::numbers::pi);
}

double initial_inductor_current(const CircuitParams& p, const InitialConditions& ic) {
    return ic.v2_0 / p.R_L + p.C * ic.dv2_0;
}

}  // namespace tpc

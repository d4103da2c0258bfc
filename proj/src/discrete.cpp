#include "tpc/discrete.hpp"

#include "tpc/errors.hpp"

#include <algorithm>

namespace tpc {

std::string_view to_string(Variant v) noexcept {
    switch (v) {
        case Variant::Exact: return "exact";
        case Variant::Simplified: return "simplified";
        case Variant::Predictive: return "predictive";
    }
    return "unknown";
}

std::string_view to_string(ConductionMode m) noexcept {
    return m == ConductionMode::CCM ? "ccm" : "dcm";
}

DiscreteParams derive_params(const CircuitParams& p, std::size_t J, double T, Variant variant) {
    p.validate();
    if (J == 0) {
        throw ModelError(ErrorKind::InvalidArgument, "oversampling factor J must be >= 1");
    }
    if (!(T > 0.0)) {
        throw ModelError(ErrorKind::InvalidArgument, "T must be > 0");
    }
    DiscreteParams dp;
    dp.dt = T / static_cast<double>(J);
    dp.V1 = p.V1;
    dp.variant = variant;
    const double dt = dp.dt;
    const double rc = p.C * p.R_L;
    if (variant == Variant::Exact) {
        const double den = p.L * (rc + dt) + p.R_L * dt * dt;
        dp.alpha = p.L * (rc + dt) / den;
        dp.beta = dt * (rc + dt) / den;
        dp.gamma = -rc * dt / den;
        dp.kappa = rc / (rc + dt);
        dp.mu = p.R_L * dt / (rc + dt);
    } else {
        if (dt >= rc) {
            throw ModelError(ErrorKind::UnstableStep, "Delta t >= C R_L makes kappa non-positive");
        }
        dp.alpha = 1.0;
        dp.beta = dt / p.L;
        dp.gamma = -dp.beta;
        dp.kappa = (rc - dt) / rc;
        dp.mu = dt / p.C;
    }
    return dp;
}

SimState step(const SimState& s, std::uint8_t s1_n, std::uint8_t s1_prev, const DiscreteParams& dp,
              ConductionMode mode) {
    const auto clip = [mode](double i) { return mode == ConductionMode::DCM ? std::max(i, 0.0) : i; };
    SimState next;
    next.n = s.n + 1;
    if (dp.variant == Variant::Predictive) {
        next.iL = clip(s.iL + dp.beta * dp.V1 * s1_prev + dp.gamma * s.v2);
        next.v2 = dp.kappa * s.v2 + dp.mu * s.iL;
    } else {
        next.iL = clip(dp.alpha * s.iL + dp.beta * dp.V1 * s1_n + dp.gamma * s.v2);
        next.v2 = dp.kappa * s.v2 + dp.mu * next.iL;
    }
    return next;
}

DiscreteTrajectory simulate_samples(const DiscreteParams& dp, std::span<const std::uint8_t> s1,
                                    const SimState& initial, ConductionMode mode) {
    const std::size_t N = s1.size();
    DiscreteTrajectory out{{dp.dt, 0.0, std::vector<double>(N)}, {dp.dt, 0.0, std::vector<double>(N)}};
    if (N == 0) {
        return out;
    }
    SimState state = initial;
    state.n = 0;
    out.v2.samples[0] = state.v2;
    out.iL.samples[0] = state.iL;
    for (std::size_t n = 1; n < N; ++n) {
        state = step(state, s1[n], s1[n - 1], dp, mode);
        out.v2.samples[n] = state.v2;
        out.iL.samples[n] = state.iL;
    }
    return out;
}

DiscreteTrajectory simulate(const CircuitParams& p, const SwitchingPattern& pat, const InitialConditions& ic,
                            std::size_t J, Variant variant, ConductionMode mode) {
    const DiscreteParams dp = derive_params(p, J, pat.period(), variant);
    const SimState initial{initial_inductor_current(p, ic), ic.v2_0, 0};
    if (mode == ConductionMode::DCM && (initial.iL < 0.0 || initial.v2 < 0.0)) {
        throw ModelError(ErrorKind::InvalidArgument, "DCM requires iL(0) >= 0 and v2(0) >= 0");
    }
    const std::size_t N = pat.size() * J;
    const auto s1 = sample_switching(pat, dp.dt, N);
    return simulate_samples(dp, s1, initial, mode);
}

}  // namespace tpc

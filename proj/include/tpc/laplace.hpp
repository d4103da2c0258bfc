#pragma once

// =============================================================================
// Higher-order filter models in the Laplace domain
// =============================================================================
// A linear filter with input v1 and output v2 obeys D(d/dt) v2 = K(d/dt) v1.
// Taking one-sided transforms with 0- initial values gives
//
//   V2(s) = [ K(s) V1(s) - sum_i M_i(s) v1^(i)(0) + sum_i N_i(s) v2^(i)(0) ] / D(s)
//
//   N_i(s) = sum_{n>i} d_n s^(n-1-i),   M_i(s) = sum_{n>i} k_n s^(n-1-i).
//
// Two topologies are built from impedances:
//   * parasitic: output capacitor with series ESR/ESL, optional switch R_on
//   * general load: R_L + s L_L + 1/(s C_L) in place of the Ohmic load.
// Inversion is by residues at distinct poles (plus the pole at 0 of the step
// response).
// =============================================================================

#include "tpc/circuit.hpp"
#include "tpc/modulation.hpp"
#include "tpc/waveform.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace tpc {

/// Real polynomial, coefficients in ascending powers of s.
using Polynomial = std::vector<double>;

namespace poly {

[[nodiscard]] Complex evaluate(std::span<const double> c, Complex s);
[[nodiscard]] double evaluate(std::span<const double> c, double s);
[[nodiscard]] Polynomial add(std::span<const double> a, std::span<const double> b);
[[nodiscard]] Polynomial multiply(std::span<const double> a, std::span<const double> b);
[[nodiscard]] Polynomial scale(std::span<const double> a, double factor);
/// Drops exactly-zero leading coefficients (keeps at least one entry).
[[nodiscard]] Polynomial trim(Polynomial a);
[[nodiscard]] std::size_t degree(std::span<const double> a);
[[nodiscard]] double norm(std::span<const double> a);
/// Real-coefficient monic polynomial with the given roots (conjugates must be included).
[[nodiscard]] Polynomial from_roots(std::span<const Complex> roots);

}  // namespace poly

struct ParasiticParams {
    double esr_C = 0.0;      ///< series resistance of the output capacitor [Ohm]
    double esl_C = 0.0;      ///< series inductance of the output capacitor [H]
    double r_ds_on_1 = 0.0;  ///< high-side switch on-resistance [Ohm]
    double r_ds_on_2 = 0.0;  ///< low-side switch on-resistance [Ohm]

    /// All >= 0; the two on-resistances must be equal for the model to stay
    /// time-invariant (one resistance is always in the current path).
    void validate() const;
};

struct GeneralLoad {
    double R_L = 10.0;              ///< [Ohm], > 0
    double L_L = 0.0;               ///< series load inductance [H], >= 0
    std::optional<double> C_L;      ///< series load capacitance [F]; nullopt = shorted

    void validate() const;
};

enum class IcSymbol { V1, DV1, V2, DV2, D2V2, D3V2 };

[[nodiscard]] std::string_view to_string(IcSymbol s) noexcept;

struct RationalLaplace {
    Polynomial num;  ///< K(s), forcing numerator
    Polynomial den;  ///< D(s), monic
    /// Numerator polynomial multiplying each initial value.
    std::vector<std::pair<IcSymbol, Polynomial>> ic_numerators;

    [[nodiscard]] std::size_t order() const { return poly::degree(den); }
    /// K(s) / D(s).
    [[nodiscard]] Complex transfer(Complex s) const;
};

/// Builds K, D (normalized monic) and the initial-condition numerators.
[[nodiscard]] RationalLaplace make_rational(Polynomial num, Polynomial den);

[[nodiscard]] RationalLaplace build_parasitic_model(const CircuitParams& p, const ParasiticParams& q);

/// Uses gl.R_L as the load resistance (p.R_L is not consulted).
[[nodiscard]] RationalLaplace build_general_load_model(const CircuitParams& p, const GeneralLoad& gl);

/// Roots of a real polynomial of degree 1..4 via companion-matrix eigenvalues
/// polished by Newton steps. Conjugate pairs are exact conjugates. Each root r
/// must satisfy |D(r)| <= 1e-8 sum |d_i| |r|^i, else InvalidArgument.
/// Throws ModelError(RepeatedPoles) if two roots are within 1e-6 relative distance.
[[nodiscard]] std::vector<Complex> find_poles(std::span<const double> den);
[[nodiscard]] std::vector<Complex> find_poles(const RationalLaplace& r);

struct PoleResidue {
    std::vector<Complex> poles;
    std::vector<Complex> residues;
};

/// Strictly proper num/den with distinct poles -> sum residue / (s - pole).
[[nodiscard]] PoleResidue partial_fractions(std::span<const double> num, std::span<const double> den);

/// Initial values at t = 0-. Entries of v2 are v2, v2', v2'', v2''' (missing = 0,
/// entries at or beyond the model order are ignored).
struct GeneralizedIC {
    double v1 = 0.0;
    double dv1 = 0.0;
    std::vector<double> v2;
};

struct SwitchingEdge {
    double time = 0.0;
    double sign = 1.0;  ///< +1 rising, -1 falling
};

/// Everything needed to evaluate v2(t) in closed form.
struct GeneralizedExpansion {
    PoleResidue transient;  ///< initial-condition response
    PoleResidue step;       ///< step response minus its DC value
    double dc_gain = 1.0;   ///< K(0)/D(0)
    double V1 = 1.0;
    std::vector<SwitchingEdge> edges;
};

[[nodiscard]] Polynomial transient_numerator(const RationalLaplace& r, const GeneralizedIC& ic);

[[nodiscard]] GeneralizedExpansion partial_fractions(const RationalLaplace& r, const GeneralizedIC& ic,
                                                     const SwitchingPattern& forcing, double V1);

/// sum residue exp(pole t) for t >= 0 (real part), 0 for t < 0.
/// Throws ModelError(UnstablePole) if any pole has Re >= 0.
[[nodiscard]] double inverse_laplace_distinct(const PoleResidue& pr, double t);

/// Unit-step response of the expansion's transfer function.
[[nodiscard]] double step_response(const GeneralizedExpansion& e, double t);

[[nodiscard]] double evaluate(const GeneralizedExpansion& e, double t);

using Topology = std::variant<ParasiticParams, GeneralLoad>;

[[nodiscard]] RationalLaplace build_model(const CircuitParams& p, const Topology& topology);

/// v2 on dt = T/J for K J samples.
[[nodiscard]] Waveform simulate_generalized(const CircuitParams& p, const Topology& topology,
                                            const SwitchingPattern& pat, const GeneralizedIC& ic,
                                            std::size_t J);

}  // namespace tpc

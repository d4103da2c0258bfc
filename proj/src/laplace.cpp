#include "tpc/laplace.hpp"

#include "tpc/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace tpc {

// -----------------------------------------------------------------------------
// Polynomial helpers
// -----------------------------------------------------------------------------

namespace poly {

Complex evaluate(std::span<const double> c, Complex s) {
    Complex acc{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * s + *it;
    }
    return acc;
}

double evaluate(std::span<const double> c, double s) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * s + *it;
    }
    return acc;
}

Polynomial add(std::span<const double> a, std::span<const double> b) {
    Polynomial out(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

Polynomial multiply(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        return {0.0};
    }
    Polynomial out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

Polynomial scale(std::span<const double> a, double factor) {
    Polynomial out(a.begin(), a.end());
    for (double& v : out) v *= factor;
    return out;
}

Polynomial trim(Polynomial a) {
    while (a.size() > 1 && a.back() == 0.0) {
        a.pop_back();
    }
    if (a.empty()) {
        a.push_back(0.0);
    }
    return a;
}

std::size_t degree(std::span<const double> a) {
    std::size_t n = a.size();
    while (n > 1 && a[n - 1] == 0.0) {
        --n;
    }
    return n == 0 ? 0 : n - 1;
}

double norm(std::span<const double> a) {
    double acc = 0.0;
    for (double v : a) acc += v * v;
    return std::sqrt(acc);
}

Polynomial from_roots(std::span<const Complex> roots) {
    std::vector<Complex> c{Complex{1.0, 0.0}};
    for (const Complex& r : roots) {
        std::vector<Complex> next(c.size() + 1, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    Polynomial out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
    return out;
}

}  // namespace poly

// -----------------------------------------------------------------------------
// Topologies
// -----------------------------------------------------------------------------

void ParasiticParams::validate() const {
    for (double v : {esr_C, esl_C, r_ds_on_1, r_ds_on_2}) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ModelError(ErrorKind::InvalidArgument, "parasitic elements must be finite and >= 0");
        }
    }
    if (r_ds_on_1 != r_ds_on_2) {
        throw ModelError(ErrorKind::InvalidArgument,
                         "unequal switch on-resistances make the filter time-varying");
    }
}

void GeneralLoad::validate() const {
    if (!std::isfinite(R_L) || R_L <= 0.0) {
        throw ModelError(ErrorKind::InvalidArgument, "load R_L must be > 0");
    }
    if (!std::isfinite(L_L) || L_L < 0.0) {
        throw ModelError(ErrorKind::InvalidArgument, "load L_L must be >= 0");
    }
    if (C_L && (!std::isfinite(*C_L) || *C_L <= 0.0)) {
        throw ModelError(ErrorKind::InvalidArgument, "load C_L must be > 0 (omit it for a short)");
    }
}

std::string_view to_string(IcSymbol s) noexcept {
    switch (s) {
        case IcSymbol::V1: return "v1(0)";
        case IcSymbol::DV1: return "v1'(0)";
        case IcSymbol::V2: return "v2(0)";
        case IcSymbol::DV2: return "v2'(0)";
        case IcSymbol::D2V2: return "v2''(0)";
        case IcSymbol::D3V2: return "v2'''(0)";
    }
    return "?";
}

Complex RationalLaplace::transfer(Complex s) const {
    return poly::evaluate(num, s) / poly::evaluate(den, s);
}

RationalLaplace make_rational(Polynomial num, Polynomial den) {
    num = poly::trim(std::move(num));
    den = poly::trim(std::move(den));
    const std::size_t n = poly::degree(den);
    if (n < 2 || n > 4) {
        throw ModelError(ErrorKind::DegenerateTopology,
                         "denominator degree " + std::to_string(n) + " outside 2..4");
    }
    const std::size_t m = poly::degree(num);
    if (m >= n || m > 2) {
        throw ModelError(ErrorKind::DegenerateTopology, "forcing numerator degree too high");
    }
    const double lead = den.back();
    RationalLaplace r;
    r.num = poly::scale(num, 1.0 / lead);
    r.den = poly::scale(den, 1.0 / lead);

    // Coefficient of x^(i)(0) in the transformed n-th derivative terms.
    const auto shifted = [](const Polynomial& c, std::size_t i) {
        return Polynomial(c.begin() + static_cast<std::ptrdiff_t>(i + 1), c.end());
    };
    static constexpr IcSymbol kInput[] = {IcSymbol::V1, IcSymbol::DV1};
    static constexpr IcSymbol kOutput[] = {IcSymbol::V2, IcSymbol::DV2, IcSymbol::D2V2, IcSymbol::D3V2};
    for (std::size_t i = 0; i < m; ++i) {
        r.ic_numerators.emplace_back(kInput[i], poly::scale(shifted(r.num, i), -1.0));
    }
    for (std::size_t i = 0; i < n; ++i) {
        r.ic_numerators.emplace_back(kOutput[i], shifted(r.den, i));
    }
    return r;
}

RationalLaplace build_parasitic_model(const CircuitParams& p, const ParasiticParams& q) {
    p.validate();
    q.validate();
    // Capacitor branch r_c + s l_c + 1/(sC) = P(s) / (sC).
    const Polynomial cap{1.0, q.esr_C * p.C, q.esl_C * p.C};
    // Output node: R || cap = R P / (sCR + P); series arm r_s + sL.
    const Polynomial node_den = poly::add(cap, Polynomial{0.0, p.C * p.R_L});
    const Polynomial series{q.r_ds_on_1, p.L};
    Polynomial num = poly::scale(cap, p.R_L);
    Polynomial den = poly::add(num, poly::multiply(series, node_den));
    return make_rational(std::move(num), std::move(den));
}

RationalLaplace build_general_load_model(const CircuitParams& p, const GeneralLoad& gl) {
    p.validate();
    gl.validate();
    const Polynomial lc{0.0, 0.0, p.L * p.C};
    if (gl.C_L) {
        // Load impedance Q(s) / (s C_L), Q = 1 + s R C_L + s^2 L_L C_L.
        const double cl = *gl.C_L;
        const Polynomial q{1.0, gl.R_L * cl, gl.L_L * cl};
        Polynomial den = poly::add(poly::add(q, poly::multiply(lc, q)), Polynomial{0.0, 0.0, p.L * cl});
        return make_rational(q, std::move(den));
    }
    // Load impedance Z = R + s L_L.
    const Polynomial z{gl.R_L, gl.L_L};
    const Polynomial shunt = poly::add(Polynomial{1.0}, poly::multiply(Polynomial{0.0, p.C}, z));
    Polynomial den = poly::add(z, poly::multiply(Polynomial{0.0, p.L}, shunt));
    return make_rational(z, std::move(den));
}

RationalLaplace build_model(const CircuitParams& p, const Topology& topology) {
    return std::visit(
        [&p](const auto& t) -> RationalLaplace {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, ParasiticParams>) {
                return build_parasitic_model(p, t);
            } else {
                return build_general_load_model(p, t);
            }
        },
        topology);
}

// -----------------------------------------------------------------------------
// Roots
// -----------------------------------------------------------------------------

namespace {

Complex newton_polish(std::span<const double> c, Complex root) {
    const Polynomial dc = [&] {
        Polynomial d(c.size() > 1 ? c.size() - 1 : 1, 0.0);
        for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
        return d;
    }();
    Complex best = root;
    double best_res = std::abs(poly::evaluate(c, root));
    Complex x = root;
    for (int iter = 0; iter < 8 && best_res > 0.0; ++iter) {
        const Complex deriv = poly::evaluate(dc, x);
        if (deriv == Complex{0.0, 0.0}) {
            break;
        }
        x -= poly::evaluate(c, x) / deriv;
        const double res = std::abs(poly::evaluate(c, x));
        if (!(res < best_res)) {
            break;
        }
        best = x;
        best_res = res;
    }
    return best;
}

}  // namespace

std::vector<Complex> find_poles(std::span<const double> den_in) {
    const Polynomial den = poly::trim(Polynomial(den_in.begin(), den_in.end()));
    const std::size_t n = poly::degree(den);
    if (n < 1 || n > 4) {
        throw ModelError(ErrorKind::InvalidArgument, "find_poles supports degrees 1..4");
    }
    // Substitute s = sigma z so the scaled roots are of order one.
    std::size_t low = 0;
    while (den[low] == 0.0) ++low;
    const double sigma =
        low < n ? std::pow(std::abs(den[low] / den[n]), 1.0 / static_cast<double>(n - low)) : 1.0;

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        const double scaled = den[n - 1 - j] * std::pow(sigma, static_cast<double>(n - 1 - j)) /
                              (den[n] * std::pow(sigma, static_cast<double>(n)));
        companion(0, static_cast<Eigen::Index>(j)) = -scaled;
    }
    for (std::size_t i = 1; i < n; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        throw ModelError(ErrorKind::InvalidArgument, "companion eigenvalue iteration failed");
    }

    std::vector<Complex> roots;
    roots.reserve(n);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const Complex z = solver.eigenvalues()[i];
        if (z.imag() < 0.0) {
            continue;  // added as the conjugate of its partner
        }
        Complex s = newton_polish(den, z * sigma);
        if (z.imag() == 0.0) {
            s = Complex{s.real(), 0.0};
            roots.push_back(s);
        } else {
            s = Complex{s.real(), std::abs(s.imag())};
            roots.push_back(s);
            roots.push_back(std::conj(s));
        }
    }
    if (roots.size() != n) {
        throw ModelError(ErrorKind::InvalidArgument, "unpaired complex root");
    }

    // Backward error: residual against the size of the terms being summed. An
    // absolute bound on |D(r)| cannot be met for roots far above the others.
    for (const Complex& r : roots) {
        double terms = 0.0;
        for (std::size_t i = 0; i <= n; ++i) terms += std::abs(den[i]) * std::pow(std::abs(r), static_cast<double>(i));
        if (!(std::abs(poly::evaluate(den, r)) <= 1e-8 * terms)) {
            throw ModelError(ErrorKind::InvalidArgument, "root residual check failed");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double scale_ij = std::max(std::abs(roots[i]), std::abs(roots[j]));
            if (std::abs(roots[i] - roots[j]) <= 1e-6 * scale_ij) {
                throw ModelError(ErrorKind::RepeatedPoles, "poles are not distinct");
            }
        }
    }
    std::sort(roots.begin(), roots.end(), [](const Complex& x, const Complex& y) {
        return x.real() != y.real() ? x.real() > y.real() : x.imag() > y.imag();
    });
    return roots;
}

std::vector<Complex> find_poles(const RationalLaplace& r) { return find_poles(r.den); }

// -----------------------------------------------------------------------------
// Residues and inversion
// -----------------------------------------------------------------------------

namespace {

/// D'(p_i) from the factored form, which keeps precision for well separated poles.
Complex derivative_at(const std::vector<Complex>& poles, std::size_t i, double lead) {
    Complex acc{lead, 0.0};
    for (std::size_t j = 0; j < poles.size(); ++j) {
        if (j != i) acc *= poles[i] - poles[j];
    }
    return acc;
}

}  // namespace

PoleResidue partial_fractions(std::span<const double> num, std::span<const double> den) {
    const Polynomial d = poly::trim(Polynomial(den.begin(), den.end()));
    if (poly::degree(num) >= poly::degree(d) && poly::norm(num) != 0.0) {
        throw ModelError(ErrorKind::InvalidArgument, "partial fractions need a strictly proper function");
    }
    PoleResidue pr;
    pr.poles = find_poles(d);
    pr.residues.reserve(pr.poles.size());
    for (std::size_t i = 0; i < pr.poles.size(); ++i) {
        pr.residues.push_back(poly::evaluate(num, pr.poles[i]) / derivative_at(pr.poles, i, d.back()));
    }
    return pr;
}

Polynomial transient_numerator(const RationalLaplace& r, const GeneralizedIC& ic) {
    Polynomial total{0.0};
    for (const auto& [symbol, coeffs] : r.ic_numerators) {
        double value = 0.0;
        switch (symbol) {
            case IcSymbol::V1: value = ic.v1; break;
            case IcSymbol::DV1: value = ic.dv1; break;
            case IcSymbol::V2: value = ic.v2.size() > 0 ? ic.v2[0] : 0.0; break;
            case IcSymbol::DV2: value = ic.v2.size() > 1 ? ic.v2[1] : 0.0; break;
            case IcSymbol::D2V2: value = ic.v2.size() > 2 ? ic.v2[2] : 0.0; break;
            case IcSymbol::D3V2: value = ic.v2.size() > 3 ? ic.v2[3] : 0.0; break;
        }
        if (value != 0.0) {
            total = poly::add(total, poly::scale(coeffs, value));
        }
    }
    return total;
}

GeneralizedExpansion partial_fractions(const RationalLaplace& r, const GeneralizedIC& ic,
                                       const SwitchingPattern& forcing, double V1) {
    GeneralizedExpansion e;
    e.V1 = V1;
    e.transient = partial_fractions(transient_numerator(r, ic), r.den);

    const double d0 = r.den.front();
    if (d0 == 0.0) {
        throw ModelError(ErrorKind::UnstablePole, "pole at s = 0");
    }
    e.dc_gain = r.num.front() / d0;
    e.step.poles = e.transient.poles;
    const double lead = r.den.back();
    for (std::size_t i = 0; i < e.step.poles.size(); ++i) {
        const Complex p = e.step.poles[i];
        e.step.residues.push_back(poly::evaluate(r.num, p) / (p * derivative_at(e.step.poles, i, lead)));
    }

    const double T = forcing.period();
    e.edges.reserve(2 * forcing.size());
    for (std::size_t k = 0; k < forcing.size(); ++k) {
        const double base = static_cast<double>(k) * T;
        e.edges.push_back({base + forcing.start(k), 1.0});
        e.edges.push_back({base + forcing.end(k), -1.0});
    }
    return e;
}

double inverse_laplace_distinct(const PoleResidue& pr, double t) {
    for (const Complex& p : pr.poles) {
        if (!(p.real() < 0.0)) {
            throw ModelError(ErrorKind::UnstablePole, "pole with non-negative real part");
        }
    }
    if (t < 0.0) {
        return 0.0;
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < pr.poles.size(); ++i) {
        acc += pr.residues[i] * std::exp(pr.poles[i] * t);
    }
    return acc.real();
}

double step_response(const GeneralizedExpansion& e, double t) {
    if (t < 0.0) {
        return 0.0;
    }
    return e.dc_gain + inverse_laplace_distinct(e.step, t);
}

double evaluate(const GeneralizedExpansion& e, double t) {
    double v = inverse_laplace_distinct(e.transient, t);
    double forced = 0.0;
    for (const SwitchingEdge& edge : e.edges) {
        if (edge.time > t) {
            break;
        }
        forced += edge.sign * step_response(e, t - edge.time);
    }
    return v + e.V1 * forced;
}

Waveform simulate_generalized(const CircuitParams& p, const Topology& topology, const SwitchingPattern& pat,
                              const GeneralizedIC& ic, std::size_t J) {
    if (J == 0) {
        throw ModelError(ErrorKind::InvalidArgument, "J must be >= 1");
    }
    const RationalLaplace model = build_model(p, topology);
    const GeneralizedExpansion e = partial_fractions(model, ic, pat, p.V1);
    const double dt = pat.period() / static_cast<double>(J);
    const std::size_t count = pat.size() * J;
    Waveform w{dt, 0.0, std::vector<double>(count)};
    for (std::size_t n = 0; n < count; ++n) {
        w.samples[n] = evaluate(e, static_cast<double>(n) * dt);
    }
    return w;
}

}  // namespace tpc

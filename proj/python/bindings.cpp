#include "tpc/accuracy.hpp"
#include "tpc/analytic.hpp"
#include "tpc/circuit.hpp"
#include "tpc/discrete.hpp"
#include "tpc/equalization.hpp"
#include "tpc/errors.hpp"
#include "tpc/laplace.hpp"
#include "tpc/modulation.hpp"
#include "tpc/spectrum.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace tpc;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

// Waveforms cross the boundary as (t, samples) array pairs.
py::tuple to_arrays(const Waveform& w) {
    std::vector<double> t(w.size());
    for (std::size_t n = 0; n < w.size(); ++n) t[n] = w.time(n);
    return py::make_tuple(to_array(t), to_array(w.samples));
}

Waveform from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& x, double dt,
                    double t0) {
    const auto* p = x.data();
    return Waveform{dt, t0, std::vector<double>(p, p + x.size())};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Buck-converter power line communication models";

    py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);

    py::class_<CircuitParams>(m, "CircuitParams")
        .def(py::init([](double L, double C, double R_L, double V1) { return CircuitParams{L, C, R_L, V1}; }),
             py::arg("L"), py::arg("C"), py::arg("R_L"), py::arg("V1") = 1.0)
        .def_readwrite("L", &CircuitParams::L)
        .def_readwrite("C", &CircuitParams::C)
        .def_readwrite("R_L", &CircuitParams::R_L)
        .def_readwrite("V1", &CircuitParams::V1)
        .def("validate", &CircuitParams::validate)
        .def("underdamped_valid", &CircuitParams::underdamped_valid);

    py::class_<Dynamics>(m, "Dynamics")
        .def_readonly("a", &Dynamics::a)
        .def_readonly("b", &Dynamics::b)
        .def_readonly("s01", &Dynamics::s01)
        .def_readonly("s02", &Dynamics::s02);

    py::class_<InitialConditions>(m, "InitialConditions")
        .def(py::init([](double v2_0, double dv2_0) { return InitialConditions{v2_0, dv2_0}; }),
             py::arg("v2_0") = 0.0, py::arg("dv2_0") = 0.0)
        .def_readwrite("v2_0", &InitialConditions::v2_0)
        .def_readwrite("dv2_0", &InitialConditions::dv2_0);

    m.def("derive_dynamics", &derive_dynamics, py::arg("p"));
    m.def("frequency_response", &frequency_response, py::arg("p"), py::arg("f_hz"));
    m.def("cutoff_frequency", &cutoff_frequency, py::arg("p"));
    m.def("pulse_shape_gtx", &pulse_shape_gtx, py::arg("d"), py::arg("Tp"), py::arg("t"));

    py::enum_<Scheme>(m, "Scheme")
        .value("VPWM", Scheme::VPWM)
        .value("VPPM", Scheme::VPPM)
        .value("Unmodulated", Scheme::Unmodulated);

    py::class_<ModulationConfig>(m, "ModulationConfig")
        .def(py::init([](Scheme s, double T, double delta, double depth) {
                 return ModulationConfig{s, T, delta, depth};
             }),
             py::arg("scheme") = Scheme::VPWM, py::arg("T") = 1e-6, py::arg("delta") = 0.5, py::arg("depth") = 0.0)
        .def_readwrite("scheme", &ModulationConfig::scheme)
        .def_readwrite("T", &ModulationConfig::T)
        .def_readwrite("delta", &ModulationConfig::delta)
        .def_readwrite("depth", &ModulationConfig::depth)
        .def("validate", &ModulationConfig::validate);

    py::class_<SwitchingPattern>(m, "SwitchingPattern")
        .def_property_readonly("period", &SwitchingPattern::period)
        .def("__len__", &SwitchingPattern::size)
        .def_property_readonly("starts", [](const SwitchingPattern& p) {
            return std::vector<double>(p.starts().begin(), p.starts().end());
        })
        .def_property_readonly("ends", [](const SwitchingPattern& p) {
            return std::vector<double>(p.ends().begin(), p.ends().end());
        });

    m.def("alternating_bits", &alternating_bits, py::arg("count"));
    m.def(
        "encode", [](const Bits& bits, const ModulationConfig& cfg) { return encode(bits, cfg); }, py::arg("bits"),
        py::arg("cfg"));

    m.def(
        "sample_output",
        [](const Dynamics& d, const InitialConditions& ic, const SwitchingPattern& pat, double V1, double dt,
           std::size_t count) { return to_arrays(sample_output(d, ic, pat, V1, dt, count)); },
        py::arg("d"), py::arg("ic"), py::arg("pat"), py::arg("V1"), py::arg("dt"), py::arg("count"));

    m.def(
        "ripple_spectrum",
        [](const CircuitParams& p, const SwitchingPattern& pat, const std::vector<double>& f) {
            const SpectrumGrid g = ripple_spectrum(p, derive_dynamics(p), pat, f);
            return py::make_tuple(to_array(g.frequencies), g.values, g.dc_mass);
        },
        py::arg("p"), py::arg("pat"), py::arg("frequencies"));

    py::enum_<Variant>(m, "Variant")
        .value("EXACT", Variant::Exact)
        .value("SIMPLIFIED", Variant::Simplified)
        .value("PREDICTIVE", Variant::Predictive);
    py::enum_<ConductionMode>(m, "ConductionMode")
        .value("CCM", ConductionMode::CCM)
        .value("DCM", ConductionMode::DCM);

    py::class_<DiscreteParams>(m, "DiscreteParams")
        .def_readonly("alpha", &DiscreteParams::alpha)
        .def_readonly("beta", &DiscreteParams::beta)
        .def_readonly("gamma", &DiscreteParams::gamma)
        .def_readonly("kappa", &DiscreteParams::kappa)
        .def_readonly("mu", &DiscreteParams::mu)
        .def_readonly("dt", &DiscreteParams::dt);

    m.def("derive_params", &derive_params, py::arg("p"), py::arg("J"), py::arg("T"), py::arg("variant"));
    m.def(
        "simulate",
        [](const CircuitParams& p, const SwitchingPattern& pat, const InitialConditions& ic, std::size_t J,
           Variant v, ConductionMode mode) {
            const DiscreteTrajectory tr = simulate(p, pat, ic, J, v, mode);
            const py::tuple tv = to_arrays(tr.v2);
            return py::make_tuple(tv[0], tv[1], to_array(tr.iL.samples));
        },
        py::arg("p"), py::arg("pat"), py::arg("ic"), py::arg("J"), py::arg("variant") = Variant::Exact,
        py::arg("mode") = ConductionMode::CCM);

    py::class_<AccuracyReport>(m, "AccuracyReport")
        .def_readonly("J", &AccuracyReport::J)
        .def_readonly("variant", &AccuracyReport::variant)
        .def_readonly("bias", &AccuracyReport::bias)
        .def_readonly("reference_offset", &AccuracyReport::reference_offset)
        .def_readonly("mse", &AccuracyReport::mse)
        .def_readonly("n_samples", &AccuracyReport::n_samples)
        .def_readonly("settle_symbols", &AccuracyReport::settle_symbols);

    m.def(
        "sweep",
        [](const CircuitParams& p, const ModulationConfig& cfg, const Bits& bits, const std::vector<std::size_t>& Js,
           const std::vector<Variant>& variants, std::size_t settle_symbols) {
            SweepOptions opt;
            opt.settle_symbols = settle_symbols;
            return sweep(p, cfg, bits, Js, variants, opt);
        },
        py::arg("p"), py::arg("cfg"), py::arg("bits"), py::arg("J_list"), py::arg("variants"),
        py::arg("settle_symbols") = 8);

    m.def("zf_response", &zf_response, py::arg("p"), py::arg("f_hz"), py::arg("eps") = 0.0);
    m.def(
        "equalize",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& r, double dt,
           const CircuitParams& p, double eps) {
            return to_array(equalize_frequency_domain(from_array(r, dt, 0.0), p, eps).samples);
        },
        py::arg("samples"), py::arg("dt"), py::arg("p"), py::arg("eps") = 0.0);
    m.def(
        "brute_force_detect",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& r, const CircuitParams& p,
           const ModulationConfig& cfg, const InitialConditions& ic, std::size_t J, std::size_t K) {
            return brute_force_detect(from_array(r, cfg.T / static_cast<double>(J), 0.0), p, cfg, ic, J, K);
        },
        py::arg("samples"), py::arg("p"), py::arg("cfg"), py::arg("ic"), py::arg("J"), py::arg("K"));

    py::class_<ParasiticParams>(m, "ParasiticParams")
        .def(py::init([](double esr, double esl, double r1, double r2) { return ParasiticParams{esr, esl, r1, r2}; }),
             py::arg("esr_C") = 0.0, py::arg("esl_C") = 0.0, py::arg("r_ds_on_1") = 0.0, py::arg("r_ds_on_2") = 0.0)
        .def_readwrite("esr_C", &ParasiticParams::esr_C)
        .def_readwrite("esl_C", &ParasiticParams::esl_C)
        .def_readwrite("r_ds_on_1", &ParasiticParams::r_ds_on_1)
        .def_readwrite("r_ds_on_2", &ParasiticParams::r_ds_on_2);

    py::class_<GeneralLoad>(m, "GeneralLoad")
        .def(py::init([](double R_L, double L_L, std::optional<double> C_L) { return GeneralLoad{R_L, L_L, C_L}; }),
             py::arg("R_L") = 10.0, py::arg("L_L") = 0.0, py::arg("C_L") = py::none())
        .def_readwrite("R_L", &GeneralLoad::R_L)
        .def_readwrite("L_L", &GeneralLoad::L_L)
        .def_readwrite("C_L", &GeneralLoad::C_L);

    py::class_<RationalLaplace>(m, "RationalLaplace")
        .def_readonly("num", &RationalLaplace::num)
        .def_readonly("den", &RationalLaplace::den)
        .def_property_readonly("order", &RationalLaplace::order)
        .def("transfer", &RationalLaplace::transfer, py::arg("s"));

    m.def("build_model", &build_model, py::arg("p"), py::arg("topology"));
    m.def(
        "find_poles", [](const RationalLaplace& r) { return find_poles(r); }, py::arg("model"));
    m.def(
        "simulate_generalized",
        [](const CircuitParams& p, const Topology& topo, const SwitchingPattern& pat, double v1, double dv1,
           const std::vector<double>& v2, std::size_t J) {
            return to_arrays(simulate_generalized(p, topo, pat, GeneralizedIC{v1, dv1, v2}, J));
        },
        py::arg("p"), py::arg("topology"), py::arg("pat"), py::arg("v1") = 0.0, py::arg("dv1") = 0.0,
        py::arg("v2") = std::vector<double>{}, py::arg("J") = 50);
}

#include "scenario.hpp"

#include "output.hpp"
#include "tpc/accuracy.hpp"
#include "tpc/analytic.hpp"
#include "tpc/errors.hpp"
#include "tpc/equalization.hpp"
#include "tpc/spectrum.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <set>

namespace tpc::cli {

using nlohmann::json;

namespace {

// -----------------------------------------------------------------------------
// Field access with path-qualified errors. Every value read is copied into
// `resolved` so the sidecar records defaults too; unknown keys are rejected.
// -----------------------------------------------------------------------------

class Fields {
public:
    Fields(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) {
            throw ConfigError(path_, "must be an object");
        }
    }

    [[nodiscard]] std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    [[nodiscard]] bool has(const char* key) const { return obj_.contains(key) && !obj_.at(key).is_null(); }

    const json& raw(const char* key) {
        used_.insert(key);
        if (!obj_.contains(key)) {
            throw ConfigError(at(key), "is required");
        }
        return obj_.at(key);
    }

    double number(const char* key, std::optional<double> fallback = std::nullopt) {
        used_.insert(key);
        double v = 0.0;
        if (!obj_.contains(key)) {
            if (!fallback) throw ConfigError(at(key), "is required");
            v = *fallback;
        } else {
            const json& x = obj_.at(key);
            if (!x.is_number()) throw ConfigError(at(key), "must be a number");
            v = x.get<double>();
            if (!std::isfinite(v)) throw ConfigError(at(key), "must be finite");
        }
        resolved[key] = v;
        return v;
    }

    double positive(const char* key, std::optional<double> fallback = std::nullopt) {
        const double v = number(key, fallback);
        if (!(v > 0.0)) throw ConfigError(at(key), "must be > 0");
        return v;
    }

    double non_negative(const char* key, std::optional<double> fallback = std::nullopt) {
        const double v = number(key, fallback);
        if (v < 0.0) throw ConfigError(at(key), "must be >= 0");
        return v;
    }

    std::size_t count(const char* key, std::optional<std::size_t> fallback, std::size_t min_value = 1) {
        used_.insert(key);
        std::size_t v = 0;
        if (!obj_.contains(key)) {
            if (!fallback) throw ConfigError(at(key), "is required");
            v = *fallback;
        } else {
            v = as_count(obj_.at(key), at(key));
        }
        if (v < min_value) throw ConfigError(at(key), "must be >= " + std::to_string(min_value));
        resolved[key] = v;
        return v;
    }

    bool flag(const char* key, bool fallback) {
        used_.insert(key);
        bool v = fallback;
        if (obj_.contains(key)) {
            if (!obj_.at(key).is_boolean()) throw ConfigError(at(key), "must be true or false");
            v = obj_.at(key).get<bool>();
        }
        resolved[key] = v;
        return v;
    }

    std::string text(const char* key, std::optional<std::string> fallback = std::nullopt) {
        used_.insert(key);
        std::string v;
        if (!obj_.contains(key)) {
            if (!fallback) throw ConfigError(at(key), "is required");
            v = *fallback;
        } else {
            if (!obj_.at(key).is_string()) throw ConfigError(at(key), "must be a string");
            v = obj_.at(key).get<std::string>();
        }
        resolved[key] = v;
        return v;
    }

    void mark(const char* key) { used_.insert(key); }

    void finish() const {
        for (const auto& [key, value] : obj_.items()) {
            if (!used_.count(key)) throw ConfigError(at(key), "unknown field");
        }
    }

    static std::size_t as_count(const json& x, const std::string& where) {
        if (x.is_number_unsigned()) return x.get<std::size_t>();
        if (x.is_number_integer() && x.get<long long>() >= 0) return static_cast<std::size_t>(x.get<long long>());
        throw ConfigError(where, "must be a non-negative integer");
    }

    json resolved = json::object();

private:
    const json& obj_;
    std::string path_;
    std::set<std::string> used_;
};

Variant parse_variant(const std::string& s, const std::string& where) {
    if (s == "exact") return Variant::Exact;
    if (s == "simplified") return Variant::Simplified;
    if (s == "predictive") return Variant::Predictive;
    throw ConfigError(where, "must be one of exact, simplified, predictive");
}

ConductionMode parse_mode(const std::string& s, const std::string& where) {
    if (s == "ccm") return ConductionMode::CCM;
    if (s == "dcm") return ConductionMode::DCM;
    throw ConfigError(where, "must be ccm or dcm");
}

CircuitParams parse_circuit(const json& j, const std::string& path, json& resolved) {
    Fields f(j, path);
    CircuitParams p;
    p.L = f.positive("L");
    p.C = f.positive("C");
    p.R_L = f.positive("R_L");
    p.V1 = f.positive("V1", 1.0);
    f.finish();
    resolved = f.resolved;
    return p;
}

ModulationConfig parse_modulation(const json& j, json& resolved) {
    Fields f(j, "modulation");
    ModulationConfig m;
    const std::string scheme = f.text("scheme", "vpwm");
    if (scheme == "vpwm") {
        m.scheme = Scheme::VPWM;
    } else if (scheme == "vppm") {
        m.scheme = Scheme::VPPM;
    } else if (scheme == "unmodulated") {
        m.scheme = Scheme::Unmodulated;
    } else {
        throw ConfigError(f.at("scheme"), "must be vpwm, vppm or unmodulated");
    }
    m.T = f.positive("T", 1e-6);
    m.delta = f.number("delta");
    if (!(m.delta > 0.0 && m.delta < 1.0)) throw ConfigError(f.at("delta"), "must lie in (0, 1)");
    m.depth = f.non_negative("depth", 0.0);
    f.finish();
    try {
        m.validate();
    } catch (const ModelError& e) {
        throw ConfigError(f.at("depth"), e.what());
    }
    resolved = f.resolved;
    return m;
}

Bits parse_bits(const json& j, std::uint64_t seed, std::string& text) {
    Bits bits;
    if (j.is_string()) {
        for (char ch : j.get<std::string>()) {
            if (ch != '0' && ch != '1') throw ConfigError("bits", "string may only contain 0 and 1");
            bits.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
    } else if (j.is_array()) {
        for (const json& b : j) {
            if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1))
                throw ConfigError("bits", "array entries must be 0 or 1");
            bits.push_back(static_cast<std::uint8_t>(b.get<int>()));
        }
    } else {
        Fields f(j, "bits");
        const std::string pattern = f.text("pattern");
        const std::size_t K = f.count("K", std::nullopt, 0);
        f.finish();
        if (pattern == "alternating") {
            bits = alternating_bits(K);
        } else if (pattern == "random") {
            std::mt19937_64 rng(seed);
            bits.resize(K);
            for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1U);
        } else if (pattern == "zeros" || pattern == "ones") {
            bits.assign(K, pattern == "ones" ? 1 : 0);
        } else {
            throw ConfigError("bits.pattern", "must be alternating, random, zeros or ones");
        }
    }
    text.clear();
    for (auto b : bits) text += static_cast<char>('0' + b);
    return bits;
}

InitialConditions parse_ic(const json* j, const ModulationConfig& m, const CircuitParams& p, json& resolved) {
    if (j == nullptr || (j->is_string() && j->get<std::string>() == "steady")) {
        resolved = {{"v2_0", m.delta * p.V1}, {"dv2_0", 0.0}};
        return {m.delta * p.V1, 0.0};
    }
    if (j->is_string() && j->get<std::string>() == "zero") {
        resolved = {{"v2_0", 0.0}, {"dv2_0", 0.0}};
        return {};
    }
    if (j->is_string()) throw ConfigError("ic", "must be \"steady\", \"zero\" or an object");
    Fields f(*j, "ic");
    InitialConditions ic{f.number("v2_0", 0.0), f.number("dv2_0", 0.0)};
    f.finish();
    resolved = f.resolved;
    return ic;
}

std::vector<std::size_t> parse_count_list(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ConfigError(where, "must be a non-empty array");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::size_t v = Fields::as_count(j[i], where + "[" + std::to_string(i) + "]");
        if (v == 0) throw ConfigError(where + "[" + std::to_string(i) + "]", "must be >= 1");
        out.push_back(v);
    }
    return out;
}

Topology parse_topology(const json& j, const CircuitParams& circuit, json& resolved) {
    Fields f(j, "run.topology");
    const std::string type = f.text("type");
    if (type == "parasitic") {
        ParasiticParams q;
        q.esr_C = f.non_negative("esr_C", 0.0);
        q.esl_C = f.non_negative("esl_C", 0.0);
        q.r_ds_on_1 = f.non_negative("r_ds_on_1", 0.0);
        q.r_ds_on_2 = f.non_negative("r_ds_on_2", q.r_ds_on_1);
        if (q.r_ds_on_1 != q.r_ds_on_2) {
            throw ConfigError(f.at("r_ds_on_2"), "must equal r_ds_on_1 (time-invariant model)");
        }
        f.finish();
        resolved = f.resolved;
        return q;
    }
    if (type == "general_load") {
        GeneralLoad gl;
        gl.R_L = f.positive("R_L", circuit.R_L);
        gl.L_L = f.non_negative("L_L", 0.0);
        if (f.has("C_L")) {
            const json& cl = f.raw("C_L");
            if (cl.is_string() && cl.get<std::string>() == "inf") {
                f.resolved["C_L"] = "inf";
            } else {
                gl.C_L = f.positive("C_L");
            }
        } else {
            f.mark("C_L");
        }
        f.finish();
        resolved = f.resolved;
        return gl;
    }
    throw ConfigError(f.at("type"), "must be parasitic or general_load");
}

RunSpec parse_run(const json& j, const Scenario& s, json& resolved) {
    Fields f(j, "run");
    const std::string kind = f.text("kind");
    RunSpec spec;
    if (kind == "analytic") {
        AnalyticRun r;
        r.J = f.count("J", 100);
        r.symbols = f.count("symbols", s.bits.size(), 0);
        r.components = f.flag("components", false);
        spec = r;
    } else if (kind == "discrete") {
        DiscreteRun r;
        r.J = f.count("J", 64);
        r.variant = parse_variant(f.text("variant", "exact"), f.at("variant"));
        r.mode = parse_mode(f.text("mode", "ccm"), f.at("mode"));
        spec = r;
    } else if (kind == "spectrum") {
        SpectrumRun r;
        r.f_min = f.positive("f_min", 1e3);
        r.f_max = f.positive("f_max", 1e8);
        if (r.f_max <= r.f_min) throw ConfigError(f.at("f_max"), "must exceed f_min");
        r.points = f.count("points", 2001, 2);
        const std::string spacing = f.text("spacing", "log");
        if (spacing != "log" && spacing != "linear") throw ConfigError(f.at("spacing"), "must be log or linear");
        r.log_spacing = spacing == "log";
        r.fft_J = f.count("fft_J", 0, 0);
        spec = r;
    } else if (kind == "accuracy") {
        AccuracyRun r;
        r.J_list = f.has("J_list") ? parse_count_list(f.raw("J_list"), f.at("J_list"))
                                   : std::vector<std::size_t>{2, 4, 8, 16, 32, 64, 128, 256};
        f.resolved["J_list"] = r.J_list;
        std::vector<std::string> names{"exact", "simplified", "predictive"};
        if (f.has("variants")) {
            const json& v = f.raw("variants");
            if (!v.is_array() || v.empty()) throw ConfigError(f.at("variants"), "must be a non-empty array");
            names.clear();
            for (const json& x : v) {
                if (!x.is_string()) throw ConfigError(f.at("variants"), "entries must be strings");
                names.push_back(x.get<std::string>());
            }
        }
        for (const auto& n : names) r.variants.push_back(parse_variant(n, f.at("variants")));
        f.resolved["variants"] = names;
        r.settle_symbols = f.count("settle_symbols", 8, 0);
        if (r.settle_symbols >= s.bits.size()) {
            throw ConfigError(f.at("settle_symbols"), "must be smaller than the number of bits");
        }
        r.align_predictive = f.flag("align_predictive", true);
        r.mode = parse_mode(f.text("mode", "ccm"), f.at("mode"));
        spec = r;
    } else if (kind == "equalize") {
        EqualizeRun r;
        r.J = f.count("J", 20);
        r.c = f.number("c", 1.0);
        if (f.has("snr_db") && f.has("sigma")) throw ConfigError(f.at("snr_db"), "give either sigma or snr_db");
        if (f.has("snr_db")) {
            // resolved to sigma when the waveform is known; keep the request
            f.number("snr_db");
            r.sigma = -1.0;
        } else {
            r.sigma = f.non_negative("sigma", 0.0);
        }
        r.eps = f.non_negative("eps", 0.0);
        if (f.has("ic_estimate")) {
            json est;
            r.ic_estimate = parse_ic(&f.raw("ic_estimate"), s.modulation, s.circuit, est);
            f.resolved["ic_estimate"] = est;
        } else {
            r.ic_estimate = s.ic;
            f.resolved["ic_estimate"] = {{"v2_0", s.ic.v2_0}, {"dv2_0", s.ic.dv2_0}};
        }
        r.detect = f.flag("detect", false);
        if (r.detect && s.bits.size() > 12) {
            throw ConfigError(f.at("detect"), "exhaustive detection supports at most 12 bits");
        }
        spec = r;
    } else if (kind == "generalized") {
        GeneralizedRun r;
        r.J = f.count("J", 50);
        json topo;
        r.topology = parse_topology(f.raw("topology"), s.circuit, topo);
        f.resolved["topology"] = topo;
        r.ic.v2 = {s.ic.v2_0, s.ic.dv2_0};
        if (f.has("ic")) {
            Fields g(f.raw("ic"), "run.ic");
            r.ic.v1 = g.number("v1", 0.0);
            r.ic.dv1 = g.number("dv1", 0.0);
            if (g.has("v2")) {
                const json& v = g.raw("v2");
                if (!v.is_array() || v.size() > 4) throw ConfigError(g.at("v2"), "must be an array of up to 4 numbers");
                r.ic.v2.clear();
                for (const json& x : v) {
                    if (!x.is_number()) throw ConfigError(g.at("v2"), "entries must be numbers");
                    r.ic.v2.push_back(x.get<double>());
                }
            }
            g.finish();
        }
        f.resolved["ic"] = {{"v1", r.ic.v1}, {"dv1", r.ic.dv1}, {"v2", r.ic.v2}};
        spec = r;
    } else if (kind == "pulse_shape") {
        PulseShapeRun r;
        if (f.has("circuits")) {
            const json& list = f.raw("circuits");
            if (!list.is_array() || list.empty()) throw ConfigError(f.at("circuits"), "must be a non-empty array");
            json out = json::array();
            for (std::size_t i = 0; i < list.size(); ++i) {
                json one;
                r.circuits.push_back(parse_circuit(list[i], f.at("circuits") + "[" + std::to_string(i) + "]", one));
                out.push_back(one);
            }
            f.resolved["circuits"] = out;
        } else {
            r.circuits = {s.circuit};
        }
        if (f.has("deltas")) {
            const json& list = f.raw("deltas");
            if (!list.is_array() || list.empty()) throw ConfigError(f.at("deltas"), "must be a non-empty array");
            for (const json& x : list) {
                if (!x.is_number() || !(x.get<double>() > 0.0 && x.get<double>() < 1.0))
                    throw ConfigError(f.at("deltas"), "entries must lie in (0, 1)");
                r.deltas.push_back(x.get<double>());
            }
        } else {
            r.deltas = {s.modulation.delta};
        }
        f.resolved["deltas"] = r.deltas;
        r.t_min = f.number("t_min", -s.modulation.T);
        r.t_max = f.number("t_max", 50.0 * s.modulation.T);
        if (r.t_max <= r.t_min) throw ConfigError(f.at("t_max"), "must exceed t_min");
        r.points = f.count("points", 2001, 2);
        spec = r;
    } else if (kind == "params") {
        ParamsRun r;
        r.C_min = f.positive("C_min", 5e-7);
        r.C_max = f.positive("C_max", 5e-4);
        if (r.C_max <= r.C_min) throw ConfigError(f.at("C_max"), "must exceed C_min");
        r.LC = f.positive("LC", 1e-11);
        r.points = f.count("points", 61, 2);
        r.J = f.count("J", 10);
        spec = r;
    } else {
        throw ConfigError(f.at("kind"),
                          "must be one of analytic, discrete, spectrum, accuracy, equalize, generalized, "
                          "pulse_shape, params");
    }
    f.finish();
    resolved = f.resolved;
    return spec;
}

// -----------------------------------------------------------------------------
// Runs
// -----------------------------------------------------------------------------

namespace fs = std::filesystem;

struct Context {
    const Scenario& s;
    fs::path dir;
    RunResult result;

    void table(const std::string& file, const CsvBuilder& csv, const json& results = json::object()) {
        const fs::path path = dir / file;
        write_table(path, csv, s.resolved, results);
        this->result.files.push_back(path);
    }
};

void run(Context& ctx, const AnalyticRun& r) {
    const Scenario& s = ctx.s;
    const Dynamics d = derive_dynamics(s.circuit);
    const SwitchingPattern pat = encode(s.bits, s.modulation);
    const double dt = s.modulation.T / static_cast<double>(r.J);
    const std::size_t count = r.symbols * r.J;
    std::vector<std::string> cols{"t_s", "v2_volts"};
    if (r.components) {
        cols.emplace_back("transient_volts");
        cols.emplace_back("data_volts");
    }
    CsvBuilder csv(cols);
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t n = 0; n < count; ++n) {
        const double t = static_cast<double>(n) * dt;
        const double vt = transient_component(d, s.ic, t);
        const double vd = data_component(d, pat, s.circuit.V1, t);
        lo = std::min(lo, vt + vd);
        hi = std::max(hi, vt + vd);
        if (r.components) {
            csv.row({t, vt + vd, vt, vd});
        } else {
            csv.row({t, vt + vd});
        }
    }
    ctx.table("waveform.csv", csv,
              {{"a_per_s", d.a}, {"b_rad_per_s", d.b}, {"v2_min", count ? lo : 0.0}, {"v2_max", count ? hi : 0.0}});
}

void run(Context& ctx, const DiscreteRun& r) {
    const Scenario& s = ctx.s;
    const SwitchingPattern pat = encode(s.bits, s.modulation);
    const DiscreteTrajectory tr = simulate(s.circuit, pat, s.ic, r.J, r.variant, r.mode);
    CsvBuilder csv({"t_s", "v2_volts", "iL_amperes"});
    for (std::size_t n = 0; n < tr.v2.size(); ++n) {
        csv.row({tr.v2.time(n), tr.v2.samples[n], tr.iL.samples[n]});
    }
    const DiscreteParams dp = derive_params(s.circuit, r.J, s.modulation.T, r.variant);
    ctx.table("waveform.csv", csv,
              {{"alpha", dp.alpha}, {"beta", dp.beta}, {"gamma", dp.gamma}, {"kappa", dp.kappa}, {"mu", dp.mu},
               {"dt_s", dp.dt}});
}

void spectrum_rows(CsvBuilder& csv, const SpectrumGrid& g, double norm) {
    for (std::size_t i = 0; i < g.frequencies.size(); ++i) {
        const Complex v = g.values[i];
        csv.row({g.frequencies[i], v.real(), v.imag(), 20.0 * std::log10(std::abs(v) / norm)});
    }
}

void run(Context& ctx, const SpectrumRun& r) {
    const Scenario& s = ctx.s;
    const Dynamics d = derive_dynamics(s.circuit);
    const SwitchingPattern pat = encode(s.bits, s.modulation);
    std::vector<double> grid;
    if (r.log_spacing) {
        grid = log_grid(r.f_min, r.f_max, r.points);
    } else {
        for (std::size_t i = 0; i < r.points; ++i)
            grid.push_back(r.f_min + (r.f_max - r.f_min) * static_cast<double>(i) / static_cast<double>(r.points - 1));
    }
    const SpectrumGrid g = ripple_spectrum(s.circuit, d, pat, grid);
    const double norm = s.circuit.V1 * s.modulation.T;
    const double f3 = cutoff_frequency(s.circuit);
    CsvBuilder csv({"frequency_hz", "re", "im", "mag_db"});
    spectrum_rows(csv, g, norm);
    json results{{"dc_mass_volts", g.dc_mass}, {"f_3db_hz", f3}, {"mag_db_reference", "V1 * T"}};
    const double lo = std::max(10 * f3, r.f_min), hi = std::min(100 * f3, r.f_max);
    if (lo < hi) {
        const double slope = envelope_slope_db_per_decade(g, lo, hi);
        results["envelope_slope_db_per_decade"] = std::isnan(slope) ? json(nullptr) : json(slope);
        results["slope_band_hz"] = {lo, hi};
    }
    ctx.table("spectrum.csv", csv, results);

    if (r.fft_J > 0) {
        const Waveform w = sample_output(d, s.ic, pat, s.circuit.V1, s.modulation.T / static_cast<double>(r.fft_J),
                                         s.bits.size() * r.fft_J);
        const SpectrumGrid f = spectrum_via_fft(w, s.modulation.delta * s.circuit.V1);
        CsvBuilder fcsv({"frequency_hz", "re", "im", "mag_db"});
        spectrum_rows(fcsv, f, norm);
        ctx.table("spectrum_fft.csv", fcsv, {{"dc_removed_volts", s.modulation.delta * s.circuit.V1}});
    }
}

void run(Context& ctx, const AccuracyRun& r) {
    const Scenario& s = ctx.s;
    SweepOptions opt;
    opt.settle_symbols = r.settle_symbols;
    opt.align_predictive = r.align_predictive;
    opt.mode = r.mode;
    const auto reports = sweep(s.circuit, s.modulation, s.bits, r.J_list, r.variants, opt);
    const double V1 = s.circuit.V1;
    CsvBuilder csv({"J", "variant", "bias_over_v1", "mse_over_v1sq"});
    json rows = json::array();
    for (const AccuracyReport& a : reports) {
        csv.row({a.J, std::string(to_string(a.variant)), a.bias / V1, a.mse / (V1 * V1)});
        rows.push_back({{"J", a.J},
                        {"variant", to_string(a.variant)},
                        {"reference_offset_over_v1", a.reference_offset / V1},
                        {"n_samples", a.n_samples},
                        {"settle_symbols", a.settle_symbols}});
    }
    json slopes = json::object();
    for (const Variant v : r.variants) {
        std::vector<std::size_t> js;
        std::vector<double> m;
        for (const AccuracyReport& a : reports) {
            if (a.variant == v) {
                js.push_back(a.J);
                m.push_back(a.mse);
            }
        }
        try {
            slopes[std::string(to_string(v))] = loglog_slope(js, m, 8);
        } catch (const ModelError&) {
            slopes[std::string(to_string(v))] = nullptr;
        }
    }
    ctx.table("accuracy.csv", csv, {{"rows", rows}, {"mse_loglog_slope_J_ge_8", slopes}});
}

void run(Context& ctx, const EqualizeRun& r) {
    const Scenario& s = ctx.s;
    const Dynamics d = derive_dynamics(s.circuit);
    const SwitchingPattern pat = encode(s.bits, s.modulation);
    const double dt = s.modulation.T / static_cast<double>(r.J);
    const Waveform v2 = sample_output(d, s.ic, pat, s.circuit.V1, dt, s.bits.size() * r.J);

    double sigma = r.sigma;
    json results = json::object();
    if (sigma < 0.0) {
        const double dc = s.modulation.delta * s.circuit.V1;
        double power = 0.0;
        for (double v : v2.samples) power += (v - dc) * (v - dc);
        power /= static_cast<double>(std::max<std::size_t>(v2.size(), 1));
        const double snr_db = s.resolved["run"]["snr_db"].get<double>();
        sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
    }
    results["sigma_volts"] = sigma;
    const Waveform received = observe(v2, {r.c, sigma, s.seed});
    const Waveform cleaned = subtract_transient(received, d, {r.ic_estimate.v2_0, r.ic_estimate.dv2_0}, r.c);
    const Waveform equalized = equalize_frequency_domain(cleaned, s.circuit, r.eps);

    CsvBuilder csv({"t_s", "received_volts", "transient_removed_volts", "equalized_volts"});
    for (std::size_t n = 0; n < received.size(); ++n) {
        csv.row({received.time(n), received.samples[n], cleaned.samples[n], equalized.samples[n]});
    }
    if (r.detect) {
        // the detector assumes c = 1, so undo the known gain first
        Waveform scaled = received;
        for (double& v : scaled.samples) v /= r.c;
        const Bits est = brute_force_detect(scaled, s.circuit, s.modulation, s.ic, r.J, s.bits.size());
        std::string text;
        std::size_t errors = 0;
        for (std::size_t k = 0; k < est.size(); ++k) {
            text += static_cast<char>('0' + est[k]);
            errors += est[k] != s.bits[k] ? 1 : 0;
        }
        results["detected_bits"] = text;
        results["bit_errors"] = errors;
    }
    ctx.table("waveform.csv", csv, results);
}

void run(Context& ctx, const GeneralizedRun& r) {
    const Scenario& s = ctx.s;
    const SwitchingPattern pat = encode(s.bits, s.modulation);
    const RationalLaplace model = build_model(s.circuit, r.topology);
    const Waveform w = simulate_generalized(s.circuit, r.topology, pat, r.ic, r.J);
    CsvBuilder csv({"t_s", "v2_volts"});
    for (std::size_t n = 0; n < w.size(); ++n) csv.row({w.time(n), w.samples[n]});
    json poles = json::array();
    for (const Complex& p : find_poles(model)) poles.push_back({p.real(), p.imag()});
    ctx.table("waveform.csv", csv,
              {{"order", model.order()},
               {"numerator", model.num},
               {"denominator", model.den},
               {"poles_re_im", poles},
               {"dc_gain", model.transfer({0.0, 0.0}).real()}});
}

void run(Context& ctx, const PulseShapeRun& r) {
    std::vector<std::string> cols{"t_s"};
    std::vector<std::pair<Dynamics, double>> curves;
    for (const CircuitParams& p : r.circuits) {
        const Dynamics d = derive_dynamics(p);
        for (double delta : r.deltas) {
            char name[128];
            std::snprintf(name, sizeof name, "gtx_L%g_C%g_R%g_delta%g", p.L, p.C, p.R_L, delta);
            cols.emplace_back(name);
            curves.emplace_back(d, delta * ctx.s.modulation.T);
        }
    }
    CsvBuilder csv(cols);
    for (std::size_t i = 0; i < r.points; ++i) {
        const double t = r.t_min + (r.t_max - r.t_min) * static_cast<double>(i) / static_cast<double>(r.points - 1);
        std::vector<CsvBuilder::Cell> row{t};
        for (const auto& [d, Tp] : curves) row.emplace_back(pulse_shape_gtx(d, Tp, t));
        csv.row(row);
    }
    ctx.table("pulse_shape.csv", csv);
}

void run(Context& ctx, const ParamsRun& r) {
    const Scenario& s = ctx.s;
    CsvBuilder csv({"C_farad", "L_henry", "alpha_exact", "alpha_approx", "beta_exact", "beta_approx", "gamma_exact",
                    "gamma_approx", "kappa_exact", "kappa_approx", "mu_exact", "mu_approx"});
    for (std::size_t i = 0; i < r.points; ++i) {
        const double C =
            r.C_min * std::pow(r.C_max / r.C_min, static_cast<double>(i) / static_cast<double>(r.points - 1));
        const CircuitParams p{r.LC / C, C, s.circuit.R_L, s.circuit.V1};
        const DiscreteParams ex = derive_params(p, r.J, s.modulation.T, Variant::Exact);
        const DiscreteParams ap = derive_params(p, r.J, s.modulation.T, Variant::Simplified);
        csv.row({C, p.L, ex.alpha, ap.alpha, ex.beta, ap.beta, ex.gamma, ap.gamma, ex.kappa, ap.kappa, ex.mu, ap.mu});
    }
    ctx.table("params.csv", csv);
}

}  // namespace

Scenario parse_scenario(const json& j) {
    Fields top(j, "");
    Scenario s;
    const std::string schema = top.text("schema", kSchema);
    if (schema != kSchema) throw ConfigError("schema", "unsupported version '" + schema + "', expected " + kSchema);
    s.name = top.text("name", "scenario");
    s.seed = top.count("seed", 0, 0);

    json circuit, modulation, ic, run;
    s.circuit = parse_circuit(top.raw("circuit"), "circuit", circuit);
    s.modulation = parse_modulation(top.raw("modulation"), modulation);
    std::string bit_text;
    s.bits = parse_bits(top.raw("bits"), s.seed, bit_text);
    top.mark("ic");
    s.ic = parse_ic(j.contains("ic") ? &j.at("ic") : nullptr, s.modulation, s.circuit, ic);

    s.resolved = {{"schema", kSchema}, {"name", s.name},       {"seed", s.seed}, {"circuit", circuit},
                  {"modulation", modulation}, {"bits", bit_text}, {"ic", ic}};
    s.run = parse_run(top.raw("run"), s, run);
    s.resolved["run"] = run;
    top.finish();
    return s;
}

Scenario load_scenario(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    return parse_scenario(j);
}

RunResult run_scenario(const Scenario& s, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    Context ctx{s, out_dir, {}};
    std::visit([&ctx](const auto& r) { run(ctx, r); }, s.run);
    return ctx.result;
}

}  // namespace tpc::cli

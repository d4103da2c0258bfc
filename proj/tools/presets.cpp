#include "presets.hpp"

#include "scenario.hpp"

#include <functional>
#include <map>

namespace tpc::cli {

using nlohmann::json;

namespace {

const json kFig3Circuit = {{"L", 10e-6}, {"C", 1e-6}, {"R_L", 10.0}, {"V1", 1.0}};
const json kFig4Circuit = {{"L", 100e-6}, {"C", 0.1e-6}, {"R_L", 20.0}, {"V1", 1.0}};

json base(const std::string& name, const json& circuit, double depth, std::size_t K) {
    return {{"schema", kSchema},
            {"name", name},
            {"seed", 1},
            {"circuit", circuit},
            {"modulation", {{"scheme", "vpwm"}, {"T", 1e-6}, {"delta", 0.75}, {"depth", depth}}},
            {"bits", {{"pattern", "alternating"}, {"K", K}}},
            {"ic", "steady"}};
}

const std::map<std::string, std::function<json()>>& table() {
    static const std::map<std::string, std::function<json()>> presets{
        {"fig2_gtx",
         [] {
             json s = base("fig2_gtx", kFig3Circuit, 0.0, 1);
             json circuits = json::array();
             for (double R : {2.0, 10.0, 20.0}) circuits.push_back({{"L", 10e-6}, {"C", 1e-6}, {"R_L", R}});
             circuits.push_back(kFig4Circuit);
             s["run"] = {{"kind", "pulse_shape"},
                         {"circuits", circuits},
                         {"deltas", {0.25, 0.5, 0.75}},
                         {"t_min", -1e-6},
                         {"t_max", 60e-6},
                         {"points", 3001}};
             return s;
         }},
        {"fig3_components",
         [] {
             json s = base("fig3_components", kFig3Circuit, 0.2, 5);
             s["bits"] = "10101";
             s["run"] = {{"kind", "analytic"}, {"J", 100}, {"symbols", 60}, {"components", true}};
             return s;
         }},
        {"fig4_ltspice_check",
         [] {
             json s = base("fig4_ltspice_check", kFig4Circuit, 0.025, 64);
             s["run"] = {{"kind", "analytic"}, {"J", 100}};
             return s;
         }},
        {"fig5_spectrum",
         [] {
             json s = base("fig5_spectrum", kFig4Circuit, 0.025, 64);
             s["run"] = {{"kind", "spectrum"}, {"f_min", 1e3}, {"f_max", 1e8}, {"points", 4001}, {"fft_J", 256}};
             return s;
         }},
        {"fig6_bias",
         [] {
             json s = base("fig6_bias", kFig3Circuit, 0.2, 64);
             s["run"] = {{"kind", "accuracy"},
                         {"J_list", {2, 4, 8, 16, 32, 64, 128, 256}},
                         {"variants", {"exact", "simplified", "predictive"}},
                         {"settle_symbols", 8}};
             return s;
         }},
        {"fig7_mse",
         [] {
             json s = base("fig7_mse", kFig3Circuit, 0.2, 64);
             s["run"] = {{"kind", "accuracy"},
                         {"J_list", {2, 4, 8, 16, 32, 64, 128, 256}},
                         {"variants", {"exact", "simplified", "predictive"}},
                         {"settle_symbols", 8}};
             return s;
         }},
        {"fig8_params",
         [] {
             json s = base("fig8_params", kFig4Circuit, 0.0, 1);
             s["run"] = {{"kind", "params"}, {"C_min", 5e-7}, {"C_max", 5e-4}, {"LC", 1e-11}, {"points", 61}, {"J", 10}};
             return s;
         }},
        {"equalize_30db",
         [] {
             json s = base("equalize_30db", kFig3Circuit, 0.2, 8);
             s["bits"] = "10110010";
             s["seed"] = 7;
             s["run"] = {{"kind", "equalize"}, {"J", 20}, {"snr_db", 30.0}, {"eps", 1e-3}, {"detect", true}};
             return s;
         }},
        {"parasitic_fig4",
         [] {
             json s = base("parasitic_fig4", kFig4Circuit, 0.025, 64);
             s["run"] = {{"kind", "generalized"},
                         {"J", 50},
                         {"topology", {{"type", "parasitic"}, {"esr_C", 0.1}, {"esl_C", 10e-9}}}};
             return s;
         }},
        {"rlc_load",
         [] {
             json s = base("rlc_load", kFig3Circuit, 0.2, 32);
             s["run"] = {{"kind", "generalized"},
                         {"J", 50},
                         {"topology", {{"type", "general_load"}, {"R_L", 10.0}, {"L_L", 5e-6}, {"C_L", "inf"}}}};
             return s;
         }},
    };
    return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, make] : table()) names.push_back(name);
    return names;
}

json preset(const std::string& name) {
    const auto& t = table();
    const auto it = t.find(name);
    if (it == t.end()) throw ConfigError("preset", "unknown preset '" + name + "' (see list-presets)");
    return it->second();
}

}  // namespace tpc::cli

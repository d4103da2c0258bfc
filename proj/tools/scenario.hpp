#pragma once

// JSON scenario files for the command-line tool.

#include "tpc/circuit.hpp"
#include "tpc/discrete.hpp"
#include "tpc/laplace.hpp"
#include "tpc/modulation.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tpc::cli {

inline constexpr const char* kSchema = "tpc-scenario/1";

/// Invalid configuration; the message starts with the offending field path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(field) {}
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct AnalyticRun {
    std::size_t J = 100;
    std::size_t symbols = 0;  ///< samples cover this many periods (0 = number of bits)
    bool components = false;
};

struct DiscreteRun {
    std::size_t J = 64;
    Variant variant = Variant::Exact;
    ConductionMode mode = ConductionMode::CCM;
};

struct SpectrumRun {
    double f_min = 1e3;
    double f_max = 1e8;
    std::size_t points = 2001;
    bool log_spacing = true;
    std::size_t fft_J = 0;  ///< 0 disables the FFT cross-check file
};

struct AccuracyRun {
    std::vector<std::size_t> J_list;
    std::vector<Variant> variants;
    std::size_t settle_symbols = 8;
    bool align_predictive = true;
    ConductionMode mode = ConductionMode::CCM;
};

struct EqualizeRun {
    std::size_t J = 20;
    double c = 1.0;
    double sigma = 0.0;
    double eps = 0.0;
    InitialConditions ic_estimate;
    bool detect = false;
};

struct GeneralizedRun {
    std::size_t J = 50;
    Topology topology;
    GeneralizedIC ic;
};

struct PulseShapeRun {
    std::vector<CircuitParams> circuits;
    std::vector<double> deltas;
    double t_min = -1e-6;
    double t_max = 50e-6;
    std::size_t points = 2001;
};

struct ParamsRun {
    double C_min = 5e-7;
    double C_max = 5e-4;
    double LC = 1e-11;
    std::size_t points = 61;
    std::size_t J = 10;
};

using RunSpec = std::variant<AnalyticRun, DiscreteRun, SpectrumRun, AccuracyRun, EqualizeRun, GeneralizedRun,
                             PulseShapeRun, ParamsRun>;

struct Scenario {
    std::string name;
    CircuitParams circuit;
    ModulationConfig modulation;
    Bits bits;
    InitialConditions ic;
    std::uint64_t seed = 0;
    RunSpec run;
    nlohmann::json resolved;  ///< the configuration with all defaults filled in
};

/// Throws ConfigError for any missing, mistyped or out-of-range field.
[[nodiscard]] Scenario parse_scenario(const nlohmann::json& j);
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);

struct RunResult {
    std::vector<std::filesystem::path> files;
};

/// Executes the scenario and writes its outputs below out_dir.
RunResult run_scenario(const Scenario& s, const std::filesystem::path& out_dir);

}  // namespace tpc::cli

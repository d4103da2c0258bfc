#include "presets.hpp"
#include "scenario.hpp"

#include "tpc/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace tpc::cli;

int execute(const Scenario& s, const std::filesystem::path& out, bool print_config) {
    if (print_config) {
        std::cout << s.resolved.dump(2) << '\n';
    }
    const RunResult r = run_scenario(s, out);
    std::cout << s.name << ":";
    for (const auto& f : r.files) std::cout << ' ' << f.string();
    std::cout << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulate buck-converter based power line communication"};
    app.require_subcommand(1);

    std::string config_path, preset_name, out_dir;
    bool print_config = false;

    auto* run = app.add_subcommand("run", "Run a scenario file");
    run->add_option("config", config_path, "Scenario JSON")->required();
    run->add_option("--out", out_dir, "Output directory")->required();
    run->add_flag("--print-config", print_config, "Echo the resolved configuration");

    auto* pre = app.add_subcommand("preset", "Run a built-in scenario");
    pre->add_option("name", preset_name, "Preset name")->required();
    pre->add_option("--out", out_dir, "Output directory")->required();
    pre->add_flag("--print-config", print_config, "Echo the resolved configuration");

    app.add_subcommand("list-presets", "Print the built-in scenario names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("list-presets")) {
            for (const auto& n : preset_names()) std::cout << n << '\n';
            return 0;
        }
        const Scenario s = run->parsed() ? load_scenario(config_path) : parse_scenario(preset(preset_name));
        return execute(s, out_dir, print_config);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const tpc::ModelError& e) {
        std::cerr << "model error (" << tpc::to_string(e.kind()) << "): " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

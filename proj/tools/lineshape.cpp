// lineshape — command-line front end
//
//   lineshape <profile|verify|evolve|sweep> [--config FILE | --preset NAME] [--out DIR]
//             [--points N] [--window LO,HI] [--lambda-im-sign as_printed|flipped]
//
// Exit codes: 0 ok, 1 verify checks failed, 2 config error, 3 numerical failure.

#include "lineshape/commands.hpp"
#include "lineshape/config.hpp"
#include "lineshape/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace lineshape;

namespace {

RunConfig load(const std::string& config_path, const std::string& preset_name) {
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) throw ValidationError("config", "cannot read " + config_path);
        std::ostringstream text;
        text << in.rdbuf();
        return parse_config(text.str());
    }
    const auto p = preset(preset_name);
    if (!p) throw ValidationError("preset", "unknown preset '" + preset_name + "'");
    return default_config(*p);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral line shapes of a two-level atom with a nonlocal-in-time bath"};
    std::string command, config_path, preset_name, out_dir, sign;
    int points = 0;
    std::vector<double> window;

    app.add_option("command", command, "profile | verify | evolve | sweep")
        ->required()
        ->check(CLI::IsMember({"profile", "verify", "evolve", "sweep"}));
    auto* cfg_opt = app.add_option("--config", config_path, "configuration file");
    auto* pre_opt = app.add_option("--preset", preset_name, "bundled parameter set (table1-a .. table1-d)");
    cfg_opt->excludes(pre_opt);
    pre_opt->excludes(cfg_opt);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--points", points, "grid points in the window");
    app.add_option("--window", window, "LO,HI in eV")->delimiter(',')->expected(2);
    app.add_option("--lambda-im-sign", sign, "as_printed | flipped")
        ->check(CLI::IsMember({"as_printed", "flipped"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }
    if (config_path.empty() && preset_name.empty()) {
        std::cerr << "lineshape: one of --config or --preset is required\n";
        return kExitConfig;
    }

    const Command cmd = *parse_command(command);
    RunConfig cfg;
    try {
        cfg = load(config_path, preset_name);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (points != 0) cfg.n_points = points;
        if (!window.empty()) {
            cfg.window_lo = window[0];
            cfg.window_hi = window[1];
        }
        if (!sign.empty()) cfg.lambda_im_sign = parse_lambda_im_sign(sign);
    } catch (const ParseError& e) {
        std::cerr << "lineshape: " << config_path << ":" << e.line() << ": " << e.message() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "lineshape: " << e.what() << "\n";
        return kExitConfig;
    }
    return run_command(cmd, cfg, std::cerr);
}

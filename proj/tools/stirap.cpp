// stirap: evolve / sweep / converge / presets command-line front end.

#include "stirap/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct Flags {
    std::string config_path;
    std::string preset;
    std::optional<stirap::Index> variant;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::string> propagator;
    std::optional<stirap::Index> lindblad_cap;
    std::optional<unsigned> workers;
    std::optional<stirap::Index> points;
};

stirap::RunConfig build_config(const Flags& flags, bool needs_physics) {
    using namespace stirap;
    RunConfig cfg;
    if (!flags.config_path.empty()) {
        cfg = load_config(flags.config_path);
        if (!flags.preset.empty()) throw ConfigError("preset", "give either --config or --preset");
    } else if (!flags.preset.empty()) {
        cfg.preset = flags.preset;
    } else if (needs_physics) {
        throw ConfigError("config", "give --config FILE or --preset NAME");
    }
    if (flags.variant) cfg.variant = *flags.variant;
    if (flags.out) cfg.output_path = *flags.out;
    if (flags.format) cfg.format = *flags.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    if (flags.propagator) cfg.propagator = *flags.propagator == "lindblad" ? Propagator::Lindblad : Propagator::Pure;
    if (flags.lindblad_cap) cfg.lindblad_mode_cap = *flags.lindblad_cap;
    if (flags.workers) cfg.workers = *flags.workers;
    if (flags.points) cfg.grid_points = *flags.points;
    if (needs_physics) validate(cfg);
    return cfg;
}

void add_common(CLI::App* cmd, Flags& flags) {
    cmd->add_option("-c,--config", flags.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    cmd->add_option("-p,--preset", flags.preset, "figure preset (see `stirap presets`)");
    cmd->add_option("-o,--out", flags.out, "output file (default: standard output)");
    cmd->add_option("-f,--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"STIRAP between two spins linked by a lossy discretized bosonic bath"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(stirap::kToolVersion));

    Flags flags;

    auto* evolve = app.add_subcommand("evolve", "time trace of F1, F2 and the population partition");
    add_common(evolve, flags);
    evolve->add_option("--variant", flags.variant, "line index of a time-trace preset");
    evolve->add_option("--propagator", flags.propagator, "pure or lindblad")->check(CLI::IsMember({"pure", "lindblad"}));
    evolve->add_option("--lindblad-cap", flags.lindblad_cap, "largest bath size allowed for the lindblad propagator");

    auto* sweep = app.add_subcommand("sweep", "final fidelity F over a 1D/2D parameter grid");
    add_common(sweep, flags);
    sweep->add_option("-j,--workers", flags.workers, "worker threads (0 = all cores, 1 = serial)");
    sweep->add_option("--points", flags.points, "grid points per linear axis");

    auto* converge = app.add_subcommand("converge", "delta and window convergence report for one point");
    add_common(converge, flags);
    converge->add_option("--variant", flags.variant, "line index of a time-trace preset");

    auto* presets = app.add_subcommand("presets", "list figure presets");
    presets->add_option("-o,--out", flags.out, "output file (default: standard output)");
    presets->add_option("-f,--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : stirap::kExitConfigError;
    }

    try {
        if (presets->parsed()) return stirap::cmd_presets(build_config(flags, false), std::cerr);
        const auto cfg = build_config(flags, true);
        if (evolve->parsed()) return stirap::cmd_evolve(cfg, std::cerr);
        if (sweep->parsed()) return stirap::cmd_sweep(cfg, std::cerr);
        if (converge->parsed()) return stirap::cmd_converge(cfg, std::cerr);
    } catch (const stirap::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return stirap::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return stirap::kExitConfigError;
    }
    return stirap::kExitOk;
}

// dressed_rf — resonance-fluorescence spectra of a two-level emitter driven
// by one or two fields, with phonon damping at finite temperature.
//
//   dressed_rf rates   [--config cfg] [--temps 0:60:15] [--out DIR] ...
//   dressed_rf spectrum [--model weak --mode double --temp 4.2] ...
//   dressed_rf sweep   [--plot] ...
//   dressed_rf print-config
//   dressed_rf cache clear
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "drf/run_config.hpp"
#include "drf/spectrum_io.hpp"
#include "drf/svg_plot.hpp"
#include "drf/table_cache.hpp"

namespace {

using namespace drf;

struct CommonFlags {
    std::string config_path;
    std::vector<std::string> models;
    std::vector<std::string> modes;
    std::vector<double> temps;
    std::string temps_range;
    std::string out_dir;
    std::string format;
    std::string normalize;
    int phi_power = 0;
    int grid_points = 0;
    bool plot = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "config file (key = value with [sections])");
    cmd->add_option("--model", f.models, "damping model: weak|onephonon|polaron (repeatable)");
    cmd->add_option("--mode", f.modes, "drive mode: single|double (repeatable)");
    cmd->add_option("--temp", f.temps, "temperature in K (repeatable)");
    cmd->add_option("--temps", f.temps_range, "temperature range start:stop:step (K)");
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--format", f.format, "output format: csv|json");
    cmd->add_option("--normalize", f.normalize, "normalize spectra: true|false");
    cmd->add_option("--phi-power", f.phi_power, "correlation-function power: 1|2");
    cmd->add_option("--grid-points", f.grid_points, "detuning grid points");
    cmd->add_flag("--plot", f.plot, "emit SVG plots");
}

cli::RunConfig resolve(const CommonFlags& f) {
    cli::RunConfig cfg;
    if (!f.config_path.empty()) cfg = cli::parse_config_file(f.config_path);
    if (!f.models.empty()) {
        cfg.models.clear();
        for (const auto& m : f.models) cfg.models.push_back(rates::model_from_name(m));
    }
    if (!f.modes.empty()) {
        cfg.modes.clear();
        for (const auto& m : f.modes) cfg.modes.push_back(engine::mode_from_name(m));
    }
    if (!f.temps_range.empty()) cfg.temperatures = cli::parse_temperature_range(f.temps_range);
    if (!f.temps.empty()) cfg.temperatures = f.temps;
    if (!f.out_dir.empty()) cfg.output_dir = f.out_dir;
    if (!f.format.empty()) cfg.format = io::format_from_name(f.format);
    if (!f.normalize.empty()) {
        if (f.normalize == "true")
            cfg.normalize = true;
        else if (f.normalize == "false")
            cfg.normalize = false;
        else
            throw ConfigError("--normalize expects true or false");
    }
    if (f.phi_power != 0) {
        if (f.phi_power != 1 && f.phi_power != 2)
            throw ConfigError("--phi-power expects 1 or 2");
        cfg.phi_power = f.phi_power;
    }
    if (f.grid_points != 0) cfg.grid.points = f.grid_points;
    if (f.plot) cfg.emit_plot = true;
    cfg.validate();
    for (const auto& w : cfg.drive.validate()) std::cerr << "warning: " << w << "\n";
    return cfg;
}

int run_rates(const CommonFlags& flags) {
    const cli::RunConfig cfg = resolve(flags);
    cache::DiskTableProvider tables(cfg.resolved_cache_dir(), cfg.quad_settings);
    const auto rows =
        engine::rate_table(cfg.scenario(cfg.models.front(), cfg.modes.front()), &tables);
    std::filesystem::create_directories(cfg.output_dir);
    const auto path =
        cfg.output_dir / (std::string("rates.") + io::format_name(cfg.format));
    if (cfg.format == io::Format::Csv)
        io::write_rate_table_csv(path, rows);
    else
        io::write_rate_table_json(path, rows);
    std::cout << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
    return 0;
}

// Key for grouping output spectra: model then mode then temperature.
using SpectrumSet =
    std::map<std::string, std::map<std::string, std::vector<dressed::Spectrum>>>;

SpectrumSet compute_all(const cli::RunConfig& cfg, engine::TableProvider* tables) {
    SpectrumSet out;
    for (auto model : cfg.models) {
        for (auto mode : cfg.modes) {
            auto spectra = engine::temperature_sweep(cfg.scenario(model, mode), tables);
            out[rates::model_name(model)][engine::mode_name(mode)] = std::move(spectra);
        }
    }
    return out;
}

void write_all(const cli::RunConfig& cfg, const SpectrumSet& all) {
    std::filesystem::create_directories(cfg.output_dir);
    std::size_t n = 0;
    for (const auto& [model, by_mode] : all)
        for (const auto& [mode, spectra] : by_mode)
            for (const auto& s : spectra) {
                io::write_spectrum(cfg.output_dir, s, cfg.format);
                ++n;
            }
    std::cout << "wrote " << n << " spectra to " << cfg.output_dir.string() << "\n";
}

const char* color_for_temp(std::size_t i) {
    static const char* colors[] = {"#000000", "#1f77b4", "#d62728",
                                   "#2ca02c", "#9467bd", "#ff7f0e"};
    return colors[i % 6];
}

void emit_plots(const cli::RunConfig& cfg, const SpectrumSet& all) {
    // One overlay per model: all temperatures, single dashed / double solid.
    for (const auto& [model, by_mode] : all) {
        std::vector<plot::Curve> curves;
        for (const auto& [mode, spectra] : by_mode) {
            for (std::size_t i = 0; i < spectra.size(); ++i) {
                plot::Curve c;
                c.spectrum = &spectra[i];
                c.color = color_for_temp(i);
                c.dashed = (mode == "single");
                c.label = "T = " + io::fmt_double(spectra[i].metadata.temperature) +
                          " K (" + mode + ")";
                curves.push_back(c);
            }
        }
        plot::write_overlay_svg(cfg.output_dir / ("sweep_" + model + ".svg"),
                                "temperature sweep, " + model + " damping", curves);
    }

    // Comparison: one panel per temperature, the models overlaid.
    static const std::map<std::string, const char*> model_colors = {
        {"weak", "#000000"}, {"onephonon", "#1f77b4"}, {"polaron", "#d62728"}};
    std::vector<plot::Panel> panels;
    for (std::size_t ti = 0; ti < cfg.temperatures.size(); ++ti) {
        plot::Panel panel;
        panel.title = "model comparison at T = " +
                      io::fmt_double(cfg.temperatures[ti]) + " K";
        for (const auto& [model, by_mode] : all) {
            for (const auto& [mode, spectra] : by_mode) {
                if (ti >= spectra.size()) continue;
                plot::Curve c;
                c.spectrum = &spectra[ti];
                c.color = model_colors.count(model) ? model_colors.at(model) : "#555";
                c.dashed = (mode == "single");
                c.label = model + " (" + mode + ")";
                panel.curves.push_back(c);
            }
        }
        panels.push_back(std::move(panel));
    }
    plot::write_panels_svg(cfg.output_dir / "comparison.svg", panels);
    std::cout << "wrote plots to " << cfg.output_dir.string() << "\n";
}

int run_spectrum(const CommonFlags& flags) {
    const cli::RunConfig cfg = resolve(flags);
    cache::DiskTableProvider tables(cfg.resolved_cache_dir(), cfg.quad_settings);
    const SpectrumSet all = compute_all(cfg, &tables);
    write_all(cfg, all);
    return 0;
}

int run_sweep(const CommonFlags& flags) {
    const cli::RunConfig cfg = resolve(flags);
    cache::DiskTableProvider tables(cfg.resolved_cache_dir(), cfg.quad_settings);
    const SpectrumSet all = compute_all(cfg, &tables);
    write_all(cfg, all);
    if (cfg.emit_plot) emit_plots(cfg, all);
    return 0;
}

int run_print_config(const CommonFlags& flags) {
    const cli::RunConfig cfg = resolve(flags);
    cli::print_resolved_config(std::cout, cfg);
    return 0;
}

int run_cache_clear(const CommonFlags& flags) {
    cli::RunConfig cfg;
    if (!flags.config_path.empty()) cfg = cli::parse_config_file(flags.config_path);
    if (!flags.out_dir.empty()) cfg.output_dir = flags.out_dir;
    const auto dir = cfg.resolved_cache_dir();
    const std::size_t removed = cache::clear(dir);
    std::cout << "removed " << removed << " cache entries from " << dir.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"resonance-fluorescence spectra with phonon damping"};
    app.require_subcommand(1);

    CommonFlags flags;
    auto* rates_cmd = app.add_subcommand("rates", "write the damping-rate table");
    add_common_flags(rates_cmd, flags);
    auto* spectrum_cmd =
        app.add_subcommand("spectrum", "write one spectrum per model/mode/temperature");
    add_common_flags(spectrum_cmd, flags);
    auto* sweep_cmd =
        app.add_subcommand("sweep", "temperature sweep with optional SVG plots");
    add_common_flags(sweep_cmd, flags);
    auto* print_cmd = app.add_subcommand("print-config", "echo resolved internal values");
    add_common_flags(print_cmd, flags);
    auto* cache_cmd = app.add_subcommand("cache", "cache maintenance");
    auto* clear_cmd = cache_cmd->add_subcommand("clear", "remove cached tables");
    clear_cmd->add_option("--config", flags.config_path, "config file");
    clear_cmd->add_option("--out", flags.out_dir, "output directory");
    cache_cmd->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (rates_cmd->parsed()) return run_rates(flags);
        if (spectrum_cmd->parsed()) return run_spectrum(flags);
        if (sweep_cmd->parsed()) return run_sweep(flags);
        if (print_cmd->parsed()) return run_print_config(flags);
        if (cache_cmd->parsed() && clear_cmd->parsed()) return run_cache_clear(flags);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const drf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const drf::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

// run_config.hpp — CLI run configuration: config-file parsing with explicit
// unit suffixes, reference-scenario defaults, and flag overrides.
#pragma once

#include <cmath>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "drf/spectra_engine.hpp"
#include "drf/spectrum_io.hpp"

namespace drf::cli {

struct RunConfig {
    // Defaults reproduce the reference scenario: a self-assembled InAs/GaAs
    // dot driven at 2*Omega = 2pi x 5 GHz and 2G = 2pi x 2 GHz.
    dressed::DriveConfig drive{
        /*omega_laser=*/0.0,
        /*omega_rabi_half=*/M_PI * 5.0,
        /*g_half=*/M_PI * 2.0,
        /*photon_number_m=*/40,
        /*theta=*/M_PI / 4.0,
        /*gamma_rad=*/2.35,
    };
    bath::BathParams bath{2.535e-7, 493.33, 0.0};
    int phi_power = 2;

    std::vector<rates::RateModel> models{rates::RateModel::WeakCoupling,
                                         rates::RateModel::OnePhonon,
                                         rates::RateModel::FullPolaron};
    std::vector<engine::DriveMode> modes{engine::DriveMode::Double};
    std::vector<double> temperatures{0.0, 15.0, 30.0, 45.0, 60.0};
    engine::GridSpec grid;
    bool normalize = true;

    std::filesystem::path output_dir = "out";
    io::Format format = io::Format::Csv;
    bool emit_plot = false;
    std::filesystem::path cache_dir; // empty = output_dir / "cache"
    quad::QuadSettings quad_settings = bath::bath_quad_settings();

    std::filesystem::path resolved_cache_dir() const;
    engine::ScenarioConfig scenario(rates::RateModel model, engine::DriveMode mode) const;
    void validate() const;
};

// Parses the flat key = value config format with [section] headers and
// # comments. Unknown sections or keys are hard errors with the line number.
RunConfig parse_config_file(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin);

// "start:stop:step" inclusive range, or a single value.
std::vector<double> parse_temperature_range(const std::string& range);

// Resolved internal values, echoed by the print-config command.
void print_resolved_config(std::ostream& os, const RunConfig& cfg);

} // namespace drf::cli

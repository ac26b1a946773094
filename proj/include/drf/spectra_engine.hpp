// spectra_engine.hpp — Assembles temperature-dependent spectra: damping-model
// dispatch, total linewidth, effective Rabi frequencies, sweeps over
// temperature, rate tables, and peak diagnostics.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "drf/damping_rates.hpp"
#include "drf/dressed_spectrum.hpp"
#include "drf/phonon_bath.hpp"

namespace drf::engine {

enum class DriveMode { Single, Double };

const char* mode_name(DriveMode m);
DriveMode mode_from_name(const std::string& name); // throws ConfigError

struct GridSpec {
    double min_detuning = 0.0;
    double max_detuning = 0.0;
    int points = 4001;
    bool auto_span = true; // +-2.2 * (2 Omega) when set

    std::vector<double> make(const dressed::DriveConfig& drive) const;
};

struct ScenarioConfig {
    dressed::DriveConfig drive;
    bath::BathParams bath; // temperature field ignored; sweeps set it per point
    rates::RateModel model = rates::RateModel::FullPolaron;
    DriveMode drive_mode = DriveMode::Double;
    std::vector<double> temperatures{0.0};
    GridSpec grid;
    bool normalize = true;
    int phi_power = 2;

    void validate() const;
};

// Supplies correlation tables for (bath, T) pairs; implementations may
// memoize in memory or persist to disk. Thread-safe.
class TableProvider {
public:
    virtual ~TableProvider() = default;
    virtual std::shared_ptr<const bath::CorrelationTable> get(const bath::BathParams& b,
                                                              int phi_power) = 0;
};

// Builds on demand and keeps tables in memory for the process lifetime.
class MemoryTableProvider : public TableProvider {
public:
    std::shared_ptr<const bath::CorrelationTable> get(const bath::BathParams& b,
                                                      int phi_power) override;

private:
    std::mutex mu_;
    std::map<std::tuple<double, double, double, int>,
             std::shared_ptr<const bath::CorrelationTable>>
        cache_;
};

struct RateRow {
    double temperature = 0.0;
    double gamma_w = 0.0;
    double gamma_1ph = 0.0;
    double gamma_p = 0.0;
    double gamma_y = 0.0;
    double gamma_z = 0.0;
    double b_factor = 1.0;
    double omega_r = 0.0;
    double g_r = 0.0;
};

struct PeakInfo {
    double center = 0.0; // midpoint of the outermost half-height crossings
    double height = 0.0;
    double hwhm = 0.0;   // half the span between those crossings
    double area = 0.0;   // trapezoid between cluster boundaries
};

struct PeakReport {
    std::vector<PeakInfo> peaks; // ordered by center
};

dressed::Spectrum thermal_spectrum(const ScenarioConfig& cfg, double temperature_k,
                                   TableProvider* tables = nullptr);

// One spectrum per configured temperature, evaluated independently; a failure
// aborts the sweep naming the offending temperature.
std::vector<dressed::Spectrum> temperature_sweep(const ScenarioConfig& cfg,
                                                 TableProvider* tables = nullptr);

// All damping models side by side, one row per temperature.
std::vector<RateRow> rate_table(const ScenarioConfig& cfg,
                                TableProvider* tables = nullptr);

// Finds the three resonant peak clusters. Local maxima above 1e-3 of the
// global maximum merge when closer than gamma_total/4, then by the dressed
// regions split at +-omega_eff. Throws PeakCountMismatch otherwise.
PeakReport peak_analysis(const dressed::Spectrum& s);

} // namespace drf::engine

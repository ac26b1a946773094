#include "drf/spectra_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "drf/parallel.hpp"

namespace drf::engine {

const char* mode_name(DriveMode m) {
    return m == DriveMode::Single ? "single" : "double";
}

DriveMode mode_from_name(const std::string& name) {
    if (name == "single") return DriveMode::Single;
    if (name == "double") return DriveMode::Double;
    throw ConfigError("unknown drive mode '" + name + "' (expected single|double)");
}

std::vector<double> GridSpec::make(const dressed::DriveConfig& drive) const {
    double lo = min_detuning, hi = max_detuning;
    if (auto_span) {
        const double span = 2.2 * 2.0 * drive.omega_rabi_half;
        lo = -span;
        hi = span;
    }
    if (!(lo < hi) || points < 3) throw ConfigError("invalid detuning grid");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    return g;
}

void ScenarioConfig::validate() const {
    drive.validate();
    bath.validate();
    if (temperatures.empty()) throw ConfigError("temperature list is empty");
    for (double t : temperatures)
        if (!(t >= 0.0) || !(t <= 300.0))
            throw ConfigError("temperatures must lie in [0, 300] K");
    if (grid.points < 3) throw ConfigError("grid needs at least 3 points");
    if (!grid.auto_span && !(grid.min_detuning < grid.max_detuning))
        throw ConfigError("grid min must be below max");
    if (phi_power != 1 && phi_power != 2)
        throw ConfigError("phi_power must be 1 or 2");
}

std::shared_ptr<const bath::CorrelationTable> MemoryTableProvider::get(
    const bath::BathParams& b, int phi_power) {
    const auto key = std::make_tuple(b.alpha, b.omega_c, b.temperature, phi_power);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    auto table = std::make_shared<const bath::CorrelationTable>(
        bath::build_correlation_table(b, bath::bath_quad_settings(), phi_power));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = cache_.emplace(key, std::move(table));
    return it->second;
}

dressed::Spectrum thermal_spectrum(const ScenarioConfig& cfg, double temperature_k,
                                   TableProvider* tables) {
    cfg.validate();
    bath::BathParams b = cfg.bath;
    b.temperature = temperature_k;

    MemoryTableProvider fallback;
    TableProvider* provider = tables ? tables : &fallback;

    std::shared_ptr<const bath::CorrelationTable> table;
    if (cfg.model == rates::RateModel::FullPolaron && b.alpha > 0.0)
        table = provider->get(b, cfg.phi_power);

    const rates::RateSet rs =
        rates::rate_set(cfg.model, b, cfg.drive, table ? table.get() : nullptr);

    const double gamma_total = cfg.drive.gamma_rad + rs.gamma_phonon;
    const double omega_eff = rs.omega_r;
    const double g_eff = (cfg.drive_mode == DriveMode::Single) ? 0.0 : rs.g_r;

    dressed::Spectrum s = dressed::spectrum_Ld(cfg.drive, gamma_total, omega_eff,
                                               g_eff, cfg.grid.make(cfg.drive));
    s.metadata.model = rates::model_name(cfg.model);
    s.metadata.drive_mode = mode_name(cfg.drive_mode);
    s.metadata.temperature = temperature_k;

    const double peak = *std::max_element(s.values.begin(), s.values.end());
    s.metadata.raw_peak = peak;
    if (cfg.normalize && peak > 0.0) {
        for (double& v : s.values) v /= peak;
        s.metadata.normalized = true;
    }
    return s;
}

std::vector<dressed::Spectrum> temperature_sweep(const ScenarioConfig& cfg,
                                                 TableProvider* tables) {
    cfg.validate();
    MemoryTableProvider fallback;
    TableProvider* provider = tables ? tables : &fallback;

    std::vector<dressed::Spectrum> out(cfg.temperatures.size());
    parallel_for(cfg.temperatures.size(), [&](std::size_t i) {
        try {
            out[i] = thermal_spectrum(cfg, cfg.temperatures[i], provider);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "sweep failed at T = " << cfg.temperatures[i] << " K: " << e.what();
            throw NumericError(os.str());
        }
    });
    return out;
}

std::vector<RateRow> rate_table(const ScenarioConfig& cfg, TableProvider* tables) {
    cfg.validate();
    MemoryTableProvider fallback;
    TableProvider* provider = tables ? tables : &fallback;

    std::vector<RateRow> rows(cfg.temperatures.size());
    parallel_for(cfg.temperatures.size(), [&](std::size_t i) {
        try {
            bath::BathParams b = cfg.bath;
            b.temperature = cfg.temperatures[i];
            RateRow r;
            r.temperature = b.temperature;
            const double omega = cfg.drive.omega_rabi_half;
            r.b_factor = bath::displacement_B(b);
            r.omega_r = omega * r.b_factor;
            r.g_r = cfg.drive.g_half * r.b_factor;
            if (b.alpha > 0.0) {
                r.gamma_w = rates::rate_weak_coupling(b, omega);
                r.gamma_1ph = rates::rate_weak_coupling(b, r.omega_r);
                auto table = provider->get(b, cfg.phi_power);
                const rates::RateSet rs = rates::rate_full_polaron(b, *table, omega);
                r.gamma_p = rs.gamma_phonon;
                r.gamma_y = rs.gamma_y;
                r.gamma_z = rs.gamma_z;
            }
            rows[i] = r;
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "rate table failed at T = " << cfg.temperatures[i] << " K: " << e.what();
            throw NumericError(os.str());
        }
    });
    return rows;
}

namespace {

struct Cluster {
    std::size_t lo, hi;   // inclusive index range of the cluster core (maxima)
    std::size_t peak_idx; // argmax inside
};

} // namespace

PeakReport peak_analysis(const dressed::Spectrum& s) {
    const auto& x = s.detunings;
    const auto& y = s.values;
    if (x.size() < 5 || x.size() != y.size())
        throw ConfigError("spectrum too small for peak analysis");

    const double global_max = *std::max_element(y.begin(), y.end());
    const double floor_level = 1e-3 * global_max;
    const double gamma_total = s.metadata.gamma_total;
    const double merge_dist = gamma_total > 0.0 ? gamma_total / 4.0
                                                : (x.back() - x.front()) / 100.0;

    // Local maxima above the floor; a flat two-point tie counts once.
    std::vector<std::size_t> maxima;
    for (std::size_t i = 1; i + 1 < y.size(); ++i)
        if (y[i] > floor_level && y[i] >= y[i - 1] && y[i] > y[i + 1])
            maxima.push_back(i);

    if (maxima.empty()) throw PeakCountMismatch("no peaks above threshold");

    // Proximity merge, then partition into the three dressed regions split at
    // +-omega_eff (one broadened sideband otherwise reports its two band-edge
    // maxima as separate clusters).
    std::vector<Cluster> clusters;
    for (std::size_t idx : maxima) {
        if (!clusters.empty() && x[idx] - x[clusters.back().hi] <= merge_dist) {
            Cluster& c = clusters.back();
            c.hi = idx;
            if (y[idx] > y[c.peak_idx]) c.peak_idx = idx;
        } else {
            clusters.push_back({idx, idx, idx});
        }
    }
    const double omega_eff = s.metadata.omega_eff;
    if (omega_eff > 0.0) {
        auto region = [&](double d) { return d < -omega_eff ? 0 : (d <= omega_eff ? 1 : 2); };
        std::vector<Cluster> merged;
        for (const Cluster& c : clusters) {
            if (!merged.empty() &&
                region(x[merged.back().peak_idx]) == region(x[c.peak_idx])) {
                Cluster& m = merged.back();
                m.hi = c.hi;
                if (y[c.peak_idx] > y[m.peak_idx]) m.peak_idx = c.peak_idx;
            } else {
                merged.push_back(c);
            }
        }
        clusters = std::move(merged);
    }

    if (clusters.size() != 3) {
        std::ostringstream os;
        os << "expected 3 peak clusters, found " << clusters.size();
        throw PeakCountMismatch(os.str());
    }

    // Cluster boundaries: minima between adjacent cluster cores, grid ends outside.
    std::vector<std::size_t> bounds(4);
    bounds[0] = 0;
    bounds[3] = y.size() - 1;
    for (int k = 0; k < 2; ++k) {
        std::size_t lo = clusters[k].peak_idx, hi = clusters[k + 1].peak_idx;
        bounds[k + 1] = static_cast<std::size_t>(
            std::min_element(y.begin() + lo, y.begin() + hi + 1) - y.begin());
    }

    PeakReport report;
    for (int k = 0; k < 3; ++k) {
        const Cluster& c = clusters[k];
        PeakInfo p;
        p.height = y[c.peak_idx];
        const double half = 0.5 * p.height;

        // Parabolic refinement of the maximum position; used as the center
        // for narrow (Lorentzian-like) clusters where it is least biased by
        // the neighbours' tails.
        double mode = x[c.peak_idx];
        if (c.peak_idx > 0 && c.peak_idx + 1 < y.size()) {
            const double ym = y[c.peak_idx - 1], y0 = y[c.peak_idx],
                         yp = y[c.peak_idx + 1];
            const double denom = ym - 2.0 * y0 + yp;
            if (denom < 0.0)
                mode += 0.5 * (x[c.peak_idx + 1] - x[c.peak_idx]) * (ym - yp) / denom;
        }

        // Outermost half-height crossings by linear interpolation, searching
        // outward from the cluster core within its boundaries.
        std::size_t i = c.peak_idx;
        double left = x[bounds[k]];
        while (i > bounds[k]) {
            if (y[i - 1] < half && y[i] >= half) {
                left = x[i - 1] + (x[i] - x[i - 1]) * (half - y[i - 1]) / (y[i] - y[i - 1]);
                break;
            }
            --i;
        }
        i = c.peak_idx;
        double right = x[bounds[k + 1]];
        while (i < bounds[k + 1]) {
            if (y[i + 1] < half && y[i] >= half) {
                right = x[i] + (x[i + 1] - x[i]) * (y[i] - half) / (y[i] - y[i + 1]);
                break;
            }
            ++i;
        }
        // Narrow clusters: the refined maximum. Broadened bands (half-height
        // span well beyond a bare sideband Lorentzian): the crossings
        // midpoint, since the band maximum sits at a band edge.
        p.hwhm = 0.5 * (right - left);
        const double bare_span = 1.5 * gamma_total;
        p.center = (right - left <= 2.0 * bare_span) ? mode : 0.5 * (left + right);

        double area = 0.0;
        for (std::size_t j = bounds[k]; j < bounds[k + 1]; ++j)
            area += 0.5 * (y[j] + y[j + 1]) * (x[j + 1] - x[j]);
        p.area = area;
        report.peaks.push_back(p);
    }
    std::sort(report.peaks.begin(), report.peaks.end(),
              [](const PeakInfo& a, const PeakInfo& b) { return a.center < b.center; });
    return report;
}

} // namespace drf::engine

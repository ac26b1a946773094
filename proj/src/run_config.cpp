#include "drf/run_config.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace drf::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(where + ": cannot parse number '" + v + "'");
    }
}

int parse_int(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(where + ": cannot parse integer '" + v + "'");
    }
}

bool parse_bool(const std::string& v, const std::string& where) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(where + ": cannot parse boolean '" + v + "'");
}

} // namespace

std::filesystem::path RunConfig::resolved_cache_dir() const {
    if (const char* env = std::getenv("DRESSED_RF_CACHE"); env && *env)
        return std::filesystem::path(env);
    if (!cache_dir.empty()) return cache_dir;
    return output_dir / "cache";
}

engine::ScenarioConfig RunConfig::scenario(rates::RateModel model,
                                           engine::DriveMode mode) const {
    engine::ScenarioConfig sc;
    sc.drive = drive;
    sc.bath = bath;
    sc.model = model;
    sc.drive_mode = mode;
    sc.temperatures = temperatures;
    sc.grid = grid;
    sc.normalize = normalize;
    sc.phi_power = phi_power;
    return sc;
}

void RunConfig::validate() const {
    drive.validate();
    bath.validate();
    quad_settings.validate();
    if (models.empty()) throw ConfigError("no damping models selected");
    if (modes.empty()) throw ConfigError("no drive modes selected");
    if (temperatures.empty()) throw ConfigError("temperature list is empty");
    scenario(models.front(), modes.front()).validate();
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        std::ostringstream where;
        where << origin << ":" << lineno;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(where.str() + ": malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "bath" && section != "drive" && section != "scenario" &&
                section != "io" && section != "quad")
                throw ConfigError(where.str() + ": unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where.str() + ": expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string at = where.str() + " [" + section + "] " + key;

        if (section == "bath") {
            if (key == "alpha_ghz_angular_inv2")
                cfg.bath.alpha = parse_double(value, at);
            else if (key == "omega_c_ghz_angular")
                cfg.bath.omega_c = parse_double(value, at);
            else if (key == "phi_power")
                cfg.phi_power = parse_int(value, at);
            else
                throw ConfigError(at + ": unknown key");
        } else if (section == "drive") {
            if (key == "rabi_2omega_ghz_linear")
                cfg.drive.omega_rabi_half = M_PI * parse_double(value, at);
            else if (key == "rabi_2g_ghz_linear")
                cfg.drive.g_half = M_PI * parse_double(value, at);
            else if (key == "gamma_rad_ghz_angular")
                cfg.drive.gamma_rad = parse_double(value, at);
            else if (key == "photon_number_m")
                cfg.drive.photon_number_m = parse_int(value, at);
            else if (key == "mixing_theta_rad")
                cfg.drive.theta = parse_double(value, at);
            else if (key == "laser_frequency_ghz_angular")
                cfg.drive.omega_laser = parse_double(value, at);
            else
                throw ConfigError(at + ": unknown key");
        } else if (section == "scenario") {
            if (key == "models") {
                cfg.models.clear();
                for (const auto& name : split_list(value))
                    cfg.models.push_back(rates::model_from_name(name));
            } else if (key == "modes") {
                cfg.modes.clear();
                for (const auto& name : split_list(value))
                    cfg.modes.push_back(engine::mode_from_name(name));
            } else if (key == "temperatures_k") {
                cfg.temperatures.clear();
                for (const auto& t : split_list(value))
                    cfg.temperatures.push_back(parse_double(t, at));
            } else if (key == "normalize") {
                cfg.normalize = parse_bool(value, at);
            } else if (key == "grid_min_ghz_angular") {
                cfg.grid.min_detuning = parse_double(value, at);
                cfg.grid.auto_span = false;
            } else if (key == "grid_max_ghz_angular") {
                cfg.grid.max_detuning = parse_double(value, at);
                cfg.grid.auto_span = false;
            } else if (key == "grid_points") {
                cfg.grid.points = parse_int(value, at);
            } else {
                throw ConfigError(at + ": unknown key");
            }
        } else if (section == "io") {
            if (key == "output_dir")
                cfg.output_dir = value;
            else if (key == "format")
                cfg.format = io::format_from_name(value);
            else if (key == "emit_plot")
                cfg.emit_plot = parse_bool(value, at);
            else if (key == "cache_dir")
                cfg.cache_dir = value;
            else
                throw ConfigError(at + ": unknown key");
        } else if (section == "quad") {
            if (key == "rel_tol")
                cfg.quad_settings.rel_tol = parse_double(value, at);
            else if (key == "abs_tol")
                cfg.quad_settings.abs_tol = parse_double(value, at);
            else if (key == "max_subdivisions")
                cfg.quad_settings.max_subdivisions = parse_int(value, at);
            else if (key == "tail_cutoff_factor")
                cfg.quad_settings.tail_cutoff_factor = parse_double(value, at);
            else
                throw ConfigError(at + ": unknown key");
        } else {
            throw ConfigError(where.str() + ": key '" + key +
                              "' appears before any [section] header");
        }
    }
    return cfg;
}

std::vector<double> parse_temperature_range(const std::string& range) {
    const auto c1 = range.find(':');
    if (c1 == std::string::npos)
        return {parse_double(range, "--temps")};
    const auto c2 = range.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw ConfigError("--temps expects start:stop:step, got '" + range + "'");
    const double start = parse_double(range.substr(0, c1), "--temps start");
    const double stop = parse_double(range.substr(c1 + 1, c2 - c1 - 1), "--temps stop");
    const double step = parse_double(range.substr(c2 + 1), "--temps step");
    if (!(step > 0.0) || stop < start)
        throw ConfigError("--temps requires stop >= start and step > 0");
    std::vector<double> out;
    for (double t = start; t <= stop + 1e-9 * step; t += step) out.push_back(t);
    return out;
}

void print_resolved_config(std::ostream& os, const RunConfig& cfg) {
    os << "[bath]\n";
    os << "alpha = " << io::fmt_double(cfg.bath.alpha) << " (rad/ns)^-2\n";
    os << "omega_c = " << io::fmt_double(cfg.bath.omega_c) << " rad/ns\n";
    os << "phi_power = " << cfg.phi_power << "\n";
    os << "[drive]\n";
    os << "omega_rabi_half = " << io::fmt_double(cfg.drive.omega_rabi_half)
       << " rad/ns (2*Omega = " << io::fmt_double(2.0 * cfg.drive.omega_rabi_half)
       << ")\n";
    os << "g_half = " << io::fmt_double(cfg.drive.g_half) << " rad/ns (2*G = "
       << io::fmt_double(2.0 * cfg.drive.g_half) << ")\n";
    os << "gamma_rad = " << io::fmt_double(cfg.drive.gamma_rad) << " rad/ns\n";
    os << "photon_number_m = " << cfg.drive.photon_number_m << "\n";
    os << "mixing_theta = " << io::fmt_double(cfg.drive.theta) << " rad\n";
    os << "[scenario]\n";
    os << "models =";
    for (auto m : cfg.models) os << " " << rates::model_name(m);
    os << "\nmodes =";
    for (auto m : cfg.modes) os << " " << engine::mode_name(m);
    os << "\ntemperatures_k =";
    for (double t : cfg.temperatures) os << " " << io::fmt_double(t);
    os << "\nnormalize = " << (cfg.normalize ? "true" : "false") << "\n";
    if (cfg.grid.auto_span)
        os << "grid = auto (+-2.2 * 2*Omega, " << cfg.grid.points << " points)\n";
    else
        os << "grid = [" << io::fmt_double(cfg.grid.min_detuning) << ", "
           << io::fmt_double(cfg.grid.max_detuning) << "], " << cfg.grid.points
           << " points\n";
    os << "[io]\n";
    os << "output_dir = " << cfg.output_dir.string() << "\n";
    os << "format = " << io::format_name(cfg.format) << "\n";
    os << "emit_plot = " << (cfg.emit_plot ? "true" : "false") << "\n";
    os << "cache_dir = " << cfg.resolved_cache_dir().string() << "\n";
    os << "[quad]\n";
    os << "rel_tol = " << io::fmt_double(cfg.quad_settings.rel_tol) << "\n";
    os << "abs_tol = " << io::fmt_double(cfg.quad_settings.abs_tol) << "\n";
    os << "max_subdivisions = " << cfg.quad_settings.max_subdivisions << "\n";
    os << "tail_cutoff_factor = " << io::fmt_double(cfg.quad_settings.tail_cutoff_factor)
       << "\n";
}

} // namespace drf::cli

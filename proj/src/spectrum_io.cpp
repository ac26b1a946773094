#include "drf/spectrum_io.hpp"

#include <charconv>
#include <fstream>

#include "json.hpp"

namespace drf::io {

Format format_from_name(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw ConfigError("unknown output format '" + name + "' (expected csv|json)");
}

const char* format_name(Format f) { return f == Format::Csv ? "csv" : "json"; }

std::string fmt_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw ConfigError("number formatting failed");
    return std::string(buf, ptr);
}

std::string spectrum_filename(const dressed::Spectrum& s, Format f) {
    return "spectrum_" + s.metadata.model + "_" + s.metadata.drive_mode + "_T" +
           fmt_double(s.metadata.temperature) + "." + format_name(f);
}

namespace {

void write_metadata_comments(std::ostream& os, const dressed::SpectrumMetadata& m) {
    os << "# model = " << m.model << "\n";
    os << "# drive_mode = " << m.drive_mode << "\n";
    os << "# temperature_k = " << fmt_double(m.temperature) << "\n";
    os << "# normalized = " << (m.normalized ? "true" : "false") << "\n";
    os << "# gamma_total = " << fmt_double(m.gamma_total) << "\n";
    os << "# omega_eff = " << fmt_double(m.omega_eff) << "\n";
    os << "# g_eff = " << fmt_double(m.g_eff) << "\n";
    os << "# raw_peak = " << fmt_double(m.raw_peak) << "\n";
    os << "# units = detuning rad/ns; intensity "
       << (m.normalized ? "relative to peak" : "raw, prefactor gamma_rad/4pi") << "\n";
}

nlohmann::json metadata_json(const dressed::SpectrumMetadata& m) {
    return nlohmann::json{{"model", m.model},
                          {"drive_mode", m.drive_mode},
                          {"temperature_k", m.temperature},
                          {"normalized", m.normalized},
                          {"gamma_total", m.gamma_total},
                          {"omega_eff", m.omega_eff},
                          {"g_eff", m.g_eff},
                          {"raw_peak", m.raw_peak}};
}

} // namespace

void write_spectrum_csv(const std::filesystem::path& path, const dressed::Spectrum& s) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
    write_metadata_comments(os, s.metadata);
    os << "detuning,intensity\n";
    for (std::size_t i = 0; i < s.detunings.size(); ++i)
        os << fmt_double(s.detunings[i]) << "," << fmt_double(s.values[i]) << "\n";
    if (!os) throw ConfigError("short write to " + path.string());
}

void write_spectrum_json(const std::filesystem::path& path, const dressed::Spectrum& s) {
    nlohmann::json j;
    j["metadata"] = metadata_json(s.metadata);
    j["detuning"] = s.detunings;
    j["intensity"] = s.values;
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
    os << j.dump(1) << "\n";
    if (!os) throw ConfigError("short write to " + path.string());
}

void write_spectrum(const std::filesystem::path& dir, const dressed::Spectrum& s,
                    Format f) {
    const auto path = dir / spectrum_filename(s, f);
    if (f == Format::Csv)
        write_spectrum_csv(path, s);
    else
        write_spectrum_json(path, s);
}

dressed::Spectrum read_spectrum_json(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open " + path.string());
    nlohmann::json j;
    is >> j;
    dressed::Spectrum s;
    const auto& m = j.at("metadata");
    s.metadata.model = m.at("model").get<std::string>();
    s.metadata.drive_mode = m.at("drive_mode").get<std::string>();
    s.metadata.temperature = m.at("temperature_k").get<double>();
    s.metadata.normalized = m.at("normalized").get<bool>();
    s.metadata.gamma_total = m.at("gamma_total").get<double>();
    s.metadata.omega_eff = m.at("omega_eff").get<double>();
    s.metadata.g_eff = m.at("g_eff").get<double>();
    s.metadata.raw_peak = m.at("raw_peak").get<double>();
    s.detunings = j.at("detuning").get<std::vector<double>>();
    s.values = j.at("intensity").get<std::vector<double>>();
    if (s.detunings.size() != s.values.size())
        throw ConfigError("spectrum file arrays disagree in length");
    return s;
}

void write_rate_table_csv(const std::filesystem::path& path,
                          const std::vector<engine::RateRow>& rows) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
    os << "temperature_k,gamma_w,gamma_1ph,gamma_p,gamma_y,gamma_z,b_factor,omega_r,g_r\n";
    for (const auto& r : rows) {
        os << fmt_double(r.temperature) << "," << fmt_double(r.gamma_w) << ","
           << fmt_double(r.gamma_1ph) << "," << fmt_double(r.gamma_p) << ","
           << fmt_double(r.gamma_y) << "," << fmt_double(r.gamma_z) << ","
           << fmt_double(r.b_factor) << "," << fmt_double(r.omega_r) << ","
           << fmt_double(r.g_r) << "\n";
    }
    if (!os) throw ConfigError("short write to " + path.string());
}

void write_rate_table_json(const std::filesystem::path& path,
                           const std::vector<engine::RateRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"temperature_k", r.temperature},
                       {"gamma_w", r.gamma_w},
                       {"gamma_1ph", r.gamma_1ph},
                       {"gamma_p", r.gamma_p},
                       {"gamma_y", r.gamma_y},
                       {"gamma_z", r.gamma_z},
                       {"b_factor", r.b_factor},
                       {"omega_r", r.omega_r},
                       {"g_r", r.g_r}});
    }
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
    os << nlohmann::json{{"rates", arr}}.dump(1) << "\n";
    if (!os) throw ConfigError("short write to " + path.string());
}

} // namespace drf::io

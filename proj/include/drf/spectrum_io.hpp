// spectrum_io.hpp — CSV and JSON emission for spectra and rate tables, plus
// the JSON loader used for round-trips. Numbers print in shortest
// round-trip form so outputs diff bit-stably.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "drf/dressed_spectrum.hpp"
#include "drf/spectra_engine.hpp"

namespace drf::io {

enum class Format { Csv, Json };

Format format_from_name(const std::string& name); // throws ConfigError
const char* format_name(Format f);

// Shortest decimal representation that parses back to the same double.
std::string fmt_double(double v);

std::string spectrum_filename(const dressed::Spectrum& s, Format f);

void write_spectrum_csv(const std::filesystem::path& path, const dressed::Spectrum& s);
void write_spectrum_json(const std::filesystem::path& path, const dressed::Spectrum& s);
void write_spectrum(const std::filesystem::path& dir, const dressed::Spectrum& s,
                    Format f);

// Inverse of write_spectrum_json; reproduces the in-memory Spectrum exactly.
dressed::Spectrum read_spectrum_json(const std::filesystem::path& path);

void write_rate_table_csv(const std::filesystem::path& path,
                          const std::vector<engine::RateRow>& rows);
void write_rate_table_json(const std::filesystem::path& path,
                           const std::vector<engine::RateRow>& rows);

} // namespace drf::io

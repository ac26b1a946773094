// table_cache.hpp — Content-addressed on-disk cache for correlation tables.
// Payloads round-trip doubles bit-exactly so cache hits reproduce cold-run
// results byte for byte.
#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "drf/phonon_bath.hpp"
#include "drf/spectra_engine.hpp"

namespace drf::cache {

inline constexpr std::uint32_t kFormatVersion = 1;

// Key over bath parameters, quadrature settings, phi power, and the format
// version; any change invalidates existing entries.
std::string cache_key(const bath::BathParams& b, const quad::QuadSettings& s,
                      int phi_power);

void save_table(const std::filesystem::path& dir, const std::string& key,
                const bath::CorrelationTable& table, const quad::QuadSettings& s);

std::optional<bath::CorrelationTable> load_table(const std::filesystem::path& dir,
                                                 const std::string& key,
                                                 const bath::BathParams& expect,
                                                 int phi_power);

// Removes every cache entry in the directory. Returns the count removed.
std::size_t clear(const std::filesystem::path& dir);

// Disk-backed provider with an in-memory layer on top.
class DiskTableProvider : public engine::TableProvider {
public:
    DiskTableProvider(std::filesystem::path dir, quad::QuadSettings settings);
    std::shared_ptr<const bath::CorrelationTable> get(const bath::BathParams& b,
                                                      int phi_power) override;

private:
    std::filesystem::path dir_;
    quad::QuadSettings settings_;
    engine::MemoryTableProvider memory_;
    std::mutex mu_;
    std::map<std::string, std::shared_ptr<const bath::CorrelationTable>> loaded_;
};

} // namespace drf::cache

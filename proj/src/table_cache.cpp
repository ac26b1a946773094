#include "drf/table_cache.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

namespace drf::cache {

namespace {

struct Fnv1a {
    std::uint64_t h = 1469598103934665603ull;
    void add_bytes(const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    }
    void add(double v) {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        add_bytes(&bits, sizeof bits);
    }
    void add(std::uint64_t v) { add_bytes(&v, sizeof v); }
};

constexpr char kMagic[8] = {'D', 'R', 'F', 'T', 'A', 'B', '0', '1'};

template <class T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
bool get(std::istream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return static_cast<bool>(is);
}

} // namespace

std::string cache_key(const bath::BathParams& b, const quad::QuadSettings& s,
                      int phi_power) {
    Fnv1a f;
    f.add(static_cast<std::uint64_t>(kFormatVersion));
    f.add(b.alpha);
    f.add(b.omega_c);
    f.add(b.temperature);
    f.add(static_cast<std::uint64_t>(phi_power));
    f.add(s.rel_tol);
    f.add(s.abs_tol);
    f.add(static_cast<std::uint64_t>(s.max_subdivisions));
    f.add(s.tail_cutoff_factor);
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << f.h;
    return os.str();
}

void save_table(const std::filesystem::path& dir, const std::string& key,
                const bath::CorrelationTable& table, const quad::QuadSettings&) {
    std::filesystem::create_directories(dir);
    const auto final_path = dir / (key + ".ctab");
    // Unique temp name per writer; rename is atomic, so concurrent
    // invocations cannot leave a torn entry behind.
    std::ostringstream tmp_name;
    tmp_name << key << "." << std::hash<std::thread::id>{}(std::this_thread::get_id())
             << ".ctab.tmp";
    const auto tmp_path = dir / tmp_name.str();
    {
        std::ofstream os(tmp_path, std::ios::binary | std::ios::trunc);
        if (!os) throw ConfigError("cannot write cache file " + tmp_path.string());
        os.write(kMagic, sizeof kMagic);
        put(os, kFormatVersion);
        put(os, static_cast<std::int32_t>(table.phi_power()));
        put(os, table.built_for().alpha);
        put(os, table.built_for().omega_c);
        put(os, table.built_for().temperature);
        put(os, table.displacement_b());
        put(os, table.decay_scale());
        put(os, static_cast<std::uint64_t>(table.size()));
        for (double t : table.tau_grid()) put(os, t);
        for (const auto& p : table.phi_values()) {
            put(os, p.real());
            put(os, p.imag());
        }
        if (!os) throw ConfigError("short write to cache file " + tmp_path.string());
    }
    std::filesystem::rename(tmp_path, final_path);
}

std::optional<bath::CorrelationTable> load_table(const std::filesystem::path& dir,
                                                 const std::string& key,
                                                 const bath::BathParams& expect,
                                                 int phi_power) {
    const auto path = dir / (key + ".ctab");
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;

    char magic[8];
    is.read(magic, sizeof magic);
    if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0) return std::nullopt;

    std::uint32_t version = 0;
    std::int32_t power = 0;
    bath::BathParams b;
    double displacement = 1.0, decay = 0.0;
    std::uint64_t n = 0;
    if (!get(is, version) || version != kFormatVersion) return std::nullopt;
    if (!get(is, power) || !get(is, b.alpha) || !get(is, b.omega_c) ||
        !get(is, b.temperature) || !get(is, displacement) || !get(is, decay) ||
        !get(is, n))
        return std::nullopt;
    if (power != phi_power || !(b == expect) || n < 4 || n > (1u << 24))
        return std::nullopt;

    std::vector<double> tau(n);
    std::vector<std::complex<double>> phi(n);
    for (auto& t : tau)
        if (!get(is, t)) return std::nullopt;
    for (auto& p : phi) {
        double re, im;
        if (!get(is, re) || !get(is, im)) return std::nullopt;
        p = {re, im};
    }
    return bath::CorrelationTable(std::move(tau), std::move(phi), decay, displacement,
                                  b, power);
}

std::size_t clear(const std::filesystem::path& dir) {
    std::error_code ec;
    std::size_t removed = 0;
    for (auto it = std::filesystem::directory_iterator(dir, ec);
         !ec && it != std::filesystem::directory_iterator(); ++it) {
        if (it->path().extension() == ".ctab" ||
            it->path().string().ends_with(".ctab.tmp")) {
            std::filesystem::remove(it->path(), ec);
            if (!ec) ++removed;
        }
    }
    return removed;
}

DiskTableProvider::DiskTableProvider(std::filesystem::path dir,
                                     quad::QuadSettings settings)
    : dir_(std::move(dir)), settings_(settings) {}

std::shared_ptr<const bath::CorrelationTable> DiskTableProvider::get(
    const bath::BathParams& b, int phi_power) {
    const std::string key = cache_key(b, settings_, phi_power);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = loaded_.find(key);
        if (it != loaded_.end()) return it->second;
    }
    auto from_disk = load_table(dir_, key, b, phi_power);
    std::shared_ptr<const bath::CorrelationTable> table;
    if (from_disk) {
        table = std::make_shared<const bath::CorrelationTable>(std::move(*from_disk));
    } else {
        table = std::make_shared<const bath::CorrelationTable>(
            bath::build_correlation_table(b, settings_, phi_power));
        save_table(dir_, key, *table, settings_);
    }
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = loaded_.emplace(key, std::move(table));
    return it->second;
}

} // namespace drf::cache

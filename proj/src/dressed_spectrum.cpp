#include "drf/dressed_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "drf/parallel.hpp"

namespace drf::dressed {

std::vector<std::string> DriveConfig::validate() const {
    if (!(omega_rabi_half > 0.0)) throw ConfigError("Omega must be positive");
    if (g_half < 0.0) throw ConfigError("G must be non-negative");
    if (g_half > 0.0) {
        if (photon_number_m < 1)
            throw ConfigError("photon number M must be >= 1 when G > 0");
        if (!(omega_rabi_half > g_half))
            throw ConfigError("double drive requires Omega > G");
    }
    if (!(gamma_rad > 0.0)) throw ConfigError("Gamma must be positive");
    std::vector<std::string> warnings;
    if (g_half > 0.0 && !(2.0 * g_half > gamma_rad)) {
        std::ostringstream os;
        os << "model validity guard: expected 2*Omega > 2*G > Gamma, got 2G = "
           << 2.0 * g_half << " <= Gamma = " << gamma_rad;
        warnings.push_back(os.str());
    }
    return warnings;
}

double oscillator_phi(int n, double x) {
    if (n < 0 || n > 10000) throw ConfigError("oscillator order out of range");
    // phi_0(x) = (2 pi)^(-1/4) exp(-x^2/2), split into mantissa and a
    // power-of-two exponent so the recurrence survives exp underflow at
    // large |x| (classically allowed region of high n).
    constexpr double kLog2e = 1.4426950408889634;
    const double log2_phi0 = -0.25 * std::log2(2.0 * M_PI) - 0.5 * x * x * kLog2e;
    int exp2_scale = static_cast<int>(std::floor(log2_phi0));
    double prev = std::exp2(log2_phi0 - exp2_scale);
    if (n == 0) return std::ldexp(prev, exp2_scale);

    double cur = std::sqrt(2.0) * x * prev;
    for (int k = 2; k <= n; ++k) {
        const double next =
            std::sqrt(2.0 / k) * x * cur - std::sqrt((k - 1.0) / k) * prev;
        prev = cur;
        cur = next;
        const double mag = std::max(std::abs(cur), std::abs(prev));
        if (mag > 0x1p500) {
            cur = std::ldexp(cur, -500);
            prev = std::ldexp(prev, -500);
            exp2_scale += 500;
        } else if (mag < 0x1p-500 && mag > 0.0) {
            cur = std::ldexp(cur, 500);
            prev = std::ldexp(prev, 500);
            exp2_scale -= 500;
        }
    }
    return std::ldexp(cur, exp2_scale);
}

double weight_density(int m, double lambda) {
    const double v = oscillator_phi(m, lambda / std::sqrt(2.0));
    return v * v;
}

double coupling_g_n(const DriveConfig& drive) {
    if (drive.photon_number_m < 1)
        throw ConfigError("coupling_g_n requires M >= 1");
    return std::sin(drive.theta) * std::cos(drive.theta) * drive.g_half /
           std::sqrt(static_cast<double>(drive.photon_number_m));
}

double coupling_matrix_element(int i, int n, int m, double g_n) {
    if (n < 0 || m < 0) throw ConfigError("photon indices must be >= 0");
    const double sign = (i == 1) ? 1.0 : -1.0; // -(-1)^i
    if (m == n + 1) return sign * g_n * std::sqrt(n + 1.0);
    if (m == n - 1) return sign * g_n * std::sqrt(static_cast<double>(n));
    return 0.0;
}

TransitionAmplitude selection_rule(int i, double lambda, int i_prime,
                                   double lambda_prime) {
    TransitionAmplitude t;
    if (i != i_prime) {
        if (lambda == -lambda_prime) {
            t.kind = TransitionKind::Sideband;
            t.amplitude = (i == 1) ? 0.5 : -0.5;
        }
    } else {
        if (lambda == lambda_prime) {
            t.kind = TransitionKind::Central;
            t.amplitude = (i == 1) ? 0.5 : -0.5; // -(-1)^i / 2
        }
    }
    return t;
}

namespace {

// Composite Gauss-Kronrod nodes over the weight-density support, with the
// density premultiplied into the weights. One table serves every grid point.
struct LambdaTable {
    std::vector<double> offset; // 2 lambda g_n, the sideband shift per node
    std::vector<double> wk;     // Kronrod weight * density * panel halfwidth
    std::vector<double> wg;     // embedded Gauss weight (0 off the G7 nodes)
};

LambdaTable build_lambda_table(int m, double g_n, double panel_width) {
    const double turning = std::sqrt(2.0) * std::sqrt(2.0 * m + 1.0);
    const double half_span = turning + 6.0;
    const std::size_t n_panels = static_cast<std::size_t>(
        std::ceil(2.0 * half_span / panel_width));
    LambdaTable t;
    t.offset.reserve(n_panels * 15);
    t.wk.reserve(n_panels * 15);
    t.wg.reserve(n_panels * 15);
    for (std::size_t p = 0; p < n_panels; ++p) {
        const double a = -half_span + 2.0 * half_span * static_cast<double>(p) / n_panels;
        const double b = -half_span + 2.0 * half_span * static_cast<double>(p + 1) / n_panels;
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int j = -7; j <= 7; ++j) {
            const int k = std::abs(j);
            const double lam = c + (j < 0 ? -h : h) * quad::detail::kXgk[7 - k];
            const double w = weight_density(m, lam);
            const int idx = 7 - k;
            t.offset.push_back(2.0 * lam * g_n);
            t.wk.push_back(h * quad::detail::kWgk[idx] * w);
            const bool on_g7 = (idx % 2 == 1) || idx == 7;
            t.wg.push_back(on_g7 ? h * quad::detail::kWg[idx / 2] * w : 0.0);
        }
    }
    return t;
}

inline double lorentzian(double x, double hwhm) {
    return hwhm / (x * x + hwhm * hwhm);
}

} // namespace

Spectrum spectrum_Ld(const DriveConfig& drive, double gamma_total,
                     double omega_eff, double g_eff,
                     const std::vector<double>& grid) {
    if (!(gamma_total > 0.0)) throw ConfigError("gamma_total must be positive");
    if (grid.empty()) throw ConfigError("empty detuning grid");
    for (double d : grid)
        if (!std::isfinite(d)) throw ConfigError("non-finite detuning grid");

    const double hw_c = 0.5 * gamma_total;  // central HWHM
    const double hw_s = 0.75 * gamma_total; // sideband HWHM
    const double prefactor = drive.gamma_rad / (4.0 * M_PI);

    double g_n = 0.0;
    if (g_eff > 0.0) {
        if (drive.photon_number_m < 1)
            throw ConfigError("spectrum with G > 0 requires M >= 1");
        DriveConfig d = drive;
        d.g_half = g_eff;
        g_n = coupling_g_n(d);
    }

    Spectrum s;
    s.detunings = grid;
    s.values.assign(grid.size(), 0.0);
    s.metadata.gamma_total = gamma_total;
    s.metadata.omega_eff = omega_eff;
    s.metadata.g_eff = g_eff;
    s.metadata.drive_mode = (g_n == 0.0) ? "single" : "double";

    if (g_n == 0.0) {
        // Weight density integrates to exactly 1; the sidebands are plain
        // Lorentzians at +-2 omega_eff.
        parallel_for(grid.size(), [&](std::size_t i) {
            const double d = grid[i];
            s.values[i] = prefactor *
                          (lorentzian(d, hw_c) +
                           0.25 * (lorentzian(d - 2.0 * omega_eff, hw_s) +
                                   lorentzian(d + 2.0 * omega_eff, hw_s)));
        });
        return s;
    }

    const int m = drive.photon_number_m;
    const double rel_goal = 1e-6;
    double panel_width = M_PI / std::sqrt(2.0 * m + 1.0);
    for (int attempt = 0;; ++attempt) {
        const LambdaTable tab = build_lambda_table(m, g_n, panel_width);
        const std::size_t nn = tab.offset.size();
        std::vector<double> worst(grid.size(), 0.0);
        parallel_for(grid.size(), [&](std::size_t i) {
            const double d = grid[i];
            quad::detail::KahanSum<double> accK;
            quad::detail::KahanSum<double> accG;
            for (std::size_t j = 0; j < nn; ++j) {
                const double v = lorentzian(d - 2.0 * omega_eff - tab.offset[j], hw_s) +
                                 lorentzian(d + 2.0 * omega_eff - tab.offset[j], hw_s);
                accK.add(tab.wk[j] * v);
                if (tab.wg[j] != 0.0) accG.add(tab.wg[j] * v);
            }
            const double integral = accK.sum;
            const double err = std::abs(accK.sum - accG.sum);
            s.values[i] = prefactor * (lorentzian(d, hw_c) + 0.25 * integral);
            worst[i] = err - rel_goal * std::abs(integral);
        });
        if (*std::max_element(worst.begin(), worst.end()) <= 0.0) break;
        if (attempt >= 5)
            throw NonConvergence("sideband weight integral did not reach 1e-6 relative");
        panel_width *= 0.5;
    }
    return s;
}

} // namespace drf::dressed

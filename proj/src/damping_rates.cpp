#include "drf/damping_rates.hpp"

#include <cmath>

#include "drf/dressed_spectrum.hpp"

namespace drf::rates {

const char* model_name(RateModel m) {
    switch (m) {
        case RateModel::WeakCoupling: return "weak";
        case RateModel::OnePhonon: return "onephonon";
        case RateModel::FullPolaron: return "polaron";
    }
    return "?";
}

RateModel model_from_name(const std::string& name) {
    if (name == "weak") return RateModel::WeakCoupling;
    if (name == "onephonon") return RateModel::OnePhonon;
    if (name == "polaron") return RateModel::FullPolaron;
    throw ConfigError("unknown damping model '" + name +
                      "' (expected weak|onephonon|polaron)");
}

double rate_weak_coupling(const bath::BathParams& bath, double omega_rabi) {
    if (!(omega_rabi > 0.0)) throw ConfigError("rate requires omega_rabi > 0");
    return 0.5 * M_PI * bath::spectral_density(bath, omega_rabi) *
           thermal_coth(omega_rabi, bath.temperature);
}

double renormalized_rabi(const bath::BathParams& bath, double omega) {
    return omega * bath::displacement_B(bath);
}

double rate_one_phonon(const bath::BathParams& bath, double omega_rabi) {
    return rate_weak_coupling(bath, renormalized_rabi(bath, omega_rabi));
}

cplx response_K(const bath::CorrelationTable& table, Kernel kernel, double omega,
                const quad::QuadSettings& s) {
    const bath::BathParams& b = table.built_for();
    if (b.alpha == 0.0) return {0.0, 0.0};
    const double tau_max = table.tau_max();
    auto lam = [&](double tau) -> cplx {
        if (tau > tau_max) return {0.0, 0.0};
        return kernel == Kernel::X ? bath::kernel_lambda_x(b, table, tau)
                                   : bath::kernel_lambda_y(b, table, tau);
    };
    // Cutoff lands exactly on tau_max, where |phi| has decayed below
    // 1e-8 |phi(0)| by table construction.
    const double scale = tau_max / s.tail_cutoff_factor;
    return quad::fourier_half_transform(lam, omega, scale, s).value;
}

namespace {
double gamma_of(const bath::CorrelationTable& table, Kernel k, double omega) {
    return 2.0 * response_K(table, k, omega).real();
}
} // namespace

double rate_gamma_y(const bath::BathParams& bath, const bath::CorrelationTable& table,
                    double omega_rabi) {
    if (bath.alpha == 0.0) return 0.0;
    return 0.5 * omega_rabi * omega_rabi * gamma_of(table, Kernel::X, 0.0);
}

double rate_gamma_z(const bath::BathParams& bath, const bath::CorrelationTable& table,
                    double omega_rabi) {
    if (bath.alpha == 0.0) return 0.0;
    const double omega_r = omega_rabi * table.displacement_b();
    const double gyp = gamma_of(table, Kernel::Y, omega_r);
    const double gym = gamma_of(table, Kernel::Y, -omega_r);
    const double gx0 = gamma_of(table, Kernel::X, 0.0);
    return 0.25 * omega_rabi * omega_rabi * (gyp + gym + 2.0 * gx0);
}

RateSet rate_full_polaron(const bath::BathParams& bath,
                          const bath::CorrelationTable& table, double omega_rabi) {
    if (!(omega_rabi > 0.0)) throw ConfigError("rate requires omega_rabi > 0");
    RateSet rs;
    rs.model = RateModel::FullPolaron;
    rs.temperature = bath.temperature;
    rs.B = table.displacement_b();
    rs.omega_r = omega_rabi * rs.B;
    if (bath.alpha == 0.0) {
        rs.g_r = 0.0;
        return rs;
    }
    const double gx0 = gamma_of(table, Kernel::X, 0.0);
    const double gyp = gamma_of(table, Kernel::Y, rs.omega_r);
    const double gym = gamma_of(table, Kernel::Y, -rs.omega_r);
    rs.gamma_y = 0.5 * omega_rabi * omega_rabi * gx0;
    rs.gamma_z = 0.25 * omega_rabi * omega_rabi * (gyp + gym + 2.0 * gx0);
    rs.gamma_phonon = rs.gamma_y + rs.gamma_z;
    return rs;
}

double rate_full_polaron_explicit(const bath::BathParams& bath,
                                  const bath::CorrelationTable& table,
                                  double omega_rabi) {
    if (bath.alpha == 0.0) return 0.0;
    const double omega_r = omega_rabi * table.displacement_b();
    const double tau_max = table.tau_max();
    const double scale = tau_max / bath::bath_quad_settings().tail_cutoff_factor;
    auto sinh_phi = [&](double tau) -> cplx {
        if (tau > tau_max) return {0.0, 0.0};
        const cplx p = table.interpolate(tau);
        return std::exp(p) - std::exp(-p);
    };
    auto cosh_phi = [&](double tau) -> cplx {
        if (tau > tau_max) return {0.0, 0.0};
        const cplx p = table.interpolate(tau);
        return std::exp(p) + std::exp(-p) - 2.0;
    };
    const auto s = bath::bath_quad_settings();
    const double plus = quad::fourier_half_transform(sinh_phi, omega_r, scale, s).value.real();
    const double minus = quad::fourier_half_transform(sinh_phi, -omega_r, scale, s).value.real();
    const double zero = quad::fourier_half_transform(cosh_phi, 0.0, scale, s).value.real();
    return 0.25 * omega_r * omega_r * (plus + minus + 4.0 * zero);
}

RateSet rate_set(RateModel model, const bath::BathParams& bath,
                 const dressed::DriveConfig& drive,
                 const bath::CorrelationTable* table) {
    bath.validate();
    const double omega = drive.omega_rabi_half;
    const double g = drive.g_half;
    if (!(omega > 0.0)) throw ConfigError("rate_set requires Omega > 0");

    RateSet rs;
    rs.model = model;
    rs.temperature = bath.temperature;

    switch (model) {
        case RateModel::WeakCoupling:
            rs.B = bath::displacement_B(bath);
            rs.gamma_phonon = (bath.alpha == 0.0) ? 0.0 : rate_weak_coupling(bath, omega);
            rs.omega_r = omega; // peak positions stay at the bare Rabi
            rs.g_r = g;
            break;
        case RateModel::OnePhonon:
            rs.B = bath::displacement_B(bath);
            rs.omega_r = omega * rs.B;
            rs.g_r = g * rs.B;
            rs.gamma_phonon = (bath.alpha == 0.0) ? 0.0 : rate_weak_coupling(bath, rs.omega_r);
            break;
        case RateModel::FullPolaron: {
            bath::CorrelationTable local;
            const bath::CorrelationTable* t = table;
            if (t == nullptr || !(t->built_for() == bath)) {
                local = bath::build_correlation_table(bath);
                t = &local;
            }
            rs = rate_full_polaron(bath, *t, omega);
            rs.g_r = g * rs.B;
            break;
        }
    }
    return rs;
}

} // namespace drf::rates

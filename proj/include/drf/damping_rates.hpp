// damping_rates.hpp — Phonon damping rates: weak-coupling, single-phonon
// polaron, and full polaron (multiphonon), plus renormalized Rabi frequencies.
#pragma once

#include <complex>
#include <string>

#include "drf/phonon_bath.hpp"

namespace drf::dressed {
struct DriveConfig;
}

namespace drf::rates {

using cplx = std::complex<double>;

enum class RateModel { WeakCoupling, OnePhonon, FullPolaron };

const char* model_name(RateModel m);
RateModel model_from_name(const std::string& name); // throws ConfigError

enum class Kernel { X, Y };

struct RateSet {
    RateModel model = RateModel::WeakCoupling;
    double temperature = 0.0;   // K
    double gamma_phonon = 0.0;  // the selected model's damping rate
    double gamma_y = 0.0;       // FullPolaron only
    double gamma_z = 0.0;       // FullPolaron only
    double omega_r = 0.0;       // effective strong Rabi for the spectrum
    double g_r = 0.0;           // effective weak Rabi for the spectrum
    double B = 1.0;
};

// (pi/2) J(Omega) coth(hbar Omega / 2 kT), evaluated at the bare Rabi.
double rate_weak_coupling(const bath::BathParams& bath, double omega_rabi);

// omega * B(bath)
double renormalized_rabi(const bath::BathParams& bath, double omega);

// Same closed form as the weak-coupling rate but at the renormalized Rabi.
double rate_one_phonon(const bath::BathParams& bath, double omega_rabi);

// K_l(omega) = \int_0^inf e^{i omega tau} Lambda_l(tau) dtau
cplx response_K(const bath::CorrelationTable& table, Kernel kernel, double omega,
                const quad::QuadSettings& s = bath::bath_quad_settings());

double rate_gamma_y(const bath::BathParams& bath, const bath::CorrelationTable& table,
                    double omega_rabi);
double rate_gamma_z(const bath::BathParams& bath, const bath::CorrelationTable& table,
                    double omega_rabi);

RateSet rate_full_polaron(const bath::BathParams& bath,
                          const bath::CorrelationTable& table, double omega_rabi);

// Algebraically identical route written directly in terms of the renormalized
// Rabi frequency; kept as a cross-check of rate_full_polaron.
double rate_full_polaron_explicit(const bath::BathParams& bath,
                                  const bath::CorrelationTable& table,
                                  double omega_rabi);

// Model dispatch. The weak Rabi G never contributes to gamma_phonon; only its
// renormalization enters. FullPolaron requires a correlation table; one is
// built on the fly when none is supplied.
RateSet rate_set(RateModel model, const bath::BathParams& bath,
                 const dressed::DriveConfig& drive,
                 const bath::CorrelationTable* table = nullptr);

} // namespace drf::rates

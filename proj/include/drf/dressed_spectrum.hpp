// dressed_spectrum.hpp — Doubly-dressed-state machinery: oscillator
// eigenfunctions, weak-field coupling, transition selection rules, and the
// analytic emission-spectrum kernel (three Lorentzian families, the sidebands
// smeared over the oscillator weight density).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drf/errors.hpp"
#include "drf/quadrature.hpp"

namespace drf::dressed {

struct DriveConfig {
    double omega_laser = 0.0;     // spectrum origin only; output is vs detuning
    double omega_rabi_half = 0.0; // Omega, half the strong-field splitting 2*Omega
    double g_half = 0.0;          // G, half the weak-field width 2*G; 0 = single drive
    int photon_number_m = 40;     // weak-field photon number M
    double theta = 0.78539816339744830962; // mixing angle, pi/4 at resonance
    double gamma_rad = 0.0;       // spontaneous emission rate

    // Hard violations throw; the soft validity guard is returned as warnings.
    std::vector<std::string> validate() const;
};

struct SpectrumMetadata {
    std::string model;       // damping model name, or "none"
    std::string drive_mode;  // "single" | "double"
    double temperature = 0.0;
    bool normalized = false;
    double gamma_total = 0.0;
    double omega_eff = 0.0;
    double g_eff = 0.0;
    double raw_peak = 0.0;   // maximum before normalization, prefactor Gamma_rad/4pi
    bool operator==(const SpectrumMetadata&) const = default;
};

struct Spectrum {
    std::vector<double> detunings; // omega - omega_laser
    std::vector<double> values;
    SpectrumMetadata metadata;
    bool operator==(const Spectrum&) const = default;
};

// Harmonic-oscillator eigenfunction with (sqrt(2 pi) 2^n n!)^(-1/2)
// normalization, by a scaled three-term recurrence. Stable to n = 1e4.
double oscillator_phi(int n, double x);

// |phi_M(lambda/sqrt(2))|^2; integrates to 1 over lambda.
double weight_density(int m, double lambda);

// g_n = sin(theta) cos(theta) G / sqrt(M)
double coupling_g_n(const DriveConfig& drive);

// Tridiagonal coupling element -(-1)^i g_n (sqrt(n+1) d_{n+1,m} + sqrt(n) d_{n-1,m}).
double coupling_matrix_element(int i, int n, int m, double g_n);

enum class TransitionKind { Forbidden, Sideband, Central };

struct TransitionAmplitude {
    TransitionKind kind = TransitionKind::Forbidden;
    double amplitude = 0.0; // +-1/2 when allowed
};

// Cross-manifold transitions require lambda' = -lambda (sidebands); same-index
// transitions require lambda' = lambda (central line).
TransitionAmplitude selection_rule(int i, double lambda, int i_prime,
                                   double lambda_prime);

// Emission spectrum vs detuning: a central Lorentzian of HWHM gamma_total/2
// plus two sideband Lorentzians of HWHM 3 gamma_total/4 centred at
// +-2 omega_eff + 2 lambda g_n, averaged over the weight density.
// The global prefactor uses the radiative rate (drive.gamma_rad); widths use
// gamma_total. Values are raw (not normalized).
Spectrum spectrum_Ld(const DriveConfig& drive, double gamma_total,
                     double omega_eff, double g_eff,
                     const std::vector<double>& grid);

} // namespace drf::dressed

// phonon_bath.hpp — LA-phonon environment: super-ohmic spectral density,
// phonon correlation function, displacement factor, polaron kernels, and a
// sampled correlation table for the time-domain integrals.
#pragma once

#include <complex>
#include <vector>

#include "drf/errors.hpp"
#include "drf/quadrature.hpp"
#include "drf/units.hpp"

namespace drf::bath {

using cplx = std::complex<double>;

struct BathParams {
    double alpha = 0.0;       // coupling strength, (rad/ns)^-2
    double omega_c = 1.0;     // phonon cutoff, rad/ns
    double temperature = 0.0; // K

    void validate() const {
        if (!(alpha >= 0.0) || !(omega_c > 0.0) || !(temperature >= 0.0))
            throw ConfigError("bath parameters out of range");
    }
    bool operator==(const BathParams&) const = default;
};

// Quadrature settings tuned for the bath integrals: tight relative tolerance
// so downstream closed-form checks at 1e-10 have headroom, and a cutoff of
// 6 omega_c, beyond which the Gaussian envelope is below 3e-16.
quad::QuadSettings bath_quad_settings();

// J(omega) = alpha omega^3 exp(-(omega/omega_c)^2)
double spectral_density(const BathParams& bath, double omega);

// phi(tau) = \int_0^inf dw J(w)/w^p (cos(w tau) coth(hbar w / 2 kT) - i sin(w tau))
// with p = phi_power (2 keeps exp(-phi(0)) = B^2; 1 reproduces the
// alternative printed convention).
cplx correlation_phi(const BathParams& bath, double tau,
                     const quad::QuadSettings& s = bath_quad_settings(),
                     int phi_power = 2);

// Thermally averaged displacement B = exp(-1/2 \int dw J/w^2 coth), in (0, 1].
double displacement_B(const BathParams& bath,
                      const quad::QuadSettings& s = bath_quad_settings());

// Polaron shift \int_0^inf dw J(w)/w. Diagnostic only.
double polaron_shift(const BathParams& bath,
                     const quad::QuadSettings& s = bath_quad_settings());

// Sampled phi(tau) with local cubic interpolation. Uniform sampling through
// the structured region, geometric afterwards, extended until
// |phi(tau_max)| < 1e-8 |phi(0)|.
class CorrelationTable {
public:
    CorrelationTable() = default;
    CorrelationTable(std::vector<double> tau, std::vector<cplx> phi,
                     double decay_scale, double displacement_b,
                     BathParams built_for, int phi_power);

    cplx interpolate(double tau) const; // throws TableRange outside [0, tau_max]

    double tau_max() const { return tau_.empty() ? 0.0 : tau_.back(); }
    double decay_scale() const { return decay_scale_; }
    double displacement_b() const { return displacement_b_; }
    const BathParams& built_for() const { return built_for_; }
    int phi_power() const { return phi_power_; }
    std::size_t size() const { return tau_.size(); }
    const std::vector<double>& tau_grid() const { return tau_; }
    const std::vector<cplx>& phi_values() const { return phi_; }

private:
    std::vector<double> tau_;
    std::vector<cplx> phi_;
    double decay_scale_ = 0.0;
    double displacement_b_ = 1.0;
    BathParams built_for_;
    int phi_power_ = 2;
};

CorrelationTable build_correlation_table(const BathParams& bath,
                                         const quad::QuadSettings& s = bath_quad_settings(),
                                         int phi_power = 2);

// Polaron kernels. The displacement factor squared is taken from the table.
// Both vanish identically when the coupling is zero.
cplx kernel_lambda_x(const BathParams& bath, const CorrelationTable& table, double tau);
cplx kernel_lambda_y(const BathParams& bath, const CorrelationTable& table, double tau);

} // namespace drf::bath

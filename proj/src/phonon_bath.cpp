#include "drf/phonon_bath.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace drf::bath {

namespace {

// omega * coth(c * omega) without the 0/0 at omega -> 0.
double omega_coth(double omega, double c) {
    if (c <= 0.0) return omega; // T = 0: coth factor is exactly 1
    const double x = c * omega;
    if (x < 1e-4) return (1.0 / c) * (1.0 + x * x / 3.0 - x * x * x * x / 45.0);
    if (x > 30.0) return omega;
    return omega / std::tanh(x);
}

} // namespace

quad::QuadSettings bath_quad_settings() {
    quad::QuadSettings s;
    s.rel_tol = 1e-11;
    s.abs_tol = 1e-13;
    s.max_subdivisions = 4000;
    s.tail_cutoff_factor = 6.0;
    return s;
}

double spectral_density(const BathParams& bath, double omega) {
    const double u = omega / bath.omega_c;
    return bath.alpha * omega * omega * omega * std::exp(-u * u);
}

cplx correlation_phi(const BathParams& bath, double tau,
                     const quad::QuadSettings& s, int phi_power) {
    bath.validate();
    if (phi_power != 1 && phi_power != 2)
        throw ConfigError("phi_power must be 1 or 2");
    if (bath.alpha == 0.0) return {0.0, 0.0};
    const double c =
        bath.temperature > 0.0 ? kHbarOverKb / (2.0 * bath.temperature) : 0.0;
    const double wc = bath.omega_c;
    const double alpha = bath.alpha;
    // J/w^2 = alpha w e^-(w/wc)^2; J/w adds one more power of w.
    auto integrand = [=](double w) -> cplx {
        const double env = alpha * std::exp(-(w / wc) * (w / wc));
        const double extra = (phi_power == 1) ? w : 1.0;
        const double re = env * extra * omega_coth(w, c) * std::cos(w * tau);
        const double im = -env * extra * w * std::sin(w * tau);
        return {re, im};
    };
    return quad::integrate_semi_infinite(integrand, wc, s, tau).value;
}

double displacement_B(const BathParams& bath, const quad::QuadSettings& s) {
    bath.validate();
    if (bath.alpha == 0.0) return 1.0;
    const double c =
        bath.temperature > 0.0 ? kHbarOverKb / (2.0 * bath.temperature) : 0.0;
    const double wc = bath.omega_c;
    const double alpha = bath.alpha;
    auto integrand = [=](double w) {
        return alpha * std::exp(-(w / wc) * (w / wc)) * omega_coth(w, c);
    };
    const double I = quad::integrate_semi_infinite(integrand, wc, s).value;
    return std::exp(-0.5 * I);
}

double polaron_shift(const BathParams& bath, const quad::QuadSettings& s) {
    bath.validate();
    if (bath.alpha == 0.0) return 0.0;
    const double wc = bath.omega_c;
    const double alpha = bath.alpha;
    auto integrand = [=](double w) {
        return alpha * w * w * std::exp(-(w / wc) * (w / wc));
    };
    return quad::integrate_semi_infinite(integrand, wc, s).value;
}

CorrelationTable::CorrelationTable(std::vector<double> tau, std::vector<cplx> phi,
                                   double decay_scale, double displacement_b,
                                   BathParams built_for, int phi_power)
    : tau_(std::move(tau)),
      phi_(std::move(phi)),
      decay_scale_(decay_scale),
      displacement_b_(displacement_b),
      built_for_(built_for),
      phi_power_(phi_power) {
    if (tau_.size() != phi_.size() || tau_.size() < 4)
        throw ConfigError("correlation table needs at least 4 samples");
    if (tau_.front() != 0.0)
        throw ConfigError("correlation table must start at tau = 0");
    for (std::size_t i = 1; i < tau_.size(); ++i)
        if (!(tau_[i] > tau_[i - 1]))
            throw ConfigError("correlation table grid must increase strictly");
}

cplx CorrelationTable::interpolate(double tau) const {
    if (!(tau >= 0.0) || tau > tau_.back()) {
        std::ostringstream os;
        os << "tau = " << tau << " outside correlation table [0, " << tau_.back() << "]";
        throw TableRange(os.str());
    }
    // 4-point Lagrange on the bracketing points, one-sided at the ends.
    const auto it = std::upper_bound(tau_.begin(), tau_.end(), tau);
    std::size_t i = static_cast<std::size_t>(it - tau_.begin());
    if (i < 2) i = 2;
    if (i > tau_.size() - 2) i = tau_.size() - 2;
    const std::size_t k = i - 2;
    const double x0 = tau_[k], x1 = tau_[k + 1], x2 = tau_[k + 2], x3 = tau_[k + 3];
    const double l0 = (tau - x1) * (tau - x2) * (tau - x3) / ((x0 - x1) * (x0 - x2) * (x0 - x3));
    const double l1 = (tau - x0) * (tau - x2) * (tau - x3) / ((x1 - x0) * (x1 - x2) * (x1 - x3));
    const double l2 = (tau - x0) * (tau - x1) * (tau - x3) / ((x2 - x0) * (x2 - x1) * (x2 - x3));
    const double l3 = (tau - x0) * (tau - x1) * (tau - x2) / ((x3 - x0) * (x3 - x1) * (x3 - x2));
    return l0 * phi_[k] + l1 * phi_[k + 1] + l2 * phi_[k + 2] + l3 * phi_[k + 3];
}

CorrelationTable build_correlation_table(const BathParams& bath,
                                         const quad::QuadSettings& s, int phi_power) {
    bath.validate();
    const double wc = bath.omega_c;
    const double h = 0.02 / wc;

    if (bath.alpha == 0.0) {
        std::vector<double> tau;
        std::vector<cplx> phi;
        for (int i = 0; i < 8; ++i) {
            tau.push_back(i * h);
            phi.emplace_back(0.0, 0.0);
        }
        return CorrelationTable(std::move(tau), std::move(phi), 1.0 / wc, 1.0, bath,
                                phi_power);
    }

    // Per-point absolute tolerance scales with the kernel magnitude, which
    // varies by orders of magnitude between the two phi powers.
    quad::QuadSettings st = s;
    st.abs_tol =
        std::max(s.abs_tol, 1e-11 * std::abs(correlation_phi(bath, 0.0, s, phi_power)));

    std::vector<double> tau;
    std::vector<cplx> phi;
    const double core_end = 24.0 / wc;
    tau.reserve(2048);
    for (double t = 0.0; t <= core_end; t += h) tau.push_back(t);
    phi.reserve(tau.size() + 256);
    for (double t : tau) phi.push_back(correlation_phi(bath, t, st, phi_power));

    const double phi0 = std::abs(phi.front());
    const double target = 1e-8 * phi0;
    const double tau_cap = 2e5 / wc;

    std::size_t decayed_at = tau.size();
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (std::abs(phi[i]) < target) {
            decayed_at = i;
            break;
        }
    }
    if (decayed_at == tau.size()) {
        // Geometric extension until the correlation has fully decayed.
        double t = tau.back();
        while (true) {
            t *= 1.05;
            if (t > tau_cap) {
                std::ostringstream os;
                os << "correlation table did not decay below " << target
                   << " before tau = " << tau_cap;
                throw NonConvergence(os.str());
            }
            tau.push_back(t);
            phi.push_back(correlation_phi(bath, t, st, phi_power));
            if (std::abs(phi.back()) < target) break;
        }
    } else {
        // Already decayed inside the uniform region; trim the dead tail but
        // keep one decayed sample so the invariant holds at tau_max.
        tau.resize(decayed_at + 1);
        phi.resize(decayed_at + 1);
    }

    const double B = displacement_B(bath, s);

    // Characteristic decay time: first |phi| crossing of phi(0)/e.
    double decay = tau.back();
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (std::abs(phi[i]) < phi0 / M_E) {
            decay = std::max(tau[i], h);
            break;
        }
    }
    return CorrelationTable(std::move(tau), std::move(phi), decay, B, bath, phi_power);
}

cplx kernel_lambda_x(const BathParams& bath, const CorrelationTable& table, double tau) {
    if (bath.alpha == 0.0) return {0.0, 0.0};
    const cplx p = table.interpolate(tau);
    const double b2 = table.displacement_b() * table.displacement_b();
    return 0.5 * b2 * (std::exp(p) + std::exp(-p) - 2.0);
}

cplx kernel_lambda_y(const BathParams& bath, const CorrelationTable& table, double tau) {
    if (bath.alpha == 0.0) return {0.0, 0.0};
    const cplx p = table.interpolate(tau);
    const double b2 = table.displacement_b() * table.displacement_b();
    return 0.5 * b2 * (std::exp(p) - std::exp(-p));
}

} // namespace drf::bath

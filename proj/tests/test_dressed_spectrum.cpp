#include "doctest.h"

#include <cmath>

#include "drf/dressed_spectrum.hpp"
#include "oracles.hpp"

using namespace drf;
using dressed::DriveConfig;

namespace {

const double kOmega = M_PI * 5.0;
const double kG = M_PI * 2.0;

DriveConfig paper_drive() {
    DriveConfig d;
    d.omega_rabi_half = kOmega;
    d.g_half = kG;
    d.photon_number_m = 40;
    d.gamma_rad = 2.35;
    return d;
}

std::vector<double> make_grid(double span, int points) {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = -span + 2.0 * span * static_cast<double>(i) / (points - 1);
    return g;
}

// lambda-measure inner product of phi_m(l/sqrt 2) phi_n(l/sqrt 2)
double osc_inner(int m, int n) {
    const double span = std::sqrt(2.0) * std::sqrt(2.0 * std::max(m, n) + 1.0) + 10.0;
    return oracle::trapezoid(
        [&](double l) {
            return dressed::oscillator_phi(m, l / std::sqrt(2.0)) *
                   dressed::oscillator_phi(n, l / std::sqrt(2.0));
        },
        -span, span, 40000);
}

} // namespace

TEST_CASE("oscillator eigenfunction: anchors and high order") {
    CHECK(dressed::oscillator_phi(0, 0.0) ==
          doctest::Approx(std::pow(2.0 * M_PI, -0.25)).epsilon(1e-14));
    CHECK(std::pow(2.0 * M_PI, -0.25) == doctest::Approx(0.63161878).epsilon(1e-7));
    CHECK(dressed::oscillator_phi(1, 0.0) == 0.0);

    // |phi_40(0)|: H_40(0) = 40!/20!, normalization (sqrt(2 pi) 2^40 40!)^(-1/2);
    // evaluated through lgamma as an independent high-precision route.
    const double log_phi40 = 0.5 * std::lgamma(41.0) - std::lgamma(21.0) -
                             0.25 * std::log(2.0 * M_PI) - 20.0 * std::log(2.0);
    CHECK(std::abs(dressed::oscillator_phi(40, 0.0)) ==
          doctest::Approx(std::exp(log_phi40)).epsilon(1e-10));

    // no overflow deep in the classically forbidden and allowed regions
    CHECK(std::isfinite(dressed::oscillator_phi(1000, 10.0)));
    CHECK(std::isfinite(dressed::oscillator_phi(10000, 140.0)));
    CHECK(std::abs(dressed::oscillator_phi(1000, 10.0)) > 0.0);
    CHECK_THROWS_AS(dressed::oscillator_phi(-1, 0.0), ConfigError);
    CHECK_THROWS_AS(dressed::oscillator_phi(10001, 0.0), ConfigError);
}

TEST_CASE("oscillator eigenfunctions are orthonormal in the lambda measure") {
    const int orders[] = {0, 1, 2, 3, 4, 5, 40};
    for (int a = 0; a < 7; ++a) {
        for (int b = a; b < 7; ++b) {
            const double ip = osc_inner(orders[a], orders[b]);
            CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-8);
        }
    }
}

TEST_CASE("weight density: ground state, normalization, support") {
    CHECK(dressed::weight_density(0, 0.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-12));
    CHECK(dressed::weight_density(0, 0.0) == doctest::Approx(0.39894).epsilon(1e-5));

    for (int m : {0, 1, 5, 40}) {
        const double span = 4.0 * std::sqrt(2.0 * m + 1.0) + 6.0;
        const double norm = oracle::trapezoid(
            [&](double l) { return dressed::weight_density(m, l); }, -span, span, 200000);
        CHECK(std::abs(norm - 1.0) < 1e-8);
    }

    // Support concentrates inside the classical turning point; the evanescent
    // tail falls below 1e-6 about two units past it.
    const double edge = std::sqrt(2.0) * std::sqrt(81.0);
    CHECK(edge == doctest::Approx(12.728).epsilon(1e-3));
    for (double l : {15.0, 16.0, 18.0}) {
        CHECK(dressed::weight_density(40, l) < 1e-6);
        CHECK(dressed::weight_density(40, -l) < 1e-6);
    }
    const double outside = 2.0 * oracle::trapezoid(
                               [&](double l) { return dressed::weight_density(40, l); },
                               edge, edge + 8.0, 20000);
    CHECK(outside < 0.05);
}

TEST_CASE("weak-field coupling strength") {
    DriveConfig d = paper_drive();
    CHECK(dressed::coupling_g_n(d) ==
          doctest::Approx(2.0 * M_PI / (2.0 * std::sqrt(40.0))).epsilon(1e-12));
    CHECK(dressed::coupling_g_n(d) == doctest::Approx(0.4967).epsilon(1e-4));

    d.theta = 0.0;
    CHECK(dressed::coupling_g_n(d) == 0.0);

    d = paper_drive();
    d.photon_number_m = 90000;
    CHECK(dressed::coupling_g_n(d) < 0.5 * kG / 200.0);
    d.photon_number_m = 0;
    CHECK_THROWS_AS(dressed::coupling_g_n(d), ConfigError);
}

TEST_CASE("coupling matrix elements are tridiagonal with the printed signs") {
    const double g = 0.37;
    CHECK(dressed::coupling_matrix_element(1, 3, 5, g) == 0.0);
    CHECK(dressed::coupling_matrix_element(2, 4, 4, g) == 0.0);
    CHECK(dressed::coupling_matrix_element(2, 0, 1, g) == doctest::Approx(-g));
    CHECK(dressed::coupling_matrix_element(1, 0, 1, g) == doctest::Approx(g));
    CHECK(dressed::coupling_matrix_element(1, 4, 3, g) == doctest::Approx(2.0 * g));
}

TEST_CASE("truncated coupling matrix reproduces the oscillator eigenfunctions") {
    const int K = 200;
    const double g = 1.0;
    // i = 1: matrix +g (sqrt(n+1) on the superdiagonal); eigenvalue lambda g
    // pairs with components phi_n(lambda / sqrt 2).
    std::vector<double> diag(K, 0.0), off(K - 1);
    for (int n = 0; n + 1 < K; ++n)
        off[n] = dressed::coupling_matrix_element(1, n, n + 1, g);
    const auto eig = oracle::tridiag_eigen(diag, off);

    const double lambda_max = eig.values.back();
    int tested = 0;
    double worst = 0.0;
    for (int k = 0; k < K; k += 7) {
        const double lambda = eig.values[k];
        if (std::abs(lambda) >= 0.7 * lambda_max) continue;
        // reference vector phi_n(lambda/sqrt2), unit normalized
        std::vector<double> ref(K);
        double norm = 0.0;
        for (int n = 0; n < K; ++n) {
            ref[n] = dressed::oscillator_phi(n, lambda / std::sqrt(2.0));
            norm += ref[n] * ref[n];
        }
        norm = std::sqrt(norm);
        const auto& v = eig.vectors[k];
        // fix relative sign on the largest reference component
        int imax = 0;
        for (int n = 0; n < K; ++n)
            if (std::abs(ref[n]) > std::abs(ref[imax])) imax = n;
        const double sign = (v[imax] * ref[imax] >= 0.0) ? 1.0 : -1.0;
        for (int n = 0; n < K; ++n)
            worst = std::max(worst, std::abs(sign * v[n] - ref[n] / norm));
        ++tested;
    }
    CHECK(tested > 10);
    CHECK(worst < 1e-3);

    // i = 2: matrix -g B; the eigenvector at eigenvalue E matches
    // phi_n(lambda/sqrt 2) with lambda = -E/g.
    for (int n = 0; n + 1 < K; ++n)
        off[n] = dressed::coupling_matrix_element(2, n, n + 1, g);
    const auto eig2 = oracle::tridiag_eigen(diag, off);
    double worst2 = 0.0;
    for (int k = 0; k < K; k += 23) {
        const double lambda = -eig2.values[k] / g;
        if (std::abs(lambda) >= 0.7 * lambda_max) continue;
        std::vector<double> ref(K);
        double norm = 0.0;
        for (int n = 0; n < K; ++n) {
            ref[n] = dressed::oscillator_phi(n, lambda / std::sqrt(2.0));
            norm += ref[n] * ref[n];
        }
        norm = std::sqrt(norm);
        const auto& v = eig2.vectors[k];
        int imax = 0;
        for (int n = 0; n < K; ++n)
            if (std::abs(ref[n]) > std::abs(ref[imax])) imax = n;
        const double sign = (v[imax] * ref[imax] >= 0.0) ? 1.0 : -1.0;
        for (int n = 0; n < K; ++n)
            worst2 = std::max(worst2, std::abs(sign * v[n] - ref[n] / norm));
    }
    CHECK(worst2 < 1e-3);
}

TEST_CASE("selection rules") {
    auto sb = dressed::selection_rule(1, 0.3, 2, -0.3);
    CHECK(sb.kind == dressed::TransitionKind::Sideband);
    CHECK(sb.amplitude == doctest::Approx(0.5));

    auto sb2 = dressed::selection_rule(2, 0.3, 1, -0.3);
    CHECK(sb2.kind == dressed::TransitionKind::Sideband);
    CHECK(sb2.amplitude == doctest::Approx(-0.5));

    auto c = dressed::selection_rule(1, 0.3, 1, 0.3);
    CHECK(c.kind == dressed::TransitionKind::Central);
    CHECK(c.amplitude == doctest::Approx(0.5));

    auto f = dressed::selection_rule(1, 0.3, 2, 0.3);
    CHECK(f.kind == dressed::TransitionKind::Forbidden);
    CHECK(dressed::selection_rule(1, 0.3, 1, -0.3).kind ==
          dressed::TransitionKind::Forbidden);
}

TEST_CASE("single-drive limit: three Lorentzians with the printed weights") {
    const DriveConfig d = paper_drive();
    const double gt = d.gamma_rad;
    const auto grid = make_grid(2.2 * 2.0 * kOmega, 8001);
    const auto s = dressed::spectrum_Ld(d, gt, kOmega, 0.0, grid);

    REQUIRE(s.values.size() == grid.size());
    for (double v : s.values) CHECK(v >= 0.0);

    // central height 1/(2 pi) plus sideband tails, peak at the grid middle
    const std::size_t mid = grid.size() / 2;
    CHECK(grid[mid] == doctest::Approx(0.0));
    const double central = s.values[mid];
    CHECK(central == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(2e-3));

    // sideband peak near +2 Omega with height ~ 1/(12 pi): ratio ~ 6
    double sb = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid[i] > kOmega) sb = std::max(sb, s.values[i]);
    CHECK(central / sb == doctest::Approx(6.0).epsilon(0.02));

    // symmetry on the symmetric grid
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double mirror = s.values[grid.size() - 1 - i];
        CHECK(std::abs(s.values[i] - mirror) <= 1e-10 * std::max(s.values[i], 1e-30));
    }
}

TEST_CASE("double drive: central peak untouched, sidebands spread over 2G") {
    const DriveConfig d = paper_drive();
    const double gt = d.gamma_rad;
    const auto grid = make_grid(2.2 * 2.0 * kOmega, 8001);
    const auto single = dressed::spectrum_Ld(d, gt, kOmega, 0.0, grid);
    const auto dbl = dressed::spectrum_Ld(d, gt, kOmega, kG, grid);

    // (a) central region is invariant
    const std::size_t mid = grid.size() / 2;
    CHECK(dbl.values[mid] == doctest::Approx(single.values[mid]).epsilon(5e-3));

    // (b) the sideband turns into a band; its maximum drops well below the
    // single-drive sideband peak and mass appears out to ~2G from 2 Omega
    double sb_single = 0.0, sb_double = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] > kOmega) {
            sb_single = std::max(sb_single, single.values[i]);
            sb_double = std::max(sb_double, dbl.values[i]);
        }
    }
    CHECK(sb_double < 0.4 * sb_single);

    // intensity at 2 Omega +- (2G - Gamma) well above the single-drive value there
    auto value_at = [&](const dressed::Spectrum& s, double x) {
        std::size_t best = 0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (std::abs(grid[i] - x) < std::abs(grid[best] - x)) best = i;
        return s.values[best];
    };
    const double probe = 2.0 * kOmega + 2.0 * kG - d.gamma_rad;
    CHECK(value_at(dbl, probe) > 3.0 * value_at(single, probe));

    // (c) symmetry of the double-drive spectrum
    for (std::size_t i = 0; i < grid.size(); i += 13) {
        const double mirror = dbl.values[grid.size() - 1 - i];
        CHECK(std::abs(dbl.values[i] - mirror) <= 1e-10 * std::max(dbl.values[i], 1e-30));
    }
}

TEST_CASE("sideband envelope support when the linewidth is small") {
    DriveConfig d = paper_drive();
    d.gamma_rad = 0.3; // gamma_total << G
    const double gt = d.gamma_rad;
    const auto grid = make_grid(2.2 * 2.0 * kOmega, 16001);
    const auto s = dressed::spectrum_Ld(d, gt, kOmega, kG, grid);

    double sb_max = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid[i] > kOmega) sb_max = std::max(sb_max, s.values[i]);

    auto value_at = [&](double x) {
        std::size_t best = 0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (std::abs(grid[i] - x) < std::abs(grid[best] - x)) best = i;
        return s.values[best];
    };
    const double edge = 2.0 * kG + 5.0 * gt;
    CHECK(value_at(2.0 * kOmega + edge) < 0.05 * sb_max);
    CHECK(value_at(2.0 * kOmega - edge) < 0.05 * sb_max);
    CHECK(value_at(-2.0 * kOmega - edge) < 0.05 * sb_max);
}

TEST_CASE("term areas keep the 2:1 central-to-sidebands ratio") {
    for (double g_eff : {0.0, kG}) {
        DriveConfig d = paper_drive();
        const double gt = 3.1; // arbitrary width
        const double span = 40.0 * kOmega;
        const auto grid = make_grid(span, 200001);
        const auto s = dressed::spectrum_Ld(d, gt, kOmega, g_eff, grid);

        double total = 0.0;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i)
            total += 0.5 * (s.values[i] + s.values[i + 1]) * (grid[i + 1] - grid[i]);

        const double prefactor = d.gamma_rad / (4.0 * M_PI);
        const double central = prefactor * 2.0 * std::atan(span / (0.5 * gt));
        const double sidebands = total - central;
        CHECK(central / sidebands == doctest::Approx(2.0).epsilon(0.02));
        CHECK(total == doctest::Approx(prefactor * 1.5 * M_PI).epsilon(0.015));
    }
}

TEST_CASE("spectrum input validation") {
    const DriveConfig d = paper_drive();
    CHECK_THROWS_AS(dressed::spectrum_Ld(d, 0.0, kOmega, 0.0, {0.0, 1.0, 2.0}),
                    ConfigError);
    CHECK_THROWS_AS(dressed::spectrum_Ld(d, 1.0, kOmega, 0.0, {}), ConfigError);
    DriveConfig bad = d;
    bad.photon_number_m = 0;
    CHECK_THROWS_AS(dressed::spectrum_Ld(bad, 1.0, kOmega, kG, {0.0, 1.0}), ConfigError);

    // validity guard warns but does not throw
    DriveConfig soft = d;
    soft.g_half = 0.5;
    soft.gamma_rad = 2.35; // 2G = 1.0 < Gamma
    CHECK(!soft.validate().empty());
    CHECK(d.validate().empty());
    DriveConfig hard = d;
    hard.g_half = 2.0 * kOmega;
    CHECK_THROWS_AS(hard.validate(), ConfigError);
}

#include <doctest.h>

#include <cmath>

#include "wavepacket/analytic.hpp"
#include "wavepacket/optimize.hpp"
#include "wavepacket/overlap.hpp"

using namespace wavepacket;
using namespace wavepacket::analytic;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("Gaussian linear closed form") {
    const auto one = gaussian_linear_closed(1.0, 0.0, 0.0);
    CHECK(one.delta_p == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one.delta_m == doctest::Approx(1.0).epsilon(1e-15));

    const auto q = overlaps(gaussian_linear(2.0), 1.05, 0.0);
    const auto c = gaussian_linear_closed(1.05, 2.0, 0.0);
    CHECK(rel(c.delta_p, q.delta_p) < 1e-8);
    CHECK(rel(c.delta_m, q.delta_m) < 1e-8);

    // At χ = 1 the z̄ dependence is a Gaussian of variance 2(χ⁴+1) = 4.
    for (double zb : {0.5, 1.5, 3.0})
        CHECK(gaussian_linear_closed(1.0, 0.0, zb).delta_m == doctest::Approx(std::exp(-zb * zb / 8)).epsilon(1e-14));
}

TEST_CASE("closed forms against quadrature on a 5x5x5 grid") {
    quadrature::Options tight;
    tight.abs_tol = 1e-13;
    double worst = 0.0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            for (int k = 0; k < 5; ++k) {
                const double chi = 1.001 + (1.1 - 1.001) * i / 4, phi = 3.0 * j / 4, zb = -1.0 + 0.5 * k;
                const auto q = overlaps(gaussian_linear(phi), chi, zb, tight);
                const auto c = gaussian_linear_closed(chi, phi, zb);
                worst = std::max({worst, rel(c.delta_p, q.delta_p), rel(c.delta_m, q.delta_m)});
                const auto q2 = overlaps(gaussian_quadratic(phi / 3, 5.0), chi, zb, tight);
                const auto c2 = gaussian_quadratic_closed(chi, phi / 3, 5.0, zb);
                worst = std::max({worst, rel(c2.delta_p, q2.delta_p), rel(c2.delta_m, q2.delta_m)});
            }
    CHECK(worst < 1e-7);
}

TEST_CASE("Gaussian linear optimum") {
    const auto a = gaussian_linear_optimal(1.0, 2.0);
    CHECK(a.delta_p_opt == doctest::Approx(1.0));
    CHECK(a.z_bar_opt == 0.0);
    const auto b = gaussian_linear_optimal(1.3, 0.0);
    CHECK(b.delta_p_opt == b.delta_m_opt);
    CHECK(b.delta_m_opt == doctest::Approx(std::sqrt(2.0) * 1.3 / std::sqrt(1 + std::pow(1.3, 4))).epsilon(1e-15));
    const auto n = maximize_shift(gaussian_linear(3.0), 1.02, Which::Pure, DimensionfulFrame{});
    const auto c = gaussian_linear_optimal(1.02, 3.0);
    CHECK(rel(n.delta_p_opt, c.delta_p_opt) < 1e-7);
}

TEST_CASE("Gaussian linear near-Earth expansion") {
    const auto z = gaussian_linear_near_earth(0.0, 3.0);
    CHECK(z.delta_p == 1.0);
    CHECK(z.delta_m == 1.0);
    const auto e = gaussian_linear_near_earth(1e-3, 1.0);
    CHECK(e.delta_p - e.delta_m == doctest::Approx(-2e-6).epsilon(1e-9));
    // Gap to the exact optimum is third order.
    double prev = 0.0;
    for (double d : {4e-3, 2e-3, 1e-3, 5e-4}) {
        const double gap = std::abs(gaussian_linear_optimal(1 + d, 5.0).delta_p_opt - gaussian_linear_near_earth(d, 5.0).delta_p);
        const double r = gap / (d * d * d);
        if (prev > 0) CHECK(r == doctest::Approx(prev).epsilon(0.5));
        prev = r;
    }
}

TEST_CASE("Gaussian quadratic closed form") {
    SUBCASE("no phase reduces to the linear form") {
        for (double zb : {0.0, 0.7}) {
            const auto a = gaussian_quadratic_closed(1.04, 0.0, 30.0, zb);
            const auto b = gaussian_linear_closed(1.04, 0.0, zb);
            CHECK(a.delta_p == doctest::Approx(b.delta_p).epsilon(1e-14));
            CHECK(a.delta_m == doctest::Approx(b.delta_m).epsilon(1e-14));
        }
    }
    SUBCASE("chi = 1 leaves only the z̄ Gaussian") {
        const auto q = quadratic_coefficients(1.0, 0.8, 20.0);
        CHECK(q.xi == 1.0);
        CHECK(q.a1 == 0.0);
        const double zb = 0.6;
        CHECK(gaussian_quadratic_closed(1.0, 0.8, 20.0, zb).delta_p ==
              doctest::Approx(std::exp(-q.a2 * zb * zb / 4)).epsilon(1e-14));
    }
    SUBCASE("quadrature oracle at a large carrier offset") {
        quadrature::Options tight;
        tight.abs_tol = 1e-13;
        const auto q = overlaps(gaussian_quadratic(0.7, 50.0), 1.01, 0.2, tight);
        const auto c = gaussian_quadratic_closed(1.01, 0.7, 50.0, 0.2);
        CHECK(rel(c.delta_p, q.delta_p) < 1e-7);
        // The verbatim printed form does not reproduce quadrature.
        const auto pr = gaussian_quadratic_closed_printed(1.01, 0.7, 50.0, 0.2);
        CHECK(rel(pr.delta_p, q.delta_p) > 1e-3);
    }
}

TEST_CASE("Gaussian quadratic optimum") {
    CHECK(gaussian_quadratic_optimal(1.02, 0.7, 0.0).z_bar_opt == 0.0);
    const auto a = gaussian_quadratic_optimal(1.001, 0.5, 100.0);
    const auto n = maximize_shift(gaussian_quadratic(0.5, 100.0), 1.001, Which::Pure, DimensionfulFrame{});
    CHECK(a.z_bar_opt == doctest::Approx(n.z_bar_opt).epsilon(1e-6));
    // Printed near-Earth shift satisfies the stated bound |z̄| ≤ 8 z0² δ₁².
    for (double phi : {0.1, 0.5, 1.0, 3.0})
        for (double z0 : {1.0, 10.0, 100.0}) {
            const double d = 1e-3;
            CHECK(std::abs(gaussian_quadratic_near_earth_shift_printed(d, phi, z0)) <= 8 * z0 * z0 * d * d * (1 + 1e-12));
        }
}

TEST_CASE("Gaussian quadratic near-Earth expansions") {
    const auto z = gaussian_quadratic_near_earth(1e-3, 0.0, 7.0);
    CHECK(z.delta_p == doctest::Approx(1 - 1e-6).epsilon(1e-15));
    CHECK(z.delta_m == doctest::Approx(1 - 1e-6).epsilon(1e-15));
    // δ₁⁴ term: 2⁹φ̃⁴z0²/(1+16φ̃⁴) ≤ 32 z0²
    for (double phi : {0.2, 1.0, 5.0}) {
        const double p4 = std::pow(phi, 4);
        CHECK(512 * p4 / (1 + 16 * p4) <= 32.0);
    }
    // Consistent expansion: third-order gap; printed expansion: second-order gap.
    const double phi = 0.5, z0 = 2.0;
    double prev = 0.0;
    for (double d : {4e-3, 2e-3, 1e-3, 5e-4}) {
        const double exact = gaussian_quadratic_optimal(1 + d, phi, z0).delta_p_opt;
        const double r = std::abs(exact - gaussian_quadratic_near_earth_consistent(d, phi, z0).delta_p) / (d * d * d);
        if (prev > 0) CHECK(r <= 1.5 * prev);
        prev = r;
        const double printed_gap = std::abs(exact - gaussian_quadratic_near_earth(d, phi, z0).delta_p) / (d * d);
        // printed (1+32φ̃⁴+8φ̃⁴z0²) = 5, exact 1+16φ̃⁴+8φ̃⁴z0²/(1+16φ̃⁴) = 3
        CHECK(printed_gap == doctest::Approx(2.0).epsilon(2e-2));
    }
}

TEST_CASE("comb linear near-Earth formula") {
    const auto z = comb_linear_near_earth_optimal(0.0, 10.0, 2.0);
    CHECK(z.delta_p_opt == 1.0);
    CHECK(z.delta_m_opt == 1.0);
    const auto f = comb_linear_near_earth_optimal(1e-3, 10.0, 0.0);
    CHECK(f.delta_p_opt == f.delta_m_opt);
    CHECK(f.delta_m_opt == doctest::Approx(1 - 1e-6 - 50e-6).epsilon(1e-15));
}

TEST_CASE("comb quadratic cases") {
    NearEarthParams p;
    p.delta1 = 1e-3;
    p.sigma_tilde = 10;
    p.d_tilde = 2;
    const double base = 1 - 1e-6 - 50e-6;

    SUBCASE("phi of order one ignores the offset") {
        p.phi_tilde = 1.0;
        for (double off : {0.0, 1e-6, 1e-4}) {
            p.delta_z0 = off;
            const auto r = comb_quadratic_optimal(p);
            CHECK(r.tag == CombCase::PhiOrderOne);
            CHECK(r.delta_p_opt == doctest::Approx(base).epsilon(1e-15));
            CHECK(r.delta_m_opt == r.delta_p_opt);
        }
    }
    SUBCASE("large phi, no offset") {
        p.phi_tilde = 10.0;
        p.delta_z0 = 0.0;
        const auto r = comb_quadratic_optimal(p);
        CHECK(r.tag == CombCase::LargePhiSmallOffset);
        CHECK(r.delta_p_opt - r.delta_m_opt == doctest::Approx(16 * 1e4 / 100 * 1e-6).epsilon(1e-9));
        CHECK(to_string(r.tag) == "ii.i");
        CHECK_FALSE(r.zeta_small_x);
    }
    SUBCASE("finite-offset branch reduces to the small-offset one") {
        p.phi_tilde = 10.0;
        CombCaseThresholds force;
        force.offset_ratio = 0.0;
        p.delta_z0 = 1e-9;
        const auto a = comb_quadratic_optimal(p, force);
        CHECK(a.tag == CombCase::LargePhiFiniteOffset);
        p.delta_z0 = 0.0;
        const auto b = comb_quadratic_optimal(p);
        CHECK(std::abs(a.delta_p_opt - b.delta_p_opt) < 1e-9);
        p.delta_z0 = 1e-9;
        const auto c = comb_quadratic_optimal(p, force, Transcription::Appendix);
        CHECK(std::abs(c.delta_p_opt - b.delta_p_opt) < 1e-9);
    }
    SUBCASE("shift formula") {
        p.phi_tilde = 3.0;
        p.delta_z0 = 0.01;
        const auto r = comb_quadratic_optimal(p);
        const double S = r.Sigma;
        CHECK(S == doctest::Approx(100.0 / (16 * r.zeta * 4 * 9)).epsilon(1e-14));
        CHECK(r.z_bar_opt == doctest::Approx(8 * 9 * (0.01 - 4e-6) * 1e-3 / (1 + S)).epsilon(1e-14));
    }
    SUBCASE("validity") {
        p.delta1 = 0.02;
        CHECK_THROWS_AS((void)comb_quadratic_optimal(p), ValidityError);
    }
}

TEST_CASE("zeta sum") {
    CHECK(estimate_zeta(0.01) >= 0.9);
    CHECK(estimate_zeta(0.01) <= 1.1);
    CHECK(rel(estimate_zeta(0.1), estimate_zeta(0.05)) < 0.05);
    // Euler–Maclaurin with an even summand: ζ(x) = 1 − x/2 up to terms of order e^{−π²/x}.
    for (double x : {0.01, 0.1, 0.2}) CHECK(std::abs(estimate_zeta(x) - (1 - x / 2)) < 1e-12);
    CHECK_THROWS_AS((void)estimate_zeta(0.5), std::domain_error);
    CHECK_THROWS_AS((void)estimate_zeta(0.0), std::domain_error);
    CHECK(zeta_sum(2.0) > 0.0);
}

TEST_CASE("relative change") {
    NearEarthParams p;
    p.delta1 = 1e-3;
    p.phi_tilde = 0.0;
    for (auto k : {EtaKind::GaLin, EtaKind::CoLin, EtaKind::GaQuad, EtaKind::CoQuad})
        CHECK(std::abs(relative_change(k, p)) < 1e-15);
    p.phi_tilde = 1.0;
    CHECK(relative_change(EtaKind::GaLin, p) == doctest::Approx(-2e-6).epsilon(1e-2));
    CHECK(relative_change(EtaKind::CoLin, p) == doctest::Approx(-2e-8).epsilon(1e-2));
    for (double phi : {0.5, 1.0, 3.0}) {
        p.phi_tilde = phi;
        CHECK(relative_change(EtaKind::GaLin, p) <= 0.0);
        CHECK(relative_change(EtaKind::CoLin, p) <= 0.0);
    }
}

TEST_CASE("validity flags") {
    NearEarthParams p;
    p.delta1 = 0.05;
    p.phi_tilde = 3.0;
    CHECK_THROWS_AS(check_validity(p, false), ValidityError);
    CHECK_NOTHROW(check_validity(p, false, 0.2));
    p.phi_tilde = 0.0;
    p.z0 = 10.0;
    CHECK_THROWS_AS(check_validity(p, false), ValidityError);
}

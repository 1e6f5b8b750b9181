#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wavepacket/overlap.hpp"
#include "wavepacket/states.hpp"

using namespace wavepacket;
using namespace wavepacket::states;

namespace {

double quartic_integral(const Profile& p) {
    const auto b = quadrature::uniform_breaks(-p.half_width(), p.half_width(), p.resolution());
    return quadrature::integrate([&](double z) { return std::complex<double>(std::pow(p.modulus(z), 4), 0.0); }, b)
        .value.real();
}

double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

}  // namespace

TEST_CASE("pure and mixed states on a fine grid") {
    const auto grid = FrequencyGrid::centered(2048, 0.01);
    const auto p = gaussian_linear(1.2);
    const auto pure = pure_state(p, grid);
    const auto mixed = mixed_state(p, grid);
    CHECK(pure.residue < 1e-8);
    CHECK(sum(mixed.probabilities) == doctest::Approx(1.0).epsilon(1e-12));
    const auto dp = pure.diagonal();
    for (std::size_t n = 0; n < grid.n_bins; n += 97) {
        CHECK(std::abs(dp[n] - mixed.probabilities[n]) < 1e-12);
        const double z = grid.center(n);
        CHECK(std::abs(dp[n] - grid.lambda * std::norm(p(z))) < grid.lambda * grid.lambda);
        if (std::abs(pure.amplitudes[n]) > 1e-200) {
            const double d = std::remainder(std::arg(pure.amplitudes[n]) - p.phase(z), 2 * std::numbers::pi);
            CHECK(std::abs(d) < 1e-9);
        }
    }
    CHECK(purity(pure) == 1.0);
    CHECK(purity(mixed) < 1.0);
    CHECK(purity(mixed) > 0.0);
}

TEST_CASE("mixed purity is the discretized quartic integral") {
    const auto p = gaussian_quadratic(0.6, 3.0);
    for (double lambda : {0.02, 0.01, 0.005}) {
        const auto grid = FrequencyGrid::centered(static_cast<std::size_t>(24 / lambda), lambda);
        CHECK(purity(mixed_state(p, grid)) == doctest::Approx(lambda * quartic_integral(p)).epsilon(1e-9));
    }
    CHECK(quartic_integral(p) == doctest::Approx(1 / (2 * std::sqrt(std::numbers::pi))).epsilon(1e-12));
}

TEST_CASE("redshift map") {
    const auto grid = FrequencyGrid::centered(2048, 0.01);
    const auto p = gaussian_linear(0.8);
    const auto s = pure_state(p, grid);
    SUBCASE("chi = 1 is the identity") {
        const auto r = apply_redshift(s, 1.0, grid);
        for (std::size_t n = 0; n < grid.n_bins; ++n) CHECK(std::abs(r.amplitudes[n] - s.amplitudes[n]) < 1e-15);
    }
    SUBCASE("trace is preserved before renormalization") {
        const auto r = apply_redshift(mixed_state(p, grid), 1.05, grid);
        CHECK(r.residue < 1e-10);
    }
    SUBCASE("support escape") {
        const FrequencyGrid narrow{1000, 0.01, -5.0};
        CHECK_THROWS_AS((void)pure_state(p, narrow), SupportEscape);
        CHECK_THROWS_AS((void)apply_redshift(s, 0.5, grid), SupportEscape);
    }
}

TEST_CASE("fidelity") {
    const auto grid = FrequencyGrid::centered(2048, 0.01);
    const auto p = gaussian_linear(0.5);
    const auto pure = pure_state(p, grid);
    const auto mixed = mixed_state(p, grid);
    CHECK(fidelity(pure, pure) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity(mixed, mixed) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity(pure, mixed) == doctest::Approx(std::sqrt(purity(mixed))).epsilon(1e-14));

    DiscreteState a = mixed, b = mixed;
    for (std::size_t n = 0; n < grid.n_bins; ++n) (n < grid.n_bins / 2 ? b : a).probabilities[n] = 0.0;
    CHECK(fidelity(a, b) == 0.0);

    const auto other = FrequencyGrid::centered(1024, 0.02);
    CHECK_THROWS_AS((void)fidelity(pure, pure_state(p, other)), GridMismatch);
}

TEST_CASE("purity invariance in the receiver frame, chi-squared scaling on a fixed grid") {
    const double chi = 1.05;
    const auto grid = FrequencyGrid::centered(2048, 0.01);
    for (const Profile& p : {gaussian_linear(1.0), comb(10, 2, 0.5, CombPhase::Linear)}) {
        const auto m = mixed_state(p, grid);
        CHECK(std::abs(purity(apply_redshift(m, chi, grid.receiver_frame(chi))) - purity(m)) < 1e-9);
        CHECK(purity(apply_redshift(pure_state(p, grid), chi, grid.receiver_frame(chi))) == 1.0);
    }
    const auto m = mixed_state(gaussian_linear(1.0), grid);
    CHECK(purity(apply_redshift(m, chi, grid)) / purity(m) == doctest::Approx(chi * chi).epsilon(1e-9));
}

TEST_CASE("fidelity converges to the quadrature overlaps") {
    for (double chi : {1.01, 1.05}) {
        const auto p = gaussian_linear(1.5);
        const auto q = overlaps(p, chi, 0.0);
        double prev_p = INFINITY, prev_m = INFINITY;
        for (double lambda : {1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256, 1.0 / 512}) {
            const auto grid = FrequencyGrid::centered(static_cast<std::size_t>(24 / lambda), lambda);
            const auto pure = pure_state(p, grid);
            const auto mixed = mixed_state(p, grid);
            const double gp = std::abs(fidelity(pure, apply_redshift(pure, chi, grid)) - q.delta_p);
            const double gm = std::abs(fidelity(mixed, apply_redshift(mixed, chi, grid)) - q.delta_m);
            CHECK((gp <= 0.5 * prev_p || gp < 1e-12));
            CHECK((gm <= 0.5 * prev_m || gm < 1e-12));
            prev_p = gp, prev_m = gm;
        }
        CHECK(prev_p < 1e-4);
        CHECK(prev_m < 1e-4);
    }
}

TEST_CASE("without windows the diagonal trace diverges as 1/lambda") {
    const auto p = gaussian_linear(0.0);
    const double a = naive_diagonal_trace(p, FrequencyGrid::centered(1200, 0.02));
    const double b = naive_diagonal_trace(p, FrequencyGrid::centered(2400, 0.01));
    const double c = naive_diagonal_trace(p, FrequencyGrid::centered(4800, 0.005));
    CHECK(b / a == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(c / b == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("grid preconditions") {
    CHECK_THROWS_AS((void)FrequencyGrid::centered(100, 0.1), std::invalid_argument);
    CHECK_THROWS_AS((void)FrequencyGrid::centered(100, 0.01), std::invalid_argument);
    const auto g = FrequencyGrid::centered(2000, 0.01);
    CHECK(g.z_min == doctest::Approx(-10.0));
    CHECK(g.z_max() == doctest::Approx(10.0));
    const auto r = g.receiver_frame(1.1);
    CHECK(r.lambda == doctest::Approx(0.01 / 1.21));
}

#include "wavepacket/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <sstream>

#include "wavepacket/analytic.hpp"
#include "wavepacket/coefficients.hpp"
#include "wavepacket/multiphoton.hpp"
#include "wavepacket/optimize.hpp"
#include "wavepacket/overlap.hpp"
#include "wavepacket/profiles.hpp"
#include "wavepacket/scenario.hpp"
#include "wavepacket/spacetime.hpp"
#include "wavepacket/states.hpp"

namespace wavepacket::validation {

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Check make(std::string name, double measured, double tol, bool gating = true, std::string note = {}) {
    Check c;
    c.name = std::move(name);
    c.measured = measured;
    c.tolerance = tol;
    c.passed = std::isfinite(measured) && measured <= tol;
    c.gating = gating;
    c.note = std::move(note);
    return c;
}

// Guards a check so an exception becomes a failed row instead of aborting the battery.
void guarded(Report& r, const std::string& name, const std::function<Check()>& body) {
    try {
        r.checks.push_back(body());
    } catch (const std::exception& e) {
        r.checks.push_back(make(name, INFINITY, 0.0, true, std::string("threw: ") + e.what()));
    }
}

quadrature::Options tight() {
    quadrature::Options q;
    q.abs_tol = 1e-13;
    return q;
}

// Two-level Richardson extrapolation of c(δ) = (1 − Δ(δ))/δ² to δ → 0,
// removing the δ and δ² terms.
double richardson_coefficient(const std::function<double(double)>& one_minus, double h) {
    auto c = [&](double d) { return one_minus(d) / (d * d); };
    const double r1a = 2.0 * c(h / 2) - c(h);
    const double r1b = 2.0 * c(h / 4) - c(h / 2);
    return (4.0 * r1b - r1a) / 3.0;
}

double expansion_growth(const std::function<double(double)>& exact, const std::function<double(double)>& approx) {
    const double deltas[] = {4e-3, 2e-3, 1e-3, 5e-4};
    double first = 0.0, worst = 0.0;
    for (double d : deltas) {
        const double r = std::abs(exact(d) - approx(d)) / (d * d * d);
        if (d == deltas[0]) first = r;
        worst = std::max(worst, r);
    }
    return worst / std::max(first, 1e-12);
}

void spacetime_checks(Report& r) {
    guarded(r, "spacetime.expansion_vs_exact", [] {
        // x = r_s/r_a = 1e-6; the residual after δ₁ + δ₂ is O(x³).
        double worst = 0.0;
        for (double ratio : {1.0, 1.5, 3.0}) {
            spacetime::SpacetimeConfig cfg{1.0e6, 1.0e6 * ratio, 1.0};
            const auto d = spacetime::delta_expansion(cfg);
            const long double resid =
                spacetime::redshift_factor_ld(cfg) - 1.0L - static_cast<long double>(d.delta1) - d.delta2;
            worst = std::max(worst, static_cast<double>(std::abs(resid)) / 1e-18);
        }
        return make("spacetime.expansion_vs_exact", worst, 10.0, true, "|χ − 1 − δ₁ − δ₂| / x³");
    });
    guarded(r, "spacetime.near_limit_vs_exact", [] {
        // L = 0 isolates the x² coefficient; L/r_a = 1e-5 exposes the L term.
        double worst = 0.0;
        for (double l_ratio : {0.0, 1e-5}) {
            const double ra = 1.0e6, rs = 1.0, L = l_ratio * ra;
            spacetime::SpacetimeConfig cfg{ra, ra + L, rs};
            const auto d = spacetime::delta_near_limit(ra, L, rs);
            const long double resid =
                spacetime::redshift_factor_ld(cfg) - 1.0L - static_cast<long double>(d.delta1) - d.delta2;
            const double x = rs / ra;
            const double bound = 5.0 * (x * l_ratio * l_ratio + x * x * l_ratio + x * x * x);
            worst = std::max(worst, static_cast<double>(std::abs(resid)) / bound);
        }
        return make("spacetime.near_limit_vs_exact", worst, 1.0, true, "residual / 5(xℓ² + x²ℓ + x³)");
    });
}

void closed_form_checks(Report& r, Level level) {
    const auto q = tight();
    guarded(r, "gaussian_linear.closed_vs_quadrature", [&] {
        double worst = 0.0;
        std::vector<double> chis{1.01, 1.05, 1.1}, phis{0.0, 1.0, 2.0}, zbars{-1.0, 0.0, 0.7};
        if (level == Level::Full) chis.push_back(1.3), phis.push_back(3.0), zbars.push_back(2.5);
        for (double chi : chis)
            for (double phi : phis)
                for (double zb : zbars) {
                    const auto num = overlaps(gaussian_linear(phi), chi, zb, q);
                    const auto cf = analytic::gaussian_linear_closed(chi, phi, zb);
                    worst = std::max({worst, rel(num.delta_p, cf.delta_p), rel(num.delta_m, cf.delta_m)});
                }
        return make("gaussian_linear.closed_vs_quadrature", worst, 1e-8, true, "max relative error");
    });
    guarded(r, "gaussian_quadratic.closed_vs_quadrature", [&] {
        double worst = 0.0;
        std::vector<double> chis{1.02, 1.05}, phis{0.5, 0.7}, z0s{0.0, 10.0}, zbars{0.0, 0.3};
        if (level == Level::Full) chis.push_back(1.2), phis.push_back(1.0), z0s.push_back(3.0), zbars.push_back(-0.8);
        for (double chi : chis)
            for (double phi : phis)
                for (double z0 : z0s)
                    for (double zb : zbars) {
                        const auto num = overlaps(gaussian_quadratic(phi, z0), chi, zb, q);
                        const auto cf = analytic::gaussian_quadratic_closed(chi, phi, z0, zb);
                        worst = std::max({worst, rel(num.delta_p, cf.delta_p), rel(num.delta_m, cf.delta_m)});
                    }
        return make("gaussian_quadratic.closed_vs_quadrature", worst, 1e-8, true, "max relative error");
    });
}

void optimizer_checks(Report& r, Level level) {
    const DimensionfulFrame frame;
    OptimizeOptions opt;
    opt.quad = tight();
    guarded(r, "optimizer.gaussian_mixed_benchmark", [&] {
        double worst = 0.0;
        for (double chi : {1.01, 1.05, 1.1}) {
            const auto res = maximize_shift(gaussian_linear(1.0), chi, Which::Mixed, frame, opt);
            const auto an = analytic::gaussian_linear_optimal(chi, 1.0);
            worst = std::max({worst, rel(res.delta_m_opt, an.delta_m_opt), std::abs(res.z_bar_opt)});
        }
        return make("optimizer.gaussian_mixed_benchmark", worst, 1e-8, true, "relative error and |z̄_opt|");
    });
    guarded(r, "optimizer.gaussian_quadratic_stationary", [&] {
        std::vector<std::array<double, 3>> cases{{1.001, 0.5, 100.0}};
        if (level == Level::Full) cases.push_back({1.01, 0.7, 20.0}), cases.push_back({1.05, 0.4, 5.0});
        double worst = 0.0;
        for (const auto& [chi, phi, z0] : cases) {
            const auto res = maximize_shift(gaussian_quadratic(phi, z0), chi, Which::Pure, frame, opt);
            const auto an = analytic::gaussian_quadratic_optimal(chi, phi, z0);
            worst = std::max(worst, rel(res.z_bar_opt, an.z_bar_opt));
        }
        return make("optimizer.gaussian_quadratic_stationary", worst, 1e-6, true, "relative error in z̄_opt");
    });
    if (level == Level::Full) {
        guarded(r, "optimizer.comb_mixed_symmetric", [&] {
            const auto res = maximize_shift(comb(10.0, 2.0, 0.0, CombPhase::Linear), 1.01, Which::Mixed, frame, opt);
            return make("optimizer.comb_mixed_symmetric", std::abs(res.z_bar_opt), 1e-6, true, "|z̄_opt|");
        });
    }
}

void near_earth_checks(Report& r) {
    const double phi = 1.0, qphi = 0.5, qz0 = 2.0;
    auto lin_exact = [&](double d) { return analytic::gaussian_linear_optimal(1.0 + d, phi).delta_p_opt; };
    auto lin_approx = [&](double d) { return analytic::gaussian_linear_near_earth(d, phi).delta_p; };
    auto quad_exact = [&](double d) { return analytic::gaussian_quadratic_optimal(1.0 + d, qphi, qz0).delta_p_opt; };
    auto quad_approx = [&](double d) {
        return analytic::gaussian_quadratic_near_earth_consistent(d, qphi, qz0).delta_p;
    };

    guarded(r, "near_earth.gaussian_linear_coefficient", [&] {
        const double fit = richardson_coefficient([&](double d) { return 1.0 - lin_exact(d); }, 8e-3);
        const double formula = (1.0 - lin_approx(1e-3)) / 1e-6;
        return make("near_earth.gaussian_linear_coefficient", rel(fit, formula), 1e-5, true,
                    "Richardson fit of the δ₁² coefficient");
    });
    guarded(r, "near_earth.gaussian_quadratic_coefficient", [&] {
        const double fit = richardson_coefficient([&](double d) { return 1.0 - quad_exact(d); }, 8e-3);
        const double formula = (1.0 - quad_approx(1e-3)) / 1e-6;
        return make("near_earth.gaussian_quadratic_coefficient", rel(fit, formula), 1e-5, true,
                    "fit vs 1 + 16φ̃⁴ + 8φ̃⁴z₀²/(1+16φ̃⁴)");
    });
    guarded(r, "near_earth.expansion_order", [&] {
        const double g = std::max(expansion_growth(lin_exact, lin_approx), expansion_growth(quad_exact, quad_approx));
        return make("near_earth.expansion_order", g, 1.5, true, "growth of |exact − approx|/δ₁³ as δ₁ shrinks");
    });
}

void comb_checks(Report& r) {
    guarded(r, "comb.normalization", [] {
        const double a = normalization(comb(10.0, 2.0, 0.0, CombPhase::Linear), tight());
        const double b = normalization(comb(6.0, 2.5, 1.0, CombPhase::Quadratic, 0.3), tight());
        return make("comb.normalization", std::max(std::abs(a - 1.0), std::abs(b - 1.0)), 1e-8, true, "|∫|F|² − 1|");
    });
}

void state_checks(Report& r) {
    guarded(r, "states.oracle_vs_quadrature", [] {
        const double chi = 1.05, lambda = 1.0 / 64.0;
        const Profile p = gaussian_linear(1.0);
        const auto grid = states::FrequencyGrid::centered(1536, lambda);
        const auto mixed = states::mixed_state(p, grid);
        const auto pure = states::pure_state(p, grid);
        const double fm = states::fidelity(mixed, states::apply_redshift(mixed, chi, grid));
        const double fp = states::fidelity(pure, states::apply_redshift(pure, chi, grid));
        const auto num = overlaps(p, chi, 0.0, tight());
        return make("states.oracle_vs_quadrature",
                    std::max(std::abs(fm - num.delta_m), std::abs(fp - num.delta_p)), 1e-6, true,
                    "λ = 1/64, χ = 1.05");
    });
    guarded(r, "states.purity_invariance", [] {
        const double chi = 1.05;
        const auto grid = states::FrequencyGrid::centered(2048, 0.01);
        double worst = 0.0;
        for (const Profile& p : {gaussian_linear(1.0), gaussian_quadratic(0.5, 2.0)}) {
            for (const auto& s : {states::mixed_state(p, grid), states::pure_state(p, grid)}) {
                const auto rx = states::apply_redshift(s, chi, grid.receiver_frame(chi));
                worst = std::max(worst, std::abs(states::purity(s) - states::purity(rx)));
            }
        }
        return make("states.purity_invariance", worst, 1e-9, true, "2048 bins, receiver-frame windows");
    });
}

double coherent_fock_sum(std::complex<double> lambda, double n) {
    // e^{−N} |Σ_k (NΛ)^k / k!| from the Fock expansion of two coherent states.
    std::complex<double> term = 1.0, sum = 1.0;
    for (int k = 1; k < 400; ++k) {
        term *= n * lambda / static_cast<double>(k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) && k > n) break;
    }
    return std::exp(-n) * std::abs(sum);
}

double squeezed_state_sum(double lambda, double n) {
    // Σ_k tanh^{2k}(s) Λ^{2k} / cosh²(s): each |2k⟩ in the shifted mode keeps Λ^{2k} in the original mode.
    const double s = multiphoton::squeezing_from_photons(n);
    const double t2 = std::pow(std::tanh(s), 2) * lambda * lambda;
    double term = 1.0, sum = 0.0;
    for (int k = 0; k < 100000 && term > 1e-18; ++k, term *= t2) sum += term;
    return sum / std::pow(std::cosh(s), 2);
}

void multiphoton_checks(Report& r) {
    guarded(r, "multiphoton.coherent_vs_fock_sum", [] {
        double worst = 0.0;
        for (std::complex<double> l : {std::complex<double>(0.9, 0.0), std::complex<double>(0.95, 0.1),
                                       std::complex<double>(0.99, -0.05)})
            for (double n : {1.0, 5.0, 20.0})
                worst = std::max(worst, rel(multiphoton::coherent_overlap(l, n, 1.0).delta_p, coherent_fock_sum(l, n)));
        return make("multiphoton.coherent_vs_fock_sum", worst, 1e-12, true, "relative error");
    });
    guarded(r, "multiphoton.fock_monotone", [] {
        double violations = 0.0;
        double prev = 1.0;
        for (int n = 1; n <= 100; ++n) {
            const double v = multiphoton::fock_overlap(0.97, n);
            if (!(v < prev) || v < 0.0) violations += 1.0;
            prev = v;
        }
        return make("multiphoton.fock_monotone", violations, 0.0, true, "violations over N = 1..100");
    });
}

void ordering_checks(Report& r) {
    guarded(r, "overlap.ordering_random", [] {
        std::mt19937_64 rng(20240917);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double violations = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double chi = 1.0 + 0.3 * u(rng) * (u(rng) < 0.5 ? -0.5 : 1.0);
            const double zb = 4.0 * (u(rng) - 0.5);
            const int kind = i % 3;
            const Profile p = kind == 0   ? gaussian_linear(3.0 * u(rng))
                              : kind == 1 ? gaussian_quadratic(u(rng), 5.0 * u(rng))
                                          : comb(8.0 + 4.0 * u(rng), 2.0, 2.0 * u(rng), CombPhase::Linear);
            const auto o = overlaps(p, chi, zb);
            if (!(o.delta_p >= 0.0 && o.delta_p <= o.delta_m + 1e-9 && o.delta_m <= 1.0 + 1e-9)) violations += 1.0;
        }
        return make("overlap.ordering_random", violations, 0.0, true, "200 random cases");
    });
}

void discrepancy_rows(Report& r, Level level) {
    guarded(r, "printed.quadratic_a1_stationary", [] {
        const double chi = 1.001, phi = 0.5, z0 = 100.0;
        const auto pc = analytic::quadratic_coefficients_printed(chi, phi, z0);
        const double printed = -active_closed().zopt_coeff * pc.a1 / pc.a2;
        const double exact = analytic::gaussian_quadratic_optimal(chi, phi, z0).z_bar_opt;
        return make("printed.quadratic_a1_stationary", rel(printed, exact), 1e-6, false,
                    "printed a₁ vs quadrature-validated stationary point");
    });
    guarded(r, "printed.quadratic_near_earth_coefficient", [] {
        const double phi = 0.5, z0 = 2.0;
        const double fit = richardson_coefficient(
            [&](double d) { return 1.0 - analytic::gaussian_quadratic_optimal(1.0 + d, phi, z0).delta_p_opt; }, 8e-3);
        const double printed = (1.0 - analytic::gaussian_quadratic_near_earth(1e-3, phi, z0).delta_p) / 1e-6;
        return make("printed.quadratic_near_earth_coefficient", rel(fit, printed), 1e-2, false,
                    "printed δ₁² coefficient vs fit of the exact optimum");
    });
    guarded(r, "printed.squeezed_vs_state_expansion", [] {
        const double l = 0.9, n = 10.0;
        const double printed = multiphoton::squeezed_overlap({l, 0.0}, n, 1.0).delta_p;
        return make("printed.squeezed_vs_state_expansion", std::abs(printed - squeezed_state_sum(l, n)), 1e-12, false,
                    "Λ = 0.9, N = 10");
    });
    if (level == Level::Full) {
        guarded(r, "printed.comb_linear_near_earth", [] {
            const double d = 1e-3;
            const auto num = overlaps(comb(10.0, 2.0, 0.0, CombPhase::Linear), 1.0 + d, 0.0, tight());
            const auto f = analytic::comb_linear_near_earth_optimal(d, 10.0, 0.0);
            return make("printed.comb_linear_near_earth", std::abs(num.delta_m - f.delta_m_opt), d * d * d + 1e-6,
                        false, "σ̃ = 10, d̃ = 2, δ₁ = 1e-3");
        });
    }
}

}  // namespace

bool Report::passed(bool strict) const {
    return std::all_of(checks.begin(), checks.end(), [&](const Check& c) { return c.passed || (!c.gating && !strict); });
}

std::string Report::format() const {
    std::ostringstream o;
    for (const auto& c : checks) {
        const char* tag = c.passed ? "PASS" : (c.gating ? "FAIL" : "INFO");
        o << tag << "  " << c.name << "  measured=" << cli::format_double(c.measured)
          << "  tolerance=" << cli::format_double(c.tolerance);
        if (!c.note.empty()) o << "  (" << c.note << ")";
        o << '\n';
    }
    return o.str();
}

Report run(Level level) {
    Report r;
    spacetime_checks(r);
    closed_form_checks(r, level);
    optimizer_checks(r, level);
    near_earth_checks(r);
    comb_checks(r);
    state_checks(r);
    multiphoton_checks(r);
    if (level == Level::Full) ordering_checks(r);
    discrepancy_rows(r, level);
    return r;
}

}  // namespace wavepacket::validation

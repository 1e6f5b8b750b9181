#include "wavepacket/spacetime.hpp"

#include "wavepacket/coefficients.hpp"

#include <cmath>

namespace wavepacket::spacetime {

void check_config(const SpacetimeConfig& cfg) {
    if (!std::isfinite(cfg.r_a) || !(cfg.r_a > 0.0))
        throw std::domain_error("spacetime: r_a must be finite and positive");
    if (std::isnan(cfg.r_b) || !(cfg.r_b > 0.0))
        throw std::domain_error("spacetime: r_b must be positive");
    if (!std::isfinite(cfg.r_s) || cfg.r_s < 0.0)
        throw std::domain_error("spacetime: r_s must be finite and non-negative");
    if (!(cfg.r_a > cfg.r_s))
        throw std::domain_error("spacetime: sender inside the Schwarzschild radius");
    if (!(cfg.r_b > 1.5 * cfg.r_s))
        throw std::domain_error("spacetime: receiver inside the photon sphere (r_b <= 1.5 r_s)");
}

long double redshift_factor_ld(const SpacetimeConfig& cfg) {
    check_config(cfg);
    const long double rs = cfg.r_s;
    const long double inv_b = std::isinf(cfg.r_b) ? 0.0L : 1.0L / static_cast<long double>(cfg.r_b);
    const long double num = 1.0L - 1.5L * rs * inv_b;
    const long double den = 1.0L - rs / static_cast<long double>(cfg.r_a);
    if (num <= 0.0L || den <= 0.0L)
        throw std::domain_error("redshift_factor: non-positive factor under the fourth root");
    return std::pow(num / den, 0.25L);
}

double redshift_factor(const SpacetimeConfig& cfg) {
    check_config(cfg);
    const double inv_b = std::isinf(cfg.r_b) ? 0.0 : 1.0 / cfg.r_b;
    const double num = 1.0 - 1.5 * cfg.r_s * inv_b;
    const double den = 1.0 - cfg.r_s / cfg.r_a;
    if (num <= 0.0 || den <= 0.0)
        throw std::domain_error("redshift_factor: non-positive factor under the fourth root");
    return std::pow(num / den, 0.25);
}

DeltaPair delta_expansion(const SpacetimeConfig& cfg, double max_ratio) {
    check_config(cfg);
    const double xa = cfg.r_s / cfg.r_a;
    const double xb = std::isinf(cfg.r_b) ? 0.0 : cfg.r_s / cfg.r_b;
    if (xa >= max_ratio || xb >= max_ratio)
        throw ValidityError("delta_expansion: r_s/r exceeds the perturbative threshold");
    const auto& c = active_spacetime();
    return {c.d1_a * xa - c.d1_b * xb, c.d2_aa * xa * xa - c.d2_ab * xa * xb - c.d2_bb * xb * xb};
}

DeltaPair delta_near_limit(double r_a, double L, double r_s, double max_ratio) {
    if (!(r_a > 0.0) || !(L >= 0.0) || !(r_s >= 0.0))
        throw std::domain_error("delta_near_limit: need r_a > 0, L >= 0, r_s >= 0");
    if (L / r_a >= max_ratio)
        throw ValidityError("delta_near_limit: L/r_a exceeds the short-separation threshold");
    const double x = r_s / r_a;
    const auto& c = active_spacetime();
    return {-c.n1 * x, c.n2_l * x * L / r_a - c.n2_aa * x * x};
}

double distant_receiver_delta(double r_a, double r_s) {
    const double x = r_s / r_a;
    const auto& c = active_spacetime();
    return c.d1_a * x + c.d2_aa * x * x;
}

RedshiftFactor redshift(const SpacetimeConfig& cfg, double max_ratio) {
    RedshiftFactor out;
    out.chi = redshift_factor(cfg);
    try {
        const auto d = delta_expansion(cfg, max_ratio);
        out.delta1 = d.delta1;
        out.delta2 = d.delta2;
    } catch (const ValidityError&) {
        out.delta1 = out.delta2 = 0.0;
    }
    return out;
}

double classical_redshift(double z_bar_opt, double chi, double sigma, double z0) {
    if (!(sigma > 0.0)) throw std::domain_error("classical_redshift: sigma must be positive");
    const double c2 = chi * chi;
    return (sigma / c2) * (z_bar_opt - (c2 - 1.0) * z0);
}

}  // namespace wavepacket::spacetime

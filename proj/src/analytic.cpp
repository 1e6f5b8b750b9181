#include "wavepacket/analytic.hpp"

#include <cmath>

#include "wavepacket/coefficients.hpp"

namespace wavepacket::analytic {

namespace {

double mixed_prefactor(double chi) {
    const double c2 = chi * chi;
    return std::sqrt(active_closed().mixed_prefactor * c2 / (1.0 + c2 * c2));
}

double sech2(double t) {
    const double e = std::exp(-2.0 * std::abs(t));
    return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

}  // namespace

void check_validity(const NearEarthParams& p, bool comb, double threshold) {
    const double d = std::abs(p.delta1);
    if (std::abs(p.phi_tilde) * d >= threshold) throw ValidityError("near-Earth: phi_tilde*delta1 not small");
    if (p.z0 * p.z0 * d * d >= threshold) throw ValidityError("near-Earth: z0^2*delta1^2 not small");
    if (comb) {
        const double s2 = p.sigma_tilde * p.sigma_tilde;
        if (p.d_tilde * p.d_tilde * s2 * s2 * d * d >= threshold)
            throw ValidityError("near-Earth: d_tilde^2*sigma_tilde^4*delta1^2 not small");
    }
}

OverlapPair gaussian_linear_closed(double chi, double phi_tilde, double z_bar) {
    if (!(chi > 0.0)) throw std::domain_error("gaussian_linear_closed: chi must be positive");
    const auto& c = active_closed();
    const double c2 = chi * chi;
    const double c4 = c2 * c2;
    const double dm = mixed_prefactor(chi) * std::exp(-c.zbar_quarter * z_bar * z_bar / (c4 + 1.0));
    const double penalty = std::exp(-c.linear_penalty * (c2 - 1.0) * (c2 - 1.0) / (c4 + 1.0) * phi_tilde * phi_tilde);
    return {dm * penalty, dm};
}

OptimalOverlaps gaussian_linear_optimal(double chi, double phi_tilde) {
    const auto r = gaussian_linear_closed(chi, phi_tilde, 0.0);
    return {r.delta_p, r.delta_m, 0.0};
}

OverlapPair gaussian_linear_near_earth(double delta1, double phi_tilde) {
    const double d2 = delta1 * delta1;
    return {1.0 - (1.0 + active_closed().near_linear * phi_tilde * phi_tilde) * d2, 1.0 - d2};
}

QuadraticCoefficients quadratic_coefficients(double chi, double phi_tilde, double z0) {
    const auto& c = active_closed();
    const double c2 = chi * chi;
    const double c4 = c2 * c2;
    const double p4 = std::pow(phi_tilde, 4);
    const double r = (c4 - 1.0) / (c4 + 1.0);
    QuadraticCoefficients q;
    q.xi = 1.0 + c.xi_coeff * p4 * r * r;
    q.a1 = c2 * (c2 - 1.0) / ((c4 + 1.0) * (c4 + 1.0)) * p4 / q.xi * z0;
    q.a2 = (1.0 + c.a2_coeff * p4) / (c4 + 1.0) / q.xi;
    return q;
}

QuadraticCoefficients quadratic_coefficients_printed(double chi, double phi_tilde, double z0) {
    const double c2 = chi * chi;
    const double c4 = c2 * c2;
    const double p4 = std::pow(phi_tilde, 4);
    const double r = (c4 - 1.0) / (c4 + 1.0);
    QuadraticCoefficients q;
    q.xi = 1.0 + 16.0 * p4 * r * r;
    q.a1 = c2 * (c2 - 1.0) * (c2 - 1.0) / ((c4 + 1.0) * (c4 + 1.0)) * phi_tilde * phi_tilde / q.xi * z0;
    q.a2 = (1.0 + 16.0 * p4) / (c4 + 1.0) / q.xi;
    return q;
}

OverlapPair gaussian_quadratic_closed(double chi, double phi_tilde, double z0, double z_bar) {
    if (!(chi > 0.0)) throw std::domain_error("gaussian_quadratic_closed: chi must be positive");
    const auto& c = active_closed();
    const double c2 = chi * chi;
    const double c4 = c2 * c2;
    const double p4 = std::pow(phi_tilde, 4);
    const auto q = quadratic_coefficients(chi, phi_tilde, z0);
    const double pref = mixed_prefactor(chi);
    const double offset = c.quad_offset * (c2 - 1.0) * (c2 - 1.0) / (c4 + 1.0) * p4 / q.xi * z0 * z0;
    const double dp = pref * std::pow(q.xi, -c.xi_power) * std::exp(-offset) *
                      std::exp(-c.a1_rate * q.a1 * z_bar - c.a2_quarter * q.a2 * z_bar * z_bar);
    const double dm = pref * std::exp(-c.zbar_quarter * z_bar * z_bar / (c4 + 1.0));
    return {dp, dm};
}

OverlapPair gaussian_quadratic_closed_printed(double chi, double phi_tilde, double z0, double z_bar) {
    const double c2 = chi * chi;
    const double c4 = c2 * c2;
    const double p4 = std::pow(phi_tilde, 4);
    const auto q = quadratic_coefficients_printed(chi, phi_tilde, z0);
    const double pref = std::sqrt(2.0) * chi / std::sqrt(1.0 + c4);
    const double offset = 4.0 * (c2 - 1.0) * (c2 - 1.0) / (c4 + 1.0) * p4 / q.xi * z0 * z0;
    const double dp = pref / std::sqrt(q.xi) * std::exp(-offset) * std::exp(-16.0 * q.a1 * z_bar - 0.25 * q.a2 * z_bar * z_bar);
    const double dm = pref * std::exp(-0.25 * z_bar * z_bar / (c4 + 1.0));
    return {dp, dm};
}

OptimalOverlaps gaussian_quadratic_optimal(double chi, double phi_tilde, double z0) {
    const auto q = quadratic_coefficients(chi, phi_tilde, z0);
    const double z_opt = -active_closed().zopt_coeff * q.a1 / q.a2;
    return {gaussian_quadratic_closed(chi, phi_tilde, z0, z_opt).delta_p,
            gaussian_quadratic_closed(chi, phi_tilde, z0, 0.0).delta_m, z_opt};
}

OverlapPair gaussian_quadratic_near_earth(double delta1, double phi_tilde, double z0) {
    const double d2 = delta1 * delta1;
    const double p4 = std::pow(phi_tilde, 4);
    const double dp = 1.0 - (1.0 + 32.0 * p4 + 8.0 * p4 * z0 * z0) * d2 + 512.0 * p4 * z0 * z0 * d2 * d2 / (1.0 + 16.0 * p4);
    return {dp, 1.0 - d2};
}

OverlapPair gaussian_quadratic_near_earth_consistent(double delta1, double phi_tilde, double z0) {
    const auto& c = active_closed();
    const double d2 = delta1 * delta1;
    const double p4 = std::pow(phi_tilde, 4);
    const double coeff = 1.0 + c.near_quad_phi4 * p4 + c.near_quad_z0 * p4 * z0 * z0 / (1.0 + c.near_quad_den * p4);
    return {1.0 - coeff * d2, 1.0 - d2};
}

double gaussian_quadratic_near_earth_shift_printed(double delta1, double phi_tilde, double z0) {
    const double p2 = phi_tilde * phi_tilde;
    return -64.0 * p2 * z0 * z0 / (1.0 + 16.0 * p2 * p2) * delta1 * delta1;
}

OptimalOverlaps comb_linear_near_earth_optimal(double delta1, double sigma_tilde, double phi_tilde) {
    if (!(sigma_tilde > 0.0)) throw std::domain_error("comb_linear_near_earth_optimal: sigma_tilde must be positive");
    NearEarthParams p;
    p.delta1 = delta1;
    p.phi_tilde = phi_tilde;
    check_validity(p, false);
    const double d2 = delta1 * delta1;
    const double s2 = sigma_tilde * sigma_tilde;
    const double dm = 1.0 - d2 - 0.5 * s2 * d2;
    return {dm * std::exp(-2.0 * d2 / s2 * phi_tilde * phi_tilde), dm, 0.0};
}

std::string to_string(CombCase c) {
    switch (c) {
        case CombCase::PhiOrderOne: return "i";
        case CombCase::LargePhiSmallOffset: return "ii.i";
        case CombCase::LargePhiFiniteOffset: return "ii.ii";
    }
    return "?";
}

double zeta_sum(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("zeta_sum: x must be positive");
    double sum = 0.0;
    for (long n = 1;; ++n) {
        const double t = sech2(static_cast<double>(n) * x);
        sum += t;
        if (t < 1e-16 * sum || t == 0.0) break;
    }
    return x * sum;
}

double estimate_zeta(double x, double max_x) {
    if (!(x > 0.0) || x > max_x) throw std::domain_error("estimate_zeta: x outside (0, max_x]");
    return zeta_sum(x);
}

double zeta_argument(const NearEarthParams& p) {
    const double d2 = p.delta1 * p.delta1;
    const double s2 = p.sigma_tilde * p.sigma_tilde;
    return 0.5 * p.d_tilde * p.d_tilde * (1.0 + s2 * d2 - 32.0 * d2 * std::pow(p.phi_tilde, 4) / s2);
}

CombQuadraticResult comb_quadratic_optimal(const NearEarthParams& p, const CombCaseThresholds& thr,
                                           Transcription transcription) {
    check_validity(p, true);
    CombQuadraticResult out;
    if (p.zeta > 0.0) {
        out.zeta = p.zeta;
    } else {
        const double x = zeta_argument(p);
        out.zeta_small_x = x <= 0.3;
        out.zeta = out.zeta_small_x ? estimate_zeta(x) : zeta_sum(x);
    }
    if (!(out.zeta > 0.0)) throw ValidityError("comb_quadratic_optimal: zeta must be positive");

    const double d1 = p.delta1;
    const double d2 = d1 * d1;
    const double s2 = p.sigma_tilde * p.sigma_tilde;
    const double dd2 = p.d_tilde * p.d_tilde;
    const double f2 = p.phi_tilde * p.phi_tilde;
    const double f4 = f2 * f2;
    const double base = 1.0 - d2 - 0.5 * s2 * d2;

    out.Sigma = f2 > 0.0 ? s2 / (16.0 * out.zeta * dd2 * f2) : INFINITY;
    out.z_bar_opt = f2 > 0.0 ? 8.0 * f2 * (p.delta_z0 - 4.0 * d2) / (1.0 + out.Sigma) * d1 : 0.0;
    out.delta_m_opt = base;

    if (std::abs(p.phi_tilde) <= thr.phi_order_one) {
        out.tag = CombCase::PhiOrderOne;
        out.delta_p_opt = base;
        return out;
    }
    const double gain = 16.0 * f4 / s2 * d2;
    if (std::abs(p.delta_z0) <= thr.offset_ratio * d2) {
        out.tag = CombCase::LargePhiSmallOffset;
        out.delta_p_opt = base + gain;
        return out;
    }
    out.tag = CombCase::LargePhiFiniteOffset;
    const double S1 = 1.0 + out.Sigma;
    const double zs = out.zeta * dd2 * s2;
    const double bracket = s2 * s2 * f2 + 8.0 * S1 + f2 * S1 * S1 + zs * S1 * S1 + 256.0 * dd2 * s2 * f2 - 16.0 * zs * f4 * S1;
    const double lead = transcription == Transcription::MainText ? 8.0 * dd2 * f2 / (S1 * S1) : 8.0 * f2 / (dd2 * S1 * S1);
    out.delta_p_opt = base + gain - lead * bracket * p.delta_z0 * p.delta_z0 * d2;
    return out;
}

double relative_change(EtaKind kind, const NearEarthParams& p) {
    switch (kind) {
        case EtaKind::GaLin: {
            const auto r = gaussian_linear_optimal(1.0 + p.delta1 + p.delta2, p.phi_tilde);
            return r.delta_p_opt / r.delta_m_opt - 1.0;
        }
        case EtaKind::CoLin: {
            const auto r = comb_linear_near_earth_optimal(p.delta1, p.sigma_tilde, p.phi_tilde);
            return r.delta_p_opt / r.delta_m_opt - 1.0;
        }
        case EtaKind::GaQuad: {
            const auto r = gaussian_quadratic_optimal(1.0 + p.delta1 + p.delta2, p.phi_tilde, p.z0);
            return r.delta_p_opt / r.delta_m_opt - 1.0;
        }
        case EtaKind::CoQuad: {
            const auto r = comb_quadratic_optimal(p);
            return r.delta_p_opt / r.delta_m_opt - 1.0;
        }
    }
    return 0.0;
}

}  // namespace wavepacket::analytic

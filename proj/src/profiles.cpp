#include "wavepacket/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wavepacket/coefficients.hpp"

namespace wavepacket {

std::string to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::GaussianLinear: return "gaussian-linear";
        case ProfileKind::GaussianQuadratic: return "gaussian-quadratic";
        case ProfileKind::CombLinear: return "comb-linear";
        case ProfileKind::CombQuadratic: return "comb-quadratic";
    }
    return "?";
}

ProfileKind profile_kind_from_string(const std::string& s) {
    if (s == "gaussian-linear") return ProfileKind::GaussianLinear;
    if (s == "gaussian-quadratic") return ProfileKind::GaussianQuadratic;
    if (s == "comb-linear") return ProfileKind::CombLinear;
    if (s == "comb-quadratic") return ProfileKind::CombQuadratic;
    throw std::invalid_argument("unknown profile kind: " + s);
}

void DimensionfulFrame::validate() const {
    if (!(omega0 > 0.0) || !(sigma > 0.0) || !std::isfinite(omega0) || !std::isfinite(sigma))
        throw std::invalid_argument("frame: omega0 and sigma must be positive");
    if (sigma / omega0 >= max_ratio)
        throw std::invalid_argument("frame: sigma/omega0 must be small");
}

double jacobi_theta3(double q) {
    if (!(q >= 0.0) || q >= 1.0) throw std::domain_error("jacobi_theta3: nome must lie in [0, 1)");
    double sum = 1.0;
    for (long n = 1;; ++n) {
        const double term = std::pow(q, static_cast<double>(n) * static_cast<double>(n));
        sum += 2.0 * term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

double comb_prefactor(double sigma_tilde, double d_tilde) {
    const double s2 = sigma_tilde * sigma_tilde;
    const double q = std::exp(-0.5 * s2 / (1.0 + s2) * d_tilde * d_tilde);
    const double c = active_closed().comb_norm_pi;
    return std::pow((1.0 + s2) / (c * std::numbers::pi), 0.25) / std::sqrt(jacobi_theta3(q));
}

int comb_truncation(double sigma_tilde, double d_tilde, double weight) {
    const double s2 = sigma_tilde * sigma_tilde;
    const double a = 0.5 * s2 / (1.0 + s2) * d_tilde * d_tilde;  // tooth n carries weight ∝ e^{-a n²}
    const double total = jacobi_theta3(std::exp(-a));
    for (int n = 0; n < 1000000; ++n) {
        double tail = 0.0;
        for (long k = n + 1;; ++k) {
            const double t = std::exp(-a * static_cast<double>(k) * static_cast<double>(k));
            tail += 2.0 * t;
            if (t < 1e-30 || t < 1e-18 * tail) break;
        }
        if (tail < weight * total) return n;
    }
    throw std::runtime_error("comb: truncation index cannot reach the requested tolerance");
}

Profile gaussian_linear(double phi_tilde) {
    Profile p;
    p.kind = ProfileKind::GaussianLinear;
    p.phi_tilde = phi_tilde;
    p.prefactor = std::pow(2.0 * std::numbers::pi, -0.25);
    return p;
}

Profile gaussian_quadratic(double phi_tilde, double z0) {
    Profile p;
    p.kind = ProfileKind::GaussianQuadratic;
    p.phi_tilde = phi_tilde;
    p.z0 = z0;
    p.prefactor = std::pow(2.0 * std::numbers::pi, -0.25);
    return p;
}

Profile comb(double sigma_tilde, double d_tilde, double phi_tilde, CombPhase phase_kind, double delta_z0,
             const CombLimits& limits, int n_max_override) {
    if (!(sigma_tilde >= limits.min_sigma_tilde))
        throw std::invalid_argument("comb: sigma_tilde below the narrow-tooth threshold");
    if (!(d_tilde > 0.0) || !(d_tilde * sigma_tilde >= limits.min_d_sigma))
        throw std::invalid_argument("comb: d_tilde*sigma_tilde below the separated-teeth threshold");
    Profile p;
    p.kind = phase_kind == CombPhase::Linear ? ProfileKind::CombLinear : ProfileKind::CombQuadratic;
    p.phi_tilde = phi_tilde;
    p.sigma_tilde = sigma_tilde;
    p.d_tilde = d_tilde;
    p.delta_z0 = phase_kind == CombPhase::Quadratic ? delta_z0 : 0.0;
    p.n_max = n_max_override > 0 ? n_max_override : comb_truncation(sigma_tilde, d_tilde);
    p.prefactor = comb_prefactor(sigma_tilde, d_tilde);
    return p;
}

double Profile::modulus(double z) const {
    if (!is_comb()) return prefactor * std::exp(-0.25 * z * z);
    const double s2 = sigma_tilde * sigma_tilde;
    const double reach = 56.0 / sigma_tilde;  // beyond this a tooth underflows
    const long lo = std::max<long>(-n_max, static_cast<long>(std::floor((z - reach) / d_tilde)));
    const long hi = std::min<long>(n_max, static_cast<long>(std::ceil((z + reach) / d_tilde)));
    double teeth = 0.0;
    for (long n = lo; n <= hi; ++n) {
        const double u = z - static_cast<double>(n) * d_tilde;
        teeth += std::exp(-0.25 * s2 * u * u);
    }
    return prefactor * std::exp(-0.25 * z * z) * teeth;
}

double Profile::phase(double z) const {
    switch (kind) {
        case ProfileKind::GaussianLinear:
        case ProfileKind::CombLinear: return -phi_tilde * z;
        case ProfileKind::GaussianQuadratic: {
            const double u = z + z0;
            return -phi_tilde * phi_tilde * u * u;
        }
        case ProfileKind::CombQuadratic: {
            const double u = z + delta_z0;
            return -phi_tilde * phi_tilde * u * u;
        }
    }
    return 0.0;
}

double Profile::half_width() const {
    if (!is_comb()) return 10.0;
    return std::max(10.0, n_max * d_tilde + 20.0 / sigma_tilde);
}

double Profile::resolution() const {
    if (!is_comb()) return 0.5;
    return std::min(0.5, 1.0 / sigma_tilde);
}

double normalization(const Profile& p, const quadrature::Options& opt) {
    const double h = p.half_width();
    const auto breaks = quadrature::uniform_breaks(-h, h, p.resolution());
    auto f = [&](double z) {
        const double m = p.modulus(z);
        return std::complex<double>(m * m, 0.0);
    };
    return quadrature::integrate(f, breaks, opt).value.real();
}

}  // namespace wavepacket

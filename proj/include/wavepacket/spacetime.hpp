#pragma once

#include <stdexcept>
#include <string>

namespace wavepacket::spacetime {

inline constexpr double earth_schwarzschild_radius_m = 8.87e-3;
inline constexpr double earth_radius_m = 6.371e6;

/// Raised when a perturbative precondition (small r_s/r, small L/r_a) is not met.
class ValidityError : public std::domain_error {
public:
    explicit ValidityError(const std::string& what) : std::domain_error(what) {}
};

struct SpacetimeConfig {
    double r_a = earth_radius_m;               // sender radius [m]
    double r_b = earth_radius_m;               // receiver radius [m], may be +inf
    double r_s = earth_schwarzschild_radius_m; // Schwarzschild radius [m]
};

struct DeltaPair {
    double delta1 = 0.0;
    double delta2 = 0.0;
};

struct RedshiftFactor {
    double chi = 1.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
};

void check_config(const SpacetimeConfig& cfg);

/** @brief Exact fourth-root redshift factor between sender and receiver. */
[[nodiscard]] double redshift_factor(const SpacetimeConfig& cfg);

/// Same expression in extended precision, used where χ−1 is ~1e-7 or smaller.
[[nodiscard]] long double redshift_factor_ld(const SpacetimeConfig& cfg);

[[nodiscard]] DeltaPair delta_expansion(const SpacetimeConfig& cfg, double max_ratio = 1e-3);

/// Short-separation form with L = r_b - r_a.
[[nodiscard]] DeltaPair delta_near_limit(double r_a, double L, double r_s, double max_ratio = 1e-2);

/// r_b -> infinity limit of delta_expansion.
[[nodiscard]] double distant_receiver_delta(double r_a, double r_s);

/// χ plus the two expansion terms; expansion omitted (zeros) if the ratios are not small.
[[nodiscard]] RedshiftFactor redshift(const SpacetimeConfig& cfg, double max_ratio = 1e-3);

[[nodiscard]] inline double kappa(double chi) {
    if (!(chi > 0.0)) throw std::domain_error("kappa: chi must be positive");
    return (chi * chi - 1.0) / (chi * chi);
}

/// δω_rs = (σ/χ²)(z̄_opt − (χ²−1) z0), in rad/s.
[[nodiscard]] double classical_redshift(double z_bar_opt, double chi, double sigma, double z0);

}  // namespace wavepacket::spacetime

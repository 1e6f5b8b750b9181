#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include "wavepacket/quadrature.hpp"

namespace wavepacket {

enum class ProfileKind { GaussianLinear, GaussianQuadratic, CombLinear, CombQuadratic };

[[nodiscard]] std::string to_string(ProfileKind k);
[[nodiscard]] ProfileKind profile_kind_from_string(const std::string& s);

/// Carrier and width in physical units.
struct DimensionfulFrame {
    double omega0 = 1.215e15;  // rad/s
    double sigma = 1.0e12;     // rad/s
    double max_ratio = 1e-2;

    void validate() const;
    [[nodiscard]] double z0() const { return omega0 / sigma; }
};

struct CombLimits {
    double min_sigma_tilde = 5.0;
    double min_d_sigma = 13.0;
};

/**
 * @brief Normalized spectral amplitude F(z) = f̃(z) exp[iψ(z)] in the shifted
 * variable z, with the carrier (and the n = 0 comb tooth) at z = 0.
 *
 * Phase conventions: GaussianLinear and CombLinear use ψ = -φ̃ z;
 * GaussianQuadratic uses ψ = -φ̃² (z + z0)²; CombQuadratic uses
 * ψ = -φ̃² (z + δz0)².
 */
class Profile {
public:
    ProfileKind kind = ProfileKind::GaussianLinear;
    double phi_tilde = 0.0;
    double z0 = 0.0;
    double sigma_tilde = 0.0;
    double d_tilde = 0.0;
    double delta_z0 = 0.0;
    int n_max = 0;
    double prefactor = 0.0;

    [[nodiscard]] bool is_comb() const {
        return kind == ProfileKind::CombLinear || kind == ProfileKind::CombQuadratic;
    }
    [[nodiscard]] double modulus(double z) const;
    [[nodiscard]] double phase(double z) const;
    [[nodiscard]] std::complex<double> operator()(double z) const { return std::polar(modulus(z), phase(z)); }

    /// Half-width of the truncated integration domain.
    [[nodiscard]] double half_width() const;
    /// Finest structure in z; initial quadrature panels are no wider than this.
    [[nodiscard]] double resolution() const;
    /// Standard deviation of |F|² along z, used to size scan windows.
    [[nodiscard]] double envelope_width() const { return 1.0; }
};

[[nodiscard]] Profile gaussian_linear(double phi_tilde);
[[nodiscard]] Profile gaussian_quadratic(double phi_tilde, double z0);

enum class CombPhase { Linear, Quadratic };

[[nodiscard]] Profile comb(double sigma_tilde, double d_tilde, double phi_tilde, CombPhase phase_kind,
                           double delta_z0 = 0.0, const CombLimits& limits = {}, int n_max_override = 0);

/// ((1+σ̃²)/(2π))^(1/4) / sqrt(θ₃(q)), q = exp[-σ̃² d̃² / (2(1+σ̃²))].
[[nodiscard]] double comb_prefactor(double sigma_tilde, double d_tilde);

/// Smallest |n| cut-off leaving less than `weight` of the envelope outside.
[[nodiscard]] int comb_truncation(double sigma_tilde, double d_tilde, double weight = 1e-14);

[[nodiscard]] double jacobi_theta3(double q);

[[nodiscard]] inline std::complex<double> evaluate(const Profile& p, double z) { return p(z); }

/// ∫|F|² dz by quadrature over the truncated domain.
[[nodiscard]] double normalization(const Profile& p, const quadrature::Options& opt = {});

}  // namespace wavepacket

#pragma once

#include <stdexcept>
#include <string>

// Closed forms and near-Earth expansions for Gaussian and comb profiles.
// Phase convention throughout: ψ = -φ̃ z (linear), ψ = -φ̃² (z + z0)² (quadratic).

namespace wavepacket::analytic {

class ValidityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct OverlapPair {
    double delta_p = 1.0;
    double delta_m = 1.0;
};

struct OptimalOverlaps {
    double delta_p_opt = 1.0;
    double delta_m_opt = 1.0;
    double z_bar_opt = 0.0;
};

struct NearEarthParams {
    double delta1 = 0.0;
    double delta2 = 0.0;
    double phi_tilde = 0.0;
    double z0 = 0.0;
    double sigma_tilde = 10.0;
    double d_tilde = 2.0;
    double delta_z0 = 0.0;
    double zeta = 0.0;  // <= 0: compute at runtime
};

/// Throws ValidityError when φ̃δ₁, z0²δ₁² or (for combs) d̃²σ̃⁴δ₁² reach `threshold`.
void check_validity(const NearEarthParams& p, bool comb, double threshold = 0.1);

// Gaussian, linear phase

[[nodiscard]] OverlapPair gaussian_linear_closed(double chi, double phi_tilde, double z_bar);
[[nodiscard]] OptimalOverlaps gaussian_linear_optimal(double chi, double phi_tilde);
[[nodiscard]] OverlapPair gaussian_linear_near_earth(double delta1, double phi_tilde);

// Gaussian, quadratic phase

struct QuadraticCoefficients {
    double xi = 1.0;
    double a1 = 0.0;
    double a2 = 0.0;
};

/// ξ, a₁, a₂ fixed by the exact Gaussian integral (agrees with quadrature).
[[nodiscard]] QuadraticCoefficients quadratic_coefficients(double chi, double phi_tilde, double z0);
/// ξ, a₁, a₂ exactly as printed in the main text.
[[nodiscard]] QuadraticCoefficients quadratic_coefficients_printed(double chi, double phi_tilde, double z0);

[[nodiscard]] OverlapPair gaussian_quadratic_closed(double chi, double phi_tilde, double z0, double z_bar);
/// Verbatim transcription (1/√ξ prefactor, printed a₁); kept for reporting only.
[[nodiscard]] OverlapPair gaussian_quadratic_closed_printed(double chi, double phi_tilde, double z0, double z_bar);
[[nodiscard]] OptimalOverlaps gaussian_quadratic_optimal(double chi, double phi_tilde, double z0);

/// Printed expansion: 1 − (1+32φ̃⁴+8φ̃⁴z0²)δ₁² + 2⁹φ̃⁴z0²δ₁⁴/(1+16φ̃⁴).
[[nodiscard]] OverlapPair gaussian_quadratic_near_earth(double delta1, double phi_tilde, double z0);
/// Expansion of the exact optimum: 1 − (1 + 16φ̃⁴ + 8φ̃⁴z0²/(1+16φ̃⁴))δ₁².
[[nodiscard]] OverlapPair gaussian_quadratic_near_earth_consistent(double delta1, double phi_tilde, double z0);
/// Printed near-Earth shift −64φ̃²z0²δ₁²/(1+16φ̃⁴).
[[nodiscard]] double gaussian_quadratic_near_earth_shift_printed(double delta1, double phi_tilde, double z0);

// Combs

[[nodiscard]] OptimalOverlaps comb_linear_near_earth_optimal(double delta1, double sigma_tilde, double phi_tilde);

enum class CombCase { PhiOrderOne, LargePhiSmallOffset, LargePhiFiniteOffset };
enum class Transcription { MainText, Appendix };

[[nodiscard]] std::string to_string(CombCase c);

struct CombCaseThresholds {
    double phi_order_one = 2.0;   // case (i) when φ̃ <= this
    double offset_ratio = 10.0;   // case (ii.i) when |δz0| <= this·δ₁²
};

struct CombQuadraticResult {
    double delta_p_opt = 1.0;
    double delta_m_opt = 1.0;
    double z_bar_opt = 0.0;
    CombCase tag = CombCase::PhiOrderOne;
    double zeta = 0.0;
    double Sigma = 0.0;
    bool zeta_small_x = true;
};

[[nodiscard]] CombQuadraticResult comb_quadratic_optimal(const NearEarthParams& params,
                                                         const CombCaseThresholds& thresholds = {},
                                                         Transcription transcription = Transcription::MainText);

/// x·Σ_{n≥1} cosh⁻²(n x) for any x > 0.
[[nodiscard]] double zeta_sum(double x);
/// Same sum restricted to the small-x regime 0 < x <= max_x.
[[nodiscard]] double estimate_zeta(double x, double max_x = 0.3);
/// Argument at which ζ is evaluated for a comb: ½ d̃² (1 + σ̃²δ₁² − 32 δ₁² φ̃⁴/σ̃²).
[[nodiscard]] double zeta_argument(const NearEarthParams& p);

enum class EtaKind { GaLin, CoLin, GaQuad, CoQuad };

/// η = Δ_p,opt / Δ_m,opt − 1 from the matching optimal-overlap formula.
[[nodiscard]] double relative_change(EtaKind kind, const NearEarthParams& params);

}  // namespace wavepacket::analytic

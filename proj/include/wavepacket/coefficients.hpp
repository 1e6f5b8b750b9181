#pragma once

#include <string>
#include <vector>

// Numeric constants appearing in the closed forms, kept in one table so the
// validation battery can seed faults into them and confirm it notices.

namespace wavepacket {

struct SpacetimeCoefficients {
    double d1_a = 1.0 / 4.0;
    double d1_b = 3.0 / 8.0;
    double d2_aa = 5.0 / 32.0;
    double d2_ab = 3.0 / 32.0;
    double d2_bb = 27.0 / 128.0;
    double n1 = 1.0 / 8.0;
    double n2_l = 3.0 / 8.0;
    double n2_aa = 19.0 / 128.0;
};

struct ClosedFormCoefficients {
    double mixed_prefactor = 2.0;  // Δ_m = sqrt(c χ² / (1+χ⁴))
    double zbar_quarter = 0.25;    // exp[-c z̄²/(χ⁴+1)]
    double linear_penalty = 1.0;   // exp[-c (χ²-1)² φ̃² /(χ⁴+1)]
    double xi_coeff = 16.0;
    double xi_power = 0.25;
    double quad_offset = 4.0;      // exp[-c (χ²-1)² φ̃⁴ z0² /((χ⁴+1) ξ)]
    double a1_rate = 16.0;
    double a2_quarter = 0.25;
    double a2_coeff = 16.0;
    double zopt_coeff = 32.0;
    double near_linear = 2.0;      // 1 - (1 + c φ̃²) δ₁²
    double near_quad_phi4 = 16.0;
    double near_quad_z0 = 8.0;
    double near_quad_den = 16.0;
    double comb_norm_pi = 2.0;     // ((1+σ̃²)/(c π))^(1/4)
    double coherent_rate = 1.0;
};

[[nodiscard]] const SpacetimeCoefficients& active_spacetime();
[[nodiscard]] const ClosedFormCoefficients& active_closed();

/// Names accepted by CoefficientOverride, e.g. "closed.mixed_prefactor".
[[nodiscard]] std::vector<std::string> coefficient_names();

/** @brief Scales one named coefficient by (1 + relative) for the lifetime of the object.
 *  Not thread safe; install before starting any concurrent work. */
class CoefficientOverride {
public:
    CoefficientOverride(const std::string& name, double relative);
    ~CoefficientOverride();
    CoefficientOverride(const CoefficientOverride&) = delete;
    CoefficientOverride& operator=(const CoefficientOverride&) = delete;

private:
    double* slot_;
    double saved_;
};

}  // namespace wavepacket

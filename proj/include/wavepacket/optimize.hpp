#pragma once

#include <complex>
#include <cstddef>

#include "wavepacket/profiles.hpp"
#include "wavepacket/quadrature.hpp"

namespace wavepacket {

enum class Which { Pure, Mixed };

struct OptimizeOptions {
    double scan_widths = 10.0;  // scan z̄ ∈ [-W, W] with W in envelope widths
    int scan_points = 201;
    double tolerance = 1e-10;   // on z̄
    double tie_tolerance = 1e-13;
    double flat_spread = 1e-13;
    int workers = 1;
    quadrature::Options quad{};
};

struct OptimizationResult {
    double z_bar_opt = 0.0;
    double delta_p_opt = 0.0;  // overlaps evaluated at z_bar_opt
    double delta_m_opt = 0.0;
    std::complex<double> lambda_p_opt{};
    double delta_omega_opt = 0.0;  // rad/s
    std::size_t n_evals = 0;
    bool converged = false;
    bool flat_objective = false;
};

/** @brief Global maximizer of z̄ ↦ Δ(z̄): coarse scan, golden section, then a
 *  secant solve on the centred-difference slope to reach `tolerance`. */
[[nodiscard]] OptimizationResult maximize_shift(const Profile& p, double chi, Which which,
                                                const DimensionfulFrame& frame, const OptimizeOptions& opt = {});

[[nodiscard]] double naive_corrected_overlap(const Profile& p, double chi, Which which,
                                             const quadrature::Options& opt = {});

}  // namespace wavepacket

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "wavepacket/profiles.hpp"

// Finite-grid density matrices built from rectangular frequency windows.
// Window n is centred at z_n = z_min + (n + ½) λ and has width λ = σ*/σ.

namespace wavepacket::states {

class SupportEscape : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GridMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct FrequencyGrid {
    std::size_t n_bins = 0;
    double lambda = 0.0;
    double z_min = 0.0;

    [[nodiscard]] double z_max() const { return z_min + lambda * static_cast<double>(n_bins); }
    [[nodiscard]] double center(std::size_t n) const { return z_min + (static_cast<double>(n) + 0.5) * lambda; }

    /// Symmetric grid of n_bins windows of width λ around z = 0.
    [[nodiscard]] static FrequencyGrid centered(std::size_t n_bins, double lambda, double max_lambda = 0.05,
                                                double min_span = 10.0);

    /// The sender's windows carried by the redshift map: width λ/χ², centres z_n/χ².
    [[nodiscard]] FrequencyGrid receiver_frame(double chi) const;

    [[nodiscard]] bool same_as(const FrequencyGrid& o) const;
};

enum class StateKind { Pure, MixedDiagonal };

struct DiscreteState {
    StateKind kind = StateKind::Pure;
    FrequencyGrid grid;
    std::vector<std::complex<double>> amplitudes;  // Pure
    std::vector<double> probabilities;             // MixedDiagonal
    Profile source;
    double chi = 1.0;
    double z_bar = 0.0;
    double residue = 0.0;  // |1 − norm| before renormalization

    /// Diagonal of the density matrix in the window basis.
    [[nodiscard]] std::vector<double> diagonal() const;
};

[[nodiscard]] DiscreteState pure_state(const Profile& p, const FrequencyGrid& grid);
[[nodiscard]] DiscreteState mixed_state(const Profile& p, const FrequencyGrid& grid);

/** @brief Received state χF(χ²z + z̄), evaluated from the analytic profile on
 *  `grid` (which may differ from the state's own grid) and renormalized. */
[[nodiscard]] DiscreteState apply_redshift(const DiscreteState& s, double chi, const FrequencyGrid& grid,
                                           double z_bar = 0.0);

[[nodiscard]] double purity(const DiscreteState& s);

/// Pure/pure |⟨a|b⟩|; diagonal/diagonal Σ√(p q); pure/diagonal √(⟨a|diag q|a⟩).
[[nodiscard]] double fidelity(const DiscreteState& a, const DiscreteState& b);

/// Σ|F(z_n)|² with no window measure: the continuum diagonal "trace" that grows as 1/λ.
[[nodiscard]] double naive_diagonal_trace(const Profile& p, const FrequencyGrid& grid);

}  // namespace wavepacket::states

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace wavepacket::multiphoton {

enum class StatisticsKind { Fock, Coherent, Squeezed };

[[nodiscard]] std::string to_string(StatisticsKind k);
[[nodiscard]] StatisticsKind statistics_from_string(const std::string& s);

struct PhotonStatistics {
    StatisticsKind kind = StatisticsKind::Fock;
    double n_mean = 1.0;

    void validate() const;
};

struct MultiOverlap {
    double delta_p = 1.0;
    double delta_m = 1.0;
};

/// Δᴺ for an N-photon Fock state.
[[nodiscard]] double fock_overlap(double delta_single, int n);

/// Δ_p = exp[−(1 − Re Λ) N]; Δ_m passed through.
[[nodiscard]] MultiOverlap coherent_overlap(std::complex<double> lambda_single, double n_mean, double delta_m_single);

/// Δ_p = [(1 + (1 − Re Λ)N/2)² + (Im Λ)² N²/4]^(−1/2); Δ_m passed through.
[[nodiscard]] MultiOverlap squeezed_overlap(std::complex<double> lambda_single, double n_mean, double delta_m_single);

/// N = 2 sinh²(s).
[[nodiscard]] double squeezing_from_photons(double n_mean);

/// Dispatch on the statistics kind; Fock applies Δᴺ to both overlaps.
[[nodiscard]] MultiOverlap apply(const PhotonStatistics& stats, std::complex<double> lambda_single, double delta_m_single);

}  // namespace wavepacket::multiphoton

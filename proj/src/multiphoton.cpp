#include "wavepacket/multiphoton.hpp"

#include <algorithm>
#include <cmath>

#include "wavepacket/coefficients.hpp"

namespace wavepacket::multiphoton {

namespace {

void check_lambda(std::complex<double> l) {
    if (!(std::abs(l) <= 1.0 + 1e-12)) throw std::domain_error("multiphoton: |Lambda| must not exceed 1");
}

void check_n(double n) {
    if (!(n >= 0.0) || !std::isfinite(n)) throw std::domain_error("multiphoton: N must be finite and non-negative");
}

}  // namespace

std::string to_string(StatisticsKind k) {
    switch (k) {
        case StatisticsKind::Fock: return "fock";
        case StatisticsKind::Coherent: return "coherent";
        case StatisticsKind::Squeezed: return "squeezed";
    }
    return "?";
}

StatisticsKind statistics_from_string(const std::string& s) {
    if (s == "fock") return StatisticsKind::Fock;
    if (s == "coherent") return StatisticsKind::Coherent;
    if (s == "squeezed") return StatisticsKind::Squeezed;
    throw std::invalid_argument("unknown photon statistics: " + s);
}

void PhotonStatistics::validate() const {
    check_n(n_mean);
    if (kind == StatisticsKind::Fock && (n_mean < 1.0 || std::floor(n_mean) != n_mean))
        throw std::domain_error("multiphoton: Fock N must be an integer >= 1");
}

double fock_overlap(double delta_single, int n) {
    if (!(delta_single >= 0.0) || delta_single > 1.0 + 1e-12) throw std::domain_error("fock_overlap: delta outside [0, 1]");
    if (n < 1) throw std::domain_error("fock_overlap: N must be >= 1");
    return std::pow(delta_single, n);
}

MultiOverlap coherent_overlap(std::complex<double> l, double n_mean, double delta_m_single) {
    check_lambda(l);
    check_n(n_mean);
    return {std::exp(-active_closed().coherent_rate * (1.0 - l.real()) * n_mean), delta_m_single};
}

MultiOverlap squeezed_overlap(std::complex<double> l, double n_mean, double delta_m_single) {
    check_lambda(l);
    check_n(n_mean);
    const double a = 1.0 + 0.5 * (1.0 - l.real()) * n_mean;
    const double b = 0.5 * l.imag() * n_mean;
    return {1.0 / std::sqrt(a * a + b * b), delta_m_single};
}

double squeezing_from_photons(double n_mean) {
    check_n(n_mean);
    return std::asinh(std::sqrt(0.5 * n_mean));
}

MultiOverlap apply(const PhotonStatistics& stats, std::complex<double> l, double delta_m_single) {
    stats.validate();
    switch (stats.kind) {
        case StatisticsKind::Fock: {
            const int n = static_cast<int>(stats.n_mean);
            return {fock_overlap(std::min(1.0, std::abs(l)), n), fock_overlap(std::min(1.0, delta_m_single), n)};
        }
        case StatisticsKind::Coherent: return coherent_overlap(l, stats.n_mean, delta_m_single);
        case StatisticsKind::Squeezed: return squeezed_overlap(l, stats.n_mean, delta_m_single);
    }
    return {};
}

}  // namespace wavepacket::multiphoton

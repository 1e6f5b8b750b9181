#include "wavepacket/states.hpp"

#include <cmath>

#include "wavepacket/quadrature.hpp"

namespace wavepacket::states {

namespace {

/// Weight of |F|² outside [a, b].
double leaked_weight(const Profile& p, double a, double b) {
    const double h = p.half_width();
    const double lo = std::max(a, -h), hi = std::min(b, h);
    if (!(hi > lo)) return 1.0;
    auto f = [&](double z) {
        const double m = p.modulus(z);
        return std::complex<double>(m * m, 0.0);
    };
    quadrature::Options opt;
    opt.abs_tol = 1e-13;
    const double inside = quadrature::integrate(f, quadrature::uniform_breaks(lo, hi, p.resolution()), opt).value.real();
    return std::max(0.0, normalization(p, opt) - inside);
}

DiscreteState build(const Profile& p, const FrequencyGrid& g, StateKind kind, double chi, double z_bar) {
    const double c2 = chi * chi;
    const double leak = leaked_weight(p, c2 * g.z_min + z_bar, c2 * g.z_max() + z_bar);
    if (leak > 1e-10) throw SupportEscape("states: profile weight outside the grid exceeds 1e-10");

    DiscreteState s;
    s.kind = kind;
    s.grid = g;
    s.source = p;
    s.chi = chi;
    s.z_bar = z_bar;
    const double w = std::sqrt(g.lambda);
    std::vector<std::complex<double>> amp(g.n_bins);
    double norm = 0.0;
    for (std::size_t n = 0; n < g.n_bins; ++n) {
        amp[n] = w * chi * p(c2 * g.center(n) + z_bar);
        norm += std::norm(amp[n]);
    }
    s.residue = std::abs(1.0 - norm);
    if (kind == StateKind::Pure) {
        const double k = 1.0 / std::sqrt(norm);
        for (auto& a : amp) a *= k;
        s.amplitudes = std::move(amp);
    } else {
        s.probabilities.resize(g.n_bins);
        for (std::size_t n = 0; n < g.n_bins; ++n) s.probabilities[n] = std::norm(amp[n]) / norm;
    }
    return s;
}

}  // namespace

FrequencyGrid FrequencyGrid::centered(std::size_t n_bins, double lambda, double max_lambda, double min_span) {
    if (n_bins < 2) throw std::invalid_argument("grid: need at least two bins");
    if (!(lambda > 0.0) || lambda > max_lambda) throw std::invalid_argument("grid: lambda must be small and positive");
    if (static_cast<double>(n_bins) * lambda < min_span)
        throw std::invalid_argument("grid: bins do not cover enough envelope widths");
    return {n_bins, lambda, -0.5 * lambda * static_cast<double>(n_bins)};
}

FrequencyGrid FrequencyGrid::receiver_frame(double chi) const {
    if (!(chi > 0.0)) throw std::domain_error("receiver_frame: chi must be positive");
    const double c2 = chi * chi;
    return {n_bins, lambda / c2, z_min / c2};
}

bool FrequencyGrid::same_as(const FrequencyGrid& o) const {
    return n_bins == o.n_bins && lambda == o.lambda && z_min == o.z_min;
}

std::vector<double> DiscreteState::diagonal() const {
    if (kind == StateKind::MixedDiagonal) return probabilities;
    std::vector<double> d(amplitudes.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::norm(amplitudes[i]);
    return d;
}

DiscreteState pure_state(const Profile& p, const FrequencyGrid& grid) { return build(p, grid, StateKind::Pure, 1.0, 0.0); }

DiscreteState mixed_state(const Profile& p, const FrequencyGrid& grid) {
    return build(p, grid, StateKind::MixedDiagonal, 1.0, 0.0);
}

DiscreteState apply_redshift(const DiscreteState& s, double chi, const FrequencyGrid& grid, double z_bar) {
    if (!(chi > 0.0)) throw std::domain_error("apply_redshift: chi must be positive");
    // Compose with any redshift already applied: χ₂F_χ₁(χ₂² z) = χ₁χ₂ F(χ₁²χ₂² z + …).
    const double total = s.chi * chi;
    const double shift = s.z_bar + s.chi * s.chi * z_bar;
    return build(s.source, grid, s.kind, total, shift);
}

double purity(const DiscreteState& s) {
    if (s.kind == StateKind::Pure) return 1.0;
    double sum = 0.0;
    for (double p : s.probabilities) sum += p * p;
    return sum;
}

double fidelity(const DiscreteState& a, const DiscreteState& b) {
    if (!a.grid.same_as(b.grid)) throw GridMismatch("fidelity: states live on different grids");
    const std::size_t n = a.grid.n_bins;
    if (a.kind == StateKind::Pure && b.kind == StateKind::Pure) {
        std::complex<double> ip = 0.0;
        for (std::size_t i = 0; i < n; ++i) ip += std::conj(a.amplitudes[i]) * b.amplitudes[i];
        return std::abs(ip);
    }
    if (a.kind == StateKind::MixedDiagonal && b.kind == StateKind::MixedDiagonal) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += std::sqrt(a.probabilities[i] * b.probabilities[i]);
        return sum;
    }
    const DiscreteState& pure = a.kind == StateKind::Pure ? a : b;
    const DiscreteState& diag = a.kind == StateKind::Pure ? b : a;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::norm(pure.amplitudes[i]) * diag.probabilities[i];
    return std::sqrt(sum);
}

double naive_diagonal_trace(const Profile& p, const FrequencyGrid& grid) {
    double sum = 0.0;
    for (std::size_t n = 0; n < grid.n_bins; ++n) sum += std::norm(p(grid.center(n)));
    return sum;
}

}  // namespace wavepacket::states

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "wavepacket/profiles.hpp"
#include "wavepacket/quadrature.hpp"

namespace wavepacket {

struct OverlapResult {
    double delta_p = 0.0;
    double delta_m = 0.0;
    std::complex<double> lambda_p{};
    double chi = 1.0;
    double z_bar = 0.0;
};

class NormalizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sum of narrow positive peaks under a common envelope: f̃(z)·Σₙ G̃ₙ((z − cₙ)/wₙ).
struct Peak {
    double center = 0.0;
    double width = 1.0;
    std::function<double(double)> shape;
};

class MultiPeakProfile {
public:
    MultiPeakProfile(std::function<double(double)> envelope, std::vector<Peak> peaks,
                     std::function<double(double)> phase, double half_width, double resolution,
                     bool normalize = false, const quadrature::Options& opt = {});

    [[nodiscard]] double modulus(double z) const;
    [[nodiscard]] double phase(double z) const { return phase_ ? phase_(z) : 0.0; }
    [[nodiscard]] double half_width() const { return half_width_; }
    [[nodiscard]] double resolution() const { return resolution_; }
    [[nodiscard]] double scale() const { return scale_; }

private:
    std::function<double(double)> envelope_;
    std::vector<Peak> peaks_;
    std::function<double(double)> phase_;
    double half_width_;
    double resolution_;
    double scale_ = 1.0;
};

namespace detail {

struct Window {
    double lo, hi;
    bool empty() const { return !(hi > lo); }
};

/// z-range where both f̃(χz + z̄) and f̃(z/χ) lie inside the truncated domain.
inline Window overlap_window(double half_width, double chi, double z_bar) {
    const double lo = std::max((-half_width - z_bar) / chi, -half_width * chi);
    const double hi = std::min((half_width - z_bar) / chi, half_width * chi);
    return {lo, hi};
}

template <class Shape>
std::vector<double> overlap_breaks(const Shape& s, double chi, double z_bar, Window w, bool with_phase) {
    double pitch = s.resolution() / std::max(chi, 1.0 / chi);
    if (with_phase) {
        // Cap the phase advance per panel at a quarter turn.
        const int samples = 2048;
        const double h = (w.hi - w.lo) / samples;
        auto dpsi = [&](double z) { return s.phase(chi * z + z_bar) - s.phase(z / chi); };
        double max_rate = 0.0;
        double prev = dpsi(w.lo);
        for (int i = 1; i <= samples; ++i) {
            const double cur = dpsi(w.lo + i * h);
            max_rate = std::max(max_rate, std::abs(cur - prev) / h);
            prev = cur;
        }
        if (max_rate > 0.0) pitch = std::min(pitch, 0.5 * std::numbers::pi / max_rate);
    }
    return quadrature::uniform_breaks(w.lo, w.hi, pitch);
}

}  // namespace detail

/** @brief Λ = ∫ f̃(χz+z̄) f̃(z/χ) exp[i(ψ(χz+z̄) − ψ(z/χ))] dz. */
template <class Shape>
std::complex<double> lambda_pure(const Shape& s, double chi, double z_bar, const quadrature::Options& opt = {}) {
    if (!(chi > 0.0)) throw std::domain_error("lambda_pure: chi must be positive");
    const auto w = detail::overlap_window(s.half_width(), chi, z_bar);
    if (w.empty()) return {0.0, 0.0};
    const auto breaks = detail::overlap_breaks(s, chi, z_bar, w, true);
    auto f = [&](double z) {
        const double a = chi * z + z_bar;
        const double b = z / chi;
        return std::polar(s.modulus(a) * s.modulus(b), s.phase(a) - s.phase(b));
    };
    return quadrature::integrate(f, breaks, opt).value;
}

template <class Shape>
double overlap_mixed(const Shape& s, double chi, double z_bar, const quadrature::Options& opt = {}) {
    if (!(chi > 0.0)) throw std::domain_error("overlap_mixed: chi must be positive");
    const auto w = detail::overlap_window(s.half_width(), chi, z_bar);
    if (w.empty()) return 0.0;
    const auto breaks = detail::overlap_breaks(s, chi, z_bar, w, false);
    auto f = [&](double z) { return std::complex<double>(s.modulus(chi * z + z_bar) * s.modulus(z / chi), 0.0); };
    return quadrature::integrate(f, breaks, opt).value.real();
}

template <class Shape>
double overlap_pure(const Shape& s, double chi, double z_bar, const quadrature::Options& opt = {}) {
    return std::abs(lambda_pure(s, chi, z_bar, opt));
}

template <class Shape>
OverlapResult overlaps(const Shape& s, double chi, double z_bar, const quadrature::Options& opt = {}) {
    OverlapResult r;
    r.chi = chi;
    r.z_bar = z_bar;
    r.lambda_p = lambda_pure(s, chi, z_bar, opt);
    r.delta_p = std::abs(r.lambda_p);
    r.delta_m = overlap_mixed(s, chi, z_bar, opt);
    return r;
}

[[nodiscard]] inline OverlapResult overlap_multipeak(const MultiPeakProfile& s, double chi, double z_bar,
                                                     const quadrature::Options& opt = {}) {
    return overlaps(s, chi, z_bar, opt);
}

/// A comb written as envelope × teeth, for cross-checking the direct comb evaluation.
[[nodiscard]] MultiPeakProfile comb_as_multipeak(const Profile& comb_profile);

}  // namespace wavepacket

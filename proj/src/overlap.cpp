#include "wavepacket/overlap.hpp"

#include <utility>

namespace wavepacket {

MultiPeakProfile::MultiPeakProfile(std::function<double(double)> envelope, std::vector<Peak> peaks,
                                   std::function<double(double)> phase, double half_width, double resolution,
                                   bool normalize, const quadrature::Options& opt)
    : envelope_(std::move(envelope)),
      peaks_(std::move(peaks)),
      phase_(std::move(phase)),
      half_width_(half_width),
      resolution_(resolution) {
    for (const auto& p : peaks_)
        if (!p.shape || !(p.width > 0.0)) throw std::invalid_argument("multipeak: peak needs a shape and positive width");
    const auto breaks = quadrature::uniform_breaks(-half_width_, half_width_, resolution_);
    auto f = [&](double z) {
        const double m = modulus(z);
        return std::complex<double>(m * m, 0.0);
    };
    const double norm = quadrature::integrate(f, breaks, opt).value.real();
    if (normalize) {
        if (!(norm > 0.0)) throw NormalizationError("multipeak: profile has zero weight");
        scale_ = 1.0 / std::sqrt(norm);
    } else if (std::abs(norm - 1.0) > 1e-8) {
        throw NormalizationError("multipeak: combined profile is not normalized");
    }
}

double MultiPeakProfile::modulus(double z) const {
    double sum = 0.0;
    for (const auto& p : peaks_) sum += p.shape((z - p.center) / p.width);
    return scale_ * envelope_(z) * sum;
}

MultiPeakProfile comb_as_multipeak(const Profile& c) {
    if (!c.is_comb()) throw std::invalid_argument("comb_as_multipeak: not a comb profile");
    const double pref = c.prefactor;
    auto envelope = [pref](double z) { return pref * std::exp(-0.25 * z * z); };
    std::vector<Peak> peaks;
    for (int n = -c.n_max; n <= c.n_max; ++n)
        peaks.push_back({n * c.d_tilde, 1.0 / c.sigma_tilde, [](double u) { return std::exp(-0.25 * u * u); }});
    auto phase = [c](double z) { return c.phase(z); };
    return MultiPeakProfile(envelope, std::move(peaks), phase, c.half_width(), c.resolution());
}

}  // namespace wavepacket

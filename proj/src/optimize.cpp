#include "wavepacket/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <vector>

#include "wavepacket/overlap.hpp"
#include "wavepacket/spacetime.hpp"

namespace wavepacket {

namespace {

struct Objective {
    const Profile& p;
    double chi;
    Which which;
    const quadrature::Options& quad;
    mutable std::size_t calls = 0;

    double operator()(double z) const {
        ++calls;
        return which == Which::Pure ? overlap_pure(p, chi, z, quad) : overlap_mixed(p, chi, z, quad);
    }
};

std::vector<double> scan_values(const Profile& p, double chi, Which which, const quadrature::Options& quad,
                                const std::vector<double>& zs, int workers) {
    std::vector<double> out(zs.size());
    auto run = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            out[i] = which == Which::Pure ? overlap_pure(p, chi, zs[i], quad) : overlap_mixed(p, chi, zs[i], quad);
    };
    const std::size_t n = zs.size();
    const std::size_t w = static_cast<std::size_t>(std::max(1, workers));
    if (w == 1) {
        run(0, n);
        return out;
    }
    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (n + w - 1) / w;
    for (std::size_t lo = 0; lo < n; lo += chunk) jobs.push_back(std::async(std::launch::async, run, lo, std::min(n, lo + chunk)));
    for (auto& j : jobs) j.get();
    return out;
}

}  // namespace

double naive_corrected_overlap(const Profile& p, double chi, Which which, const quadrature::Options& opt) {
    return which == Which::Pure ? overlap_pure(p, chi, 0.0, opt) : overlap_mixed(p, chi, 0.0, opt);
}

OptimizationResult maximize_shift(const Profile& p, double chi, Which which, const DimensionfulFrame& frame,
                                  const OptimizeOptions& opt) {
    if (!(chi > 0.0)) throw std::domain_error("maximize_shift: chi must be positive");
    OptimizationResult res;
    const double W = opt.scan_widths * p.envelope_width();
    int n = std::max(opt.scan_points, 3);
    if (p.is_comb()) {
        const int needed = static_cast<int>(std::ceil(2.0 * W / (p.d_tilde / 4.5))) + 1;
        n = std::max(n, needed);
    }
    if (n % 2 == 0) ++n;  // keep z̄ = 0 on the grid
    std::vector<double> zs(n);
    for (int i = 0; i < n; ++i) zs[i] = -W + 2.0 * W * i / (n - 1);
    zs[n / 2] = 0.0;
    const double pitch = 2.0 * W / (n - 1);

    const auto vals = scan_values(p, chi, which, opt.quad, zs, opt.workers);
    res.n_evals = vals.size();
    const double vmax = *std::max_element(vals.begin(), vals.end());
    const double vmin = *std::min_element(vals.begin(), vals.end());
    int best = -1;
    for (int i = 0; i < n; ++i) {
        if (vals[i] < vmax - opt.tie_tolerance) continue;
        if (best < 0 || std::abs(zs[i]) < std::abs(zs[best])) best = i;
    }

    Objective f{p, chi, which, opt.quad};
    double z_opt = zs[best];
    // Distortion below round-off: the optimum is still located, but carries no information.
    if (1.0 - vmax < opt.flat_spread) res.flat_objective = true;
    if (vmax - vmin < opt.flat_spread) {
        res.flat_objective = true;
        res.converged = true;
    } else {
        // Golden section on the cell pair around the best scan point.
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = z_opt - pitch, b = z_opt + pitch;
        double c = b - g * (b - a), d = a + g * (b - a);
        double fc = f(c), fd = f(d);
        while (b - a > std::max(1e-5, opt.tolerance)) {
            if (fc >= fd) {
                b = d; d = c; fd = fc;
                c = b - g * (b - a); fc = f(c);
            } else {
                a = c; c = d; fc = fd;
                d = a + g * (b - a); fd = f(d);
            }
        }
        z_opt = 0.5 * (a + b);

        // Secant / false position on the centred-difference slope inside [a, b].
        const double e = 1e-4;
        auto slope = [&](double z) { return (f(z + e) - f(z - e)) / (2.0 * e); };
        double lo = a - 1e-5, hi = b + 1e-5;
        double slo = slope(lo), shi = slope(hi);
        if (slo > 0.0 && shi < 0.0) {
            int side = 0;
            double z = 0.5 * (lo + hi);
            for (int it = 0; it < 100; ++it) {
                const double znew = (lo * shi - hi * slo) / (shi - slo);
                const double step = std::abs(znew - z);
                z = znew;
                const double s = slope(z);
                if (s == 0.0 || step < opt.tolerance || hi - lo < opt.tolerance) break;
                if (s > 0.0) {
                    lo = z; slo = s;
                    if (side == 1) shi *= 0.5;
                    side = 1;
                } else {
                    hi = z; shi = s;
                    if (side == -1) slo *= 0.5;
                    side = -1;
                }
            }
            z_opt = z;
            res.converged = true;
        } else {
            // Slope already below the objective's noise floor across the bracket.
            res.converged = std::abs(slo) < 1e-8 && std::abs(shi) < 1e-8;
        }
        if (f(z_opt) < vmax - 1e-12) z_opt = zs[best];
    }

    const auto ov = overlaps(p, chi, z_opt, opt.quad);
    res.n_evals += f.calls + 2;
    res.z_bar_opt = z_opt;
    res.delta_p_opt = ov.delta_p;
    res.delta_m_opt = ov.delta_m;
    res.lambda_p_opt = ov.lambda_p;
    res.delta_omega_opt = spacetime::classical_redshift(z_opt, chi, frame.sigma, frame.z0());
    return res;
}

}  // namespace wavepacket

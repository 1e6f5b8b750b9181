#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

// Globally adaptive Gauss–Kronrod (7/15) quadrature for complex-valued
// integrands on a finite interval pre-split at caller-supplied breakpoints.

namespace wavepacket::quadrature {

class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    double abs_tol = 1e-10;
    std::size_t max_intervals = std::size_t{1} << 16;
};

struct Result {
    std::complex<double> value{};
    double error = 0.0;
    std::size_t intervals = 0;
    std::size_t evaluations = 0;
};

namespace detail {

inline constexpr std::array<double, 8> xk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
    double a, b;
    std::complex<double> value;
    double error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

template <class F>
Piece gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const std::complex<double> fc = f(c);
    std::complex<double> kron = fc * wk[7];
    std::complex<double> gauss = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xk[j];
        const std::complex<double> s = f(c - dx) + f(c + dx);
        kron += wk[j] * s;
        if (j % 2 == 1) gauss += wg[j / 2] * s;
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace detail

/** @brief Integrates f over [breaks.front(), breaks.back()].
 *  Each interval between consecutive breakpoints starts as one panel. */
template <class F>
Result integrate(F&& f, std::span<const double> breaks, const Options& opt = {}) {
    if (breaks.size() < 2) throw std::invalid_argument("integrate: need at least two breakpoints");
    std::priority_queue<detail::Piece> heap;
    Result out;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        auto p = detail::gk15(f, breaks[i], breaks[i + 1]);
        out.evaluations += 15;
        out.value += p.value;
        out.error += p.error;
        heap.push(p);
    }
    if (heap.empty()) return out;
    while (out.error > opt.abs_tol) {
        if (heap.size() >= opt.max_intervals)
            throw NonConvergence("integrate: subdivision limit reached");
        detail::Piece worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // interval at machine resolution
        heap.pop();
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        out.evaluations += 30;
        out.value += left.value + right.value - worst.value;
        out.error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if (out.error < 1e-15 * std::abs(out.value)) break;
    }
    // Re-sum to remove drift from the incremental updates.
    out.value = 0.0;
    out.error = 0.0;
    out.intervals = heap.size();
    while (!heap.empty()) {
        out.value += heap.top().value;
        out.error += heap.top().error;
        heap.pop();
    }
    return out;
}

/// Uniform breakpoints on [a, b] with spacing at most `pitch`.
inline std::vector<double> uniform_breaks(double a, double b, double pitch) {
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / pitch)));
    std::vector<double> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    out.back() = b;
    return out;
}

}  // namespace wavepacket::quadrature

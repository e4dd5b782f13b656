#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "cusp_spectra/geometry.hpp"

// Fourier-mode half-line operators on (alpha^2, inf).  Separating the cusp
// Laplacian over the cross-section circle leaves, for each integer mode ell,
//
//   kind p:  -u'' + [ 1/4 + (e^t (ell+xi)/L + sign*b)^2 ] u
//   kind q:  -u'' + [ 1/4 + ((ell+xi)^2/L^2) e^{2t} ] u
//
// q is the field-free comparison operator; p with b = 0 coincides with q.
// Both potentials are >= 1/4 and diverge as t -> inf, so each mode has
// discrete spectrum contained in (1/4, inf).

namespace cusp_spectra {

enum class Bc { dirichlet, neumann };

enum class ModeKind { p, q };

struct ModeOperator {
    ModeKind kind = ModeKind::q;
    int ell = 0;
    double xi = 0.5;     // flux, must lie in (0,1) for counting
    double L = 1.0;
    double alpha2 = 0.0;
    double b = 0.0;      // ignored for kind q
    int sign = +1;       // ignored for kind q
    Bc bc = Bc::dirichlet;

    double fourier_coeff() const { return (static_cast<double>(ell) + xi) / L; }

    double potential(double t) const {
        if (kind == ModeKind::q) {
            const double q = fourier_coeff() * std::exp(t);
            return 0.25 + q * q;
        }
        const double g = fourier_coeff() * std::exp(t) + sign * b;
        return 0.25 + g * g;
    }
};

inline ModeOperator p_mode(const Cusp& c, int ell, Bc bc = Bc::dirichlet) {
    ModeOperator m;
    m.kind = ModeKind::p;
    m.ell = ell;
    m.xi = c.xi();
    m.L = c.L;
    m.alpha2 = c.alpha2;
    m.b = c.b;
    m.sign = c.sign;
    m.bc = bc;
    return m;
}

inline ModeOperator q_mode(const Cusp& c, int ell, Bc bc = Bc::dirichlet) {
    ModeOperator m = p_mode(c, ell, bc);
    m.kind = ModeKind::q;
    m.b = 0.0;
    return m;
}

inline double potential(const ModeOperator& m, double t) { return m.potential(t); }

// Closed integer interval [lmin, lmax]; empty when lmin > lmax.
struct ModeWindow {
    long lmin = 0;
    long lmax = -1;
    bool empty() const { return lmin > lmax; }
    long size() const { return empty() ? 0 : lmax - lmin + 1; }
    bool contains(long ell) const { return ell >= lmin && ell <= lmax; }
};

// Modes that can carry spectrum below lambda:
//   e^{alpha2} |ell+xi| / L < sqrt(lambda - 1/4) - |b|.
// |b| rather than a signed field keeps the window orientation-free.  The
// formula undercounts near the edge for strong fields, which is why cusp
// counting enlarges the window by a safety margin and insists the margin
// contributes nothing.
inline ModeWindow mode_window(const Cusp& c, double lambda) {
    if (!(lambda > 0.25))
        throw std::domain_error("mode_window: lambda must exceed 1/4");
    const double rhs = std::sqrt(lambda - 0.25) - std::abs(c.b);
    const double radius = rhs > 0.0 ? rhs * c.L * std::exp(-c.alpha2) : 0.0;
    const double xi = c.xi();
    ModeWindow w;
    // integers strictly inside (-xi - radius, -xi + radius); for an empty
    // window this still brackets -xi, which anchors the safety margin
    w.lmin = static_cast<long>(std::floor(-xi - radius)) + 1;
    w.lmax = static_cast<long>(std::ceil(-xi + radius)) - 1;
    return w;
}

namespace detail {

// Rightmost t with V(t) = lambda, in closed form; nullopt when V never
// crosses lambda.  For kind p the crossing can sit left of alpha2 (or the
// potential can dip and re-cross), so the caller clamps to the domain.
inline std::optional<double> rightmost_crossing(const ModeOperator& m, double lambda) {
    const double gap = lambda - 0.25;
    if (gap <= 0.0) return std::nullopt;
    const double root = std::sqrt(gap);
    const double k = m.fourier_coeff(); // nonzero whenever xi is in (0,1)
    if (k == 0.0) return std::nullopt;
    if (m.kind == ModeKind::q) {
        // k^2 e^{2t} = gap
        return 0.5 * std::log(gap / (k * k));
    }
    // k e^t = -sign*b +- root; keep the largest positive branch
    const double sb = static_cast<double>(m.sign) * m.b;
    double best = 0.0;
    for (const double z : {(-sb + root) / k, (-sb - root) / k})
        if (z > best) best = z;
    if (best <= 0.0) return std::nullopt;
    return std::log(best);
}

} // namespace detail

// Unique t* >= alpha2 with V(t*) = mu; nullopt when V(alpha2) >= mu (then V
// exceeds mu on the whole ray before its final crossing, or never dips).
// For kind q the crossing is solved in closed form; kind p is bisected on
// [alpha2, alpha2 + 100] to tolerance 1e-12.
inline std::optional<double> turning_point(const ModeOperator& m, double mu) {
    const double a = m.alpha2;
    if (m.potential(a) >= mu) return std::nullopt;
    if (m.kind == ModeKind::q) {
        auto t = detail::rightmost_crossing(m, mu);
        if (!t || *t <= a) return std::nullopt;
        return t;
    }
    double lo = a, hi = a + 100.0;
    if (m.potential(hi) <= mu)
        throw std::runtime_error("turning_point: no crossing within bisection range");
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (m.potential(mid) < mu ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace cusp_spectra

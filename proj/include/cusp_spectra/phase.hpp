#pragma once

#include <cmath>
#include <stdexcept>

#include "cusp_spectra/counting.hpp"
#include "cusp_spectra/geometry.hpp"
#include "cusp_spectra/modes.hpp"

// Semiclassical phase integrals of the field-free mode operators.
//
// With c_ell = (ell+xi)^2 / L^2 the phase of mode ell at energy mu is
//
//   w_ell(mu) = int_{alpha^2}^{inf} [mu - c_ell e^{2t}]_+^{1/2} dt
//             = sqrt(mu) (artanh(r) - r),   r^2 = 1 - (c_ell/mu) e^{2 alpha^2},
//
// empty (zero) when the bracket is negative already at the endpoint.  Since
// 1 - r^2 is available exactly, artanh(r) = log1p(r) - log(1 - r^2)/2 avoids
// the cancellation at r -> 1.

namespace cusp_spectra {

struct PhaseValue {
    double mu = 0.0;
    int ell = 0;
    double w = 0.0;
    double r = 0.0;
};

inline PhaseValue w_closed(const Cusp& c, int ell, double mu) {
    if (!(mu > 0.0)) throw std::domain_error("w_closed: mu must be positive");
    PhaseValue pv;
    pv.mu = mu;
    pv.ell = ell;
    const double k = (static_cast<double>(ell) + c.xi()) / c.L;
    const double s = (k * k / mu) * std::exp(2.0 * c.alpha2); // = 1 - r^2
    if (s >= 1.0) return pv;
    const double r = std::sqrt(1.0 - s);
    const double artanh = std::log1p(r) - 0.5 * std::log(s);
    pv.r = r;
    pv.w = std::sqrt(mu) * (artanh - r);
    if (pv.w < 0.0) pv.w = 0.0;
    return pv;
}

// The integrand of w_ell at axial position t; exposed for the quadrature
// cross-checks.
inline double phase_integrand(const Cusp& c, int ell, double mu, double t) {
    const double k = (static_cast<double>(ell) + c.xi()) / c.L;
    const double v = mu - k * k * std::exp(2.0 * t);
    return v > 0.0 ? std::sqrt(v) : 0.0;
}

// Support of mode ell's phase integrand ends at t = log(mu/c_ell)/2.
inline double phase_support_end(const Cusp& c, int ell, double mu) {
    const double k = (static_cast<double>(ell) + c.xi()) / c.L;
    return 0.5 * std::log(mu / (k * k));
}

// Cutoff T after which every mode's integrand has died out:
//   T = log(L sqrt(mu) / gap),  gap = dist(xi, Z).
inline double phase_cutoff(const Cusp& c, double mu) {
    if (!(mu > 0.0)) throw std::domain_error("phase_cutoff: mu must be positive");
    const double gap = c.flux_gap();
    if (gap <= 0.0 || flux_is_integer(c.xi()))
        throw std::domain_error("phase_cutoff: integer flux has no finite cutoff");
    return std::log(c.L * std::sqrt(mu) / gap);
}

// (1/pi) sum over ell of w_ell(mu); the sum is finite because only modes
// with |ell+xi| < L sqrt(mu) e^{-alpha^2} have nonzero phase.
inline double phase_sum(const Cusp& c, double mu) {
    if (!(mu > 0.0)) throw std::domain_error("phase_sum: mu must be positive");
    const double xi = c.xi();
    const double radius = c.L * std::sqrt(mu) * std::exp(-c.alpha2);
    const long lmin = static_cast<long>(std::floor(-xi - radius)) + 1;
    const long lmax = static_cast<long>(std::ceil(-xi + radius)) - 1;
    double sum = 0.0;
    for (long ell = lmin; ell <= lmax; ++ell)
        sum += w_closed(c, static_cast<int>(ell), mu).w;
    return sum / kPi;
}

// Two-sided Titchmarsh bounds on the Dirichlet count of the field-free mode:
//   w_ell(mu) - pi <= pi N <= w_ell(mu) + log(mu)/12 + 10,
// with N = count_below(q_ell, mu) (q_ell carries its 1/4 shift itself).
struct TitchmarshResult {
    double w = 0.0;
    long count = 0;
    double slack_low = 0.0;  // pi N - (w - pi), >= 0 when the lower bound holds
    double slack_high = 0.0; // (w + log(mu)/12 + 10) - pi N
    bool holds = false;
};

inline TitchmarshResult titchmarsh_check(const Cusp& c, int ell, double mu,
                                         const CountOptions& opt = {}) {
    if (!(mu > 1.0)) throw std::domain_error("titchmarsh_check: mu must exceed 1");
    TitchmarshResult t;
    t.w = w_closed(c, ell, mu).w;
    t.count = count_below(q_mode(c, ell, Bc::dirichlet), mu, opt).count;
    const double pin = kPi * static_cast<double>(t.count);
    t.slack_low = pin - (t.w - kPi);
    t.slack_high = (t.w + std::log(mu) / 12.0 + 10.0) - pin;
    t.holds = t.slack_low >= 0.0 && t.slack_high >= 0.0;
    return t;
}

// Cross-section phase strip at fixed t: the lattice sum over modes and its
// continuum limit, whose closed form is (pi/2) mu L e^{-t}.
inline double strip_integral_closed(const Cusp& c, double mu, double t) {
    return 0.5 * kPi * mu * c.L * std::exp(-t);
}

inline double strip_integrand(const Cusp& c, double mu, double t, double x) {
    const double k = (x + c.xi()) / c.L;
    const double v = mu - k * k * std::exp(2.0 * t);
    return v > 0.0 ? std::sqrt(v) : 0.0;
}

inline double strip_lattice_sum(const Cusp& c, double mu, double t) {
    const double xi = c.xi();
    const double radius = c.L * std::sqrt(mu) * std::exp(-t);
    const long lmin = static_cast<long>(std::floor(-xi - radius)) + 1;
    const long lmax = static_cast<long>(std::ceil(-xi + radius)) - 1;
    double sum = 0.0;
    for (long ell = lmin; ell <= lmax; ++ell) {
        const double k = (static_cast<double>(ell) + xi) / c.L;
        const double v = mu - k * k * std::exp(2.0 * t);
        if (v > 0.0) sum += std::sqrt(v);
    }
    return sum;
}

// Distance between the strip integral and its lattice Riemann sum; bounded
// by a constant multiple of sqrt(mu) + e^t / L.
inline double riemann_gap(const Cusp& c, double mu, double t) {
    return std::abs(strip_integral_closed(c, mu, t) - strip_lattice_sum(c, mu, t));
}

} // namespace cusp_spectra

#pragma once

#include <cmath>
#include <stdexcept>

// Adaptive Gauss-Kronrod 7-15 quadrature.  Intervals where the Kronrod and
// Gauss values disagree beyond the local budget are bisected, splitting the
// budget between the halves.  The scheme resolves the square-root behaviour
// of the phase integrands at the classical turning point without special
// casing.

namespace cusp_spectra {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long intervals = 0;
};

namespace quad_detail {

// 15-point Kronrod abscissae on [-1,1] and weights; Gauss-7 reuses the
// odd-indexed nodes.
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void gk15(F&& f, double a, double b, double& kronrod, double& gauss) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    const double fc = f(c);
    double resk = wgk[7] * fc;
    double resg = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = hw * xgk[j];
        const double fsum = f(c - x) + f(c + x);
        resk += wgk[j] * fsum;
        if (j % 2 == 1) resg += wg[j / 2] * fsum;
    }
    kronrod = resk * hw;
    gauss = resg * hw;
}

template <class F>
inline void adapt(F&& f, double a, double b, double tol, int depth,
                  QuadratureResult& out) {
    double k, g;
    gk15(f, a, b, k, g);
    const double err = std::abs(k - g);
    if (err <= tol || depth >= 60) {
        out.value += k;
        out.error_estimate += err;
        ++out.intervals;
        return;
    }
    const double m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth + 1, out);
    adapt(f, m, b, 0.5 * tol, depth + 1, out);
}

} // namespace quad_detail

template <class F>
QuadratureResult integrate_gk(F&& f, double a, double b, double abs_tol = 1e-12) {
    if (!(b >= a)) throw std::invalid_argument("integrate_gk: b < a");
    QuadratureResult out;
    if (a == b) return out;
    quad_detail::adapt(f, a, b, abs_tol, 0, out);
    return out;
}

} // namespace cusp_spectra

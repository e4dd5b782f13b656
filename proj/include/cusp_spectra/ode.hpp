#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

// Scalar adaptive Dormand-Prince 5(4) integrator.  The embedded 4th order
// solution drives the step controller; tolerances are applied per step as
// abs_tol + rel_tol * |y|.
//
// max_step(t) bounds the step attempted from t.  Callers integrating
// relaxation-dominated equations use it to keep h inside the explicit
// stability region, where the local error estimate alone would let the
// step hover at the stability boundary and slowly drift off an attracting
// equilibrium branch.

namespace cusp_spectra {

template <class F, class MaxStep>
double integrate_adaptive(F&& f, double t0, double t1, double y0,
                          double rel_tol, double abs_tol, MaxStep&& max_step) {
    if (!(t1 >= t0)) throw std::invalid_argument("integrate_adaptive: t1 < t0");
    if (t1 == t0) return y0;

    double t = t0;
    double y = y0;
    const double span = t1 - t0;
    const double hmin = span * 1e-14;
    double h = std::min(span, 1e-2 / (1.0 + std::abs(f(t0, y0))));

    long steps = 0;
    const long max_steps = 200'000'000L;

    while (t < t1) {
        if (++steps > max_steps)
            throw std::runtime_error("integrate_adaptive: step budget exhausted");
        const double hs = std::min({h, t1 - t, max_step(t)});
        if (!(hs > 0.0) || t + hs == t)
            throw std::runtime_error("integrate_adaptive: step size underflow");

        const double k1 = f(t, y);
        const double k2 = f(t + hs * (1.0 / 5.0), y + hs * (1.0 / 5.0) * k1);
        const double k3 = f(t + hs * (3.0 / 10.0),
                            y + hs * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
        const double k4 = f(t + hs * (4.0 / 5.0),
                            y + hs * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
        const double k5 = f(t + hs * (8.0 / 9.0),
                            y + hs * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 +
                                      64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4));
        const double k6 = f(t + hs,
                            y + hs * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 +
                                      46732.0 / 5247.0 * k3 + 49.0 / 176.0 * k4 -
                                      5103.0 / 18656.0 * k5));
        const double y5 = y + hs * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 +
                                    125.0 / 192.0 * k4 - 2187.0 / 6784.0 * k5 +
                                    11.0 / 84.0 * k6);
        const double k7 = f(t + hs, y5);
        const double y4 = y + hs * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 +
                                    393.0 / 640.0 * k4 - 92097.0 / 339200.0 * k5 +
                                    187.0 / 2100.0 * k6 + 1.0 / 40.0 * k7);

        const double err = std::abs(y5 - y4);
        const double scale = abs_tol + rel_tol * std::max(std::abs(y), std::abs(y5));
        const double grow = 0.9 * std::pow(scale / std::max(err, 1e-300), 0.2);
        if (err <= scale) {
            t += hs;
            y = y5;
            h = hs * std::clamp(grow, 0.2, 5.0);
        } else {
            if (hs <= hmin)
                throw std::runtime_error("integrate_adaptive: step size underflow");
            h = hs * std::clamp(grow, 0.2, 1.0);
        }
    }
    return y;
}

template <class F>
double integrate_adaptive(F&& f, double t0, double t1, double y0,
                          double rel_tol = 1e-10, double abs_tol = 1e-12) {
    return integrate_adaptive(static_cast<F&&>(f), t0, t1, y0, rel_tol, abs_tol,
                              [](double) { return std::numeric_limits<double>::infinity(); });
}

} // namespace cusp_spectra

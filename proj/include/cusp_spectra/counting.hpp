#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cusp_spectra/geometry.hpp"
#include "cusp_spectra/modes.hpp"
#include "cusp_spectra/ode.hpp"
#include "cusp_spectra/parallel.hpp"

// Eigenvalue counting for the half-line mode operators by Prüfer shooting.
//
// Writing u = rho sin(theta), u' = rho cos(theta) turns -u'' + V u = lambda u
// into theta' = cos^2(theta) + (lambda - V) sin^2(theta).  theta crosses each
// multiple of pi exactly once and only upward (theta' = 1 there), so the
// number of zeros of u in (alpha^2, T) is floor(theta(T)/pi), and past the
// last classical turning point that number freezes at the count of
// eigenvalues below lambda.  The truncation T is pushed far enough beyond the
// rightmost crossing of V = lambda that V(T) >= lambda + clearance.

namespace cusp_spectra {

struct CountOptions {
    double rel_tol = 1e-10;     // Prüfer angle integration tolerances
    double abs_tol = 1e-12;
    double v_clearance = 10.0;  // require V(T) >= lambda + v_clearance
    double pad_scale = 1.0;     // truncation cushion multiplier: counts must not depend on it
    int window_margin = 2;      // extra modes on each side of the cusp window
};

struct CountResult {
    double lambda = 0.0;
    long count = 0;
    double truncation_T = 0.0;
    // distance of theta(T) from the nearest multiple of pi; a small residual
    // means lambda is nearly an eigenvalue and the integer count is fragile
    double prufer_residual = std::numeric_limits<double>::infinity();
    bool near_degenerate() const { return prufer_residual < 1e-8; }
};

// Raised when a mode outside the enlarged window turns out to carry spectrum
// below lambda, i.e. the window formula is violated for this configuration.
class window_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_counting_flux(double xi) {
    if (!(xi > 0.0) || !(xi < 1.0) || flux_is_integer(xi))
        throw std::domain_error(
            "counting: flux is an integer (or closer than 1e-12 to one); "
            "the cusp spectrum is not discrete");
}

inline double truncation_point(const ModeOperator& m, double lambda,
                               const CountOptions& opt) {
    double t0 = m.alpha2;
    if (auto tc = rightmost_crossing(m, lambda))
        t0 = std::max(t0, *tc);
    double T = t0 + opt.pad_scale * std::max(5.0, std::log(std::max(lambda + 2.0, 1.0)));
    int extensions = 0;
    while (m.potential(T) < lambda + opt.v_clearance) {
        T += 0.5;
        if (++extensions > 10000)
            throw std::runtime_error("truncation_point: potential fails to clear lambda");
    }
    return T;
}

} // namespace detail

inline CountResult count_below(const ModeOperator& m, double lambda,
                               const CountOptions& opt = {}) {
    detail::require_counting_flux(m.xi);
    const double T = detail::truncation_point(m, lambda, opt);
    auto rhs = [&m, lambda](double t, double theta) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        return c * c + (lambda - m.potential(t)) * s * s;
    };
    const double theta0 = (m.bc == Bc::dirichlet) ? 0.0 : 0.5 * kPi;
    // Under the barrier theta hugs the equilibrium branch n*pi + arctan
    // (1/sqrt(V-lambda)), whose relaxation rate is 2*sqrt(V-lambda).  Cap the
    // step so h times that rate stays at 2, inside the stability interval of
    // the scheme; the error estimate alone is blind to the slow drift off the
    // branch that marginal steps accumulate.  min() with a right-endpoint
    // probe keeps the bound valid across the step whichever way V is running.
    auto barrier_cap = [&m, lambda](double t) {
        const double d0 = m.potential(t) - lambda;
        if (d0 < 25.0) return std::numeric_limits<double>::infinity();
        const double h0 = 1.0 / std::sqrt(d0);
        const double d1 = std::max(m.potential(t + h0) - lambda, 1.0);
        return std::min(h0, 1.0 / std::sqrt(d1));
    };
    const double thetaT = integrate_adaptive(rhs, m.alpha2, T, theta0,
                                             opt.rel_tol, opt.abs_tol, barrier_cap);

    CountResult r;
    r.lambda = lambda;
    r.truncation_T = T;
    const double cycles = thetaT / kPi;
    r.count = std::max(0L, static_cast<long>(std::floor(cycles)));
    const double frac = cycles - std::floor(cycles);
    r.prufer_residual = kPi * std::min(frac, 1.0 - frac);
    return r;
}

// Eigenvalues below lambda, each bracketed by bisection on the counting
// function to width 1e-9 and reported as the bracket midpoint.  The mode
// spectrum is simple, so every jump of the count is by one.
inline std::vector<double> eigenvalues_below(const ModeOperator& m, double lambda,
                                             const CountOptions& opt = {}) {
    const long n = count_below(m, lambda, opt).count;
    std::vector<double> ev;
    ev.reserve(static_cast<std::size_t>(n));
    for (long k = 1; k <= n; ++k) {
        double lo = 0.25; // potentials are bounded below by 1/4
        double hi = lambda;
        while (hi - lo > 1e-9) {
            const double mid = 0.5 * (lo + hi);
            (count_below(m, mid, opt).count >= k ? hi : lo) = mid;
        }
        ev.push_back(0.5 * (lo + hi));
    }
    return ev;
}

// Cusp count at lambda: sum of the mode counts over the window enlarged by
// the safety margin.  Any margin mode that carries spectrum below lambda
// falsifies the window formula for this configuration and raises
// window_error instead of returning a silent undercount.
inline CountResult cusp_count(const Cusp& c, double lambda, Bc bc,
                              const CountOptions& opt = {}) {
    if (!(lambda > 0.25))
        throw std::domain_error("cusp_count: lambda must exceed 1/4");
    detail::require_counting_flux(c.xi());

    const ModeWindow w = mode_window(c, lambda);
    const long lo = w.lmin - opt.window_margin;
    const long hi = w.lmax + opt.window_margin;
    const long n = hi - lo + 1;

    std::vector<CountResult> per(static_cast<std::size_t>(n));
    parallel_for(n, [&](long i) {
        per[static_cast<std::size_t>(i)] =
            count_below(p_mode(c, static_cast<int>(lo + i), bc), lambda, opt);
    });

    CountResult total;
    total.lambda = lambda;
    for (long i = 0; i < n; ++i) {
        const auto& r = per[static_cast<std::size_t>(i)];
        const long ell = lo + i;
        if (!w.contains(ell) && r.count != 0)
            throw window_error("cusp_count: margin mode ell=" + std::to_string(ell) +
                               " carries " + std::to_string(r.count) +
                               " eigenvalues below lambda; window formula violated");
        total.count += r.count;
        total.truncation_T = std::max(total.truncation_T, r.truncation_T);
        total.prufer_residual = std::min(total.prufer_residual, r.prufer_residual);
    }
    return total;
}

} // namespace cusp_spectra

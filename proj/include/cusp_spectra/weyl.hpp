#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cusp_spectra/counting.hpp"
#include "cusp_spectra/geometry.hpp"
#include "cusp_spectra/toy_core.hpp"

// Whole-surface counting: Dirichlet/Neumann bracketing of N(lambda) by
// decoupling the cusps from the toy core, and the Weyl remainder report
//
//   N(lambda) = area * lambda / (4 pi) + O(sqrt(lambda) log lambda).
//
// The bracket is
//   core_D + sum_j cusp_D  <=  N(lambda)  <=  core_N + sum_j cusp_N.

namespace cusp_spectra {

// Exact counting for the toy cores.  flat_rectangle: pi^2 (m^2/w^2 + n^2/h^2)
// with m,n >= 1 (Dirichlet) or m,n >= 0 (Neumann, includes the zero mode).
inline long core_count(const ToyCore& core, double lambda, Bc bc) {
    if (!(lambda > 0.0)) return 0;
    if (core.kind == ToyCore::Kind::explicit_weyl) {
        const double rem = core.remainder_coeff * std::sqrt(lambda);
        const double base = core.weyl_area * lambda / (4.0 * kPi);
        const double n = (bc == Bc::dirichlet) ? base - rem : base + rem;
        return n > 0.0 ? static_cast<long>(std::floor(n)) : 0L;
    }
    const long m0 = (bc == Bc::dirichlet) ? 1 : 0;
    const double pi2 = kPi * kPi;
    long total = 0;
    for (long m = m0;; ++m) {
        const double rest = lambda - pi2 * static_cast<double>(m) * m / (core.width * core.width);
        if (rest <= 0.0) break;
        // largest n with pi^2 n^2 / h^2 < rest, counting from m0
        const double nmax = core.height * std::sqrt(rest) / kPi;
        const long n_hi = static_cast<long>(std::ceil(nmax)) - 1; // strict inequality
        if (n_hi < m0) continue;
        total += n_hi - m0 + 1;
    }
    return total;
}

struct SurfaceBracket {
    double lambda = 0.0;     // the lambda actually evaluated (after nudges)
    long lower = 0;          // Dirichlet decoupling
    long upper = 0;          // Neumann decoupling
    long core_lower = 0;
    long core_upper = 0;
    double min_prufer_residual = std::numeric_limits<double>::infinity();
    bool near_degenerate() const { return min_prufer_residual < 1e-8; }
};

inline SurfaceBracket surface_bracket(const Surface& s, double lambda,
                                      const CountOptions& opt = {}) {
    if (!(lambda > 0.25))
        throw std::domain_error("surface_bracket: lambda must exceed 1/4");
    const auto verdict = discreteness_verdict(s);
    if (!verdict.discrete)
        throw std::domain_error(
            "surface_bracket: cusp " + std::to_string(verdict.j_a.front() + 1) +
            " has integer flux, so the spectrum is not discrete; essential "
            "spectrum starts at 1/4 + min b^2 = " + std::to_string(verdict.essential_bottom));

    SurfaceBracket out;
    out.lambda = lambda;
    out.core_lower = core_count(s.core, lambda, Bc::dirichlet);
    out.core_upper = core_count(s.core, lambda, Bc::neumann);
    out.lower = out.core_lower;
    out.upper = out.core_upper;
    for (const auto& c : s.cusps) {
        const CountResult d = cusp_count(c, lambda, Bc::dirichlet, opt);
        const CountResult n = cusp_count(c, lambda, Bc::neumann, opt);
        out.lower += d.count;
        out.upper += n.count;
        out.min_prufer_residual =
            std::min({out.min_prufer_residual, d.prufer_residual, n.prufer_residual});
    }
    return out;
}

// Bracket with the near-degeneracy escape: when lambda lands too close to an
// eigenvalue of some mode, nudge it up by 1e-6 and retry.
inline SurfaceBracket surface_bracket_stable(const Surface& s, double lambda,
                                             const CountOptions& opt = {},
                                             int max_nudges = 8) {
    SurfaceBracket out = surface_bracket(s, lambda, opt);
    for (int i = 0; i < max_nudges && out.near_degenerate(); ++i)
        out = surface_bracket(s, out.lambda + 1e-6, opt);
    return out;
}

struct WeylReport {
    double area = 0.0;
    std::vector<double> lambda;      // grid as evaluated
    std::vector<long> count_d;
    std::vector<long> count_n;
    std::vector<double> principal;   // area * lambda / (4 pi)
    std::vector<double> resid_d;     // |count - principal|
    std::vector<double> resid_n;
    std::vector<double> norm_d;      // resid / (sqrt(lambda) log(lambda))
    std::vector<double> norm_n;
    // remainder model resid <= C sqrt(lambda) log(lambda), least squares on
    // the lower half of the grid, validated with 1.5x headroom on the upper
    double fit_c_d = 0.0;
    double fit_c_n = 0.0;
    bool upper_half_ok_d = false;
    bool upper_half_ok_n = false;
    // slope of the normalized residual against log(lambda), upper half
    double trend_d = 0.0;
    double trend_n = 0.0;
};

// Geometric grid of n points ending at lambda_max, starting at
// max(10, lambda_max/100).
inline std::vector<double> make_lambda_grid(double lambda_max, int n) {
    if (!(lambda_max > 10.0)) throw std::domain_error("make_lambda_grid: lambda_max must exceed 10");
    if (n < 2) throw std::domain_error("make_lambda_grid: need at least 2 points");
    const double lo = std::max(10.0, lambda_max / 100.0);
    std::vector<double> g(static_cast<std::size_t>(n));
    const double step = std::log(lambda_max / lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
    g.back() = lambda_max;
    return g;
}

namespace weyl_detail {

// least squares through the origin of r against s, clamped at zero
inline double fit_constant(const std::vector<double>& r, const std::vector<double>& s,
                           std::size_t lo, std::size_t hi) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        num += r[i] * s[i];
        den += s[i] * s[i];
    }
    return den > 0.0 ? std::max(0.0, num / den) : 0.0;
}

inline double trend_slope(const std::vector<double>& y, const std::vector<double>& lam,
                          std::size_t lo, std::size_t hi) {
    const double n = static_cast<double>(hi - lo);
    if (n < 2.0) return 0.0;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        const double x = std::log(lam[i]);
        sx += x;
        sy += y[i];
        sxx += x * x;
        sxy += x * y[i];
    }
    const double den = n * sxx - sx * sx;
    return den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
}

} // namespace weyl_detail

inline WeylReport weyl_report(const Surface& s, const std::vector<double>& grid,
                              const CountOptions& opt = {}) {
    if (grid.size() < 4)
        throw std::domain_error("weyl_report: need at least 4 grid points");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::domain_error("weyl_report: grid must be strictly increasing");

    WeylReport rep;
    rep.area = s.total_area();
    const std::size_t n = grid.size();
    rep.lambda.resize(n);
    rep.count_d.resize(n);
    rep.count_n.resize(n);
    rep.principal.resize(n);
    rep.resid_d.resize(n);
    rep.resid_n.resize(n);
    rep.norm_d.resize(n);
    rep.norm_n.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const SurfaceBracket br = surface_bracket_stable(s, grid[i], opt);
        rep.lambda[i] = br.lambda;
        rep.count_d[i] = br.lower;
        rep.count_n[i] = br.upper;
        rep.principal[i] = rep.area * br.lambda / (4.0 * kPi);
        rep.resid_d[i] = std::abs(static_cast<double>(br.lower) - rep.principal[i]);
        rep.resid_n[i] = std::abs(static_cast<double>(br.upper) - rep.principal[i]);
        const double scale = std::sqrt(br.lambda) * std::log(br.lambda);
        rep.norm_d[i] = rep.resid_d[i] / scale;
        rep.norm_n[i] = rep.resid_n[i] / scale;
    }

    std::vector<double> s_model(n);
    for (std::size_t i = 0; i < n; ++i)
        s_model[i] = std::sqrt(rep.lambda[i]) * std::log(rep.lambda[i]);

    const std::size_t half = n / 2;
    rep.fit_c_d = weyl_detail::fit_constant(rep.resid_d, s_model, 0, half);
    rep.fit_c_n = weyl_detail::fit_constant(rep.resid_n, s_model, 0, half);

    auto validate = [&](const std::vector<double>& resid, double c) {
        for (std::size_t i = half; i < n; ++i)
            if (resid[i] > 1.5 * c * s_model[i] + 1e-9) return false;
        return true;
    };
    rep.upper_half_ok_d = validate(rep.resid_d, rep.fit_c_d);
    rep.upper_half_ok_n = validate(rep.resid_n, rep.fit_c_n);
    rep.trend_d = weyl_detail::trend_slope(rep.norm_d, rep.lambda, half, n);
    rep.trend_n = weyl_detail::trend_slope(rep.norm_n, rep.lambda, half, n);
    return rep;
}

} // namespace cusp_spectra

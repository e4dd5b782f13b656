#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cusp_spectra/counting.hpp"
#include "cusp_spectra/modes.hpp"

// Matrix oracle: an independent route to the mode spectra used only by tests
// and the verification battery, never by the production counting path.
//
// The half-line problem is truncated to [alpha^2, T] and discretized by
// symmetric central differences on a uniform grid.  A Dirichlet end drops its
// boundary row; a Neumann end is closed with a ghost point and the resulting
// first row is symmetrized by a diagonal similarity, which preserves the
// spectrum and keeps the O(h^2) eigenvalue error clean.  Eigenvalues come
// from Sturm-sequence bisection on the tridiagonal matrix; by default each
// one is Richardson-extrapolated from the h and h/2 grids, cancelling the
// h^2 term.

namespace cusp_spectra {

struct OracleConfig {
    int grid_points = 20000;     // interior unknowns of the h-grid
    double t_right = std::numeric_limits<double>::quiet_NaN(); // default: shooting T + 5
    bool refine = true;          // extrapolate h -> h/2
    double bisect_tol = 1e-10;
};

struct OracleSpectrum {
    std::vector<double> values;  // eigenvalues below lambda (refined if enabled)
    std::vector<double> coarse;  // h-grid eigenvalues
    std::vector<double> fine;    // h/2-grid eigenvalues (empty unless refined)
    long count() const { return static_cast<long>(values.size()); }
};

namespace oracle_detail {

// Eigenvalues of the symmetric tridiagonal (d, e) strictly below x, counted
// through the inertia of the shifted LDL^T factorization.
inline long sturm_count(const std::vector<double>& d, const std::vector<double>& e,
                        double x) {
    long cnt = 0;
    double q = d[0] - x;
    if (q < 0.0) ++cnt;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (q == 0.0) q = 1e-300;
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if (q < 0.0) ++cnt;
    }
    return cnt;
}

inline std::vector<double> eigenvalues_below(const std::vector<double>& d,
                                             const std::vector<double>& e,
                                             double lambda, double tol) {
    // all eigenvalues exceed the Gershgorin lower bound
    double lo0 = d[0];
    for (std::size_t i = 0; i < d.size(); ++i) {
        double row = d[i];
        if (i > 0) row -= std::abs(e[i - 1]);
        if (i + 1 < d.size()) row -= std::abs(e[i]);
        lo0 = std::min(lo0, row);
    }
    const long n = sturm_count(d, e, lambda);
    std::vector<double> ev;
    ev.reserve(static_cast<std::size_t>(n));
    for (long k = 1; k <= n; ++k) {
        double lo = lo0, hi = lambda;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            (sturm_count(d, e, mid) >= k ? hi : lo) = mid;
        }
        ev.push_back(0.5 * (lo + hi));
    }
    return ev;
}

// Central-difference matrix on (a, b) with n interior unknowns for a
// Dirichlet left end; a Neumann left end keeps the boundary node, so the
// matrix gains one row whose off-diagonal is -sqrt(2)/h^2 after the
// symmetrizing similarity.
template <class V>
inline void discretize(V&& pot, double a, double b, int n, Bc bc_left,
                       std::vector<double>& d, std::vector<double>& e) {
    const double h = (b - a) / (n + 1);
    const double inv_h2 = 1.0 / (h * h);
    d.clear();
    e.clear();
    if (bc_left == Bc::neumann) {
        d.push_back(2.0 * inv_h2 + pot(a));
        e.push_back(-std::sqrt(2.0) * inv_h2);
    }
    for (int i = 1; i <= n; ++i) {
        d.push_back(2.0 * inv_h2 + pot(a + i * h));
        if (i < n) e.push_back(-inv_h2);
    }
}

} // namespace oracle_detail

// Eigenvalues below lambda of -u'' + pot(t) u on (a, b) with the given left
// boundary condition and a Dirichlet right end.
template <class V>
OracleSpectrum oracle_eigenvalues_on_interval(V&& pot, double a, double b,
                                              Bc bc_left, double lambda,
                                              const OracleConfig& cfg = {}) {
    if (!(b > a)) throw std::invalid_argument("oracle: empty interval");
    if (cfg.grid_points < 16) throw std::invalid_argument("oracle: grid too coarse");

    OracleSpectrum out;
    std::vector<double> d, e;
    oracle_detail::discretize(pot, a, b, cfg.grid_points, bc_left, d, e);

    // the discrete spectrum is only faithful well below its own top
    const double h = (b - a) / (cfg.grid_points + 1);
    if (lambda > 2.0 / (h * h))
        throw std::domain_error("oracle: lambda beyond the trusted range of the grid");

    out.coarse = oracle_detail::eigenvalues_below(d, e, lambda, cfg.bisect_tol);
    if (!cfg.refine) {
        out.values = out.coarse;
        return out;
    }
    oracle_detail::discretize(pot, a, b, 2 * cfg.grid_points + 1, bc_left, d, e);
    out.fine = oracle_detail::eigenvalues_below(d, e, lambda, cfg.bisect_tol);

    const std::size_t m = std::min(out.coarse.size(), out.fine.size());
    out.values.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        out.values.push_back((4.0 * out.fine[i] - out.coarse[i]) / 3.0);
    // an extrapolated value can land on either side of lambda; keep the
    // strict-below semantics of the count
    while (!out.values.empty() && out.values.back() >= lambda) out.values.pop_back();
    return out;
}

inline OracleSpectrum oracle_eigenvalues(const ModeOperator& m, double lambda,
                                         const OracleConfig& cfg = {}) {
    double t_right = cfg.t_right;
    if (std::isnan(t_right))
        t_right = detail::truncation_point(m, lambda, CountOptions{}) + 5.0;
    return oracle_eigenvalues_on_interval([&m](double t) { return m.potential(t); },
                                          m.alpha2, t_right, m.bc, lambda, cfg);
}

inline long oracle_count(const ModeOperator& m, double lambda,
                         const OracleConfig& cfg = {}) {
    return oracle_eigenvalues(m, lambda, cfg).count();
}

} // namespace cusp_spectra

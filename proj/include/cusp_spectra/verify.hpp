#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cusp_spectra/counting.hpp"
#include "cusp_spectra/geometry.hpp"
#include "cusp_spectra/io.hpp"
#include "cusp_spectra/modes.hpp"
#include "cusp_spectra/oracle.hpp"
#include "cusp_spectra/phase.hpp"
#include "cusp_spectra/quadrature.hpp"
#include "cusp_spectra/rng.hpp"
#include "cusp_spectra/toy_core.hpp"
#include "cusp_spectra/weyl.hpp"

// Invariant battery shared by the CLI `verify` subcommand and the acceptance
// runner.  Every check returns a Check with a one-line detail string; pass
// thresholds live in Options and are serialized into the report so a stored
// report documents exactly what it asserted.
//
// This header pulls in the matrix oracle and therefore stays out of the
// production counting/phase/weyl paths.

namespace cusp_spectra::verify {

struct Options {
    unsigned long long seed = 7;

    double oracle_ev_tol = 1e-6;        // shooting vs matrix-oracle eigenvalues
    double lambda_clearance = 1e-6;     // battery thresholds must stay this far from eigenvalues
    int closed_form_samples = 200;      // randomized w_closed vs quadrature pairs
    double closed_form_rel_tol = 1e-8;
    double riemann_ratio_bound = 0.25;  // gap / (sqrt(mu) + e^t/L), empirical headroom ~2x
    double strip_ratio_bound = 0.5;     // |strip chain defect| / sqrt(mu); closed form gives (pi/2)*flux_gap
    double strip_quad_rel_tol = 1e-8;
    double phase_sum_norm_bound = 0.25; // |phase_sum - mu area/4pi| / (sqrt(mu) ln mu)
    double reflection_rel_tol = 1e-9;   // xi -> 1-xi symmetry, summation-order noise only
    double weyl_headroom = 1.5;         // validation-half residual allowance over fitted constant
    double weyl_slope_window = 0.1;     // |count/principal - 1| at the top of the lambda grid
};

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    Options options;
    std::vector<Check> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline json options_to_json(const Options& o) {
    json j;
    j["seed"] = o.seed;
    j["oracle_ev_tol"] = o.oracle_ev_tol;
    j["lambda_clearance"] = o.lambda_clearance;
    j["closed_form_samples"] = o.closed_form_samples;
    j["closed_form_rel_tol"] = o.closed_form_rel_tol;
    j["riemann_ratio_bound"] = o.riemann_ratio_bound;
    j["strip_ratio_bound"] = o.strip_ratio_bound;
    j["strip_quad_rel_tol"] = o.strip_quad_rel_tol;
    j["phase_sum_norm_bound"] = o.phase_sum_norm_bound;
    j["reflection_rel_tol"] = o.reflection_rel_tol;
    j["weyl_headroom"] = o.weyl_headroom;
    j["weyl_slope_window"] = o.weyl_slope_window;
    return j;
}

inline json report_to_json(const Report& r) {
    json j;
    j["thresholds"] = options_to_json(r.options);
    j["checks"] = json::array();
    for (const auto& c : r.checks) {
        json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["detail"] = c.detail;
        j["checks"].push_back(jc);
    }
    j["all_pass"] = r.all_pass();
    return j;
}

// ---------------------------------------------------------------------------
// Standard battery: (mode, lambda) instances spanning ell in {-3..3},
// xi in {0.05, 0.3, 0.5}, b in {0, 1, 5}.  Thresholds sit away from
// eigenvalues (min distance reported by check_oracle_equivalence).

struct BatteryInstance {
    ModeKind kind;
    int ell;
    double xi;
    double b;
    int sign;
    double lambda;
};

inline const std::vector<BatteryInstance>& battery() {
    static const std::vector<BatteryInstance> v = {
        {ModeKind::q, 0, 0.50, 0.0, +1, 5.0},   {ModeKind::q, 0, 0.50, 0.0, +1, 10.0},
        {ModeKind::q, 0, 0.50, 0.0, +1, 20.0},  {ModeKind::q, 1, 0.50, 0.0, +1, 20.0},
        {ModeKind::q, -1, 0.50, 0.0, +1, 20.0}, {ModeKind::q, 2, 0.30, 0.0, +1, 30.0},
        {ModeKind::q, -3, 0.30, 0.0, +1, 30.0}, {ModeKind::q, 0, 0.05, 0.0, +1, 15.0},
        {ModeKind::q, -1, 0.05, 0.0, +1, 15.0}, {ModeKind::p, 0, 0.50, 1.0, +1, 15.0},
        {ModeKind::p, -1, 0.50, 1.0, +1, 15.0}, {ModeKind::p, 1, 0.30, 1.0, +1, 25.0},
        {ModeKind::p, -2, 0.30, 1.0, +1, 25.0}, {ModeKind::p, -1, 0.05, 1.0, +1, 15.0},
        {ModeKind::p, 0, 0.50, 5.0, +1, 40.0},  {ModeKind::p, -1, 0.50, 5.0, +1, 40.0},
        {ModeKind::p, -3, 0.50, 5.0, +1, 40.0}, {ModeKind::p, 2, 0.05, 5.0, +1, 60.0},
        {ModeKind::p, -2, 0.05, 5.0, -1, 40.0}, {ModeKind::p, 3, 0.30, 0.0, +1, 30.0},
        {ModeKind::q, 3, 0.30, 0.0, +1, 30.0},  {ModeKind::p, -1, 0.30, 1.0, -1, 15.0},
    };
    return v;
}

inline Cusp battery_cusp(double xi, double b, int sign) {
    return Cusp(1.0, 0.0, b, xi * kTwoPi, sign);
}

inline ModeOperator battery_mode(const BatteryInstance& in, Bc bc) {
    const Cusp c = battery_cusp(in.xi, in.b, in.sign);
    return in.kind == ModeKind::q ? q_mode(c, in.ell, bc) : p_mode(c, in.ell, bc);
}

struct BatteryRow {
    BatteryInstance inst;
    long count_d = 0;
    long count_n = 0;
    long oracle_d = 0;
    long oracle_n = 0;
    double ev_diff = 0.0;         // max |shooting - oracle| over eigenvalues below lambda
    double lambda_distance = 0.0; // distance of lambda to the nearest eigenvalue
};

inline std::vector<BatteryRow> run_battery() {
    std::vector<BatteryRow> rows;
    rows.reserve(battery().size());
    for (const auto& in : battery()) {
        BatteryRow r;
        r.inst = in;
        const ModeOperator md = battery_mode(in, Bc::dirichlet);
        ModeOperator mn = md;
        mn.bc = Bc::neumann;
        r.count_d = count_below(md, in.lambda).count;
        r.count_n = count_below(mn, in.lambda).count;
        r.oracle_d = oracle_count(md, in.lambda);
        r.oracle_n = oracle_count(mn, in.lambda);

        const auto shoot = eigenvalues_below(md, in.lambda);
        const auto oracle = oracle_eigenvalues(md, in.lambda);
        for (std::size_t i = 0; i < shoot.size() && i < oracle.values.size(); ++i)
            r.ev_diff = std::max(r.ev_diff, std::abs(shoot[i] - oracle.values[i]));

        r.lambda_distance = std::numeric_limits<double>::infinity();
        for (double e : eigenvalues_below(md, in.lambda + 3.0))
            r.lambda_distance = std::min(r.lambda_distance, std::abs(e - in.lambda));
        rows.push_back(r);
    }
    return rows;
}

inline Check check_oracle_equivalence(const std::vector<BatteryRow>& rows,
                                      const Options& opt) {
    Check c{"oracle_equivalence", true, ""};
    double max_ev = 0.0, min_dist = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        if (r.count_d != r.oracle_d || r.count_n != r.oracle_n) c.pass = false;
        if (r.ev_diff > opt.oracle_ev_tol) c.pass = false;
        if (r.lambda_distance < opt.lambda_clearance) c.pass = false;
        max_ev = std::max(max_ev, r.ev_diff);
        min_dist = std::min(min_dist, r.lambda_distance);
    }
    std::ostringstream os;
    os << rows.size() << " instances, counts exact, max eigenvalue diff " << max_ev
       << ", min lambda clearance " << min_dist;
    c.detail = os.str();
    return c;
}

inline Check check_interlacing(const std::vector<BatteryRow>& rows) {
    Check c{"dirichlet_neumann_interlacing", true, ""};
    long worst = 0;
    for (const auto& r : rows) {
        const long gap = r.count_n - r.count_d;
        if (gap < 0 || gap > 1) c.pass = false;
        worst = std::max(worst, std::abs(gap));
    }
    std::ostringstream os;
    os << "0 <= N_count - D_count <= 1 on " << rows.size() << " instances (max gap "
       << worst << ")";
    c.detail = os.str();
    return c;
}

// ---------------------------------------------------------------------------
// Gauge symmetry.  Mode level: relabeling ell -> -1-ell turns the (xi, sign)
// potential family into the (1-xi, -sign) family, so per-mode counts match
// exactly.  Cusp level: cusp_count outcomes must agree under holonomy + 2pi
// and under the relabeling; where the window guard trips (large |b| at small
// lambda) it must trip on every gauge image alike.

inline Check check_gauge_modes(const Options&) {
    Check c{"gauge_mode_relabel", true, ""};
    long checked = 0;
    for (const auto& in : battery()) {
        for (Bc bc : {Bc::dirichlet, Bc::neumann}) {
            const Cusp c1 = battery_cusp(in.xi, in.b, in.sign);
            const Cusp c2 = battery_cusp(1.0 - in.xi, in.b, -in.sign);
            const ModeOperator m1 = in.kind == ModeKind::q ? q_mode(c1, in.ell, bc)
                                                           : p_mode(c1, in.ell, bc);
            const ModeOperator m2 = in.kind == ModeKind::q
                                        ? q_mode(c2, -1 - in.ell, bc)
                                        : p_mode(c2, -1 - in.ell, bc);
            if (count_below(m1, in.lambda).count != count_below(m2, in.lambda).count)
                c.pass = false;
            ++checked;
        }
    }
    std::ostringstream os;
    os << checked << " (instance, bc) pairs: count(ell; xi, sign) == count(-1-ell; 1-xi, -sign)";
    c.detail = os.str();
    return c;
}

inline Check check_gauge_cusps(const Options&) {
    Check c{"gauge_cusp_outcomes", true, ""};
    struct Cfg { double xi, b; int sign; double lambda; };
    // unique (xi, b, sign, lambda) combinations of the battery plus a few
    // larger-lambda configurations
    const std::vector<Cfg> cfgs = {
        {0.50, 0, +1, 5},   {0.50, 0, +1, 10},  {0.50, 0, +1, 20}, {0.30, 0, +1, 30},
        {0.05, 0, +1, 15},  {0.50, 1, +1, 15},  {0.30, 1, +1, 25}, {0.05, 1, +1, 15},
        {0.30, 1, -1, 15},  {0.50, 5, +1, 40},  {0.05, 5, +1, 60}, {0.05, 5, -1, 40},
        {0.05, 0, +1, 50},  {0.30, 1, +1, 300}, {0.50, 1, +1, 300},
    };
    long exact = 0, guarded = 0;
    for (const auto& g : cfgs) {
        for (Bc bc : {Bc::dirichlet, Bc::neumann}) {
            const Cusp c0(1.0, 0.0, g.b, g.xi * kTwoPi, g.sign);
            Cusp c1 = c0;
            c1.holonomy += kTwoPi;
            const Cusp c2(1.0, 0.0, g.b, (1.0 - g.xi) * kTwoPi, -g.sign);
            auto outcome = [&](const Cusp& cc) -> std::optional<long> {
                try {
                    return cusp_count(cc, g.lambda, bc).count;
                } catch (const window_error&) {
                    return std::nullopt;
                }
            };
            const auto a = outcome(c0), b2 = outcome(c1), d = outcome(c2);
            if (a != b2 || a != d) c.pass = false;
            if (a.has_value()) ++exact;
            else ++guarded;
        }
    }
    std::ostringstream os;
    os << exact << " outcomes integer-equal under holonomy+2pi and relabel, " << guarded
       << " trip the window guard on every gauge image alike";
    c.detail = os.str();
    return c;
}

// ---------------------------------------------------------------------------
// Counting-vs-phase sandwich for the field-free mode operators, all modes in
// the window, three cusp shapes.  The unspecified additive constant is
// instantiated as 10; the smallest all-window mu from a fixed scan list is
// reported, not asserted.

inline Check check_titchmarsh(const Options&) {
    Check c{"titchmarsh_sandwich", true, ""};
    struct Cfg { double L, alpha2, xi; std::vector<double> mus; };
    const std::vector<Cfg> cfgs = {
        {1.0, 0.0, 0.05, {1e2, 1e3, 1e4}},
        {1.0, 0.0, 0.50, {1e2, 1e3, 1e4}},
        {2.0, 0.5, 0.30, {1e2, 1e3}},
    };
    long modes = 0;
    double min_low = std::numeric_limits<double>::infinity();
    double min_high = std::numeric_limits<double>::infinity();
    for (const auto& g : cfgs) {
        const Cusp cc(g.L, g.alpha2, 0.0, g.xi * kTwoPi, +1);
        for (double mu : g.mus) {
            const ModeWindow w = mode_window(cc, mu);
            for (long ell = w.lmin; ell <= w.lmax; ++ell) {
                const auto t = titchmarsh_check(cc, static_cast<int>(ell), mu);
                if (!t.holds) c.pass = false;
                min_low = std::min(min_low, t.slack_low);
                min_high = std::min(min_high, t.slack_high);
                ++modes;
            }
        }
    }

    // report-only scan for the smallest mu at which the sandwich holds
    double smallest_mu = 0.0;
    const Cusp scan_cusp(1.0, 0.0, 0.0, 0.5 * kTwoPi, +1);
    for (double mu : {2.0, 5.0, 10.0, 20.0, 50.0, 100.0}) {
        bool all = true;
        const ModeWindow w = mode_window(scan_cusp, mu);
        for (long ell = w.lmin; ell <= w.lmax; ++ell)
            if (!titchmarsh_check(scan_cusp, static_cast<int>(ell), mu).holds) all = false;
        if (all) {
            smallest_mu = mu;
            break;
        }
    }
    std::ostringstream os;
    os << modes << " (mode, mu, cusp) triples hold, min slack low " << min_low
       << ", min slack high " << min_high << ", smallest passing mu in scan "
       << smallest_mu;
    c.detail = os.str();
    return c;
}

// ---------------------------------------------------------------------------
// Closed-form phase integral against adaptive quadrature of its defining
// integrand on randomized (cusp, ell, mu) samples.

inline Check check_closed_form_phase(const Options& opt) {
    Check c{"phase_closed_form_vs_quadrature", true, ""};
    UniformRng rng(opt.seed);
    double worst = 0.0;
    for (int i = 0; i < opt.closed_form_samples; ++i) {
        const double xi = rng.in(0.02, 0.98);
        const double L = rng.log_in(0.5, 2.0);
        const double a2 = rng.in(0.0, 1.0);
        const int ell = static_cast<int>(rng.integer(-40, 40));
        // draw mu above the support threshold mu > ((ell+xi)/L)^2 e^{2 a2} so
        // every sample compares a nonzero integral
        const double ratio = (ell + xi) / L;
        const double mu_min = std::max(1.0, 1.05 * ratio * ratio * std::exp(2.0 * a2));
        const double mu = rng.log_in(mu_min, 1e6);
        const Cusp cc(L, a2, 0.0, xi * kTwoPi, +1);
        const PhaseValue pv = w_closed(cc, ell, mu);
        const double t_end = phase_support_end(cc, ell, mu);
        if (!(t_end > a2)) {
            c.pass = false;
            continue;
        }
        const double quad_tol = std::max(1e-12, 0.25 * opt.closed_form_rel_tol *
                                                    std::max(1.0, pv.w));
        const auto q = integrate_gk(
            [&](double t) { return phase_integrand(cc, ell, mu, t); }, a2, t_end,
            quad_tol);
        const double rel = std::abs(pv.w - q.value) / std::max(1.0, pv.w);
        worst = std::max(worst, rel);
        if (rel > opt.closed_form_rel_tol) c.pass = false;
    }
    // past the support edge the phase vanishes identically
    if (w_closed(Cusp(1.0, 0.0, 0.0, 0.5 * kTwoPi, +1), 50, 100.0).w != 0.0)
        c.pass = false;
    std::ostringstream os;
    os << opt.closed_form_samples << " randomized samples inside the support window, "
       << "worst relative gap " << worst;
    c.detail = os.str();
    return c;
}

// ---------------------------------------------------------------------------
// Lattice sum vs continuum integral at fixed t (gap growth at most
// sqrt(mu) + e^t/L), plus the closed form of the continuum integral and the
// xi -> 1-xi reflection.

inline Check check_riemann_gap(const Options& opt) {
    Check c{"strip_lattice_gap", true, ""};
    const Cusp cc(1.0, 0.0, 0.0, 0.3 * kTwoPi, +1);
    double max_ratio = 0.0;
    for (double mu : {1e2, 1e3, 1e4}) {
        const double T = phase_cutoff(cc, mu);
        for (int i = 0; i <= 5; ++i) {
            const double t = cc.alpha2 + (T - cc.alpha2) * i / 5.0;
            const double ratio =
                riemann_gap(cc, mu, t) / (std::sqrt(mu) + std::exp(t) / cc.L);
            max_ratio = std::max(max_ratio, ratio);
        }
    }
    if (max_ratio > opt.riemann_ratio_bound) c.pass = false;

    // continuum integral: closed form vs quadrature at one (mu, t)
    const double mu0 = 1e3, t0 = 1.0;
    const double closed = strip_integral_closed(cc, mu0, t0);
    const double radius = cc.L * std::sqrt(mu0) * std::exp(-t0);
    const auto q = integrate_gk(
        [&](double x) { return strip_integrand(cc, mu0, t0, x); }, -cc.xi() - radius,
        -cc.xi() + radius, 1e-10 * closed);
    if (std::abs(q.value - closed) > 1e-10 * std::max(1.0, closed)) c.pass = false;

    const Cusp cr(1.0, 0.0, 0.0, 0.7 * kTwoPi, +1);
    const double g1 = riemann_gap(cc, mu0, t0);
    const double g2 = riemann_gap(cr, mu0, t0);
    if (std::abs(g1 - g2) > opt.reflection_rel_tol * std::sqrt(mu0)) c.pass = false;

    std::ostringstream os;
    os << "max gap/(sqrt(mu)+e^t/L) = " << max_ratio << " (bound "
       << opt.riemann_ratio_bound << "), closed-vs-quadrature gap "
       << std::abs(q.value - closed) << ", reflection gap " << std::abs(g1 - g2);
    c.detail = os.str();
    return c;
}

// ---------------------------------------------------------------------------
// The t-integrated strip: quadrature of the cross-section closed form over
// [alpha2, cutoff] against its antiderivative, the defect against
// (pi/2) mu L e^{-alpha2} staying below a sqrt(mu) multiple, and one fully
// nested double quadrature.

inline Check check_strip_chain(const Options& opt) {
    Check c{"strip_integral_chain", true, ""};
    const Cusp cc(1.0, 0.0, 0.0, 0.3 * kTwoPi, +1);
    double c_fit = 0.0, worst_quad = 0.0;
    for (double mu : {1e2, 1e3, 1e4, 1e5, 1e6}) {
        const double T = phase_cutoff(cc, mu);
        const double closed =
            0.5 * kPi * mu * cc.L * (std::exp(-cc.alpha2) - std::exp(-T));
        const auto q = integrate_gk(
            [&](double t) { return strip_integral_closed(cc, mu, t); }, cc.alpha2, T,
            1e-10 * closed);
        const double rel = std::abs(q.value - closed) / closed;
        worst_quad = std::max(worst_quad, rel);
        if (rel > opt.strip_quad_rel_tol) c.pass = false;
        const double defect =
            std::abs(closed - 0.5 * kPi * mu * cc.L * std::exp(-cc.alpha2));
        c_fit = std::max(c_fit, defect / std::sqrt(mu));
    }
    if (c_fit > opt.strip_ratio_bound) c.pass = false;

    // nested double quadrature at mu = 100
    {
        const double mu = 1e2;
        const double T = phase_cutoff(cc, mu);
        const double closed =
            0.5 * kPi * mu * cc.L * (std::exp(-cc.alpha2) - std::exp(-T));
        const auto outer = integrate_gk(
            [&](double t) {
                const double radius = cc.L * std::sqrt(mu) * std::exp(-t);
                return integrate_gk(
                           [&](double x) { return strip_integrand(cc, mu, t, x); },
                           -cc.xi() - radius, -cc.xi() + radius, 1e-11 * closed)
                    .value;
            },
            cc.alpha2, T, 1e-9 * closed);
        if (std::abs(outer.value - closed) > opt.strip_quad_rel_tol * closed)
            c.pass = false;
    }
    std::ostringstream os;
    os << "defect/sqrt(mu) fitted constant " << c_fit << " (bound "
       << opt.strip_ratio_bound << "), worst outer-quadrature rel gap " << worst_quad;
    c.detail = os.str();
    return c;
}

// ---------------------------------------------------------------------------
// Phase-sum growth: |phase_sum(mu) - mu area/4pi| / (sqrt(mu) ln mu) bounded
// and non-increasing over five decades, the mu = 1e4 slope example, and the
// xi reflection.

inline Check check_phase_sum_asymptotics(const Options& opt) {
    Check c{"phase_sum_asymptotics", true, ""};
    const Cusp cc(1.0, 0.0, 0.0, 0.5 * kTwoPi, +1);
    const double quarter_area = cc.area() / (4.0 * kPi);
    std::vector<double> norms;
    for (double mu : {1e2, 1e3, 1e4, 1e5, 1e6}) {
        const double s = phase_sum(cc, mu);
        norms.push_back(std::abs(s - mu * quarter_area) /
                        (std::sqrt(mu) * std::log(mu)));
    }
    double max_norm = 0.0;
    for (std::size_t i = 0; i < norms.size(); ++i) {
        max_norm = std::max(max_norm, norms[i]);
        if (norms[i] > opt.phase_sum_norm_bound) c.pass = false;
        if (i > 0 && norms[i] > norms[i - 1] + 1e-12) c.pass = false;
    }

    const double mu4 = 1e4;
    const double rel = std::abs(phase_sum(cc, mu4) / mu4 - quarter_area) / quarter_area;
    if (rel > 5.0 * std::log(mu4) / std::sqrt(mu4)) c.pass = false;

    const Cusp ca(1.0, 0.0, 0.0, 0.3 * kTwoPi, +1);
    const Cusp cb(1.0, 0.0, 0.0, 0.7 * kTwoPi, +1);
    const double sa = phase_sum(ca, mu4), sb = phase_sum(cb, mu4);
    if (std::abs(sa - sb) > opt.reflection_rel_tol * sa) c.pass = false;

    std::ostringstream os;
    os << "normalized defects ";
    for (double v : norms) os << v << " ";
    os << "(bound " << opt.phase_sum_norm_bound << ", non-increasing), mu=1e4 slope gap "
       << rel << ", reflection gap " << std::abs(sa - sb);
    c.detail = os.str();
    return c;
}

// ---------------------------------------------------------------------------
// Pointwise potential sandwich |P - Q| <= C sqrt(Q).  The constant
// 2|b| + 2b^2 covers all fields since sqrt(Q) >= 1/2; the tighter 2|b| + b^2
// works for |b| <= 4/3 and is checked where valid.

inline Check check_potential_sandwich(const Options&) {
    Check c{"potential_pointwise_sandwich", true, ""};
    struct Cfg { double xi, b; int sign; };
    const std::vector<Cfg> cfgs = {{0.3, 1, +1}, {0.5, 5, +1}, {0.05, 5, -1}};
    double worst_margin = std::numeric_limits<double>::infinity();
    for (const auto& g : cfgs) {
        const Cusp cc(1.0, 0.0, g.b, g.xi * kTwoPi, g.sign);
        const double c_wide = 2.0 * std::abs(g.b) + 2.0 * g.b * g.b;
        const double c_tight = 2.0 * std::abs(g.b) + g.b * g.b;
        for (int ell = -6; ell <= 5; ++ell) {
            const ModeOperator p = p_mode(cc, ell, Bc::dirichlet);
            const ModeOperator q = q_mode(cc, ell, Bc::dirichlet);
            for (int i = 0; i <= 200; ++i) {
                const double t = 6.0 * i / 200.0;
                const double pv = p.potential(t), qv = q.potential(t);
                const double bound = c_wide * std::sqrt(qv);
                worst_margin = std::min(worst_margin, bound - std::abs(pv - qv));
                if (std::abs(pv - qv) > bound + 1e-12) c.pass = false;
                if (std::abs(g.b) <= 4.0 / 3.0 &&
                    std::abs(pv - qv) > c_tight * std::sqrt(qv) + 1e-12)
                    c.pass = false;
            }
        }
    }
    std::ostringstream os;
    os << "|P-Q| <= (2|b|+2b^2) sqrt(Q) on all grids, min slack " << worst_margin;
    c.detail = os.str();
    return c;
}

// ---------------------------------------------------------------------------
// Counting sandwich: N(lambda - sqrt(lambda) C, Q_ell) <= N(lambda, P_ell)
// <= N(lambda + sqrt(lambda) C, Q_ell) with C(b) = 2|b| + b^2 + 1; the
// smallest constant that still works at lambda = 1e3 is bisected and
// reported.

struct SandwichOutcome {
    bool holds = true;
    long modes = 0;
    double minimal_constant = 0.0; // only filled by the lambda = 1e3 scan
};

inline SandwichOutcome eq13_sandwich_at(double b, double lambda, bool scan_minimal) {
    SandwichOutcome out;
    const Cusp cc(1.0, 0.0, b, 0.5 * kTwoPi, +1);
    const double cb = 2.0 * std::abs(b) + b * b + 1.0;
    const ModeWindow w = mode_window(cc, lambda);
    std::vector<long> np(static_cast<std::size_t>(w.size()));
    for (long ell = w.lmin; ell <= w.lmax; ++ell)
        np[static_cast<std::size_t>(ell - w.lmin)] =
            count_below(p_mode(cc, static_cast<int>(ell), Bc::dirichlet), lambda).count;

    auto holds_with = [&](double cval) {
        const double shift = std::sqrt(lambda) * cval;
        for (long ell = w.lmin; ell <= w.lmax; ++ell) {
            const ModeOperator q = q_mode(cc, static_cast<int>(ell), Bc::dirichlet);
            const long n = np[static_cast<std::size_t>(ell - w.lmin)];
            if (count_below(q, lambda - shift).count > n) return false;
            if (count_below(q, lambda + shift).count < n) return false;
        }
        return true;
    };

    out.modes = w.size();
    out.holds = holds_with(cb);
    if (scan_minimal) {
        double lo = 0.0, hi = cb; // holds at hi when out.holds
        for (int it = 0; it < 12 && out.holds; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (holds_with(mid)) hi = mid;
            else lo = mid;
        }
        out.minimal_constant = hi;
    }
    return out;
}

inline Check check_counting_sandwich(const Options&, bool include_heavy) {
    Check c{"counting_sandwich", true, ""};
    std::ostringstream os;
    for (double b : {1.0, 5.0}) {
        const auto low = eq13_sandwich_at(b, 1e3, true);
        if (!low.holds) c.pass = false;
        os << "b=" << b << ": lambda=1e3 " << (low.holds ? "holds" : "FAILS") << " on "
           << low.modes << " modes (minimal constant ~" << low.minimal_constant
           << " vs pinned " << 2.0 * std::abs(b) + b * b + 1.0 << ")";
        if (include_heavy) {
            const auto high = eq13_sandwich_at(b, 1e4, false);
            if (!high.holds) c.pass = false;
            os << ", lambda=1e4 " << (high.holds ? "holds" : "FAILS") << " on "
               << high.modes << " modes";
        }
        os << "; ";
    }
    c.detail = os.str();
    return c;
}

// ---------------------------------------------------------------------------
// Cushion independence: scaling the truncation pad or the clearance must not
// move any count.

inline Check check_truncation_robustness(const Options&) {
    Check c{"truncation_robustness", true, ""};
    const std::size_t pick[] = {0, 3, 9, 12, 17, 21};
    CountOptions doubled_pad;
    doubled_pad.pad_scale = 2.0;
    CountOptions doubled_clearance;
    doubled_clearance.v_clearance = 20.0;
    for (std::size_t i : pick) {
        const auto& in = battery()[i];
        for (Bc bc : {Bc::dirichlet, Bc::neumann}) {
            const ModeOperator m = battery_mode(in, bc);
            const long base = count_below(m, in.lambda).count;
            if (count_below(m, in.lambda, doubled_pad).count != base) c.pass = false;
            if (count_below(m, in.lambda, doubled_clearance).count != base) c.pass = false;
        }
    }
    c.detail = "doubling the truncation pad or the clearance moves no count "
               "(6 instances, both boundary conditions)";
    return c;
}

// ---------------------------------------------------------------------------
// Essential-spectrum verdict on the three reference surfaces.

inline Check check_discreteness(const Options&) {
    Check c{"discreteness_verdict", true, ""};
    const ToyCore core = ToyCore::explicit_weyl(0.0, 0.0);

    const Surface s1({Cusp(1.0, 0.0, 5.0, kPi, +1)}, core);
    const auto v1 = discreteness_verdict(s1);
    if (!v1.discrete) c.pass = false;

    const Surface s2({Cusp(1.0, 0.0, 3.0, kTwoPi, +1), Cusp(1.0, 0.0, 0.0, kPi, +1)},
                     core);
    const auto v2 = discreteness_verdict(s2);
    if (v2.discrete || v2.essential_bottom != 0.25 + 9.0 || v2.j_a != std::vector<std::size_t>{0})
        c.pass = false;

    const Surface s3({Cusp(1.0, 0.0, 0.0, 0.0, +1)}, core);
    const auto v3 = discreteness_verdict(s3);
    if (v3.discrete || v3.essential_bottom != 0.25) c.pass = false;

    c.detail = "half-integer flux discrete; integer-flux bottoms 1/4 + min b^2 = 9.25 "
               "and 0.25 exact";
    return c;
}

// ---------------------------------------------------------------------------
// Whole-surface counting against the principal growth term on a geometric
// lambda grid: residual <= C sqrt(lambda) ln(lambda), constant fitted on the
// lower half, validated with headroom on the upper half.

inline Check check_weyl_asymptotics(const Options& opt) {
    Check c{"weyl_asymptotics", true, ""};
    const Surface s({Cusp(1.0, 0.0, 0.0, 0.5 * kTwoPi, +1)},
                    ToyCore::explicit_weyl(0.0, 0.0));
    const auto grid = make_lambda_grid(1e4, 32);
    const WeylReport rep = weyl_report(s, grid);
    if (!rep.upper_half_ok_d || !rep.upper_half_ok_n) c.pass = false;
    for (std::size_t i = 0; i + 1 < rep.count_d.size(); ++i) {
        if (rep.count_d[i + 1] < rep.count_d[i]) c.pass = false;
        if (rep.count_n[i + 1] < rep.count_n[i]) c.pass = false;
    }
    for (std::size_t i = 0; i < rep.count_d.size(); ++i)
        if (rep.count_d[i] > rep.count_n[i]) c.pass = false;

    const std::size_t top = rep.lambda.size() - 1;
    const double slope_d = rep.count_d[top] / rep.principal[top];
    const double slope_n = rep.count_n[top] / rep.principal[top];
    if (std::abs(slope_d - 1.0) > opt.weyl_slope_window) c.pass = false;
    if (std::abs(slope_n - 1.0) > opt.weyl_slope_window) c.pass = false;

    std::ostringstream os;
    os << "32-point grid to 1e4: fitted constants D " << rep.fit_c_d << " / N "
       << rep.fit_c_n << ", upper half within x" << opt.weyl_headroom
       << " headroom, top-slope ratios " << slope_d << " / " << slope_n;
    c.detail = os.str();
    return c;
}

// ---------------------------------------------------------------------------

inline Report run_suite(const Options& opt) {
    Report rep;
    rep.options = opt;
    const auto rows = run_battery();
    rep.checks.push_back(check_oracle_equivalence(rows, opt));
    rep.checks.push_back(check_interlacing(rows));
    rep.checks.push_back(check_gauge_modes(opt));
    rep.checks.push_back(check_gauge_cusps(opt));
    rep.checks.push_back(check_titchmarsh(opt));
    rep.checks.push_back(check_closed_form_phase(opt));
    rep.checks.push_back(check_riemann_gap(opt));
    rep.checks.push_back(check_strip_chain(opt));
    rep.checks.push_back(check_phase_sum_asymptotics(opt));
    rep.checks.push_back(check_potential_sandwich(opt));
    rep.checks.push_back(check_counting_sandwich(opt, false));
    rep.checks.push_back(check_truncation_robustness(opt));
    rep.checks.push_back(check_discreteness(opt));
    return rep;
}

} // namespace cusp_spectra::verify

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cusp_spectra/toy_core.hpp"

// Surface data model: cusp ends with a constant magnetic field, reduction of
// the holonomy class to a flux in [0,1), and the discreteness verdict.

namespace cusp_spectra {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Fluxes closer than this to an integer are treated as integer: the cusp
// then carries essential spectrum and counting refuses to run on it.
inline constexpr double kFluxIntegerTol = 1e-12;

// Below this gap the mode constants degrade like 1/gap; callers may warn.
inline constexpr double kFluxWarnGap = 1e-2;

// Holonomy reduced modulo 2 pi Z to xi = h/(2 pi) - floor(h/(2 pi)) in [0,1).
inline double reduced_flux(double holonomy) {
    const double x = holonomy / kTwoPi;
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0; // rounding can push x just below an integer up to 1
    return f;
}

inline bool flux_is_integer(double xi) {
    return xi < kFluxIntegerTol || xi > 1.0 - kFluxIntegerTol;
}

struct Cusp {
    double L = 1.0;        // circumference scale of the cross section
    double alpha2 = 0.0;   // left endpoint of the axial interval (alpha^2, inf)
    double b = 0.0;        // constant magnetic field strength on the cusp
    double holonomy = 0.0; // line integral of the potential at infinity, radians
    int sign = +1;         // orientation of the field term in the mode operators

    Cusp() = default;
    Cusp(double L_, double alpha2_, double b_, double holonomy_, int sign_ = +1)
        : L(L_), alpha2(alpha2_), b(b_), holonomy(holonomy_), sign(sign_) {
        if (!(L > 0.0)) throw std::domain_error("Cusp: L must be positive");
        if (sign != +1 && sign != -1) throw std::domain_error("Cusp: sign must be +1 or -1");
    }

    double xi() const { return reduced_flux(holonomy); }

    // Hyperbolic area of the cusp end.
    double area() const { return kTwoPi * L * std::exp(-alpha2); }

    // Distance of the flux from the nearest integer; the counting problem
    // stiffens as this gap closes.
    double flux_gap() const {
        const double x = xi();
        return x < 0.5 ? x : 1.0 - x;
    }
};

inline double cusp_area(const Cusp& c) { return c.area(); }

struct Surface {
    std::vector<Cusp> cusps;
    ToyCore core;

    Surface() = default;
    Surface(std::vector<Cusp> cs, ToyCore co) : cusps(std::move(cs)), core(co) {
        if (cusps.empty()) throw std::domain_error("Surface: needs at least one cusp");
    }

    double total_area() const {
        double a = core.area();
        for (const auto& c : cusps) a += c.area();
        return a;
    }
};

// Spectrum below 1/4 is always discrete; the spectrum is discrete everywhere
// iff no cusp has integer flux.  Otherwise the essential spectrum starts at
// 1/4 + min b_j^2 over the integer-flux cusps.
struct DiscretenessVerdict {
    bool discrete = true;
    double essential_bottom = 0.0;    // meaningful only when !discrete
    std::vector<std::size_t> j_a;     // indices of integer-flux cusps
};

inline DiscretenessVerdict discreteness_verdict(const Surface& s) {
    DiscretenessVerdict v;
    for (std::size_t j = 0; j < s.cusps.size(); ++j)
        if (flux_is_integer(s.cusps[j].xi())) v.j_a.push_back(j);
    if (v.j_a.empty()) return v;
    v.discrete = false;
    double min_b2 = s.cusps[v.j_a.front()].b * s.cusps[v.j_a.front()].b;
    for (std::size_t j : v.j_a) {
        const double b2 = s.cusps[j].b * s.cusps[j].b;
        if (b2 < min_b2) min_b2 = b2;
    }
    v.essential_bottom = 0.25 + min_b2;
    return v;
}

} // namespace cusp_spectra

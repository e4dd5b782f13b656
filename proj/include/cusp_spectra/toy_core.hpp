#pragma once

#include <stdexcept>

namespace cusp_spectra {

// Stand-in for the compact part of the surface.  Either a flat rectangle,
// whose Dirichlet/Neumann spectrum pi^2 (m^2/w^2 + n^2/h^2) is explicit, or
// an abstract count N(lambda) = floor(area*lambda/(4 pi) -+ coeff*sqrt(lambda))
// with the minus branch for Dirichlet and plus for Neumann.
// explicit_weyl(0, 0) is the empty core: it contributes nothing.
struct ToyCore {
    enum class Kind { flat_rectangle, explicit_weyl };

    Kind kind = Kind::explicit_weyl;
    double width = 0.0;            // flat_rectangle
    double height = 0.0;
    double weyl_area = 0.0;        // explicit_weyl
    double remainder_coeff = 0.0;

    static ToyCore rectangle(double w, double h) {
        if (!(w > 0.0) || !(h > 0.0))
            throw std::domain_error("ToyCore: rectangle sides must be positive");
        ToyCore c;
        c.kind = Kind::flat_rectangle;
        c.width = w;
        c.height = h;
        return c;
    }

    static ToyCore explicit_weyl(double area, double coeff) {
        if (area < 0.0 || coeff < 0.0)
            throw std::domain_error("ToyCore: area and remainder_coeff must be non-negative");
        ToyCore c;
        c.kind = Kind::explicit_weyl;
        c.weyl_area = area;
        c.remainder_coeff = coeff;
        return c;
    }

    double area() const {
        return kind == Kind::flat_rectangle ? width * height : weyl_area;
    }
};

} // namespace cusp_spectra

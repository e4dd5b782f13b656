#include <catch2/catch_amalgamated.hpp>

#include "cusp_spectra/geometry.hpp"

using namespace cusp_spectra;

TEST_CASE("holonomy reduces to a flux in [0,1)", "[geometry]") {
    CHECK(reduced_flux(kPi) == Catch::Approx(0.5).margin(1e-15));
    CHECK(reduced_flux(-0.5 * kPi) == Catch::Approx(0.75).margin(1e-15));
    CHECK(reduced_flux(4.0 * kPi) == Catch::Approx(0.0).margin(1e-15));
    CHECK(reduced_flux(0.0) == 0.0);
    for (int k = -3; k <= 3; ++k)
        CHECK(reduced_flux(kPi + kTwoPi * k) == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("flux gap measures the distance to the nearest integer", "[geometry]") {
    CHECK(Cusp(1.0, 0.0, 0.0, kPi).flux_gap() == Catch::Approx(0.5).margin(1e-15));
    CHECK(Cusp(1.0, 0.0, 0.0, 0.05 * kTwoPi).flux_gap() == Catch::Approx(0.05).margin(1e-12));
    CHECK(Cusp(1.0, 0.0, 0.0, -0.5 * kPi).flux_gap() == Catch::Approx(0.25).margin(1e-12));
}

TEST_CASE("cusp area is 2 pi L e^{-alpha2}", "[geometry]") {
    CHECK(Cusp(1.0, 0.0, 0.0, kPi).area() == Catch::Approx(kTwoPi));
    CHECK(Cusp(2.0, 1.0, 0.0, kPi).area() == Catch::Approx(2.0 * kTwoPi * std::exp(-1.0)));
    CHECK(Cusp(0.5, 0.0, 0.0, kPi).area() == Catch::Approx(kPi));
}

TEST_CASE("cusp constructor rejects bad parameters", "[geometry]") {
    CHECK_THROWS_AS(Cusp(0.0, 0.0, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(Cusp(-1.0, 0.0, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(Cusp(1.0, 0.0, 0.0, 0.0, 2), std::domain_error);
}

TEST_CASE("surface area is additive over core and cusps", "[geometry]") {
    const Surface s({Cusp(1.0, 0.0, 0.0, kPi), Cusp(2.0, 1.0, 0.0, kPi)},
                    ToyCore::rectangle(2.0, 3.0));
    CHECK(s.total_area() ==
          Catch::Approx(6.0 + kTwoPi + 2.0 * kTwoPi * std::exp(-1.0)));
    CHECK_THROWS_AS(Surface({}, ToyCore::rectangle(1.0, 1.0)), std::domain_error);
}

TEST_CASE("spectrum is discrete iff no cusp has integer flux", "[geometry]") {
    const ToyCore core = ToyCore::explicit_weyl(0.0, 0.0);

    const auto v1 = discreteness_verdict(Surface({Cusp(1.0, 0.0, 5.0, kPi)}, core));
    CHECK(v1.discrete);
    CHECK(v1.j_a.empty());

    const auto v2 = discreteness_verdict(
        Surface({Cusp(1.0, 0.0, 3.0, kTwoPi), Cusp(1.0, 0.0, 0.0, kPi)}, core));
    CHECK_FALSE(v2.discrete);
    CHECK(v2.essential_bottom == 0.25 + 9.0);
    CHECK(v2.j_a == std::vector<std::size_t>{0});

    const auto v3 = discreteness_verdict(Surface({Cusp(1.0, 0.0, 0.0, 0.0)}, core));
    CHECK_FALSE(v3.discrete);
    CHECK(v3.essential_bottom == 0.25);
}

TEST_CASE("essential bottom takes the smallest field over integer-flux cusps",
          "[geometry]") {
    const auto v = discreteness_verdict(
        Surface({Cusp(1.0, 0.0, 3.0, 0.0), Cusp(1.0, 0.0, 2.0, kTwoPi),
                 Cusp(1.0, 0.0, 7.0, kPi)},
                ToyCore::explicit_weyl(0.0, 0.0)));
    CHECK_FALSE(v.discrete);
    CHECK(v.essential_bottom == 0.25 + 4.0);
    CHECK(v.j_a == (std::vector<std::size_t>{0, 1}));
}

TEST_CASE("near-integer flux counts as integer within the pinned tolerance",
          "[geometry]") {
    CHECK(flux_is_integer(reduced_flux(kTwoPi * (1.0 + 1e-13))));
    CHECK(flux_is_integer(reduced_flux(1e-13)));
    CHECK_FALSE(flux_is_integer(reduced_flux(kTwoPi * 1.001)));
    CHECK_FALSE(flux_is_integer(0.5));
}

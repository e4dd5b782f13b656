#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cusp_spectra/weyl.hpp"

using namespace cusp_spectra;

namespace {
Surface single_cusp(double L = 1.0) {
    return Surface({Cusp(L, 0.0, 0.0, kPi, +1)}, ToyCore::explicit_weyl(0.0, 0.0));
}
} // namespace

TEST_CASE("rectangle core counts lattice points", "[weyl]") {
    const ToyCore r = ToyCore::rectangle(1.0, 1.0);
    CHECK(core_count(r, 20.0, Bc::dirichlet) == 1);  // 2 pi^2 only
    CHECK(core_count(r, 0.5, Bc::dirichlet) == 0);
    CHECK(core_count(r, 0.5, Bc::neumann) == 1);     // the zero mode
    CHECK(core_count(r, 20.0, Bc::neumann) == 4);    // 0, pi^2 twice, 2 pi^2
    // pi^2 (m^2/4 + n^2): 12.34, 19.74, then 32.08
    CHECK(core_count(ToyCore::rectangle(2.0, 1.0), 20.0, Bc::dirichlet) == 2);
    CHECK(core_count(ToyCore::rectangle(2.0, 1.0), 33.0, Bc::dirichlet) == 3);
}

TEST_CASE("explicit core follows its stated growth", "[weyl]") {
    const ToyCore w = ToyCore::explicit_weyl(4.0 * kPi, 0.0);
    CHECK(core_count(w, 100.0, Bc::dirichlet) == 100);
    CHECK(core_count(w, 100.0, Bc::neumann) == 100);
    const ToyCore w2 = ToyCore::explicit_weyl(4.0 * kPi, 2.0);
    CHECK(core_count(w2, 100.0, Bc::dirichlet) == 80);
    CHECK(core_count(w2, 100.0, Bc::neumann) == 120);
    CHECK(core_count(w2, 1e-4, Bc::dirichlet) == 0); // clamped at zero
    const ToyCore none = ToyCore::explicit_weyl(0.0, 0.0);
    CHECK(core_count(none, 1e6, Bc::dirichlet) == 0);
}

TEST_CASE("surface bracket encloses the principal term", "[weyl]") {
    const Surface s = single_cusp();
    const SurfaceBracket br = surface_bracket_stable(s, 100.0);
    CHECK(br.lower <= br.upper);
    const double principal = s.total_area() * br.lambda / (4.0 * kPi);
    CHECK(br.lower <= principal + 1.0);
    CHECK(br.upper >= principal - 1.0);
}

TEST_CASE("bracket at tiny lambda has lower bound zero", "[weyl]") {
    const Surface s({Cusp(1.0, 0.0, 0.0, kPi, +1)}, ToyCore::rectangle(1.0, 1.0));
    const SurfaceBracket br = surface_bracket_stable(s, 0.3);
    CHECK(br.lower == 0);
    CHECK(br.upper >= 1); // neumann zero mode of the core
    CHECK_THROWS_AS(surface_bracket(s, 0.2), std::domain_error);
}

TEST_CASE("bracket refuses a non-discrete surface", "[weyl]") {
    const Surface s({Cusp(1.0, 0.0, 3.0, kTwoPi, +1)}, ToyCore::explicit_weyl(0.0, 0.0));
    CHECK_THROWS_AS(surface_bracket(s, 100.0), std::domain_error);
    CHECK_THROWS_AS(weyl_report(s, make_lambda_grid(100.0, 4)), std::domain_error);
}

TEST_CASE("bracket width is at most the number of window modes", "[weyl]") {
    const Surface s = single_cusp();
    for (double lam : {30.0, 100.0}) {
        const SurfaceBracket br = surface_bracket_stable(s, lam);
        CHECK(br.upper - br.lower <=
              mode_window(s.cusps.front(), br.lambda).size() +
                  2 * CountOptions{}.window_margin);
    }
}

TEST_CASE("lambda grid is geometric and pinned at both ends", "[weyl]") {
    const auto g = make_lambda_grid(1e4, 32);
    REQUIRE(g.size() == 32);
    CHECK(g.front() == Catch::Approx(100.0));
    CHECK(g.back() == 1e4);
    for (std::size_t i = 1; i < g.size(); ++i)
        CHECK(g[i] / g[i - 1] == Catch::Approx(g[1] / g[0]).epsilon(1e-9));
    CHECK(make_lambda_grid(500.0, 8).front() == Catch::Approx(10.0));
    CHECK_THROWS_AS(make_lambda_grid(5.0, 8), std::domain_error);
    CHECK_THROWS_AS(make_lambda_grid(1e4, 1), std::domain_error);
}

TEST_CASE("weyl report fits the remainder and validates the upper half", "[weyl]") {
    const Surface s = single_cusp();
    const WeylReport rep = weyl_report(s, make_lambda_grid(400.0, 10));
    REQUIRE(rep.lambda.size() == 10);
    CHECK(rep.area == Catch::Approx(kTwoPi));
    CHECK(rep.upper_half_ok_d);
    CHECK(rep.upper_half_ok_n);
    CHECK(rep.fit_c_d >= 0.0);
    for (std::size_t i = 0; i < rep.lambda.size(); ++i) {
        CHECK(rep.count_d[i] <= rep.count_n[i]);
        CHECK(rep.principal[i] ==
              Catch::Approx(rep.area * rep.lambda[i] / (4.0 * kPi)));
        if (i > 0) {
            CHECK(rep.count_d[i] >= rep.count_d[i - 1]);
            CHECK(rep.count_n[i] >= rep.count_n[i - 1]);
        }
    }
}

TEST_CASE("counts approach the principal term", "[weyl][slow]") {
    const Surface s = single_cusp();
    const SurfaceBracket br = surface_bracket_stable(s, 2000.0);
    const double principal = s.total_area() * br.lambda / (4.0 * kPi);
    CHECK(std::abs(br.lower / principal - 1.0) < 0.1);
    CHECK(std::abs(br.upper / principal - 1.0) < 0.1);
}

TEST_CASE("doubling the circumference doubles the count", "[weyl][slow]") {
    const double lam = 2500.0;
    const SurfaceBracket one = surface_bracket_stable(single_cusp(1.0), lam);
    const SurfaceBracket two = surface_bracket_stable(single_cusp(2.0), lam);
    const double ratio = static_cast<double>(two.lower) / one.lower;
    CHECK(ratio > 1.8);
    CHECK(ratio < 2.2);
}

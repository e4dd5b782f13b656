#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cusp_spectra/counting.hpp"
#include "cusp_spectra/oracle.hpp"

using namespace cusp_spectra;

TEST_CASE("constant potential on (0, pi) gives c + k^2", "[oracle]") {
    const double c = 3.0;
    const auto spec = oracle_eigenvalues_on_interval([=](double) { return c; }, 0.0,
                                                     kPi, Bc::dirichlet, 20.0);
    REQUIRE(spec.count() == 4);
    for (int k = 1; k <= 4; ++k)
        CHECK(spec.values[static_cast<std::size_t>(k - 1)] ==
              Catch::Approx(c + k * k).margin(1e-6));
}

TEST_CASE("neumann left end admits the half-integer ladder", "[oracle]") {
    // -u'' = lambda u on (0, pi), u'(0) = 0, u(pi) = 0: (k + 1/2)^2
    const auto spec = oracle_eigenvalues_on_interval([](double) { return 0.0; }, 0.0,
                                                     kPi, Bc::neumann, 10.0);
    REQUIRE(spec.count() == 3);
    CHECK(spec.values[0] == Catch::Approx(0.25).margin(1e-6));
    CHECK(spec.values[1] == Catch::Approx(2.25).margin(1e-6));
    CHECK(spec.values[2] == Catch::Approx(6.25).margin(1e-6));
}

TEST_CASE("refinement improves the grid eigenvalues", "[oracle]") {
    OracleConfig coarse;
    coarse.grid_points = 400;
    const auto spec = oracle_eigenvalues_on_interval([](double) { return 0.0; }, 0.0,
                                                     kPi, Bc::dirichlet, 20.0, coarse);
    REQUIRE(spec.count() == 4);
    for (int k = 1; k <= 4; ++k) {
        const double exact = static_cast<double>(k) * k;
        const double raw = std::abs(spec.coarse[static_cast<std::size_t>(k - 1)] - exact);
        const double refined = std::abs(spec.values[static_cast<std::size_t>(k - 1)] - exact);
        CHECK(refined < raw / 3.0);
    }
}

TEST_CASE("halving the step shrinks the defect quadratically", "[oracle]") {
    const double exact = 4.0; // second dirichlet eigenvalue on (0, pi)
    auto defect = [&](int n) {
        OracleConfig cfg;
        cfg.grid_points = n;
        cfg.refine = false;
        const auto s = oracle_eigenvalues_on_interval([](double) { return 0.0; }, 0.0,
                                                      kPi, Bc::dirichlet, 10.0, cfg);
        REQUIRE(s.count() >= 2);
        return std::abs(s.values[1] - exact);
    };
    const double d1 = defect(200);
    const double d2 = defect(401); // step h/2 has 2n+1 interior points
    CHECK(d2 < d1 / 3.0);
    CHECK(d2 > d1 / 5.0);
}

TEST_CASE("oracle rejects unusable configurations", "[oracle]") {
    OracleConfig tiny;
    tiny.grid_points = 8;
    CHECK_THROWS_AS(oracle_eigenvalues_on_interval([](double) { return 0.0; }, 0.0,
                                                   kPi, Bc::dirichlet, 10.0, tiny),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle_eigenvalues_on_interval([](double) { return 0.0; }, 1.0,
                                                   1.0, Bc::dirichlet, 10.0),
                    std::invalid_argument);
    OracleConfig cfg;
    cfg.grid_points = 100;
    // lambda far beyond 2/h^2 on this grid
    CHECK_THROWS_AS(oracle_eigenvalues_on_interval([](double) { return 0.0; }, 0.0,
                                                   100.0, Bc::dirichlet, 1e6, cfg),
                    std::domain_error);
}

TEST_CASE("oracle agrees with shooting on one mode", "[oracle]") {
    const Cusp c(1.0, 0.0, 1.0, 0.3 * kTwoPi, +1);
    const ModeOperator m = p_mode(c, -2, Bc::neumann);
    const double lam = 25.0;
    CHECK(oracle_count(m, lam) == count_below(m, lam).count);
    const auto evs = eigenvalues_below(m, lam);
    const auto spec = oracle_eigenvalues(m, lam);
    REQUIRE(evs.size() == spec.values.size());
    for (std::size_t i = 0; i < evs.size(); ++i)
        CHECK(evs[i] == Catch::Approx(spec.values[i]).margin(1e-6));
}

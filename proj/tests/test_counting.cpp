#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "cusp_spectra/counting.hpp"

using namespace cusp_spectra;

namespace {
Cusp unit_cusp(double xi, double b = 0.0, int sign = +1) {
    return Cusp(1.0, 0.0, b, xi * kTwoPi, sign);
}
// reference eigenvalues of the xi = 1/2, ell = 0 comparison mode, bisected
// once to 1e-9 and frozen
constexpr double kEv0 = 4.6652310442041198;
constexpr double kEv1 = 11.891266544629616;
} // namespace

TEST_CASE("counts of the half-flux comparison mode", "[counting]") {
    const ModeOperator q = q_mode(unit_cusp(0.5), 0);
    CHECK(count_below(q, 5.0).count == 1);
    CHECK(count_below(q, 10.0).count == 1);
    CHECK(count_below(q, 20.0).count == 2);
    CHECK(count_below(q, 0.3).count == 0);
}

TEST_CASE("eigenvalues of the half-flux comparison mode", "[counting]") {
    const auto evs = eigenvalues_below(q_mode(unit_cusp(0.5), 0), 20.0);
    REQUIRE(evs.size() == 2);
    CHECK(evs[0] == Catch::Approx(kEv0).margin(1e-8));
    CHECK(evs[1] == Catch::Approx(kEv1).margin(1e-8));
}

TEST_CASE("count jumps by one across an eigenvalue", "[counting]") {
    const ModeOperator q = q_mode(unit_cusp(0.5), 0);
    CHECK(count_below(q, kEv0 + 1e-6).count - count_below(q, kEv0 - 1e-6).count == 1);
    CHECK(count_below(q, kEv1 + 1e-6).count - count_below(q, kEv1 - 1e-6).count == 1);
}

TEST_CASE("count is monotone in lambda", "[counting]") {
    const ModeOperator q = q_mode(unit_cusp(0.3), -1);
    long prev = 0;
    for (double lam : {1.0, 5.0, 10.0, 15.0, 20.0, 25.0}) {
        const long n = count_below(q, lam).count;
        CHECK(n >= prev);
        prev = n;
    }
}

TEST_CASE("neumann count dominates dirichlet by at most one", "[counting]") {
    for (double lam : {5.0, 12.0, 25.0}) {
        const ModeOperator d = q_mode(unit_cusp(0.3), 0, Bc::dirichlet);
        const ModeOperator n = q_mode(unit_cusp(0.3), 0, Bc::neumann);
        const long gap = count_below(n, lam).count - count_below(d, lam).count;
        CHECK(gap >= 0);
        CHECK(gap <= 1);
    }
}

TEST_CASE("counts do not depend on the truncation cushion", "[counting]") {
    CountOptions wide_pad;
    wide_pad.pad_scale = 2.0;
    CountOptions wide_clearance;
    wide_clearance.v_clearance = 20.0;
    const ModeOperator m = p_mode(unit_cusp(0.3, 1.0), -2);
    const long base = count_below(m, 25.0).count;
    CHECK(count_below(m, 25.0, wide_pad).count == base);
    CHECK(count_below(m, 25.0, wide_clearance).count == base);
}

TEST_CASE("integer flux refuses to count", "[counting]") {
    ModeOperator m = q_mode(unit_cusp(0.5), 0);
    m.xi = 0.0;
    CHECK_THROWS_AS(count_below(m, 5.0), std::domain_error);
    m.xi = 1.0 - 1e-13;
    CHECK_THROWS_AS(count_below(m, 5.0), std::domain_error);
}

TEST_CASE("cusp count sums the window modes", "[counting]") {
    struct Row { double xi, b; int sign; double lambda; long d, n; };
    const std::vector<Row> rows = {
        {0.50, 0.0, +1, 20.0, 6, 10},  {0.30, 0.0, +1, 30.0, 12, 16},
        {0.05, 0.0, +1, 15.0, 7, 10},  {0.50, 1.0, +1, 15.0, 4, 8},
        {0.05, 0.0, +1, 50.0, 24, 31},
    };
    for (const auto& r : rows) {
        const Cusp c = unit_cusp(r.xi, r.b, r.sign);
        CHECK(cusp_count(c, r.lambda, Bc::dirichlet).count == r.d);
        CHECK(cusp_count(c, r.lambda, Bc::neumann).count == r.n);
    }
    CHECK_THROWS_AS(cusp_count(unit_cusp(0.5), 0.25, Bc::dirichlet),
                    std::domain_error);
    CHECK(cusp_count(unit_cusp(0.5), 0.3, Bc::dirichlet).count == 0);
}

TEST_CASE("strong fields at low lambda trip the window guard", "[counting]") {
    // modes just outside the window formula carry bound states near the
    // field minimum; the count refuses rather than undercounts
    CHECK_THROWS_AS(cusp_count(unit_cusp(0.5, 5.0), 40.0, Bc::dirichlet),
                    window_error);
    CHECK_THROWS_AS(cusp_count(unit_cusp(0.5, 5.0), 40.0, Bc::neumann),
                    window_error);
    // weak anti-aligned fields trip only the neumann side
    CHECK(cusp_count(unit_cusp(0.3, 1.0, -1), 15.0, Bc::dirichlet).count == 5);
    CHECK_THROWS_AS(cusp_count(unit_cusp(0.3, 1.0, -1), 15.0, Bc::neumann),
                    window_error);
}

TEST_CASE("eigenvalue list length matches the count", "[counting]") {
    const ModeOperator m = p_mode(unit_cusp(0.3, 1.0), 1);
    const double lam = 25.0;
    const auto evs = eigenvalues_below(m, lam);
    CHECK(static_cast<long>(evs.size()) == count_below(m, lam).count);
    for (std::size_t i = 1; i < evs.size(); ++i) CHECK(evs[i] > evs[i - 1]);
    for (double e : evs) {
        CHECK(e > 0.25);
        CHECK(e < lam);
    }
}

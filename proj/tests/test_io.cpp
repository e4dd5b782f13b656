#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "cusp_spectra/io.hpp"

using namespace cusp_spectra;

TEST_CASE("seventeen digits round-trip any double", "[io]") {
    for (double x : {kPi, 0.1, 1e-300, 12345.6789, -2.5e17, 4.6652310442041198}) {
        const std::string s = format_g17(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
}

TEST_CASE("surface serialization round-trips exactly", "[io]") {
    const Surface s({Cusp(1.5, 0.25, 2.0, 0.3 * kTwoPi, -1), Cusp(1.0, 0.0, 0.0, kPi)},
                    ToyCore::rectangle(2.0, 3.0));
    const Surface r = surface_from_json(surface_to_json(s));
    REQUIRE(r.cusps.size() == 2);
    CHECK(r.cusps[0].L == s.cusps[0].L);
    CHECK(r.cusps[0].alpha2 == s.cusps[0].alpha2);
    CHECK(r.cusps[0].b == s.cusps[0].b);
    CHECK(r.cusps[0].holonomy == s.cusps[0].holonomy);
    CHECK(r.cusps[0].sign == -1);
    CHECK(r.core.kind == ToyCore::Kind::flat_rectangle);
    CHECK(r.core.width == 2.0);
    CHECK(r.core.height == 3.0);

    const Surface w({Cusp(1.0, 0.0, 0.0, kPi)}, ToyCore::explicit_weyl(4.0 * kPi, 2.0));
    const Surface rw = surface_from_json(surface_to_json(w));
    CHECK(rw.core.kind == ToyCore::Kind::explicit_weyl);
    CHECK(rw.core.weyl_area == 4.0 * kPi);
    CHECK(rw.core.remainder_coeff == 2.0);
}

TEST_CASE("surface schema uses the documented field names", "[io]") {
    const json j = surface_to_json(
        Surface({Cusp(1.0, 0.0, 0.0, kPi)}, ToyCore::rectangle(1.0, 1.0)));
    REQUIRE(j.contains("cusps"));
    REQUIRE(j.contains("core"));
    const json& jc = j.at("cusps").at(0);
    for (const char* key : {"L", "alpha2", "b", "holonomy", "sign"})
        CHECK(jc.contains(key));
    CHECK(j.at("core").at("kind") == "flat_rectangle");
}

TEST_CASE("malformed surface configs are rejected with a reason", "[io]") {
    CHECK_THROWS_AS(surface_from_json(json::parse("{}")), std::invalid_argument);
    CHECK_THROWS_AS(surface_from_json(json::parse(R"({"cusps": []})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        surface_from_json(json::parse(
            R"({"cusps": [{"L": 1.0}], "core": {"kind": "flat_rectangle"}})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        surface_from_json(json::parse(
            R"({"cusps": [{"L":1.0,"alpha2":0.0,"b":0.0,"holonomy":3.14,"sign":1}],
                "core": {"kind": "dodecahedron"}})")),
        std::invalid_argument);
    CHECK_THROWS_AS(load_surface("/nonexistent/path.json"), std::invalid_argument);
}

TEST_CASE("weyl csv has the documented header and row shape", "[io]") {
    WeylReport rep;
    rep.area = kTwoPi;
    rep.lambda = {10.0, 100.0};
    rep.count_d = {2, 48};
    rep.count_n = {6, 52};
    rep.principal = {5.0, 50.0};
    rep.resid_d = {3.0, 2.0};
    rep.resid_n = {1.0, 2.0};
    rep.norm_d = {0.41, 0.04};
    rep.norm_n = {0.14, 0.04};
    const std::string csv = weyl_report_csv(rep);
    CHECK(csv.rfind("lambda,count_D,count_N,principal,resid_D,resid_N,"
                    "normalized_resid_D,normalized_resid_N\n",
                    0) == 0);
    CHECK(csv.find("\n10,2,6,5,3,1,") != std::string::npos);
    // header plus one line per grid point
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

    const json j = weyl_report_to_json(rep);
    CHECK(j.at("rows").size() == 2);
    CHECK(j.at("rows").at(1).at("count_D") == 48);
    CHECK(j.at("area") == kTwoPi);
}

TEST_CASE("text files write through verbatim", "[io]") {
    const std::string path = "io_test_scratch.txt";
    write_text_file(path, "two\nlines\n");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "two\nlines\n");
    std::remove(path.c_str());
}

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cusp_spectra/geometry.hpp"
#include "cusp_spectra/weyl.hpp"

// Serialization of the surface description and the Weyl report.
//
// Surface schema:
//   { "cusps": [ { "L": f, "alpha2": f, "b": f, "holonomy": f, "sign": i } ],
//     "core": { "kind": "flat_rectangle", "width": f, "height": f }
//           | { "kind": "explicit_weyl", "area": f, "remainder_coeff": f } }

namespace cusp_spectra {

using json = nlohmann::ordered_json;

// 17 significant digits round-trip any double exactly.
inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline json core_to_json(const ToyCore& core) {
    json j;
    if (core.kind == ToyCore::Kind::flat_rectangle) {
        j["kind"] = "flat_rectangle";
        j["width"] = core.width;
        j["height"] = core.height;
    } else {
        j["kind"] = "explicit_weyl";
        j["area"] = core.weyl_area;
        j["remainder_coeff"] = core.remainder_coeff;
    }
    return j;
}

inline ToyCore core_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw std::invalid_argument("surface config: core needs a string field \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "flat_rectangle")
            return ToyCore::rectangle(j.at("width").get<double>(),
                                      j.at("height").get<double>());
        if (kind == "explicit_weyl")
            return ToyCore::explicit_weyl(j.at("area").get<double>(),
                                          j.at("remainder_coeff").get<double>());
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("surface config: bad core: ") + ex.what());
    }
    throw std::invalid_argument("surface config: unknown core kind \"" + kind + "\"");
}

inline json surface_to_json(const Surface& s) {
    json j;
    j["cusps"] = json::array();
    for (const auto& c : s.cusps) {
        json jc;
        jc["L"] = c.L;
        jc["alpha2"] = c.alpha2;
        jc["b"] = c.b;
        jc["holonomy"] = c.holonomy;
        jc["sign"] = c.sign;
        j["cusps"].push_back(jc);
    }
    j["core"] = core_to_json(s.core);
    return j;
}

inline Surface surface_from_json(const json& j) {
    if (!j.is_object() || !j.contains("cusps") || !j.at("cusps").is_array())
        throw std::invalid_argument("surface config: needs an array field \"cusps\"");
    if (!j.contains("core"))
        throw std::invalid_argument("surface config: needs a field \"core\"");
    std::vector<Cusp> cusps;
    for (const auto& jc : j.at("cusps")) {
        try {
            cusps.emplace_back(jc.at("L").get<double>(), jc.at("alpha2").get<double>(),
                               jc.at("b").get<double>(), jc.at("holonomy").get<double>(),
                               jc.at("sign").get<int>());
        } catch (const json::exception& ex) {
            throw std::invalid_argument(std::string("surface config: bad cusp: ") + ex.what());
        }
    }
    if (cusps.empty())
        throw std::invalid_argument("surface config: needs at least one cusp");
    return Surface(std::move(cusps), core_from_json(j.at("core")));
}

inline Surface load_surface(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open surface config: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw std::invalid_argument("surface config " + path + " is not valid JSON: " + ex.what());
    }
    return surface_from_json(j);
}

inline std::string weyl_report_csv(const WeylReport& rep) {
    std::ostringstream out;
    out << "lambda,count_D,count_N,principal,resid_D,resid_N,"
           "normalized_resid_D,normalized_resid_N\n";
    for (std::size_t i = 0; i < rep.lambda.size(); ++i) {
        out << format_g17(rep.lambda[i]) << ',' << rep.count_d[i] << ','
            << rep.count_n[i] << ',' << format_g17(rep.principal[i]) << ','
            << format_g17(rep.resid_d[i]) << ',' << format_g17(rep.resid_n[i]) << ','
            << format_g17(rep.norm_d[i]) << ',' << format_g17(rep.norm_n[i]) << '\n';
    }
    return out.str();
}

inline json weyl_report_to_json(const WeylReport& rep) {
    json j;
    j["area"] = rep.area;
    j["fitted_constant_D"] = rep.fit_c_d;
    j["fitted_constant_N"] = rep.fit_c_n;
    j["upper_half_within_headroom_D"] = rep.upper_half_ok_d;
    j["upper_half_within_headroom_N"] = rep.upper_half_ok_n;
    j["trend_slope_D"] = rep.trend_d;
    j["trend_slope_N"] = rep.trend_n;
    j["rows"] = json::array();
    for (std::size_t i = 0; i < rep.lambda.size(); ++i) {
        json row;
        row["lambda"] = rep.lambda[i];
        row["count_D"] = rep.count_d[i];
        row["count_N"] = rep.count_n[i];
        row["principal"] = rep.principal[i];
        row["resid_D"] = rep.resid_d[i];
        row["resid_N"] = rep.resid_n[i];
        row["normalized_resid_D"] = rep.norm_d[i];
        row["normalized_resid_N"] = rep.norm_n[i];
        j["rows"].push_back(row);
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

} // namespace cusp_spectra
